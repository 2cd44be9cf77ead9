#pragma once

#include <stdexcept>
#include <string>

namespace irgpucb {

/// Bad user input: malformed config, dimension mismatch, invalid file contents.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file could not be read or written.
class IoError : public InputError {
public:
    using InputError::InputError;
};

/// A factorization or other numerical step failed.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double condition_estimate = 0.0)
        : std::runtime_error(what), condition_estimate_(condition_estimate) {}

    double condition_estimate() const noexcept { return condition_estimate_; }

private:
    double condition_estimate_;
};

/// Operation called on an object that does not support it.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace irgpucb
