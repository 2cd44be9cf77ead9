#pragma once

#include <cstdint>
#include <string_view>

namespace irgpucb {

/// Counter-based random stream.
///
/// Each draw is a pure function of (key, counter), so a stream is fully
/// described by two integers and can be split into independent children
/// without touching any shared state. Trials, functions and validation
/// checks each get their own child stream derived from a root seed.
class Stream {
public:
    explicit Stream(std::uint64_t seed = 0);

    /// Child stream identified by an integer tag. Does not advance this stream.
    Stream split(std::uint64_t tag) const;
    Stream split(std::string_view tag) const;

    std::uint64_t next_u64();
    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on (0, 1), never returns an endpoint.
    double open_uniform();
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

    double normal();
    double normal(double mean, double sd) { return mean + sd * normal(); }
    /// Exponential with the given rate (mean 1/rate).
    double exponential(double rate);
    /// Gamma(shape, scale) via Marsaglia-Tsang; shape == 0 returns 0.
    double gamma(double shape, double scale);
    /// Standard normal conditioned on [-half_width, half_width].
    double truncated_standard_normal(double half_width);

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

private:
    Stream(std::uint64_t key, std::uint64_t counter, int) : key_(key), counter_(counter) {}

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace irgpucb
