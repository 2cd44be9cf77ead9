#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "irgpucb/random.hpp"

namespace irgpucb {

struct FiniteDomain {
    std::uint64_t cardinality = 1;
};

/// Continuous box [0, r]^d whose sample-path derivatives satisfy
/// Pr(sup |df/dx_j| > L) <= a exp(-(L/b)^2).
struct ContinuousDomain {
    double a = 1.0;
    double b = 1.0;
    double r = 1.0;
    int d = 1;
};

struct DomainInfo {
    std::variant<FiniteDomain, ContinuousDomain> kind;

    static DomainInfo finite(std::uint64_t cardinality);
    static DomainInfo continuous(double a, double b, double r, int d);

    bool is_finite() const { return std::holds_alternative<FiniteDomain>(kind); }
    const FiniteDomain& as_finite() const;
    const ContinuousDomain& as_continuous() const;
    void validate() const;
};

/// A schedule value that may have been clamped up to zero.
struct ScheduleValue {
    double value = 0.0;
    bool clamped = false;
};

/// sqrt(max(0, log(a d))) + sqrt(pi) / 2, the expected-Lipschitz factor.
double lipschitz_factor(const ContinuousDomain& domain);

/// tau_t = b d r t^2 (sqrt(log(a d)) + sqrt(pi)/2): grid points per dimension.
double discretization_tau(const ContinuousDomain& domain, int t);

/// ceil(tau_t)^d for continuous domains, |X| for finite ones. Throws InputError
/// if the count does not fit in 64 bits.
std::uint64_t discretization_size(const DomainInfo& domain, int t);

/// log of discretization_size, computed without forming the count.
double log_discretization_size(const DomainInfo& domain, int t);

/// Theoretical GP-UCB confidence parameter.
///   finite:     2 log(|X| t^2 / sqrt(2 pi))
///   continuous: 2 d log(b d r t^2 (sqrt(log(a d)) + sqrt(pi)/2)) + 2 log(t^2 / sqrt(2 pi))
ScheduleValue beta_gpucb(const DomainInfo& domain, int t);

struct IrgpucbFinite {};
struct IrgpucbAtIteration {
    int t = 1;
};
struct IrgpucbAccuracy {
    double eta = 1.0;
};
using IrgpucbMode = std::variant<IrgpucbFinite, IrgpucbAtIteration, IrgpucbAccuracy>;

struct ShiftedExponentialParams {
    double shift = 0.0;
    double rate = 0.5;
    bool clamped = false;
};

/// Shift and rate of the two-parameter exponential used by IRGP-UCB.
///   finite:      s = 2 log(|X| / 2)
///   iteration t: s_t = 2 d log(b d r t^2 (...)) - 2 log 2
///   accuracy:    s_eta = 2 d log(2 b d r (...) / eta) - 2 log 2
/// The rate is always 1/2. Negative shifts are clamped to 0 and flagged.
/// Accuracy mode on a finite domain uses the finite shift.
ShiftedExponentialParams irgpucb_params(const DomainInfo& domain, const IrgpucbMode& mode);

/// Gamma shape log(|X_t| t^2) / log(1 + theta/2), which makes the Gamma MGF at
/// -1/2 equal 1 / (|X_t| t^2).
double gamma_kappa(double domain_size, int t, double theta);
double gamma_kappa_from_log(double log_domain_size, int t, double theta);

// Laws of the confidence parameter at a given iteration.
struct PointMass {
    double value = 0.0;
};
struct GammaLaw {
    double shape = 1.0;
    double scale = 1.0;
};
struct ShiftedExponential {
    double shift = 0.0;
    double rate = 0.5;
};
/// Unit-variance normal centred at `mean`, truncated to [mean - 1, mean + 1].
struct TruncatedNormalLaw {
    double mean = 1.0;
};
using ZetaLaw = std::variant<PointMass, GammaLaw, ShiftedExponential, TruncatedNormalLaw>;

double sample(const ZetaLaw& law, Stream& stream);
/// Throws ContractError for PointMass.
double expectation(const ZetaLaw& law);
/// E[exp(-zeta / 2)]; throws ContractError for PointMass.
double mgf_at_minus_half(const ZetaLaw& law);

enum class ScheduleKind {
    DeterministicFinite,
    DeterministicContinuous,
    Gamma,
    TwoParamExpFinite,
    TwoParamExpContinuous,
    TwoParamExpAccuracy,
    TruncNormal,
    FixedHeuristic,
    HeuristicGamma,
    HeuristicTwoParamExp,
};

std::string_view to_string(ScheduleKind kind);
ScheduleKind parse_schedule_kind(std::string_view name);

/// Deterministic or randomized generator of the UCB confidence parameter.
struct ConfidenceSchedule {
    ScheduleKind kind = ScheduleKind::TwoParamExpFinite;
    DomainInfo domain = DomainInfo::finite(1);
    /// Gamma scale (also inside the shape's log term).
    double theta = 1.0;
    /// Required accuracy for TwoParamExpAccuracy.
    double eta = 1.0;
    /// Heuristic multiplier: beta_t = c d log(2t), kappa_t = c d log(2t).
    double heuristic_c = 0.2;
    /// Input dimension used by the heuristic variants.
    int dim = 1;

    bool randomized() const;
    /// Throws InputError when the domain kind or parameters do not fit the variant.
    void validate() const;
};

ZetaLaw zeta_law(const ConfidenceSchedule& schedule, int t);
double sample_zeta(const ConfidenceSchedule& schedule, int t, Stream& stream);
double expected_zeta(const ConfidenceSchedule& schedule, int t);
double mgf_at_minus_half(const ConfidenceSchedule& schedule, int t);

/// Deterministic variants only; throws ContractError otherwise.
ScheduleValue deterministic_beta(const ConfidenceSchedule& schedule, int t);

}  // namespace irgpucb
