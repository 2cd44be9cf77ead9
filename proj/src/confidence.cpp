#include "irgpucb/confidence.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "irgpucb/errors.hpp"
#include "irgpucb/stats.hpp"

namespace irgpucb {
namespace {

void require_iteration(int t) {
    if (t < 1) throw InputError("iteration must be >= 1, got " + std::to_string(t));
}

ScheduleValue clamp_nonnegative(double v) { return v < 0.0 ? ScheduleValue{0.0, true} : ScheduleValue{v, false}; }

const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

}  // namespace

DomainInfo DomainInfo::finite(std::uint64_t cardinality) {
    DomainInfo d{FiniteDomain{cardinality}};
    d.validate();
    return d;
}

DomainInfo DomainInfo::continuous(double a, double b, double r, int d) {
    DomainInfo info{ContinuousDomain{a, b, r, d}};
    info.validate();
    return info;
}

const FiniteDomain& DomainInfo::as_finite() const {
    if (!is_finite()) throw InputError("expected a finite domain");
    return std::get<FiniteDomain>(kind);
}

const ContinuousDomain& DomainInfo::as_continuous() const {
    if (is_finite()) throw InputError("expected a continuous domain");
    return std::get<ContinuousDomain>(kind);
}

void DomainInfo::validate() const {
    if (is_finite()) {
        if (std::get<FiniteDomain>(kind).cardinality < 1) throw InputError("domain cardinality must be >= 1");
        return;
    }
    const auto& c = std::get<ContinuousDomain>(kind);
    if (!(c.a > 0.0) || !(c.b > 0.0) || !(c.r > 0.0)) throw InputError("domain constants a, b, r must be positive");
    if (c.d < 1) throw InputError("domain dimension must be >= 1");
}

double lipschitz_factor(const ContinuousDomain& domain) {
    // log(a d) < 0 only when a d < 1; the tail bound then starts at L = 0.
    const double log_ad = std::log(domain.a * domain.d);
    return std::sqrt(std::max(0.0, log_ad)) + std::sqrt(std::numbers::pi) / 2.0;
}

double discretization_tau(const ContinuousDomain& domain, int t) {
    require_iteration(t);
    const double tt = static_cast<double>(t);
    return domain.b * domain.d * domain.r * tt * tt * lipschitz_factor(domain);
}

double log_discretization_size(const DomainInfo& domain, int t) {
    if (domain.is_finite()) return std::log(static_cast<double>(domain.as_finite().cardinality));
    const auto& c = domain.as_continuous();
    return c.d * std::log(std::ceil(discretization_tau(c, t)));
}

std::uint64_t discretization_size(const DomainInfo& domain, int t) {
    if (domain.is_finite()) return domain.as_finite().cardinality;
    const auto& c = domain.as_continuous();
    const double per_dim = std::ceil(discretization_tau(c, t));
    if (c.d * std::log2(per_dim) >= 64.0) throw InputError("discretization size overflows 64 bits");
    std::uint64_t n = 1;
    for (int j = 0; j < c.d; ++j) n *= static_cast<std::uint64_t>(per_dim);
    return n;
}

ScheduleValue beta_gpucb(const DomainInfo& domain, int t) {
    require_iteration(t);
    const double log_t2 = 2.0 * std::log(static_cast<double>(t));
    if (domain.is_finite()) {
        const double n = static_cast<double>(domain.as_finite().cardinality);
        return clamp_nonnegative(2.0 * (std::log(n) + log_t2 - kLogSqrt2Pi));
    }
    const auto& c = domain.as_continuous();
    return clamp_nonnegative(2.0 * c.d * std::log(discretization_tau(c, t)) + 2.0 * (log_t2 - kLogSqrt2Pi));
}

ShiftedExponentialParams irgpucb_params(const DomainInfo& domain, const IrgpucbMode& mode) {
    double s = 0.0;
    if (std::holds_alternative<IrgpucbFinite>(mode) ||
        (std::holds_alternative<IrgpucbAccuracy>(mode) && domain.is_finite())) {
        if (std::holds_alternative<IrgpucbAccuracy>(mode) && !(std::get<IrgpucbAccuracy>(mode).eta > 0.0))
            throw InputError("accuracy eta must be positive");
        s = 2.0 * std::log(static_cast<double>(domain.as_finite().cardinality) / 2.0);
    } else if (const auto* at = std::get_if<IrgpucbAtIteration>(&mode)) {
        const auto& c = domain.as_continuous();
        s = 2.0 * c.d * std::log(discretization_tau(c, at->t)) - 2.0 * std::numbers::ln2;
    } else {
        const double eta = std::get<IrgpucbAccuracy>(mode).eta;
        if (!(eta > 0.0)) throw InputError("accuracy eta must be positive");
        const auto& c = domain.as_continuous();
        s = 2.0 * c.d * std::log(2.0 * c.b * c.d * c.r * lipschitz_factor(c) / eta) - 2.0 * std::numbers::ln2;
    }
    const auto v = clamp_nonnegative(s);
    return {v.value, 0.5, v.clamped};
}

double gamma_kappa_from_log(double log_domain_size, int t, double theta) {
    require_iteration(t);
    if (!(theta > 0.0)) throw InputError("gamma scale theta must be positive");
    const double tt = static_cast<double>(t);
    return (log_domain_size + std::log(tt * tt)) / std::log1p(theta / 2.0);
}

double gamma_kappa(double domain_size, int t, double theta) {
    if (!(domain_size >= 1.0)) throw InputError("domain size must be >= 1");
    return gamma_kappa_from_log(std::log(domain_size), t, theta);
}

double sample(const ZetaLaw& law, Stream& stream) {
    return std::visit(
        [&](const auto& l) -> double {
            using L = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<L, PointMass>) {
                return l.value;
            } else if constexpr (std::is_same_v<L, GammaLaw>) {
                return stream.gamma(l.shape, l.scale);
            } else if constexpr (std::is_same_v<L, ShiftedExponential>) {
                return l.shift + stream.exponential(l.rate);
            } else {
                return l.mean + stream.truncated_standard_normal(1.0);
            }
        },
        law);
}

double expectation(const ZetaLaw& law) {
    return std::visit(
        [](const auto& l) -> double {
            using L = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<L, PointMass>) {
                throw ContractError("a deterministic confidence parameter has no distribution");
            } else if constexpr (std::is_same_v<L, GammaLaw>) {
                return l.shape * l.scale;
            } else if constexpr (std::is_same_v<L, ShiftedExponential>) {
                return l.shift + 1.0 / l.rate;
            } else {
                return l.mean;
            }
        },
        law);
}

double mgf_at_minus_half(const ZetaLaw& law) {
    return std::visit(
        [](const auto& l) -> double {
            using L = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<L, PointMass>) {
                throw ContractError("a deterministic confidence parameter has no distribution");
            } else if constexpr (std::is_same_v<L, GammaLaw>) {
                return std::pow(1.0 + l.scale / 2.0, -l.shape);
            } else if constexpr (std::is_same_v<L, ShiftedExponential>) {
                return l.rate / (l.rate + 0.5) * std::exp(-l.shift / 2.0);
            } else {
                const double ratio =
                    (normal_cdf(1.5) - normal_cdf(-0.5)) / (normal_cdf(1.0) - normal_cdf(-1.0));
                return std::exp(-l.mean / 2.0 + 0.125) * ratio;
            }
        },
        law);
}

std::string_view to_string(ScheduleKind kind) {
    switch (kind) {
        case ScheduleKind::DeterministicFinite: return "deterministic_finite";
        case ScheduleKind::DeterministicContinuous: return "deterministic_continuous";
        case ScheduleKind::Gamma: return "gamma";
        case ScheduleKind::TwoParamExpFinite: return "two_param_exp_finite";
        case ScheduleKind::TwoParamExpContinuous: return "two_param_exp_continuous";
        case ScheduleKind::TwoParamExpAccuracy: return "two_param_exp_accuracy";
        case ScheduleKind::TruncNormal: return "trunc_normal";
        case ScheduleKind::FixedHeuristic: return "fixed_heuristic";
        case ScheduleKind::HeuristicGamma: return "heuristic_gamma";
        case ScheduleKind::HeuristicTwoParamExp: return "heuristic_two_param_exp";
    }
    return "?";
}

ScheduleKind parse_schedule_kind(std::string_view name) {
    for (auto kind : {ScheduleKind::DeterministicFinite, ScheduleKind::DeterministicContinuous, ScheduleKind::Gamma,
                      ScheduleKind::TwoParamExpFinite, ScheduleKind::TwoParamExpContinuous,
                      ScheduleKind::TwoParamExpAccuracy, ScheduleKind::TruncNormal, ScheduleKind::FixedHeuristic,
                      ScheduleKind::HeuristicGamma, ScheduleKind::HeuristicTwoParamExp}) {
        if (to_string(kind) == name) return kind;
    }
    throw InputError("unknown confidence schedule '" + std::string(name) + "'");
}

bool ConfidenceSchedule::randomized() const {
    switch (kind) {
        case ScheduleKind::DeterministicFinite:
        case ScheduleKind::DeterministicContinuous:
        case ScheduleKind::FixedHeuristic: return false;
        default: return true;
    }
}

void ConfidenceSchedule::validate() const {
    domain.validate();
    switch (kind) {
        case ScheduleKind::DeterministicFinite:
        case ScheduleKind::TwoParamExpFinite:
            if (!domain.is_finite()) throw InputError(std::string(to_string(kind)) + " needs a finite domain");
            break;
        case ScheduleKind::DeterministicContinuous:
        case ScheduleKind::TwoParamExpContinuous:
            if (domain.is_finite()) throw InputError(std::string(to_string(kind)) + " needs a continuous domain");
            break;
        case ScheduleKind::TwoParamExpAccuracy:
            if (!(eta > 0.0)) throw InputError("accuracy eta must be positive");
            break;
        case ScheduleKind::Gamma:
            if (!(theta > 0.0)) throw InputError("gamma scale theta must be positive");
            break;
        case ScheduleKind::FixedHeuristic:
        case ScheduleKind::HeuristicGamma:
        case ScheduleKind::HeuristicTwoParamExp:
            if (dim < 1) throw InputError("heuristic schedules need dim >= 1");
            if (!(heuristic_c >= 0.0)) throw InputError("heuristic constant must be non-negative");
            break;
        case ScheduleKind::TruncNormal: break;
    }
}

ScheduleValue deterministic_beta(const ConfidenceSchedule& schedule, int t) {
    require_iteration(t);
    switch (schedule.kind) {
        case ScheduleKind::DeterministicFinite:
            schedule.domain.as_finite();
            return beta_gpucb(schedule.domain, t);
        case ScheduleKind::DeterministicContinuous:
            schedule.domain.as_continuous();
            return beta_gpucb(schedule.domain, t);
        case ScheduleKind::FixedHeuristic:
            return clamp_nonnegative(schedule.heuristic_c * schedule.dim * std::log(2.0 * t));
        default: throw ContractError(std::string(to_string(schedule.kind)) + " is not deterministic");
    }
}

ZetaLaw zeta_law(const ConfidenceSchedule& schedule, int t) {
    require_iteration(t);
    switch (schedule.kind) {
        case ScheduleKind::DeterministicFinite:
        case ScheduleKind::DeterministicContinuous:
        case ScheduleKind::FixedHeuristic: return PointMass{deterministic_beta(schedule, t).value};
        case ScheduleKind::Gamma:
            return GammaLaw{gamma_kappa_from_log(log_discretization_size(schedule.domain, t), t, schedule.theta),
                            schedule.theta};
        case ScheduleKind::TwoParamExpFinite: {
            const auto p = irgpucb_params(schedule.domain, IrgpucbFinite{});
            return ShiftedExponential{p.shift, p.rate};
        }
        case ScheduleKind::TwoParamExpContinuous: {
            const auto p = irgpucb_params(schedule.domain, IrgpucbAtIteration{t});
            return ShiftedExponential{p.shift, p.rate};
        }
        case ScheduleKind::TwoParamExpAccuracy: {
            const auto p = irgpucb_params(schedule.domain, IrgpucbAccuracy{schedule.eta});
            return ShiftedExponential{p.shift, p.rate};
        }
        case ScheduleKind::TruncNormal: {
            const double tt = static_cast<double>(t);
            return TruncatedNormalLaw{2.0 * (log_discretization_size(schedule.domain, t) + std::log(tt * tt)) + 1.0};
        }
        case ScheduleKind::HeuristicGamma:
            return GammaLaw{schedule.heuristic_c * schedule.dim * std::log(2.0 * t), 1.0};
        case ScheduleKind::HeuristicTwoParamExp: return ShiftedExponential{schedule.dim / 2.0, 0.5};
    }
    throw ContractError("unhandled schedule kind");
}

double sample_zeta(const ConfidenceSchedule& schedule, int t, Stream& stream) {
    return sample(zeta_law(schedule, t), stream);
}

double expected_zeta(const ConfidenceSchedule& schedule, int t) { return expectation(zeta_law(schedule, t)); }

double mgf_at_minus_half(const ConfidenceSchedule& schedule, int t) {
    return mgf_at_minus_half(zeta_law(schedule, t));
}

}  // namespace irgpucb
