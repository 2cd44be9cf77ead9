#include "irgpucb/acquisition.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "irgpucb/errors.hpp"
#include "irgpucb/stats.hpp"

namespace irgpucb {
namespace {

// Primitive polynomial degree, coefficients and initial direction numbers
// (Joe & Kuo) for dimensions 2..12; dimension 1 is the van der Corput sequence.
struct SobolPoly {
    unsigned degree;
    unsigned coeffs;
    std::array<unsigned, 5> m;
};

constexpr std::array<SobolPoly, kMaxSobolDim - 1> kSobolPolys{{
    {1, 0, {1, 0, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0, 0}},
    {3, 1, {1, 3, 1, 0, 0}},
    {3, 2, {1, 1, 1, 0, 0}},
    {4, 1, {1, 1, 3, 3, 0}},
    {4, 4, {1, 3, 5, 13, 0}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
}};

constexpr unsigned kBits = 32;

std::array<std::uint32_t, kBits> direction_numbers(int dim_index) {
    std::array<std::uint32_t, kBits> v{};
    if (dim_index == 0) {
        for (unsigned i = 0; i < kBits; ++i) v[i] = 1U << (kBits - 1 - i);
        return v;
    }
    const auto& p = kSobolPolys[static_cast<std::size_t>(dim_index - 1)];
    for (unsigned i = 0; i < p.degree; ++i) v[i] = p.m[i] << (kBits - 1 - i);
    for (unsigned i = p.degree; i < kBits; ++i) {
        std::uint32_t value = v[i - p.degree] ^ (v[i - p.degree] >> p.degree);
        for (unsigned k = 1; k < p.degree; ++k)
            if ((p.coeffs >> (p.degree - 1 - k)) & 1U) value ^= v[i - k];
        v[i] = value;
    }
    return v;
}

}  // namespace

Points sobol_points(int dim, Eigen::Index n, std::uint64_t seed) {
    if (dim < 1 || dim > kMaxSobolDim)
        throw InputError("Sobol pools support 1.." + std::to_string(kMaxSobolDim) + " dimensions, got " +
                         std::to_string(dim));
    if (n < 0 || n > (Eigen::Index{1} << 31)) throw InputError("Sobol pool size out of range");
    Points P(n, dim);
    Stream scramble = Stream(seed).split("sobol-scramble");
    for (int j = 0; j < dim; ++j) {
        const auto v = direction_numbers(j);
        const auto mask = static_cast<std::uint32_t>(scramble.next_u64() >> 32);
        std::uint32_t x = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            P(i, j) = static_cast<double>(x ^ mask) * 0x1.0p-32;
            // Gray-code update: flip the direction number of the lowest zero bit of i.
            unsigned c = 0;
            for (auto k = static_cast<std::uint64_t>(i); k & 1U; k >>= 1) ++c;
            if (c < kBits) x ^= v[c];
        }
    }
    return P;
}

CandidateSet CandidateSet::from_points(Points points) {
    CandidateSet c;
    if (points.rows() == 0) throw InputError("candidate set must be non-empty");
    c.lower = points.colwise().minCoeff().transpose();
    c.upper = points.colwise().maxCoeff().transpose();
    c.points = std::move(points);
    c.provenance = CandidateProvenance::ExplicitGrid;
    return c;
}

CandidateSet CandidateSet::regular_grid(int dim, int n_per_dim, double lo, double hi) {
    if (dim < 1 || n_per_dim < 1) throw InputError("grid needs dim >= 1 and at least one point per dimension");
    const double n_total = std::pow(static_cast<double>(n_per_dim), dim);
    if (n_total > 1e7) throw InputError("grid too large");
    const auto n = static_cast<Eigen::Index>(n_total);
    const double step = n_per_dim > 1 ? (hi - lo) / (n_per_dim - 1) : 0.0;
    CandidateSet c;
    c.points.resize(n, dim);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index rem = i;
        for (int j = dim - 1; j >= 0; --j) {
            c.points(i, j) = lo + step * static_cast<double>(rem % n_per_dim);
            rem /= n_per_dim;
        }
    }
    c.lower = Eigen::VectorXd::Constant(dim, lo);
    c.upper = Eigen::VectorXd::Constant(dim, hi);
    c.provenance = CandidateProvenance::ExplicitGrid;
    return c;
}

CandidateSet CandidateSet::sobol_pool(int dim, Eigen::Index size, std::uint64_t seed) {
    if (size < 1) throw InputError("candidate pool size must be >= 1");
    CandidateSet c;
    c.points = sobol_points(dim, size, seed);
    c.lower = Eigen::VectorXd::Zero(dim);
    c.upper = Eigen::VectorXd::Ones(dim);
    c.provenance = CandidateProvenance::SampledPool;
    c.pool_seed = seed;
    return c;
}

void CandidateSet::validate() const {
    if (points.rows() == 0) throw InputError("candidate set must be non-empty");
    if (lower.size() != points.cols() || upper.size() != points.cols())
        throw InputError("candidate box dimension does not match the points");
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        for (Eigen::Index j = 0; j < points.cols(); ++j)
            if (points(i, j) < lower[j] || points(i, j) > upper[j])
                throw InputError("candidate " + std::to_string(i) + " lies outside the domain box");
}

Eigen::VectorXd ucb_scores(const BatchPrediction& prediction, double zeta) {
    if (!(zeta >= 0.0)) throw InputError("confidence parameter must be non-negative");
    return prediction.mean + std::sqrt(zeta) * prediction.variance.cwiseSqrt();
}

Eigen::VectorXd ucb_scores(const Posterior& posterior, const CandidateSet& candidates, double zeta) {
    return ucb_scores(posterior.predict(candidates.points), zeta);
}

Eigen::VectorXd ei_scores(const BatchPrediction& prediction, double incumbent) {
    const Eigen::Index m = prediction.mean.size();
    Eigen::VectorXd out(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double mu = prediction.mean[i];
        const double sd = std::sqrt(prediction.variance[i]);
        if (incumbent == -std::numeric_limits<double>::infinity()) {
            out[i] = std::numeric_limits<double>::infinity();
        } else if (sd <= 0.0) {
            out[i] = std::max(0.0, mu - incumbent);
        } else {
            const double z = (mu - incumbent) / sd;
            out[i] = std::max(0.0, sd * (z * normal_cdf(z) + normal_pdf(z)));
        }
    }
    return out;
}

Eigen::VectorXd ei_scores(const Posterior& posterior, const CandidateSet& candidates, double incumbent) {
    return ei_scores(posterior.predict(candidates.points), incumbent);
}

Eigen::Index argmax_lowest(const Eigen::Ref<const Eigen::VectorXd>& scores) {
    if (scores.size() == 0) throw InputError("argmax over an empty score vector");
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[best]) best = i;
    return best;
}

Policy Policy::ucb(ConfidenceSchedule schedule) { return {PolicyKind::UCB, std::move(schedule)}; }

std::string Policy::label() const {
    switch (kind) {
        case PolicyKind::UCB: return "ucb:" + std::string(schedule ? to_string(schedule->kind) : "?");
        case PolicyKind::EI: return "ei";
        case PolicyKind::TS: return "ts";
    }
    return "?";
}

void Policy::validate() const {
    if (kind == PolicyKind::UCB) {
        if (!schedule) throw InputError("UCB policy needs a confidence schedule");
        schedule->validate();
    } else if (schedule) {
        throw InputError(label() + " policy does not take a confidence schedule");
    }
}

Selection select_next(const Policy& policy, const Posterior& posterior, const CandidateSet& candidates, int t,
                      Stream& stream, const ThompsonContext* ts) {
    if (t < 1) throw InputError("iteration must be >= 1");
    if (candidates.size() == 0) throw InputError("candidate set must be non-empty");
    const auto pred = posterior.predict(candidates.points);
    Selection sel;
    switch (policy.kind) {
        case PolicyKind::UCB: {
            if (!policy.schedule) throw InputError("UCB policy needs a confidence schedule");
            const double zeta = sample_zeta(*policy.schedule, t, stream);
            sel.index = argmax_lowest(ucb_scores(pred, zeta));
            sel.zeta = zeta;
            break;
        }
        case PolicyKind::EI: {
            const auto& y = posterior.targets();
            const double incumbent = y.size() > 0 ? y.maxCoeff() : -std::numeric_limits<double>::infinity();
            sel.index = argmax_lowest(ei_scores(pred, incumbent));
            break;
        }
        case PolicyKind::TS: {
            const Eigen::MatrixXd draw =
                ts && ts->prior ? sample_joint_pathwise(posterior, *ts->prior, candidates.points, ts->observed, 1, stream)
                                : sample_joint(posterior, candidates.points, 1, stream);
            sel.index = argmax_lowest(draw.row(0).transpose());
            break;
        }
    }
    sel.at_choice = {pred.mean[sel.index], pred.variance[sel.index]};
    return sel;
}

}  // namespace irgpucb
