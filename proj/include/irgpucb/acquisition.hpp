#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Core>

#include "irgpucb/confidence.hpp"
#include "irgpucb/gp.hpp"
#include "irgpucb/random.hpp"

namespace irgpucb {

enum class CandidateProvenance { ExplicitGrid, SampledPool };

/// Finite set of points the acquisition argmax runs over.
struct CandidateSet {
    Points points;
    CandidateProvenance provenance = CandidateProvenance::ExplicitGrid;
    /// Box every candidate lies in.
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    /// Only meaningful for sampled pools.
    std::uint64_t pool_seed = 0;

    Eigen::Index size() const { return points.rows(); }
    int dim() const { return static_cast<int>(points.cols()); }

    /// Explicit point list; the box is the points' bounding box.
    static CandidateSet from_points(Points points);
    /// Cartesian grid with n_per_dim equally spaced values in [lo, hi] per dimension,
    /// the last dimension varying fastest.
    static CandidateSet regular_grid(int dim, int n_per_dim, double lo, double hi);
    /// Digitally scrambled Sobol points in the unit box.
    static CandidateSet sobol_pool(int dim, Eigen::Index size, std::uint64_t seed);

    /// Throws InputError when empty or a point lies outside [lower, upper].
    void validate() const;
};

/// Maximum dimension supported by sobol_points.
inline constexpr int kMaxSobolDim = 12;

/// First n Sobol points in [0,1)^dim, XOR-scrambled with a seed-derived mask per dimension.
Points sobol_points(int dim, Eigen::Index n, std::uint64_t seed);

/// mu(x) + sqrt(zeta) sigma(x) for every candidate.
Eigen::VectorXd ucb_scores(const BatchPrediction& prediction, double zeta);
Eigen::VectorXd ucb_scores(const Posterior& posterior, const CandidateSet& candidates, double zeta);

/// Expected improvement over `incumbent`; max(0, mu - incumbent) where sigma = 0.
Eigen::VectorXd ei_scores(const BatchPrediction& prediction, double incumbent);
Eigen::VectorXd ei_scores(const Posterior& posterior, const CandidateSet& candidates, double incumbent);

/// Index of the largest entry; ties go to the lowest index.
Eigen::Index argmax_lowest(const Eigen::Ref<const Eigen::VectorXd>& scores);

enum class PolicyKind { UCB, EI, TS };

struct Policy {
    PolicyKind kind = PolicyKind::UCB;
    std::optional<ConfidenceSchedule> schedule;

    static Policy ucb(ConfidenceSchedule schedule);
    static Policy ei() { return {PolicyKind::EI, std::nullopt}; }
    static Policy ts() { return {PolicyKind::TS, std::nullopt}; }

    /// "ucb:<schedule>", "ei" or "ts".
    std::string label() const;
    void validate() const;
};

struct Selection {
    Eigen::Index index = 0;
    /// Confidence parameter used, UCB only.
    std::optional<double> zeta;
    /// Posterior prediction at the chosen candidate.
    Prediction at_choice;
};

/// Cached prior factor for Thompson sampling when every training input is a candidate.
struct ThompsonContext {
    const CandidatePrior* prior = nullptr;
    std::span<const Eigen::Index> observed;
};

/// One acquisition step at iteration t. UCB draws zeta exactly once; TS draws
/// one joint posterior sample (pathwise when `ts` is given); EI uses the best
/// observed target as incumbent.
Selection select_next(const Policy& policy, const Posterior& posterior, const CandidateSet& candidates, int t,
                      Stream& stream, const ThompsonContext* ts = nullptr);

}  // namespace irgpucb
