#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <Eigen/Core>

#include "irgpucb/acquisition.hpp"
#include "irgpucb/kernel.hpp"
#include "irgpucb/random.hpp"

namespace irgpucb {

enum class Benchmark { HolderTable, CrossInTray, Ackley };

std::string_view to_string(Benchmark b);
/// Accepts "holder_table", "cross_in_tray", "ackley".
Benchmark parse_benchmark(std::string_view name);

struct BenchmarkInfo {
    int dim;
    double lower;
    double upper;
    /// Global maximum of the negated function.
    double max_value;
};
BenchmarkInfo benchmark_info(Benchmark b);

/// Negated standard test function, so the global optimum is a maximum.
/// Throws InputError outside the standard box or on a dimension mismatch.
double eval_benchmark(Benchmark b, const Eigen::Ref<const Eigen::VectorXd>& x);

struct GpSamplePath {
    Eigen::VectorXd values;
    KernelSpec kernel;
    std::uint64_t seed = 0;
};

struct AnalyticBenchmark {
    Benchmark name = Benchmark::HolderTable;
    /// Candidates live in the unit cube and are mapped onto the benchmark box.
    bool normalized = true;
};

struct Tabular {
    /// Feature columns as read from the file, before any normalization.
    Points raw_features;
    Eigen::VectorXd values;
    std::vector<std::string> header;
    bool normalized = true;
};

/// Black-box function over a finite candidate set with Gaussian observation noise.
struct Objective {
    std::variant<GpSamplePath, AnalyticBenchmark, Tabular> kind;
    CandidateSet candidates;
    double noise_variance = 0.0;
    /// Best noiseless value: the grid/table maximum, or the analytic optimum for benchmarks.
    double true_max = 0.0;

    Eigen::Index size() const { return candidates.size(); }
    int dim() const { return candidates.dim(); }
    std::string description() const;
};

/// Exact prior draw over the grid (Cholesky with the fixed prior jitter).
Objective sample_gp_function(const KernelSpec& kernel, const CandidateSet& grid, Stream& stream,
                             double noise_variance = 0.0);

/// Benchmark objective over a Sobol pool of `pool_size` points.
Objective make_benchmark(Benchmark name, Eigen::Index pool_size, std::uint64_t pool_seed, double noise_variance,
                         bool normalize = true);

/// CSV with a header, d feature columns then one target column, at least two rows.
/// Features are min-max scaled to [0,1] per column when `normalize` is set
/// (constant columns map to 0).
Objective load_tabular(const std::filesystem::path& path, double noise_variance = 0.0, bool normalize = true);
Objective tabular_from_data(Points features, Eigen::VectorXd values, double noise_variance = 0.0,
                            bool normalize = true, std::vector<std::string> header = {});
/// Writes raw features and targets with round-trip precision.
void export_tabular(const Objective& objective, const std::filesystem::path& path);

/// Noise-free value at candidate `id`.
double noiseless(const Objective& objective, Eigen::Index id);
/// Noise-free value at an arbitrary point; benchmarks only (unit-cube coordinates when normalized).
double noiseless_at(const Objective& objective, const Eigen::Ref<const Eigen::VectorXd>& x);

/// f(candidate) + N(0, noise_variance). Throws InputError for an unknown id.
double observe(const Objective& objective, Eigen::Index id, Stream& stream);
double observe_at(const Objective& objective, const Eigen::Ref<const Eigen::VectorXd>& x, Stream& stream);

}  // namespace irgpucb
