#include "irgpucb/objective.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "irgpucb/errors.hpp"
#include "irgpucb/gp.hpp"

namespace irgpucb {

std::string_view to_string(Benchmark b) {
    switch (b) {
        case Benchmark::HolderTable: return "holder_table";
        case Benchmark::CrossInTray: return "cross_in_tray";
        case Benchmark::Ackley: return "ackley";
    }
    return "?";
}

Benchmark parse_benchmark(std::string_view name) {
    if (name == "holder_table") return Benchmark::HolderTable;
    if (name == "cross_in_tray") return Benchmark::CrossInTray;
    if (name == "ackley") return Benchmark::Ackley;
    throw InputError("unknown benchmark '" + std::string(name) + "'");
}

BenchmarkInfo benchmark_info(Benchmark b) {
    switch (b) {
        case Benchmark::HolderTable: return {2, -10.0, 10.0, 19.2085};
        case Benchmark::CrossInTray: return {2, -10.0, 10.0, 2.06261};
        case Benchmark::Ackley: return {4, -32.768, 32.768, 0.0};
    }
    throw InputError("unknown benchmark");
}

double eval_benchmark(Benchmark b, const Eigen::Ref<const Eigen::VectorXd>& x) {
    const auto info = benchmark_info(b);
    if (x.size() != info.dim)
        throw InputError(std::string(to_string(b)) + " expects dimension " + std::to_string(info.dim));
    for (Eigen::Index j = 0; j < x.size(); ++j)
        if (!(x[j] >= info.lower && x[j] <= info.upper))
            throw InputError(std::string(to_string(b)) + ": coordinate " + std::to_string(j) + " = " +
                             std::to_string(x[j]) + " outside the domain box");
    using std::numbers::pi;
    switch (b) {
        case Benchmark::HolderTable: {
            const double r = std::hypot(x[0], x[1]);
            return std::abs(std::sin(x[0]) * std::cos(x[1]) * std::exp(std::abs(1.0 - r / pi)));
        }
        case Benchmark::CrossInTray: {
            const double r = std::hypot(x[0], x[1]);
            const double inner = std::abs(std::sin(x[0]) * std::sin(x[1]) * std::exp(std::abs(100.0 - r / pi))) + 1.0;
            return 0.0001 * std::pow(inner, 0.1);
        }
        case Benchmark::Ackley: {
            constexpr double a = 20.0;
            constexpr double bb = 0.2;
            constexpr double c = 2.0 * pi;
            const double n = static_cast<double>(x.size());
            const double sq = x.squaredNorm() / n;
            const double cs = (c * x.array()).cos().sum() / n;
            // -(-a exp(-b sqrt(sq)) - exp(cs) + a + e), arranged to give exactly 0 at the origin.
            return a * std::expm1(-bb * std::sqrt(sq)) + (std::exp(cs) - std::numbers::e);
        }
    }
    return 0.0;
}

std::string Objective::description() const {
    return std::visit(
        [&](const auto& k) -> std::string {
            using K = std::decay_t<decltype(k)>;
            std::ostringstream os;
            if constexpr (std::is_same_v<K, GpSamplePath>) {
                os << "gp_sample_path(n=" << size() << ", d=" << dim() << ", seed=" << k.seed << ")";
            } else if constexpr (std::is_same_v<K, AnalyticBenchmark>) {
                os << to_string(k.name) << "(pool=" << size() << (k.normalized ? ", normalized" : "") << ")";
            } else {
                os << "tabular(n=" << size() << ", d=" << dim() << (k.normalized ? ", normalized" : "") << ")";
            }
            return os.str();
        },
        kind);
}

Objective sample_gp_function(const KernelSpec& kernel, const CandidateSet& grid, Stream& stream,
                             double noise_variance) {
    if (grid.size() < 1) throw InputError("GP sample path needs a non-empty grid");
    if (noise_variance < 0.0) throw InputError("noise variance must be non-negative");
    const auto factor = jittered_cholesky(gram_matrix(kernel, grid.points), kPriorJitter);
    Eigen::VectorXd z(grid.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = stream.normal();
    Eigen::VectorXd values = factor.llt.matrixL() * z;
    Objective obj;
    obj.true_max = values.maxCoeff();
    obj.kind = GpSamplePath{std::move(values), kernel, stream.key()};
    obj.candidates = grid;
    obj.noise_variance = noise_variance;
    return obj;
}

namespace {

Eigen::VectorXd to_benchmark_box(Benchmark b, const Eigen::Ref<const Eigen::VectorXd>& unit) {
    const auto info = benchmark_info(b);
    Eigen::VectorXd x = info.lower + (info.upper - info.lower) * unit.array();
    // Guard rounding at the upper edge.
    return x.cwiseMax(info.lower).cwiseMin(info.upper);
}

}  // namespace

Objective make_benchmark(Benchmark name, Eigen::Index pool_size, std::uint64_t pool_seed, double noise_variance,
                         bool normalize) {
    if (noise_variance < 0.0) throw InputError("noise variance must be non-negative");
    const auto info = benchmark_info(name);
    Objective obj;
    obj.candidates = CandidateSet::sobol_pool(info.dim, pool_size, pool_seed);
    if (!normalize) {
        obj.candidates.points = (info.lower + (info.upper - info.lower) * obj.candidates.points.array()).matrix();
        obj.candidates.lower.setConstant(info.lower);
        obj.candidates.upper.setConstant(info.upper);
    }
    obj.kind = AnalyticBenchmark{name, normalize};
    obj.noise_variance = noise_variance;
    obj.true_max = info.max_value;
    return obj;
}

Objective tabular_from_data(Points features, Eigen::VectorXd values, double noise_variance, bool normalize,
                            std::vector<std::string> header) {
    if (features.rows() != values.size()) throw InputError("feature and target row counts differ");
    if (features.rows() < 2) throw InputError("tabular data needs at least two rows");
    if (features.cols() < 1) throw InputError("tabular data needs at least one feature column");
    if (noise_variance < 0.0) throw InputError("noise variance must be non-negative");
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i])) throw InputError("row " + std::to_string(i + 1) + ": target is not finite");

    Points points = features;
    if (normalize) {
        const Eigen::RowVectorXd lo = features.colwise().minCoeff();
        const Eigen::RowVectorXd span = features.colwise().maxCoeff() - lo;
        for (Eigen::Index j = 0; j < points.cols(); ++j) {
            if (span[j] > 0.0)
                points.col(j) = ((features.col(j).array() - lo[j]) / span[j]).min(1.0).max(0.0);
            else
                points.col(j).setZero();
        }
    }
    Objective obj;
    obj.candidates = CandidateSet::from_points(std::move(points));
    obj.true_max = values.maxCoeff();
    obj.kind = Tabular{std::move(features), std::move(values), std::move(header), normalize};
    obj.noise_variance = noise_variance;
    return obj;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(const std::string& s) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    if (begin != end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return v;
}

}  // namespace

Objective load_tabular(const std::filesystem::path& path, double noise_variance, bool normalize) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open tabular file " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw InputError(path.string() + ": empty file");
    std::vector<std::string> header;
    for (auto& h : split_csv_line(line)) header.push_back(trim(h));
    if (header.size() < 2) throw InputError(path.string() + ": need at least one feature column and a target column");
    const std::size_t d = header.size() - 1;

    std::vector<std::vector<double>> rows;
    std::vector<double> targets;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        const std::size_t row_no = rows.size() + 1;
        if (cells.size() != header.size())
            throw InputError(path.string() + ": row " + std::to_string(row_no) + " (line " + std::to_string(line_no) +
                             ") has " + std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(header.size()));
        std::vector<double> row(d);
        for (std::size_t j = 0; j <= d; ++j) {
            const auto v = parse_double(trim(cells[j]));
            if (!v)
                throw InputError(path.string() + ": row " + std::to_string(row_no) + " (line " +
                                 std::to_string(line_no) + ") column '" + header[j] + "' is not numeric: '" +
                                 cells[j] + "'");
            if (j < d) {
                if (!std::isfinite(*v))
                    throw InputError(path.string() + ": row " + std::to_string(row_no) + " feature '" + header[j] +
                                     "' is not finite");
                row[j] = *v;
            } else {
                if (std::isnan(*v) || !std::isfinite(*v))
                    throw InputError(path.string() + ": row " + std::to_string(row_no) + " target is not finite");
                targets.push_back(*v);
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) throw InputError(path.string() + ": need at least two data rows");

    std::map<std::vector<double>, std::pair<double, std::size_t>> seen;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto [it, inserted] = seen.emplace(rows[i], std::make_pair(targets[i], i + 1));
        if (!inserted && it->second.first != targets[i])
            throw InputError(path.string() + ": rows " + std::to_string(it->second.second) + " and " +
                             std::to_string(i + 1) + " have identical features but different targets");
    }

    Points features(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
    Eigen::VectorXd values(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j)
            features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        values[static_cast<Eigen::Index>(i)] = targets[i];
    }
    return tabular_from_data(std::move(features), std::move(values), noise_variance, normalize, std::move(header));
}

void export_tabular(const Objective& objective, const std::filesystem::path& path) {
    const auto* tab = std::get_if<Tabular>(&objective.kind);
    if (!tab) throw InputError("only tabular objectives can be exported as CSV");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    const Eigen::Index d = tab->raw_features.cols();
    for (Eigen::Index j = 0; j < d; ++j) {
        const auto idx = static_cast<std::size_t>(j);
        out << (idx < tab->header.size() ? tab->header[idx] : "x" + std::to_string(j)) << ',';
    }
    out << (static_cast<std::size_t>(d) < tab->header.size() ? tab->header[static_cast<std::size_t>(d)] : "y") << '\n';
    char buf[32];
    auto put = [&](double v) {
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
        out.write(buf, p - buf);
    };
    for (Eigen::Index i = 0; i < tab->raw_features.rows(); ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            put(tab->raw_features(i, j));
            out << ',';
        }
        put(tab->values[i]);
        out << '\n';
    }
    if (!out) throw InputError("failed writing " + path.string());
}

double noiseless(const Objective& objective, Eigen::Index id) {
    if (id < 0 || id >= objective.size())
        throw InputError("unknown candidate id " + std::to_string(id) + " (objective has " +
                         std::to_string(objective.size()) + ")");
    return std::visit(
        [&](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, GpSamplePath> || std::is_same_v<K, Tabular>) {
                return k.values[id];
            } else {
                return noiseless_at(objective, objective.candidates.points.row(id).transpose());
            }
        },
        objective.kind);
}

double noiseless_at(const Objective& objective, const Eigen::Ref<const Eigen::VectorXd>& x) {
    const auto* bench = std::get_if<AnalyticBenchmark>(&objective.kind);
    if (!bench) throw InputError("point queries are only defined for analytic benchmarks");
    if (!bench->normalized) return eval_benchmark(bench->name, x);
    for (Eigen::Index j = 0; j < x.size(); ++j)
        if (!(x[j] >= 0.0 && x[j] <= 1.0)) throw InputError("normalized benchmark query outside [0,1]^d");
    return eval_benchmark(bench->name, to_benchmark_box(bench->name, x));
}

double observe(const Objective& objective, Eigen::Index id, Stream& stream) {
    const double f = noiseless(objective, id);
    return objective.noise_variance > 0.0 ? f + std::sqrt(objective.noise_variance) * stream.normal() : f;
}

double observe_at(const Objective& objective, const Eigen::Ref<const Eigen::VectorXd>& x, Stream& stream) {
    const double f = noiseless_at(objective, x);
    return objective.noise_variance > 0.0 ? f + std::sqrt(objective.noise_variance) * stream.normal() : f;
}

}  // namespace irgpucb
