#include "irgpucb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "irgpucb/errors.hpp"
#include "irgpucb/export.hpp"
#include "irgpucb/stats.hpp"

namespace irgpucb {
namespace {

std::string_view to_string(ObjectiveKind k) {
    switch (k) {
        case ObjectiveKind::GpSample: return "gp_sample";
        case ObjectiveKind::Benchmark: return "benchmark";
        case ObjectiveKind::Tabular: return "tabular";
    }
    return "?";
}

ObjectiveKind parse_objective_kind(const std::string& s) {
    if (s == "gp_sample") return ObjectiveKind::GpSample;
    if (s == "benchmark") return ObjectiveKind::Benchmark;
    if (s == "tabular") return ObjectiveKind::Tabular;
    throw InputError("unknown objective '" + s + "' (expected gp_sample, benchmark or tabular)");
}

std::string resolve_alias(const std::string& name) {
    if (name == "gp_ucb") return "ucb:deterministic_finite";
    if (name == "rgp_ucb") return "ucb:gamma";
    if (name == "irgp_ucb") return "ucb:two_param_exp_finite";
    return name;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (horizon < 1) throw InputError("horizon must be >= 1");
    if (n_trials < 1) throw InputError("n_trials must be >= 1");
    if (initial_design < 0) throw InputError("initial_design must be >= 0");
    if (n_functions < 0) throw InputError("n_functions must be >= 0");
    if (fit_every < 0) throw InputError("fit_every must be >= 0");
    if (hyper_budget < 0) throw InputError("hyper_budget must be >= 0");
    if (threads < 0) throw InputError("threads must be >= 0");
    if (!(noise_variance >= 0.0)) throw InputError("noise_variance must be >= 0");
    if (policies.empty()) throw InputError("at least one policy is required");
    kernel.validate();
    switch (objective) {
        case ObjectiveKind::GpSample:
            if (dim < 1 || grid_points < 1) throw InputError("gp_sample needs dim >= 1 and grid_points >= 1");
            if (!(grid_upper >= grid_lower)) throw InputError("grid_upper must be >= grid_lower");
            if (kernel.dim() != dim) throw InputError("kernel length_scales must match dim");
            break;
        case ObjectiveKind::Benchmark:
            if (pool_size < 1) throw InputError("pool_size must be >= 1");
            if (kernel.dim() != benchmark_info(benchmark).dim)
                throw InputError("kernel length_scales must match the benchmark dimension " +
                                 std::to_string(benchmark_info(benchmark).dim));
            break;
        case ObjectiveKind::Tabular:
            if (tabular_path.empty()) throw InputError("tabular objective needs tabular_path");
            break;
    }
    for (const auto& p : policies) {
        const auto name = resolve_alias(p);
        if (name == "ei" || name == "ts") continue;
        if (name.rfind("ucb:", 0) != 0) throw InputError("unknown policy '" + p + "'");
        parse_schedule_kind(name.substr(4));
    }
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["objective"] = std::string(to_string(objective));
    j["dim"] = dim;
    j["grid_points"] = grid_points;
    j["grid_lower"] = grid_lower;
    j["grid_upper"] = grid_upper;
    j["n_functions"] = n_functions;
    j["benchmark"] = std::string(irgpucb::to_string(benchmark));
    j["pool_size"] = pool_size;
    j["tabular_path"] = tabular_path;
    j["normalize"] = normalize;
    j["kernel"] = std::string(irgpucb::to_string(kernel.family));
    j["length_scales"] = kernel.length_scales;
    j["output_scale"] = kernel.output_scale;
    j["fit_every"] = fit_every;
    j["hyper_budget"] = hyper_budget;
    j["policies"] = policies;
    j["theta"] = theta;
    j["eta"] = eta;
    j["heuristic_c"] = heuristic_c;
    j["a"] = domain_a;
    j["b"] = domain_b;
    j["r"] = domain_r;
    j["noise_variance"] = noise_variance;
    j["horizon"] = horizon;
    j["n_trials"] = n_trials;
    j["base_seed"] = base_seed;
    j["initial_design"] = initial_design;
    j["output_dir"] = output_dir;
    j["threads"] = threads;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("config must be a JSON object");
    ExperimentConfig c;
    const auto defaults = c.to_json();
    for (const auto& [key, value] : j.items()) {
        if (!defaults.contains(key)) throw InputError("unknown config key '" + key + "'");
        if (value.is_object()) throw InputError("config key '" + key + "' must not be nested");
    }
    try {
        auto get = [&](const char* key, auto& field) {
            if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
        };
        get("name", c.name);
        if (j.contains("objective")) c.objective = parse_objective_kind(j.at("objective").get<std::string>());
        get("dim", c.dim);
        get("grid_points", c.grid_points);
        get("grid_lower", c.grid_lower);
        get("grid_upper", c.grid_upper);
        get("n_functions", c.n_functions);
        if (j.contains("benchmark")) c.benchmark = parse_benchmark(j.at("benchmark").get<std::string>());
        get("pool_size", c.pool_size);
        get("tabular_path", c.tabular_path);
        get("normalize", c.normalize);
        if (j.contains("kernel")) c.kernel.family = parse_kernel_family(j.at("kernel").get<std::string>());
        get("output_scale", c.kernel.output_scale);
        get("fit_every", c.fit_every);
        get("hyper_budget", c.hyper_budget);
        if (j.contains("policies")) {
            const auto& p = j.at("policies");
            c.policies = p.is_string() ? std::vector<std::string>{p.get<std::string>()}
                                       : p.get<std::vector<std::string>>();
        }
        get("theta", c.theta);
        get("eta", c.eta);
        get("heuristic_c", c.heuristic_c);
        get("a", c.domain_a);
        get("b", c.domain_b);
        get("r", c.domain_r);
        get("noise_variance", c.noise_variance);
        get("horizon", c.horizon);
        get("n_trials", c.n_trials);
        get("base_seed", c.base_seed);
        get("initial_design", c.initial_design);
        get("output_dir", c.output_dir);
        get("threads", c.threads);

        // Kernel dimension follows the objective; a single length scale is broadcast.
        int kdim = c.dim;
        if (c.objective == ObjectiveKind::Benchmark) kdim = benchmark_info(c.benchmark).dim;
        std::vector<double> ls{0.1};
        if (j.contains("length_scales")) {
            const auto& v = j.at("length_scales");
            ls = v.is_number() ? std::vector<double>{v.get<double>()} : v.get<std::vector<double>>();
        }
        if (c.objective == ObjectiveKind::Tabular) kdim = ls.size() > 1 ? static_cast<int>(ls.size()) : 0;
        if (ls.size() == 1 && kdim > 0) ls.assign(static_cast<std::size_t>(kdim), ls.front());
        c.kernel.length_scales = ls;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
    auto c = from_json(j);
    if (c.objective == ObjectiveKind::Tabular && !c.tabular_path.empty() &&
        std::filesystem::path(c.tabular_path).is_relative())
        c.tabular_path = (path.parent_path() / c.tabular_path).string();
    return c;
}

std::string ExperimentConfig::hash() const {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_json().dump())));
    return buf;
}

Policy make_policy(const std::string& raw_name, const ExperimentConfig& config, const Objective& objective) {
    const auto name = resolve_alias(raw_name);
    if (name == "ei") return Policy::ei();
    if (name == "ts") return Policy::ts();
    if (name.rfind("ucb:", 0) != 0) throw InputError("unknown policy '" + raw_name + "'");
    ConfidenceSchedule s;
    s.kind = parse_schedule_kind(name.substr(4));
    s.theta = config.theta;
    s.eta = config.eta;
    s.heuristic_c = config.heuristic_c;
    s.dim = objective.dim();
    const bool continuous = s.kind == ScheduleKind::DeterministicContinuous ||
                            s.kind == ScheduleKind::TwoParamExpContinuous ||
                            (objective.candidates.provenance == CandidateProvenance::SampledPool &&
                             (s.kind == ScheduleKind::TwoParamExpAccuracy || s.kind == ScheduleKind::Gamma ||
                              s.kind == ScheduleKind::TruncNormal));
    s.domain = continuous ? DomainInfo::continuous(config.domain_a, config.domain_b, config.domain_r, objective.dim())
                          : DomainInfo::finite(static_cast<std::uint64_t>(objective.size()));
    auto p = Policy::ucb(s);
    p.validate();
    return p;
}

Objective make_objective(const ExperimentConfig& config, int trial_index) {
    const Stream root(config.base_seed);
    switch (config.objective) {
        case ObjectiveKind::GpSample: {
            const int n_functions = config.n_functions > 0 ? config.n_functions : config.n_trials;
            const int f = trial_index % n_functions;
            Stream fs = root.split("function").split(static_cast<std::uint64_t>(f));
            const auto grid =
                CandidateSet::regular_grid(config.dim, config.grid_points, config.grid_lower, config.grid_upper);
            return sample_gp_function(config.kernel, grid, fs, config.noise_variance);
        }
        case ObjectiveKind::Benchmark: {
            const auto pool_seed = root.split("pool").next_u64();
            return make_benchmark(config.benchmark, config.pool_size, pool_seed, config.noise_variance,
                                  config.normalize);
        }
        case ObjectiveKind::Tabular:
            return load_tabular(config.tabular_path, config.noise_variance, config.normalize);
    }
    throw InputError("unknown objective kind");
}

void RegretTrace::check_invariants() const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (!(r.simple_regret >= 0.0)) throw ContractError("negative simple regret at iteration " + std::to_string(r.iter));
        if (i > 0) {
            if (r.simple_regret > rows[i - 1].simple_regret)
                throw ContractError("simple regret increased at iteration " + std::to_string(r.iter));
            if (r.cumulative_regret < rows[i - 1].cumulative_regret)
                throw ContractError("cumulative regret decreased at iteration " + std::to_string(r.iter));
        }
    }
}

RegretTrace run_trial(const ExperimentConfig& config, const std::string& policy_name, int trial_index) {
    const auto objective = make_objective(config, trial_index);
    return run_trial(config, make_policy(policy_name, config, objective), objective, trial_index);
}

RegretTrace run_trial(const ExperimentConfig& config, const Policy& policy, const Objective& objective,
                      int trial_index) {
    RegretTrace trace;
    trace.policy = policy.label();
    trace.trial = trial_index;
    trace.config_hash = config.hash();
    trace.noise_variance = model_noise_variance(config.noise_variance);

    const Stream trial_root = Stream(config.base_seed).split("trial").split(static_cast<std::uint64_t>(trial_index));
    trace.seed = trial_root.key();
    Stream init_stream = trial_root.split("init");
    Stream noise_stream = trial_root.split("noise");
    Stream policy_stream = trial_root.split("policy");

    KernelSpec kernel = config.kernel;
    if (kernel.dim() != objective.dim()) {
        if (kernel.length_scales.size() != 1 && kernel.dim() != 0)
            throw InputError("kernel dimension " + std::to_string(kernel.dim()) + " does not match objective dimension " +
                             std::to_string(objective.dim()));
        const double l = kernel.length_scales.empty() ? 0.1 : kernel.length_scales.front();
        kernel.length_scales.assign(static_cast<std::size_t>(objective.dim()), l);
    }
    trace.kernel = kernel;

    const Eigen::Index n_cand = objective.size();
    const int d = objective.dim();
    std::vector<Eigen::Index> ids;
    std::vector<double> ys;
    double best_f = -std::numeric_limits<double>::infinity();

    // Initial design: uniform draws without replacement (partial Fisher-Yates).
    const auto n_init = std::min<Eigen::Index>(config.initial_design, n_cand);
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n_cand));
    for (Eigen::Index i = 0; i < n_cand; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (Eigen::Index i = 0; i < n_init; ++i) {
        const auto j = i + static_cast<Eigen::Index>(init_stream.below(static_cast<std::uint64_t>(n_cand - i)));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        const Eigen::Index id = perm[static_cast<std::size_t>(i)];
        ids.push_back(id);
        ys.push_back(observe(objective, id, noise_stream));
        best_f = std::max(best_f, noiseless(objective, id));
    }
    trace.initial_ids = ids;

    auto data = [&]() {
        Points X(static_cast<Eigen::Index>(ids.size()), d);
        Eigen::VectorXd y(static_cast<Eigen::Index>(ids.size()));
        for (std::size_t i = 0; i < ids.size(); ++i) {
            X.row(static_cast<Eigen::Index>(i)) = objective.candidates.points.row(ids[i]);
            y[static_cast<Eigen::Index>(i)] = ys[i];
        }
        return std::make_pair(std::move(X), std::move(y));
    };

    double cumulative = 0.0;
    std::optional<CandidatePrior> ts_prior;
    try {
        for (int t = 1; t <= config.horizon; ++t) {
            auto [X, y] = data();
            if (config.fit_every > 0 && (t - 1) % config.fit_every == 0 && X.rows() >= 2) {
                const auto fit = optimize_hyperparameters(X, y, trace.noise_variance, kernel, config.hyper_budget);
                if (!fit.warning && fit.kernel.length_scales != kernel.length_scales) {
                    kernel = fit.kernel;
                    trace.kernel_fixed = false;
                }
            }
            const auto posterior = Posterior::fit(kernel, std::move(X), std::move(y), trace.noise_variance);
            const ThompsonContext* ts = nullptr;
            ThompsonContext ts_ctx;
            if (policy.kind == PolicyKind::TS) {
                if (!ts_prior || ts_prior->kernel.length_scales != kernel.length_scales)
                    ts_prior = CandidatePrior::build(kernel, objective.candidates.points);
                ts_ctx = {&*ts_prior, ids};
                ts = &ts_ctx;
            }
            const auto sel = select_next(policy, posterior, objective.candidates, t, policy_stream, ts);

            TraceRow row;
            row.iter = t;
            row.candidate = sel.index;
            row.x = objective.candidates.points.row(sel.index).transpose();
            row.f = noiseless(objective, sel.index);
            row.y = observe(objective, sel.index, noise_stream);
            row.zeta = sel.zeta;
            row.sigma = std::sqrt(sel.at_choice.variance);
            best_f = std::max(best_f, row.f);
            cumulative += objective.true_max - row.f;
            // Clamp at zero: benchmark optima are published to limited precision.
            row.simple_regret = std::max(0.0, objective.true_max - best_f);
            row.cumulative_regret = cumulative;
            ids.push_back(sel.index);
            ys.push_back(row.y);
            trace.rows.push_back(std::move(row));
        }
    } catch (const NumericalError& e) {
        trace.complete = false;
        trace.error = e.what();
    }
    trace.kernel = kernel;
    trace.check_invariants();
    return trace;
}

PolicyReport aggregate(std::string policy, std::vector<RegretTrace> traces) {
    PolicyReport report;
    report.policy = std::move(policy);
    std::vector<const RegretTrace*> done;
    for (const auto& t : traces) {
        if (t.complete) done.push_back(&t);
    }
    report.completed = static_cast<int>(done.size());
    report.failed = static_cast<int>(traces.size()) - report.completed;
    if (!done.empty()) {
        std::size_t n_iter = std::numeric_limits<std::size_t>::max();
        for (const auto* t : done) n_iter = std::min(n_iter, t->rows.size());
        for (std::size_t i = 0; i < n_iter; ++i) {
            RunningStats sr, cr, zeta;
            for (const auto* t : done) {
                sr.push(t->rows[i].simple_regret);
                cr.push(t->rows[i].cumulative_regret);
                if (t->rows[i].zeta) zeta.push(*t->rows[i].zeta);
            }
            report.aggregate.push_back({static_cast<int>(i) + 1, sr.mean(), sr.std_error(), cr.mean(),
                                        zeta.count() > 0 ? zeta.mean() : std::numeric_limits<double>::quiet_NaN()});
        }
        if (!report.aggregate.empty()) {
            report.bcr_estimate = report.aggregate.back().mean_cr;
            report.bsr_estimate = report.aggregate.back().mean_sr;
        }
    }
    report.traces = std::move(traces);
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    const int n = config.n_trials;
    const std::size_t n_pol = config.policies.size();
    std::vector<std::vector<RegretTrace>> results(n_pol, std::vector<RegretTrace>(static_cast<std::size_t>(n)));
    std::vector<std::string> labels(n_pol);
    std::vector<std::string> setup_errors(static_cast<std::size_t>(n));

    auto work = [&](int trial) {
        std::optional<Objective> objective;
        try {
            objective = make_objective(config, trial);
        } catch (const NumericalError& e) {
            setup_errors[static_cast<std::size_t>(trial)] = e.what();
        }
        for (std::size_t p = 0; p < n_pol; ++p) {
            auto& slot = results[p][static_cast<std::size_t>(trial)];
            if (!objective) {
                slot.policy = config.policies[p];
                slot.trial = trial;
                slot.complete = false;
                slot.error = setup_errors[static_cast<std::size_t>(trial)];
                continue;
            }
            slot = run_trial(config, make_policy(config.policies[p], config, *objective), *objective, trial);
        }
    };

    unsigned n_threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                            : std::max(1U, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(n));
    if (n_threads <= 1) {
        for (int t = 0; t < n; ++t) work(t);
    } else {
        std::atomic<int> next{0};
        std::vector<std::exception_ptr> errors(n_threads);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < n_threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (int t = next++; t < n; t = next++) work(t);
                } catch (...) {
                    errors[w] = std::current_exception();
                    next = n;
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    ExperimentReport report;
    report.config = config;
    for (std::size_t p = 0; p < n_pol; ++p) {
        std::string label = results[p].front().policy.empty() ? config.policies[p] : results[p].front().policy;
        report.policies.push_back(aggregate(std::move(label), std::move(results[p])));
    }
    return report;
}

namespace {

std::string file_label(const std::string& policy) {
    std::string s = policy;
    for (char& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
    return s;
}

}  // namespace

std::vector<std::filesystem::path> write_report(const ExperimentReport& report) {
    namespace fs = std::filesystem;
    const fs::path dir = report.config.output_dir;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    std::vector<fs::path> written;

    auto emit = [&](const fs::path& path, const std::string& contents) {
        write_file(path, contents);
        written.push_back(path);
    };

    auto resolved = report.config.to_json();
    resolved["config_hash"] = report.config.hash();
    emit(dir / "config.resolved.json", resolved.dump(2) + "\n");

    std::vector<Series> regret_series, zeta_series;
    std::ostringstream summary;
    for (const auto& p : report.policies) {
        std::ostringstream trace_csv, agg_csv;
        write_trace_csv(trace_csv, p.traces);
        write_aggregate_csv(agg_csv, p.aggregate);
        emit(dir / ("trace_" + file_label(p.policy) + ".csv"), trace_csv.str());
        emit(dir / ("aggregate_" + file_label(p.policy) + ".csv"), agg_csv.str());

        Series sr{p.policy, {}, {}}, zs{p.policy, {}, {}};
        for (const auto& r : p.aggregate) {
            sr.x.push_back(r.iter);
            sr.y.push_back(r.mean_sr);
            if (std::isfinite(r.mean_zeta)) {
                zs.x.push_back(r.iter);
                zs.y.push_back(r.mean_zeta);
            }
        }
        regret_series.push_back(std::move(sr));
        if (!zs.x.empty()) zeta_series.push_back(std::move(zs));

        summary << p.policy << ": completed " << p.completed << '/' << (p.completed + p.failed)
                << ", final mean simple regret " << format_number(p.bsr_estimate) << ", mean cumulative regret "
                << format_number(p.bcr_estimate) << '\n';
        for (const auto& t : p.traces)
            if (!t.complete) summary << "  trial " << t.trial << " incomplete: " << t.error << '\n';
    }
    std::ostringstream svg;
    write_svg(svg, report.config.name + ": simple regret", "mean simple regret", regret_series, true);
    emit(dir / "simple_regret.svg", svg.str());
    if (!zeta_series.empty()) {
        std::ostringstream zsvg;
        write_svg(zsvg, report.config.name + ": confidence parameter", "mean zeta / beta", zeta_series, false);
        emit(dir / "confidence.svg", zsvg.str());
    }
    emit(dir / "summary.txt", summary.str());
    return written;
}

}  // namespace irgpucb
