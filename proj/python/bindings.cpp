#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "irgpucb/confidence.hpp"
#include "irgpucb/errors.hpp"
#include "irgpucb/gp.hpp"
#include "irgpucb/harness.hpp"
#include "irgpucb/objective.hpp"
#include "irgpucb/validate.hpp"

namespace py = pybind11;
using namespace irgpucb;

namespace {

DomainInfo domain_from(std::optional<std::uint64_t> size, std::optional<int> dim, double a, double b, double r) {
    if (size && dim) throw InputError("give either domain_size or dim, not both");
    if (size) return DomainInfo::finite(*size);
    if (dim) return DomainInfo::continuous(a, b, r, *dim);
    throw InputError("domain_size or dim is required");
}

ExperimentConfig config_from(const py::dict& d) {
    const auto text = py::module_::import("json").attr("dumps")(d).cast<std::string>();
    return ExperimentConfig::from_json(nlohmann::json::parse(text));
}

py::dict trace_dict(const RegretTrace& t) {
    py::dict d;
    d["policy"] = t.policy;
    d["trial"] = t.trial;
    d["complete"] = t.complete;
    d["error"] = t.error;
    std::vector<int> iter;
    std::vector<Eigen::Index> cand;
    std::vector<double> y, f, sr, cr, sigma;
    std::vector<std::optional<double>> zeta;
    for (const auto& r : t.rows) {
        iter.push_back(r.iter);
        cand.push_back(r.candidate);
        y.push_back(r.y);
        f.push_back(r.f);
        sr.push_back(r.simple_regret);
        cr.push_back(r.cumulative_regret);
        sigma.push_back(r.sigma);
        zeta.push_back(r.zeta);
    }
    d["iter"] = iter;
    d["candidate"] = cand;
    d["y"] = y;
    d["f"] = f;
    d["zeta"] = zeta;
    d["simple_regret"] = sr;
    d["cumulative_regret"] = cr;
    d["sigma"] = sigma;
    return d;
}

py::dict report_dict(const CheckReport& r) {
    py::dict d;
    d["name"] = r.name;
    d["passed"] = r.passed;
    d["statistic"] = r.statistic;
    d["threshold"] = r.threshold;
    d["std_error"] = r.std_error;
    d["samples"] = r.samples;
    d["seed"] = r.seed;
    d["detail"] = r.detail;
    return d;
}

KernelSpec kernel_from(const std::string& family, std::vector<double> length_scales, double output_scale) {
    KernelSpec k{parse_kernel_family(family), std::move(length_scales), output_scale};
    k.validate();
    return k;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "GP-UCB with randomized confidence parameters";
    m.attr("__version__") = IRGPUCB_VERSION;

    static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
    static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const NumericalError& e) {
            PyErr_SetString(numerical_error.ptr(), e.what());
        } catch (const InputError& e) {
            PyErr_SetString(input_error.ptr(), e.what());
        }
    });

    m.def(
        "beta",
        [](int t, std::optional<std::uint64_t> domain_size, std::optional<int> dim, double a, double b, double r) {
            return beta_gpucb(domain_from(domain_size, dim, a, b, r), t).value;
        },
        py::arg("t"), py::kw_only(), py::arg("domain_size") = py::none(), py::arg("dim") = py::none(),
        py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("r") = 1.0);

    m.def(
        "shift",
        [](std::optional<std::uint64_t> domain_size, std::optional<int> dim, std::optional<int> t,
           std::optional<double> eta, double a, double b, double r) {
            const auto domain = domain_from(domain_size, dim, a, b, r);
            IrgpucbMode mode = IrgpucbFinite{};
            if (eta) mode = IrgpucbAccuracy{*eta};
            else if (!domain.is_finite()) mode = IrgpucbAtIteration{t.value_or(1)};
            return irgpucb_params(domain, mode).shift;
        },
        py::kw_only(), py::arg("domain_size") = py::none(), py::arg("dim") = py::none(), py::arg("t") = py::none(),
        py::arg("eta") = py::none(), py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("r") = 1.0,
        "Shift s of the two-parameter exponential (rate 1/2).");

    m.def("kappa", &gamma_kappa, py::arg("domain_size"), py::arg("t"), py::arg("theta") = 1.0);

    m.def(
        "sample_zeta",
        [](const std::string& kind, std::uint64_t domain_size, int t, int n, std::uint64_t seed, double theta) {
            ConfidenceSchedule s;
            s.kind = parse_schedule_kind(kind);
            s.domain = DomainInfo::finite(domain_size);
            s.theta = theta;
            s.validate();
            Stream stream(seed);
            Eigen::VectorXd out(n);
            for (int i = 0; i < n; ++i) out[i] = sample_zeta(s, t, stream);
            return out;
        },
        py::arg("kind"), py::arg("domain_size"), py::arg("t"), py::arg("n"), py::arg("seed") = 0,
        py::arg("theta") = 1.0);

    m.def(
        "gp_predict",
        [](const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::MatrixXd& Xq, std::vector<double> ls,
           double noise_variance, const std::string& kernel) {
            const auto post = fit_posterior(kernel_from(kernel, std::move(ls), 1.0), X, y, noise_variance);
            const auto p = post.predict(Xq);
            return py::make_tuple(p.mean, p.variance);
        },
        py::arg("X"), py::arg("y"), py::arg("Xq"), py::arg("length_scales"), py::arg("noise_variance") = 1e-4,
        py::arg("kernel") = "se", "Posterior mean and variance at the rows of Xq.");

    m.def(
        "log_marginal_likelihood",
        [](const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::vector<double> ls, double noise_variance,
           const std::string& kernel) {
            return log_marginal_likelihood(kernel_from(kernel, std::move(ls), 1.0), X, y, noise_variance);
        },
        py::arg("X"), py::arg("y"), py::arg("length_scales"), py::arg("noise_variance") = 1e-4,
        py::arg("kernel") = "se");

    m.def("information_gain", &information_gain, py::arg("K"), py::arg("noise_variance"));
    m.def(
        "greedy_mig",
        [](const Eigen::MatrixXd& grid, int T, std::vector<double> ls, double noise_variance) {
            return greedy_mig_curve(kernel_from("se", std::move(ls), 1.0), grid, T, noise_variance);
        },
        py::arg("grid"), py::arg("T"), py::arg("length_scales"), py::arg("noise_variance") = 1e-4,
        "Greedy information-gain curve for T = 1..T.");

    m.def(
        "eval_benchmark",
        [](const std::string& name, const Eigen::VectorXd& x) { return eval_benchmark(parse_benchmark(name), x); },
        py::arg("name"), py::arg("x"));

    m.def(
        "run_trial",
        [](const py::dict& config, const std::string& policy, int trial) {
            RegretTrace t;
            const auto c = config_from(config);
            {
                py::gil_scoped_release release;
                t = run_trial(c, policy, trial);
            }
            return trace_dict(t);
        },
        py::arg("config"), py::arg("policy"), py::arg("trial") = 0);

    m.def(
        "run_experiment",
        [](const py::dict& config, bool write) {
            const auto c = config_from(config);
            ExperimentReport rep;
            {
                py::gil_scoped_release release;
                rep = run_experiment(c);
                if (write) write_report(rep);
            }
            py::dict out;
            for (const auto& p : rep.policies) {
                py::dict d;
                std::vector<double> mean_sr, stderr_sr, mean_cr, mean_zeta;
                for (const auto& a : p.aggregate) {
                    mean_sr.push_back(a.mean_sr);
                    stderr_sr.push_back(a.stderr_sr);
                    mean_cr.push_back(a.mean_cr);
                    mean_zeta.push_back(a.mean_zeta);
                }
                d["mean_sr"] = mean_sr;
                d["stderr_sr"] = stderr_sr;
                d["mean_cr"] = mean_cr;
                d["mean_zeta"] = mean_zeta;
                d["completed"] = p.completed;
                d["failed"] = p.failed;
                d["bsr"] = p.bsr_estimate;
                d["bcr"] = p.bcr_estimate;
                py::list traces;
                for (const auto& t : p.traces) traces.append(trace_dict(t));
                d["traces"] = traces;
                out[py::str(p.policy)] = d;
            }
            return out;
        },
        py::arg("config"), py::arg("write") = false);

    m.def(
        "validate",
        [](const std::string& suite, std::uint64_t seed) {
            std::vector<CheckReport> reports;
            {
                py::gil_scoped_release release;
                reports = run_suite(suite, seed);
            }
            py::list out;
            for (const auto& r : reports) out.append(report_dict(r));
            return out;
        },
        py::arg("suite"), py::arg("seed") = 0);
}
