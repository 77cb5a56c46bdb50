#include "asgard/experiments.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <thread>

#include "asgard/baseline.hpp"
#include "asgard/csv.hpp"
#include "asgard/diagnostics.hpp"
#include "asgard/rng.hpp"

namespace asgard {

namespace fs = std::filesystem;

InstanceBundle generate(const InstanceSpec& spec) {
    if (spec.s > spec.p) throw UsageError("generate: s must not exceed p");
    if (spec.sigma < 0.0) throw UsageError("generate: sigma must be >= 0");

    Rng rng(spec.seed);
    const Index p = spec.p, n = spec.n;

    Mat k(n, p);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < p; ++j) k(i, j) = rng.gaussian();
    }
    if (spec.correlated) {
        // Equicorrelation Sigma = 0.5 I + 0.5 11^T realized as K = G Sigma^{1/2}
        // with Sigma^{1/2} = a I + c 11^T, a = sqrt(1/2), c solving
        // p c^2 + 2 a c = 1/2. Column variances stay 1, pairwise correlation 0.5.
        const double a = std::sqrt(0.5);
        const double c = (-a + std::sqrt(a * a + 0.5 * static_cast<double>(p))) /
                         static_cast<double>(p);
        const Vec rowsum = k.rowwise().sum();
        k *= a;
        k.colwise() += c * rowsum;
    }

    Vec x_nat = Vec::Zero(p);
    if (spec.s > 0) {
        // Partial Fisher-Yates for the support, then gaussian amplitudes.
        std::vector<Index> idx(p);
        std::iota(idx.begin(), idx.end(), Index{0});
        for (Index i = 0; i < spec.s; ++i) {
            const Index j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(p - i)));
            std::swap(idx[i], idx[j]);
        }
        for (Index i = 0; i < spec.s; ++i) x_nat[idx[i]] = rng.gaussian();
    }

    InstanceBundle bundle;
    bundle.spec = spec;
    bundle.k_op = std::make_shared<LinearMap>(std::move(k));
    bundle.x_natural = std::move(x_nat);
    bundle.b = bundle.k_op->matrix() * bundle.x_natural;
    if (spec.sigma > 0.0) {
        const double noise_std = std::sqrt(spec.sigma);
        for (Index i = 0; i < n; ++i) bundle.b[i] += noise_std * rng.gaussian();
    }
    bundle.rho = spec.rho;
    bundle.lambda = spec.lambda_override ? *spec.lambda_override
                                         : lambda_rule(p, spec.lambda_alpha, spec.lambda_c);
    return bundle;
}

double inv_norm_cdf(double q) {
    if (!(q > 0.0) || !(q < 1.0)) throw UsageError("inv_norm_cdf: q must lie in (0, 1)");
    // Wichura's algorithm AS 241, PPND16.
    const double r = q - 0.5;
    if (std::abs(r) <= 0.425) {
        const double s = 0.180625 - r * r;
        return r *
               (((((((2.5090809287301226727e3 * s + 3.3430575583588128105e4) * s +
                     6.7265770927008700853e4) *
                        s +
                    4.5921953931549871457e4) *
                       s +
                   1.3731693765509461125e4) *
                      s +
                  1.9715909503065514427e3) *
                     s +
                 1.3314166789178437745e2) *
                    s +
                3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * s + 2.8729085735721942674e4) * s +
                     3.9307895800092710610e4) *
                        s +
                    2.1213794301586595867e4) *
                       s +
                   5.3941960214247511077e3) *
                      s +
                  6.8718700749205790830e2) *
                     s +
                 4.2313330701600911252e1) *
                    s +
                1.0);
    }
    double s = r < 0.0 ? q : 1.0 - q;
    s = std::sqrt(-std::log(s));
    double value;
    if (s <= 5.0) {
        const double t = s - 1.6;
        value = (((((((7.74545014278341407640e-4 * t + 2.27238449892691845833e-2) * t +
                      2.41780725177450611770e-1) *
                         t +
                     1.27045825245236838258e0) *
                        t +
                    3.64784832476320460504e0) *
                       t +
                   5.76949722146069140550e0) *
                      t +
                  4.63033784615654529590e0) *
                     t +
                 1.42343711074968357734e0) /
                (((((((1.05075007164441684324e-9 * t + 5.47593808499534494600e-4) * t +
                      1.51986665636164571966e-2) *
                         t +
                     1.48103976427480074590e-1) *
                        t +
                    6.89767334985100004550e-1) *
                       t +
                   1.67638483018380384940e0) *
                      t +
                  2.05319162663775882187e0) *
                     t +
                 1.0);
    } else {
        const double t = s - 5.0;
        value = (((((((2.01033439929228813265e-7 * t + 2.71155556874348757815e-5) * t +
                      1.24266094738807843860e-3) *
                         t +
                     2.65321895265761230930e-2) *
                        t +
                    2.96560571828504891230e-1) *
                       t +
                   1.78482653991729133580e0) *
                      t +
                  5.46378491116411436990e0) *
                     t +
                 6.65790464350110377720e0) /
                (((((((2.04426310338993978564e-15 * t + 1.42151175831644588870e-7) * t +
                      1.84631831751005468180e-5) *
                         t +
                     7.86869131145613259100e-4) *
                        t +
                    1.48753612908506148525e-2) *
                       t +
                   1.36929880922735805310e-1) *
                      t +
                  5.99832206555887937690e-1) *
                     t +
                 1.0);
    }
    return r < 0.0 ? -value : value;
}

double lambda_rule(Index p, double alpha, double c) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw UsageError("lambda_rule: alpha must be in (0,1)");
    if (!(c >= 1.0)) throw UsageError("lambda_rule: c must be >= 1");
    if (p < 1) throw UsageError("lambda_rule: p must be >= 1");
    return c * inv_norm_cdf(1.0 - alpha / (2.0 * static_cast<double>(p)));
}

double beta_star(double opnorm, double dist0, double m_g) {
    if (!(opnorm > 0.0) || !(dist0 > 0.0) || !(m_g > 0.0)) {
        throw UsageError("beta_star: inputs must be positive");
    }
    return opnorm * dist0 / m_g;
}

SaddleProblem problem_from_bundle(const InstanceBundle& bundle, bool use_strong_convexity) {
    return make_sqrt_lasso(bundle.k_op, bundle.b, bundle.lambda, bundle.rho,
                           use_strong_convexity);
}

ReferenceRuns reference_solve(InstanceBundle& bundle, long budget, long k_max_hint,
                              long trace_keep) {
    if (budget < 100000) throw UsageError("reference_solve: budget must be >= 1e5");

    const double opnorm = bundle.k_op->opnorm();
    const double dist_boot = bundle.x_natural.norm() > 0.0 ? bundle.x_natural.norm() : 1.0;
    const Vec x0 = Vec::Zero(bundle.spec.p);
    const Vec y0 = Vec::Zero(bundle.spec.n);

    ReferenceRuns refs;
    if (bundle.rho > 0.0) {
        SaddleProblem prob2 = problem_from_bundle(bundle, true);
        RunOptions ro;
        ro.k_max = budget;
        ro.trace_limit = trace_keep;
        ro.eval_dual = true;
        refs.primary = solver_run(prob2, x0, y0, 0.382 * sqr(opnorm) / bundle.rho, ro);
        refs.primary.algorithm = "asgard_case2_ref";

        SaddleProblem prob1 = problem_from_bundle(bundle, false);
        RunOptions ro1;
        ro1.k_max = budget;
        ro1.trace_limit = trace_keep;
        refs.secondary = solver_run(prob1, x0, y0, 0.01 * opnorm * dist_boot, ro1);
        refs.secondary->algorithm = "asgard_case1_ref";
    } else {
        SaddleProblem prob1 = problem_from_bundle(bundle, false);
        RunOptions ro;
        ro.k_max = budget;
        ro.trace_limit = trace_keep;
        refs.primary = solver_run(prob1, x0, y0, 0.01 * opnorm * dist_boot, ro);
        refs.primary.algorithm = "asgard_case1_ref";

        BaselineConfig bc;
        bc.gamma = 0.01 * gamma_star(opnorm, dist_boot, k_max_hint);
        bc.k_max = budget;
        bc.trace_limit = trace_keep;
        refs.secondary = run_baseline(prob1, x0, bc);
        refs.secondary->algorithm = "nesterov_ref";
    }

    const RunRecord* best = &refs.primary;
    if (refs.secondary && refs.secondary->best_f < best->best_f) best = &*refs.secondary;
    bundle.f_ref = best->best_f;
    bundle.x_ref = best->best_x;

    if (refs.primary.best_d < kInf) {
        bundle.d_ref = refs.primary.best_d;
        bundle.y_ref = refs.primary.best_y;
        bundle.has_y_ref = true;
    }

    if (bundle.rho > 0.0) {
        SaddleProblem prob = problem_from_bundle(bundle, true);
        const double gap = bundle.has_y_ref
                               ? gap_certificate(prob, bundle.x_ref, bundle.y_ref)
                               : kInf;
        bundle.certified = gap <= 1e-6 * std::max(1.0, std::abs(bundle.f_ref));
        bundle.flagged = !bundle.certified;
    }
    return refs;
}

void save_bundle(const InstanceBundle& bundle, const std::string& dir) {
    fs::create_directories(dir);
    {
        std::ofstream out(dir + "/K.csv");
        write_matrix_csv(bundle.k_op->matrix(), out);
    }
    {
        std::ofstream out(dir + "/b.csv");
        write_vector_csv(bundle.b, out);
    }
    {
        std::ofstream out(dir + "/xnat.csv");
        write_vector_csv(bundle.x_natural, out);
    }
    std::ofstream meta(dir + "/meta.txt");
    write_kv(
        {
            {"p", std::to_string(bundle.spec.p)},
            {"n", std::to_string(bundle.spec.n)},
            {"s", std::to_string(bundle.spec.s)},
            {"sigma", fmt_double(bundle.spec.sigma)},
            {"corr", bundle.spec.correlated ? "1" : "0"},
            {"lambda", fmt_double(bundle.lambda)},
            {"rho", fmt_double(bundle.rho)},
            {"seed", std::to_string(bundle.spec.seed)},
            {"F_ref", fmt_double(bundle.f_ref)},
            {"certified", bundle.certified ? "1" : "0"},
        },
        meta);
}

InstanceBundle load_bundle(const std::string& dir) {
    InstanceBundle bundle;
    {
        std::ifstream in(dir + "/K.csv");
        if (!in) throw UsageError("load_bundle: missing " + dir + "/K.csv");
        bundle.k_op = std::make_shared<LinearMap>(read_matrix_csv(in));
    }
    {
        std::ifstream in(dir + "/b.csv");
        if (!in) throw UsageError("load_bundle: missing " + dir + "/b.csv");
        bundle.b = read_vector_csv(in);
    }
    {
        std::ifstream in(dir + "/xnat.csv");
        if (!in) throw UsageError("load_bundle: missing " + dir + "/xnat.csv");
        bundle.x_natural = read_vector_csv(in);
    }
    std::ifstream meta(dir + "/meta.txt");
    if (!meta) throw UsageError("load_bundle: missing " + dir + "/meta.txt");
    const auto kv = read_kv(meta);
    bundle.spec.p = bundle.k_op->cols();
    bundle.spec.n = bundle.k_op->rows();
    bundle.spec.s = std::stol(kv.at("s"));
    bundle.spec.sigma = std::stod(kv.at("sigma"));
    bundle.spec.correlated = kv.at("corr") == "1";
    bundle.spec.seed = std::stoull(kv.at("seed"));
    bundle.lambda = std::stod(kv.at("lambda"));
    bundle.rho = std::stod(kv.at("rho"));
    bundle.spec.rho = bundle.rho;
    bundle.f_ref = std::stod(kv.at("F_ref"));
    bundle.certified = kv.at("certified") == "1";
    return bundle;
}

ExperimentOptions desk_profile(int which) {
    ExperimentOptions o;
    o.which = which;
    o.num_instances = 10;
    o.base.p = 200;
    o.base.n = 70;
    o.base.s = 20;
    o.base.sigma = 0.05;
    o.base.correlated = (which == 2 || which == 4);
    o.base.rho = (which >= 3) ? 0.1 : 0.0;
    o.k_max = 2000;
    o.ref_budget = 100000;
    return o;
}

ExperimentOptions paper_profile(int which) {
    ExperimentOptions o;
    o.which = which;
    o.num_instances = 30;
    o.base.p = 1000;
    o.base.n = 350;
    o.base.s = 100;
    o.base.sigma = 0.05;
    o.base.correlated = (which == 2 || which == 4);
    o.base.rho = (which >= 3) ? 0.1 : 0.0;
    o.k_max = 5000;
    o.ref_budget = 100000;
    return o;
}

namespace {

std::vector<double> f_curve_from_trace(const RunRecord& rec, long k_max) {
    std::vector<double> f;
    f.reserve(k_max + 1);
    for (const TraceRow& row : rec.trace) {
        if (row.k > k_max) break;
        f.push_back(row.f_primal);
    }
    if (static_cast<long>(f.size()) != k_max + 1) {
        throw UsageError("experiment: trace shorter than k_max");
    }
    return f;
}

InstanceRun run_one_instance(const ExperimentOptions& opts, int index) {
    InstanceSpec spec = opts.base;
    spec.seed = opts.base_seed + static_cast<std::uint64_t>(index);

    InstanceRun run;
    run.bundle = generate(spec);
    const ReferenceRuns refs =
        reference_solve(run.bundle, opts.ref_budget, opts.k_max, opts.k_max + 1);
    if (run.bundle.flagged) return run;  // excluded from aggregation, reported

    InstanceBundle& bundle = run.bundle;
    const double opnorm = bundle.k_op->opnorm();
    const double dist0 = bundle.x_ref.norm();  // x0 = 0
    const Vec x0 = Vec::Zero(spec.p);
    const Vec y0 = Vec::Zero(spec.n);

    auto run_asgard = [&](bool strong, double beta0) {
        SaddleProblem prob = problem_from_bundle(bundle, strong);
        RunOptions ro;
        ro.k_max = opts.k_max;
        return solver_run(prob, x0, y0, beta0, ro);
    };

    if (opts.which <= 2) {
        const double bstar = beta_star(opnorm, dist0, 1.0);
        const double gstar = gamma_star(opnorm, dist0, opts.k_max);
        SaddleProblem prob = problem_from_bundle(bundle, false);

        const std::vector<std::pair<std::string, double>> asgard_grid = {
            {"asgard_0.1bstar", 0.1 * bstar},
            {"asgard_bstar", bstar},
            {"asgard_10bstar", 10.0 * bstar},
        };
        for (const auto& [name, beta0] : asgard_grid) {
            run.configs.push_back(name);
            run.f_curves.push_back(f_curve_from_trace(run_asgard(false, beta0), opts.k_max));
        }
        const std::vector<std::pair<std::string, double>> nes_grid = {
            {"nesterov_0.1gstar", 0.1 * gstar},
            {"nesterov_gstar", gstar},
            {"nesterov_10gstar", 10.0 * gstar},
        };
        for (const auto& [name, gamma] : nes_grid) {
            BaselineConfig bc;
            bc.gamma = gamma;
            bc.k_max = opts.k_max;
            run.configs.push_back(name);
            run.f_curves.push_back(f_curve_from_trace(run_baseline(prob, x0, bc), opts.k_max));
        }
        // The long reference runs double as the small-parameter curves.
        run.configs.push_back("asgard_0.01bstar_ref");
        run.f_curves.push_back(f_curve_from_trace(refs.primary, opts.k_max));
        run.configs.push_back("nesterov_0.01gstar_ref");
        run.f_curves.push_back(f_curve_from_trace(*refs.secondary, opts.k_max));
    } else {
        const double bstar = beta_star(opnorm, dist0, 1.0);
        run.configs.push_back("asgard_case1_bstar");
        run.f_curves.push_back(f_curve_from_trace(run_asgard(false, bstar), opts.k_max));
        run.configs.push_back("asgard_case2_thm");
        const double beta0_case2 = 0.382 * sqr(opnorm) / bundle.rho;
        run.f_curves.push_back(f_curve_from_trace(run_asgard(true, beta0_case2), opts.k_max));
    }

    // Fold every observed objective value into F_ref so residuals stay >= 0.
    for (const auto& curve : run.f_curves) {
        for (double f : curve) bundle.f_ref = std::min(bundle.f_ref, f);
    }
    run.residual_curves.resize(run.f_curves.size());
    const double denom = std::max(1.0, std::abs(bundle.f_ref));
    for (std::size_t c = 0; c < run.f_curves.size(); ++c) {
        run.residual_curves[c].resize(run.f_curves[c].size());
        for (std::size_t i = 0; i < run.f_curves[c].size(); ++i) {
            run.residual_curves[c][i] = (run.f_curves[c][i] - bundle.f_ref) / denom;
        }
    }
    return run;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentOptions& opts) {
    if (opts.which < 1 || opts.which > 4) throw UsageError("run_experiment: which must be 1..4");
    if (opts.num_instances < 1) throw UsageError("run_experiment: need >= 1 instance");

    ExperimentResult result;
    result.runs.resize(opts.num_instances);

    const int threads = std::max(1, opts.threads);
    if (threads == 1) {
        for (int i = 0; i < opts.num_instances; ++i) {
            result.runs[i] = run_one_instance(opts, i);
        }
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        std::vector<std::exception_ptr> errors(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    int i;
                    while ((i = next.fetch_add(1)) < opts.num_instances) {
                        result.runs[i] = run_one_instance(opts, i);
                    }
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }

    result.report = aggregate(result.runs, opts.k_max);
    return result;
}

AggregateReport aggregate(const std::vector<InstanceRun>& runs, long k_max) {
    AggregateReport report;
    report.k_max = k_max;

    const InstanceRun* proto = nullptr;
    for (const InstanceRun& run : runs) {
        if (run.bundle.flagged) {
            ++report.instances_flagged;
            continue;
        }
        ++report.instances_used;
        if (!proto) proto = &run;
    }
    if (!proto) throw UsageError("aggregate: no usable instances");

    const std::size_t n_cfg = proto->configs.size();
    const std::size_t len = static_cast<std::size_t>(k_max) + 1;
    for (std::size_t c = 0; c < n_cfg; ++c) {
        AggregateCurve curve;
        curve.config = proto->configs[c];
        curve.mean.assign(len, 0.0);
        curve.lo.assign(len, kInf);
        curve.hi.assign(len, -kInf);
        for (const InstanceRun& run : runs) {
            if (run.bundle.flagged) continue;
            if (run.configs.size() != n_cfg || run.residual_curves[c].size() != len) {
                throw UsageError("aggregate: ragged traces across instances");
            }
            for (std::size_t i = 0; i < len; ++i) {
                const double r = run.residual_curves[c][i];
                curve.mean[i] += r;
                curve.lo[i] = std::min(curve.lo[i], r);
                curve.hi[i] = std::max(curve.hi[i], r);
            }
        }
        for (double& m : curve.mean) m /= report.instances_used;
        report.curves.push_back(std::move(curve));
    }
    return report;
}

void write_aggregate_csv(const AggregateReport& report, std::ostream& out) {
    out << "config,k,mean,min,max\n";
    for (const AggregateCurve& curve : report.curves) {
        for (std::size_t i = 0; i < curve.mean.size(); ++i) {
            out << curve.config << ',' << i << ',' << fmt_double(curve.mean[i]) << ','
                << fmt_double(curve.lo[i]) << ',' << fmt_double(curve.hi[i]) << '\n';
        }
    }
}

}  // namespace asgard
