#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "asgard/baseline.hpp"
#include "asgard/csv.hpp"
#include "asgard/diagnostics.hpp"
#include "asgard/experiments.hpp"
#include "asgard/solver.hpp"
#include "asgard/svgplot.hpp"
#include "asgard/verify.hpp"

namespace fs = std::filesystem;
using namespace asgard;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitNumeric = 3;

int thread_count(int instances) {
    if (const char* env = std::getenv("ASGARD_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return std::min(n, instances);
    }
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, std::min(hw, instances));
}

struct SolveArgs {
    std::string instance_dir;
    bool demo = false;
    long p = 200, n = 70, s = 20;
    double sigma = 0.05;
    bool corr = false;
    double rho = 0.0;
    std::uint64_t seed = 1;
    std::string beta0 = "star";
    std::string algo = "asgard";
    int case_override = 0;  // 0 = auto
    long kmax = 1000;
    std::string out = "out";
    std::string save_instance;
};

double resolve_beta0(const std::string& rule, double bstar) {
    if (rule == "star") return bstar;
    if (rule == "10star") return 10.0 * bstar;
    if (rule == "0.1star") return 0.1 * bstar;
    try {
        std::size_t pos = 0;
        const double v = std::stod(rule, &pos);
        if (pos == rule.size() && v > 0.0) return v;
    } catch (...) {
    }
    throw UsageError("--beta0 must be star, 10star, 0.1star, or a positive number");
}

int cmd_solve(const SolveArgs& args) {
    if (args.kmax < 1) throw UsageError("--kmax must be >= 1");

    InstanceBundle bundle;
    if (args.demo) {
        InstanceSpec spec;
        spec.p = 1;
        spec.n = 1;
        spec.s = 0;
        spec.sigma = 0.0;
        spec.rho = 0.0;
        spec.lambda_override = 1.0;
        spec.seed = args.seed;
        bundle = generate(spec);
        Mat k(1, 1);
        k << 1.0;
        bundle.k_op = std::make_shared<LinearMap>(k);
        bundle.b = Vec::Ones(1);
        bundle.x_natural = Vec::Zero(1);
    } else if (!args.instance_dir.empty()) {
        bundle = load_bundle(args.instance_dir);
    } else {
        InstanceSpec spec;
        spec.p = args.p;
        spec.n = args.n;
        spec.s = args.s;
        spec.sigma = args.sigma;
        spec.correlated = args.corr;
        spec.rho = args.rho;
        spec.seed = args.seed;
        bundle = generate(spec);
    }
    if (!args.save_instance.empty()) save_bundle(bundle, args.save_instance);

    const double opnorm = bundle.k_op->opnorm();
    // dist0 for the beta* rule: reference solution when the bundle carries
    // one, else the planted signal as a scale proxy.
    double dist0 = bundle.x_ref.size() > 0 ? bundle.x_ref.norm() : bundle.x_natural.norm();
    if (dist0 <= 0.0) dist0 = 1.0;
    const double bstar = opnorm * dist0;

    const bool strong = args.case_override == 2 || (args.case_override == 0 && bundle.rho > 0.0);
    if (strong && bundle.rho <= 0.0) throw UsageError("--case 2 requires rho > 0");
    SaddleProblem prob = problem_from_bundle(bundle, strong);

    fs::create_directories(args.out);
    const Vec x0 = Vec::Zero(prob.p());
    const Vec y0 = Vec::Zero(prob.n());

    RunRecord rec;
    if (args.algo == "nesterov") {
        BaselineConfig bc;
        bc.gamma = resolve_beta0(args.beta0, gamma_star(opnorm, dist0, args.kmax));
        bc.k_max = args.kmax;
        rec = run_baseline(prob, x0, bc);
    } else {
        const double beta0 = strong ? 0.382 * sqr(opnorm) / prob.regime.mu_f
                                    : resolve_beta0(args.beta0, bstar);
        RunOptions ro;
        ro.k_max = args.kmax;
        ro.eval_dual = true;
        ro.eval_smoothed = true;
        rec = solver_run(prob, x0, y0, beta0, ro);
    }

    std::ofstream trace(args.out + "/trace.csv");
    write_trace_csv(rec, trace);
    std::cout << "algorithm=" << rec.algorithm << " iterations=" << rec.iterations
              << " F_final=" << fmt_double(rec.trace.back().f_primal)
              << " F_best=" << fmt_double(rec.best_f) << " trace=" << args.out << "/trace.csv\n";
    return kExitOk;
}

struct ExperimentArgs {
    int which = 1;
    std::string profile = "desk";
    int instances = 0;  // 0 = profile default
    long kmax = 0;
    long ref_budget = 0;
    std::uint64_t seed = 90210;
    long p = 0, n = 0, s = 0;
    double sigma = -1.0;
    int corr = -1;
    double rho = -1.0;
    std::string out = "out";
};

int cmd_experiment(const ExperimentArgs& args) {
    ExperimentOptions opts =
        args.profile == "paper" ? paper_profile(args.which) : desk_profile(args.which);
    if (args.instances > 0) opts.num_instances = args.instances;
    if (args.kmax > 0) opts.k_max = args.kmax;
    if (args.ref_budget > 0) opts.ref_budget = args.ref_budget;
    opts.base_seed = args.seed;
    if (args.p > 0) opts.base.p = args.p;
    if (args.n > 0) opts.base.n = args.n;
    if (args.s >= 0 && args.p > 0) opts.base.s = args.s;
    if (args.sigma >= 0.0) opts.base.sigma = args.sigma;
    if (args.corr >= 0) opts.base.correlated = args.corr != 0;
    if (args.rho >= 0.0) opts.base.rho = args.rho;
    opts.threads = thread_count(opts.num_instances);

    const ExperimentResult result = run_experiment(opts);

    fs::create_directories(args.out);
    const std::string tag = "exp" + std::to_string(args.which);
    {
        std::ofstream csv(args.out + "/" + tag + "_aggregate.csv");
        write_aggregate_csv(result.report, csv);
    }
    {
        SvgPlot plot("Experiment " + std::to_string(args.which) + " (" + args.profile + ")",
                     "iteration k", "relative primal objective residual");
        for (const AggregateCurve& curve : result.report.curves) {
            plot.add({curve.config, curve.mean, curve.lo, curve.hi});
        }
        std::ofstream svg(args.out + "/" + tag + "_plot.svg");
        plot.render(svg);
    }
    std::cout << "experiment=" << args.which << " instances_used=" << result.report.instances_used
              << " flagged=" << result.report.instances_flagged << " outputs=" << args.out << "/"
              << tag << "_aggregate.csv," << args.out << "/" << tag << "_plot.svg\n";
    for (const AggregateCurve& curve : result.report.curves) {
        std::cout << "  final_mean_residual " << curve.config << " = "
                  << fmt_double(curve.mean.back()) << "\n";
    }
    return kExitOk;
}

struct VerifyArgs {
    std::string out = "out";
    bool quick = false;
    std::string negative;  // "", "tau", "beta0"
};

int cmd_verify(const VerifyArgs& args) {
    VerifyOptions opts;
    opts.quick = args.quick;
    if (args.negative == "tau") opts.tau_inflate = 1.05;
    if (args.negative == "beta0") opts.beta0_scale_case2 = 1e-3;

    const VerifyReport report = run_verify_suite(opts);

    fs::create_directories(args.out);
    std::ofstream csv(args.out + "/verify_report.csv");
    write_verify_csv(report, csv);

    std::cout << "verify: checks=" << report.checks << " violations=" << report.violations
              << " worst_slack=" << fmt_double(report.worst_slack) << " ("
              << report.worst_quantity << " at k=" << report.worst_k << ")\n"
              << "report=" << args.out << "/verify_report.csv\n";
    return report.pass() ? kExitOk : kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ASGARD+ saddle-point solver: solve instances, reproduce the square-root "
                 "LASSO experiments, verify runtime certificates"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Plain key=value config file; flags win on conflict");

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand("solve", "Run one algorithm on one instance");
    solve->add_option("--instance", sa.instance_dir, "Instance bundle directory");
    solve->add_flag("--demo", sa.demo, "Use the bundled 1-D demo instance");
    solve->add_option("--p", sa.p);
    solve->add_option("--n", sa.n);
    solve->add_option("--s", sa.s);
    solve->add_option("--sigma", sa.sigma);
    solve->add_flag("--corr", sa.corr);
    solve->add_option("--rho", sa.rho);
    solve->add_option("--seed", sa.seed);
    solve->add_option("--beta0", sa.beta0, "star | 10star | 0.1star | <float>");
    solve->add_option("--algo", sa.algo)->check(CLI::IsMember({"asgard", "nesterov"}));
    solve->add_option("--case", sa.case_override)->check(CLI::IsMember({0, 1, 2}));
    solve->add_option("--kmax", sa.kmax);
    solve->add_option("--out", sa.out);
    solve->add_option("--save-instance", sa.save_instance);

    ExperimentArgs ea;
    CLI::App* exp = app.add_subcommand("experiment", "Run one of the four experiments");
    exp->add_option("--exp", ea.which)->check(CLI::IsMember({1, 2, 3, 4}))->required();
    exp->add_option("--profile", ea.profile)->check(CLI::IsMember({"desk", "paper"}));
    exp->add_option("--instances", ea.instances);
    exp->add_option("--kmax", ea.kmax);
    exp->add_option("--ref-budget", ea.ref_budget);
    exp->add_option("--seed", ea.seed);
    exp->add_option("--p", ea.p);
    exp->add_option("--n", ea.n);
    exp->add_option("--s", ea.s);
    exp->add_option("--sigma", ea.sigma);
    exp->add_option("--corr", ea.corr);
    exp->add_option("--rho", ea.rho);
    exp->add_option("--out", ea.out);

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand("verify", "Run the certificate and invariant suite");
    verify->add_option("--out", va.out);
    verify->add_flag("--quick", va.quick, "Trimmed horizons");
    verify->add_option("--negative-control", va.negative)
        ->check(CLI::IsMember({"tau", "beta0"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitBadConfig;
    }

    try {
        if (solve->parsed()) return cmd_solve(sa);
        if (exp->parsed()) return cmd_experiment(ea);
        if (verify->parsed()) return cmd_verify(va);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const CapabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const NumericError& e) {
        std::cerr << "numeric abort: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }
    return kExitBadConfig;
}
