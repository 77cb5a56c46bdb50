#include "asgard/verify.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "asgard/baseline.hpp"
#include "asgard/csv.hpp"
#include "asgard/diagnostics.hpp"
#include "asgard/experiments.hpp"
#include "asgard/rng.hpp"
#include "asgard/smoothing.hpp"
#include "asgard/solver.hpp"

namespace asgard {

namespace {

// Accumulates elementary checks; keeps the worst row per quantity and every
// violating row.
class Collector {
public:
    // One check of "measured <= bound" with an externally chosen scaled
    // excess; excess > 0 is a violation.
    void check(const std::string& quantity, long k, double measured, double bound,
               double excess) {
        ++report_.checks;
        VerifyRow row{quantity, k, measured, bound, excess, excess <= 0.0};
        auto [it, inserted] = worst_.try_emplace(quantity, row);
        if (!inserted && excess > it->second.slack) it->second = row;
        if (!row.pass) {
            ++report_.violations;
            report_.rows.push_back(row);
        }
        if (excess > report_.worst_slack || report_.checks == 1) {
            report_.worst_slack = excess;
            report_.worst_quantity = quantity;
            report_.worst_k = k;
        }
    }

    // measured <= bound + tol * scale
    void check_upper(const std::string& quantity, long k, double measured, double bound,
                     double tol, double scale = 1.0) {
        check(quantity, k, measured, bound, (measured - bound) / std::max(scale, 1e-300) - tol);
    }

    VerifyReport finish() {
        for (const auto& [name, row] : worst_) {
            if (row.pass) report_.rows.push_back(row);  // violations are already in
        }
        std::sort(report_.rows.begin(), report_.rows.end(),
                  [](const VerifyRow& a, const VerifyRow& b) {
                      return a.quantity == b.quantity ? a.k < b.k : a.quantity < b.quantity;
                  });
        return std::move(report_);
    }

private:
    VerifyReport report_;
    std::map<std::string, VerifyRow> worst_;
};

struct Horizons {
    long tau_case1;   // Lemma A2(b) range
    long tau_case2;   // Lemma A2(a) beta-sandwich range
    long eq13;        // Eq.-style parameter condition range
    long run;         // diagnosed run length
    long ref;         // reference run length
    int eq9_instances;
    int draws;  // random draws per property
};

Horizons horizons(bool quick) {
    if (quick) return {2000, 1000, 300, 200, 20000, 10, 50};
    return {100000, 10000, 2000, 1000, 100000, 50, 200};
}

// ---------------------------------------------------------------------------
// Schedule checks: Eq.-style feasibility, tau/beta sandwiches, omega window.
// ---------------------------------------------------------------------------

void check_schedules(Collector& col, const Horizons& hor) {
    // Case 1: tau from the cubic, tau_0 = 1.
    {
        const Schedule sched(Regime::general(), 1.0, 1.0);
        sched.ensure(hor.tau_case1 + 2);
        for (long k = 1; k <= hor.tau_case1; ++k) {
            const double tau = sched.tau(k);
            const double tau_prev = sched.tau(k - 1);
            col.check_upper("lemA2b_tau_lower", k, 1.0 / (k + 1.0), tau, 1e-13);
            col.check_upper("lemA2b_tau_upper", k, tau, 2.0 / (k + 2.0), 1e-13);
            col.check_upper("tau_monotone_case1", k, tau, tau_prev, 1e-15);
            const double resid =
                std::abs(((tau + 1.0) * tau + sqr(tau_prev)) * tau - sqr(tau_prev));
            col.check_upper("cubic_residual", k, resid, 0.0, 1e-13);
            col.check_upper("lemA2b_beta", k, sched.beta(k), 2.0 / (k + 2.0), 1e-13);
        }
        for (long k = 1; k <= hor.eq13; ++k) {
            const ParamCondReport rep = check_param_cond(sched, k);
            col.check_upper("eq13_cond1_case1", k, -rep.slack1, 0.0, 1e-12);
            col.check_upper("eq13_cond2_case1", k, -rep.slack2, 0.0, 1e-12);
        }
        for (long k = 2; k <= hor.eq13; ++k) {
            const OmegaWindow w = omega_window(sched, k);
            const double eta_k = sched.at(k - 1).eta_next;
            col.check_upper("lemA4_window_nonempty_case1", k, w.lower, w.upper, 1e-10,
                            std::max(1.0, w.upper));
            col.check_upper("lemA4_eta_at_upper_case1", k, std::abs(1.0 / eta_k - w.upper), 0.0,
                            1e-10, std::max(1.0, w.upper));
        }
    }

    // Case 2: closed-form tau, beta0 at the theorem default.
    {
        const double mu_f = 0.1, opnorm = 1.0;
        const Regime regime = Regime::strongly_convex_primal(mu_f);
        const Schedule sched(regime, 0.382 * sqr(opnorm) / mu_f, opnorm);
        sched.ensure(hor.tau_case2 + 2);
        const double tau1 = sched.tau(1), tau2 = sched.tau(2);
        for (long k = 1; k <= hor.tau_case2; ++k) {
            const double tau = sched.tau(k);
            const double tau_prev = sched.tau(k - 1);
            const double identity = std::abs(sqr(tau) - (1.0 - tau) * sqr(tau_prev));
            col.check_upper("lemA2a_tau_identity", k, identity, 0.0, 1e-14,
                            std::max(1.0, sqr(tau_prev)));
            col.check_upper("lemA2a_tau_lower", k, 1.0 / (k + 1.0), tau, 1e-13);
            col.check_upper("lemA2a_tau_upper", k, tau, 2.0 / (k + 2.0), 1e-13);
            col.check_upper("tau_monotone_case2", k, tau, tau_prev, 1e-15);
            col.check_upper("lemA2a_beta_lower", k, sched.beta0() * sqr(sched.tau(k + 1)) / sqr(tau1),
                            sched.beta(k), 1e-12, std::max(1.0, sched.beta(k)));
            col.check_upper("lemA2a_beta_upper", k, sched.beta(k),
                            sched.beta0() * sqr(sched.tau(k + 2)) / sqr(tau2), 1e-12,
                            std::max(1.0, sched.beta(k)));
        }
        for (long k = 1; k <= hor.eq13; ++k) {
            const ParamCondReport rep = check_param_cond(sched, k);
            col.check_upper("eq13_cond1_case2", k, -rep.slack1, 0.0, 1e-12);
            col.check_upper("eq13_cond2_case2", k, -rep.slack2, 0.0, 1e-12);
        }
        for (long k = 2; k <= hor.eq13; ++k) {
            const OmegaWindow w = omega_window(sched, k);
            const double eta_k = sched.at(k - 1).eta_next;
            col.check_upper("lemA4_window_nonempty_case2", k, w.lower, w.upper, 1e-10,
                            std::max(1.0, w.upper));
            col.check_upper("lemA4_eta_at_upper_case2", k, std::abs(1.0 / eta_k - w.upper), 0.0,
                            1e-10, std::max(1.0, w.upper));
        }
    }

    // Case 3: constant tau, geometric beta.
    {
        const double mu_f = 0.5, mu_g = 1.0, opnorm = 2.0;
        const Regime regime = Regime::strongly_convex_both(mu_f, mu_g, opnorm);
        const Schedule sched(regime, 1.0, opnorm);
        const double tau = regime.tau_fixed();
        for (long k = 1; k <= hor.eq13; ++k) {
            col.check_upper("case3_tau_constant", k, std::abs(sched.tau(k) - tau), 0.0, 1e-15);
            const double geometric = 1.0 / std::pow(1.0 + tau, static_cast<double>(k));
            col.check_upper("case3_beta_geometric", k,
                            std::abs(sched.beta(k) - geometric) / geometric, 0.0, 1e-12);
            const ParamCondReport rep = check_param_cond(sched, k);
            col.check_upper("eq13_cond1_case3", k, -rep.slack1, 0.0, 1e-12);
            col.check_upper("eq13_cond2_case3", k, -rep.slack2, 0.0, 1e-12);
            const OmegaWindow w = omega_window(sched, k);
            const double eta_k = sched.at(k - 1).eta_next;
            col.check_upper("lemA4_window_nonempty_case3", k, w.lower, w.upper, 1e-10,
                            std::max(1.0, w.upper));
            col.check_upper("lemA4_eta_at_upper_case3", k, std::abs(1.0 / eta_k - w.upper), 0.0,
                            1e-10, std::max(1.0, w.upper));
        }
    }
}

// ---------------------------------------------------------------------------
// Smoothed-function properties over random draws.
// ---------------------------------------------------------------------------

void check_smoothing(Collector& col, const Horizons& hor, Rng& rng) {
    const Index n = 6;
    const Vec b = rng.gaussian_vec(n);

    struct Entry {
        ProxFriendlyFn gstar;
        std::function<double(const Vec&)> g;
        double mu_gstar;
        std::optional<double> m_g;
        const char* tag;
    };
    std::vector<Entry> entries;
    {
        ProxFriendlyFn gs = l2dist_conjugate(b);
        entries.push_back({gs, gs.conj_value, 0.0, 1.0, "l2"});
    }
    {
        ProxFriendlyFn gs = quadratic_conjugate(b);
        entries.push_back({gs, gs.conj_value, 1.0, std::nullopt, "quad"});
    }

    for (const Entry& e : entries) {
        for (int trial = 0; trial < hor.draws; ++trial) {
            const Vec yc = rng.gaussian_vec(n);
            const double beta = rng.uniform(0.05, 5.0);
            const double beta_hat = beta + rng.uniform(0.0, 5.0);
            const Vec u = 3.0 * rng.gaussian_vec(n);
            const Vec u2 = 3.0 * rng.gaussian_vec(n);

            const double g_beta = smoothed_value(e.gstar, beta, yc, u);
            const double g_u = e.g(u);
            const double scale = std::max({1.0, std::abs(g_beta), std::abs(g_u)});
            col.check_upper(std::string("lem4b_sandwich_lower_") + e.tag, trial, g_beta, g_u,
                            1e-9, scale);
            if (e.m_g) {
                const double cap = g_beta + 0.5 * beta * sqr(yc.norm() + *e.m_g);
                col.check_upper(std::string("lem4b_sandwich_upper_") + e.tag, trial, g_u, cap,
                                1e-9, scale);
            }

            const Vec grad1 = smoothed_grad(e.gstar, beta, yc, u);
            const Vec grad2 = smoothed_grad(e.gstar, beta, yc, u2);
            col.check_upper(std::string("lem4a_grad_lipschitz_") + e.tag, trial,
                            (grad1 - grad2).norm(), (u - u2).norm() / (beta + e.mu_gstar),
                            1e-10);

            const double g_beta_hat = smoothed_value(e.gstar, beta_hat, yc, u);
            col.check_upper(std::string("lem4c_beta_monotone_") + e.tag, trial, g_beta,
                            g_beta_hat + 0.5 * (beta_hat - beta) * (grad1 - yc).squaredNorm(),
                            1e-10, scale);

            // Strong-convexity-style lower bound of the smoothed function.
            const double lhs = smoothed_value(e.gstar, beta, yc, u2) + grad2.dot(u - u2);
            const double rhs =
                g_beta - 0.5 * (beta + e.mu_gstar) * (grad2 - grad1).squaredNorm();
            col.check_upper(std::string("lem4a_lower_bound_") + e.tag, trial, lhs, rhs, 1e-9,
                            scale);
        }
    }
}

// ---------------------------------------------------------------------------
// Certified runs: contraction, Lyapunov cap, bound domination, weak duality.
// ---------------------------------------------------------------------------

struct DiagnosedRun {
    std::vector<double> v;       // V_k for k = 1..k_run
    std::vector<double> tau;     // tau_k aligned with v
    std::vector<double> f;       // F(x^k), k = 0..k_run
    std::vector<double> d;       // D(ytilde^k) or +inf
    std::vector<double> gap;     // gap certificate or +inf
    std::vector<double> gnorm;   // ||K x^k - b||, for run-specific M_g
    double f_ref = kInf, d_ref = kInf;
    Vec x_ref, y_ref;
    bool has_y_ref = false;
};

DiagnosedRun diagnose(const SaddleProblem& prob, double beta0, long k_ref, long k_run,
                      bool skip_beta0_check = false) {
    const Vec x0 = Vec::Zero(prob.p());
    const Vec y0 = Vec::Zero(prob.n());

    RunOptions ref_opts;
    ref_opts.k_max = k_ref;
    ref_opts.trace_limit = 0;
    ref_opts.eval_dual = true;
    ref_opts.skip_beta0_check = skip_beta0_check;
    const RunRecord ref = solver_run(prob, x0, y0, beta0, ref_opts);

    DiagnosedRun out;
    out.f_ref = ref.best_f;
    out.x_ref = ref.best_x;
    out.d_ref = ref.best_d;
    if (ref.best_d < kInf) {
        out.y_ref = ref.best_y;
        out.has_y_ref = true;
    }

    RunOptions opts;
    opts.k_max = k_run;
    opts.trace_limit = 0;
    opts.eval_dual = true;
    opts.eval_smoothed = true;
    opts.lyapunov_anchor = out.x_ref;
    opts.skip_beta0_check = skip_beta0_check;
    const Vec& b = prob.g_offset;
    opts.observer = [&](const SolverState& st, const TraceRow& row) {
        out.f.push_back(row.f_primal);
        out.d.push_back(row.d_dual);
        out.gap.push_back(row.gap_cert);
        out.gnorm.push_back((st.kx - b).norm());
        if (row.k >= 1) {
            out.v.push_back(row.lyapunov);
            out.tau.push_back(row.tau);
        }
        out.f_ref = std::min(out.f_ref, row.f_primal);
        out.d_ref = std::min(out.d_ref, row.d_dual);
    };
    solver_run(prob, x0, y0, beta0, opts);
    return out;
}

void check_contraction_and_bounds(Collector& col, const SaddleProblem& prob, double beta0,
                                  const DiagnosedRun& run, const std::string& tag,
                                  double primal_factor, std::optional<double> m_g_override,
                                  std::optional<double> sup_x_sq,
                                  std::optional<double> sup_y_sq) {
    // Contraction of the potential along the run; v[i] is V at k = i+1 and
    // tau[i] the tau at that index.
    for (std::size_t i = 0; i + 1 < run.v.size(); ++i) {
        const long k = static_cast<long>(i) + 1;
        const double scale = std::max(1.0, std::abs(run.v[i]));
        col.check_upper("eq14_contraction_" + tag, k, run.v[i + 1],
                        (1.0 - run.tau[i]) * run.v[i], 1e-8, scale);
    }

    BoundSpec spec = make_bound_spec(prob, Vec::Zero(prob.p()), Vec::Zero(prob.n()), beta0,
                                     run.x_ref,
                                     run.has_y_ref ? std::optional<Vec>(run.y_ref)
                                                   : std::nullopt,
                                     m_g_override);
    spec.sup_x_sq = sup_x_sq;
    spec.sup_y_sq = sup_y_sq;

    const bool case1 = prob.regime.tag == RegimeTag::GeneralConvex;
    const double opnorm = prob.K->opnorm();
    const double dist0 = run.x_ref.norm();

    for (std::size_t i = 1; i < run.f.size(); ++i) {
        const long k = static_cast<long>(i);
        // Lyapunov cap from the contraction chain (general convex case).
        if (case1) {
            col.check_upper("lyapunov_cap_" + tag, k, run.v[i - 1],
                            sqr(opnorm) * sqr(dist0) / (2.0 * beta0 * k), 1e-8,
                            std::max(1.0, sqr(opnorm) * sqr(dist0) / (2.0 * beta0 * k)));
        }
        if (spec.m_g) {
            const double bound = primal_factor * theorem_bound(spec, k, BoundKind::Primal);
            col.check_upper("thm_primal_" + tag, k, run.f[i] - run.f_ref, bound, 1e-12,
                            std::max(1.0, bound));
        }
        if (run.has_y_ref && spec.m_fstar && run.d[i] < kInf && run.d_ref < kInf) {
            const double bound = 1.05 * theorem_bound(spec, k, BoundKind::Dual);
            col.check_upper("thm_dual_" + tag, k, run.d[i] - run.d_ref, bound, 1e-12,
                            std::max(1.0, bound));
        }
        if (sup_x_sq && sup_y_sq && run.gap[i] < kInf) {
            const double bound = 1.05 * theorem_bound(spec, k, BoundKind::Gap);
            col.check_upper("thm_gap_" + tag, k, run.gap[i], bound, 1e-12,
                            std::max(1.0, bound));
        }
        if (run.gap[i] < kInf) {
            col.check_upper("weak_duality_" + tag, k, -run.gap[i], 0.0, 1e-9);
        }
    }
}

void check_runs(Collector& col, const Horizons& hor) {
    // Small square-root-regression instances, one per convexity regime, plus
    // bounded-domain problems for dual and gap bounds.
    InstanceSpec spec;
    spec.p = 30;
    spec.n = 12;
    spec.s = 5;
    spec.sigma = 0.05;
    spec.seed = 7001;

    {  // Case 1 lasso
        InstanceBundle bundle = generate(spec);
        SaddleProblem prob = problem_from_bundle(bundle, false);
        const double beta0 = sqr(prob.K->opnorm());  // order-of-||K|| starter
        DiagnosedRun run = diagnose(prob, beta0, hor.ref, hor.run);
        check_contraction_and_bounds(col, prob, beta0, run, "case1_lasso", 1.05, {}, {}, {});
    }
    {  // Case 2 lasso
        InstanceSpec s2 = spec;
        s2.rho = 0.1;
        s2.seed = 7002;
        InstanceBundle bundle = generate(s2);
        SaddleProblem prob = problem_from_bundle(bundle, true);
        const double beta0 = 0.382 * sqr(prob.K->opnorm()) / s2.rho;
        DiagnosedRun run = diagnose(prob, beta0, hor.ref, hor.run);
        check_contraction_and_bounds(col, prob, beta0, run, "case2_lasso", 1.0 + 1e-6, {}, {},
                                     {});
    }
    {  // Case 3 quadratic-g
        Rng rng(7003);
        const Index d = 20;
        Mat km(d, d);
        for (Index i = 0; i < d; ++i)
            for (Index j = 0; j < d; ++j) km(i, j) = rng.gaussian() / std::sqrt(double(d));
        auto kop = std::make_shared<LinearMap>(std::move(km));
        const Vec b = rng.gaussian_vec(d);
        SaddleProblem prob = make_quadratic_problem(kop, b, 0.05, 0.1);
        const double beta0 = 1.0;
        // Linear convergence reaches machine precision within ~2000 steps;
        // longer horizons would underflow the geometric beta sequence.
        DiagnosedRun run = diagnose(prob, beta0, std::min(hor.ref, 2000L), hor.run);
        // g is not globally Lipschitz; bound the gradient norm along the run.
        const double m_g = *std::max_element(run.gnorm.begin(), run.gnorm.end());
        check_contraction_and_bounds(col, prob, beta0, run, "case3_quadratic", 1.0 + 1e-6, m_g,
                                     {}, {});
    }
    {  // box x ball, general convex
        Rng rng(7004);
        const Index d = 12;
        Mat km(d, d);
        for (Index i = 0; i < d; ++i)
            for (Index j = 0; j < d; ++j) km(i, j) = rng.gaussian() / std::sqrt(double(d));
        auto kop = std::make_shared<LinearMap>(std::move(km));
        const Vec b = 0.25 * rng.gaussian_vec(d);
        SaddleProblem prob = make_box_ball(kop, b, 1.0, 0.0);
        const double beta0 = sqr(prob.K->opnorm());
        DiagnosedRun run = diagnose(prob, beta0, hor.ref, hor.run);
        check_contraction_and_bounds(col, prob, beta0, run, "case1_box", 1.05, {},
                                     sup_sq_dist_box(Vec::Zero(d), 1.0),
                                     sup_sq_dist_unit_ball(Vec::Zero(d)));
    }
    {  // box x ball, strongly convex f
        Rng rng(7005);
        const Index d = 12;
        Mat km(d, d);
        for (Index i = 0; i < d; ++i)
            for (Index j = 0; j < d; ++j) km(i, j) = rng.gaussian() / std::sqrt(double(d));
        auto kop = std::make_shared<LinearMap>(std::move(km));
        const Vec b = 0.25 * rng.gaussian_vec(d);
        SaddleProblem prob = make_box_ball(kop, b, 1.0, 0.5);
        const double beta0 = 0.382 * sqr(prob.K->opnorm()) / 0.5;
        DiagnosedRun run = diagnose(prob, beta0, hor.ref, hor.run);
        check_contraction_and_bounds(col, prob, beta0, run, "case2_box", 1.0 + 1e-6, {},
                                     sup_sq_dist_box(Vec::Zero(d), 1.0),
                                     sup_sq_dist_unit_ball(Vec::Zero(d)));
    }
}

// ---------------------------------------------------------------------------
// One-iteration estimate on random small instances.
// ---------------------------------------------------------------------------

void check_one_iteration_suite(Collector& col, const Horizons& hor, Rng& rng) {
    for (int inst = 0; inst < hor.eq9_instances; ++inst) {
        const Index p = 1 + static_cast<Index>(rng.below(5));
        const Index n = 1 + static_cast<Index>(rng.below(5));
        Mat km(n, p);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < p; ++j) km(i, j) = rng.gaussian();
        auto kop = std::make_shared<LinearMap>(std::move(km));
        const Vec b = rng.gaussian_vec(n);

        SaddleProblem prob;
        const int f_kind = static_cast<int>(rng.below(3));
        const int g_kind = static_cast<int>(rng.below(2));
        const double rho = f_kind == 1 ? rng.uniform(0.05, 0.5) : 0.0;
        if (g_kind == 0) {
            prob = make_sqrt_lasso(kop, b, rng.uniform(0.5, 2.0), rho, rho > 0.0);
            if (f_kind == 2) {
                prob.f = box_indicator(rng.uniform(0.5, 2.0), p);
                prob.regime = Regime::general();
            }
        } else {
            if (rho > 0.0) {
                prob = make_quadratic_problem(kop, b, rng.uniform(0.5, 2.0), rho);
            } else {
                prob.f = f_kind == 2 ? box_indicator(rng.uniform(0.5, 2.0), p)
                                     : elastic_net(rng.uniform(0.5, 2.0), 0.0);
                prob.gstar = quadratic_conjugate(b);
                prob.g_value = prob.gstar.conj_value;
                prob.K = kop;
                prob.ycenter = Vec::Zero(n);
                prob.g_offset = b;
                prob.regime = Regime::general();
            }
        }

        const double beta0 = prob.regime.tag == RegimeTag::StronglyConvexPrimal
                                 ? 0.382 * sqr(prob.K->opnorm()) / prob.regime.mu_f
                                 : rng.uniform(0.5, 2.0);
        Schedule sched(prob.regime, beta0, prob.K->opnorm());
        Vec x0 = rng.gaussian_vec(p);
        x0 = prob.f.prox(x0, 1.0);  // pull into dom f
        Vec y0 = prob.gstar.prox(rng.gaussian_vec(n), 1.0);
        SolverState st = solver_init(prob, x0, y0, beta0, true);

        const long steps = 1 + static_cast<long>(rng.below(3));
        for (long step = 0; step < steps; ++step) {
            StepSnapshot snap;
            snap.x_k = st.x;
            snap.xhat_k = st.xhat;
            snap.kx_k = st.kx;
            const ScheduleState ss = sched.at(st.k);
            snap.tau_k = ss.tau_k;
            snap.beta_k = ss.beta_k;
            snap.l_k = ss.L_k;
            snap.beta_prev = st.k >= 1 ? sched.beta(st.k - 1) : ss.beta_k * (1.0 + ss.tau_k);
            solver_step(prob, sched, st);
            snap.x_next = st.x;
            snap.y_next = st.y;

            for (int t = 0; t < 3; ++t) {
                Vec x_test = prob.f.prox(2.0 * rng.gaussian_vec(p), 1.0);
                const double excess = check_one_iteration(prob, snap, x_test);
                col.check_upper("eq9_one_iteration", inst * 100 + st.k * 10 + t, excess, 0.0,
                                1e-8);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Saddle-function inequalities linking the smoothed objective to L and D.
// ---------------------------------------------------------------------------

void check_lemma1(Collector& col, const Horizons& hor, Rng& rng) {
    const Index d = 8;
    Mat km(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) km(i, j) = rng.gaussian() / std::sqrt(double(d));
    auto kop = std::make_shared<LinearMap>(std::move(km));
    const Vec b = 0.3 * rng.gaussian_vec(d);
    SaddleProblem prob = make_box_ball(kop, b, 1.0, 0.0);

    auto random_ball = [&](double radius) {
        Vec y = rng.gaussian_vec(d);
        const double nrm = y.norm();
        const double target = radius * std::pow(rng.uniform(), 1.0 / d);
        if (nrm > 0) y *= target / nrm;
        return y;
    };

    for (int t = 0; t < hor.draws; ++t) {
        const double beta = rng.uniform(0.05, 5.0);
        const Vec xbar = prob.f.prox(2.0 * rng.gaussian_vec(d), 1.0);
        const Vec y = random_ball(1.0);
        const Vec ytilde = random_ball(1.0);
        const Vec yref = random_ball(1.0);
        const Vec& yc = prob.ycenter;

        const double f_beta = smoothed_objective(prob, beta, xbar);
        const double lhs1 = lagrangian(prob, xbar, y);
        col.check_upper("lemma1_first", t, lhs1, f_beta + 0.5 * beta * (y - yc).squaredNorm(),
                        1e-9, std::max(1.0, std::abs(lhs1)));

        const Vec xtilde = prob.f.conj_argmax(Vec(-prob.K->adjoint(ytilde)));
        const double lhs2 = dual_value(prob, ytilde) - dual_value(prob, yref);
        const double rhs2 = f_beta - lagrangian(prob, xtilde, ytilde) +
                            0.5 * beta * (yref - yc).squaredNorm();
        col.check_upper("lemma1_second", t, lhs2, rhs2, 1e-8, std::max(1.0, std::abs(lhs2)));
    }
}

// ---------------------------------------------------------------------------
// Negative controls.
// ---------------------------------------------------------------------------

void check_tampered_schedule(Collector& col, double inflate) {
    struct Case {
        Regime regime;
        double beta0, opnorm;
        const char* tag;
    };
    const double mu_f = 0.1;
    std::vector<Case> cases = {
        {Regime::general(), 1.0, 1.0, "case1"},
        {Regime::strongly_convex_primal(mu_f), 0.382 / mu_f, 1.0, "case2"},
    };
    for (const Case& c : cases) {
        const Schedule honest(c.regime, c.beta0, c.opnorm);
        honest.ensure(201);
        std::vector<double> tau(202), beta(202), lip(202);
        for (long k = 0; k <= 201; ++k) {
            tau[k] = k == 0 ? honest.tau(0) : std::min(1.0, honest.tau(k) * inflate);
            beta[k] = k == 0 ? c.beta0 : beta[k - 1] / (1.0 + tau[k]);
            lip[k] = sqr(c.opnorm) / (c.regime.mu_gstar + beta[k]);
        }
        for (long k = 1; k <= 200; ++k) {
            const ParamCondReport rep =
                check_param_cond(tau[k - 1], tau[k], lip[k - 1], lip[k], c.regime.mu_f);
            col.check_upper(std::string("eq13_tampered_tau_") + c.tag, k,
                            -std::min(rep.slack1, rep.slack2), 0.0, 1e-12);
        }
    }
}

void check_illegal_beta0(Collector& col, const Horizons& hor, double scale) {
    InstanceSpec spec;
    spec.p = 30;
    spec.n = 12;
    spec.s = 5;
    spec.rho = 0.1;
    spec.seed = 7002;
    InstanceBundle bundle = generate(spec);
    SaddleProblem prob = problem_from_bundle(bundle, true);
    const double beta0 = scale * 0.382 * sqr(prob.K->opnorm()) / spec.rho;
    DiagnosedRun run = diagnose(prob, beta0, hor.ref, hor.run, /*skip_beta0_check=*/true);
    for (std::size_t i = 0; i + 1 < run.v.size(); ++i) {
        const double scale_v = std::max(1.0, std::abs(run.v[i]));
        col.check_upper("eq14_illegal_beta0", static_cast<long>(i) + 1, run.v[i + 1],
                        (1.0 - run.tau[i]) * run.v[i], 1e-8, scale_v);
    }
}

}  // namespace

VerifyReport run_verify_suite(const VerifyOptions& opts) {
    Collector col;
    const Horizons hor = horizons(opts.quick);

    const bool negative = opts.tau_inflate != 1.0 || opts.beta0_scale_case2 != 1.0;
    if (negative) {
        if (opts.tau_inflate != 1.0) check_tampered_schedule(col, opts.tau_inflate);
        if (opts.beta0_scale_case2 != 1.0) check_illegal_beta0(col, hor, opts.beta0_scale_case2);
        return col.finish();
    }

    Rng rng(opts.seed);
    check_schedules(col, hor);
    check_smoothing(col, hor, rng);
    check_runs(col, hor);
    check_one_iteration_suite(col, hor, rng);
    check_lemma1(col, hor, rng);
    return col.finish();
}

void write_verify_csv(const VerifyReport& report, std::ostream& out) {
    out << "quantity,k,measured,bound,slack,pass\n";
    for (const VerifyRow& row : report.rows) {
        out << row.quantity << ',' << row.k << ',' << fmt_double(row.measured) << ','
            << fmt_double(row.bound) << ',' << fmt_double(row.slack) << ','
            << (row.pass ? 1 : 0) << '\n';
    }
    out << "summary,checks=" << report.checks << ",violations=" << report.violations
        << ",worst=" << report.worst_quantity << ",k=" << report.worst_k << ','
        << fmt_double(report.worst_slack) << '\n';
}

}  // namespace asgard
