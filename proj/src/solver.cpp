#include "asgard/solver.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>

#include "asgard/diagnostics.hpp"
#include "asgard/smoothing.hpp"

namespace asgard {

namespace {

// Guard for the degenerate K = 0 limit: prox_{f/L} with L = 0 is read as the
// minimizer of f, approximated by a very large prox parameter.
constexpr double kDegenerateGamma = 1e12;

void check_beta0(const SaddleProblem& prob, double beta0) {
    if (prob.regime.tag != RegimeTag::StronglyConvexPrimal) return;
    Schedule sched(prob.regime, beta0, prob.K->opnorm());
    for (long k = 1; k <= 64; ++k) {
        const ParamCondReport rep = check_param_cond(sched, k);
        if (!rep.pass) {
            const double threshold = 0.382 * sqr(prob.K->opnorm()) / prob.regime.mu_f;
            throw UsageError(
                "solver_init: beta0 = " + std::to_string(beta0) +
                " fails the Case-2 feasibility condition at k = " + std::to_string(k) +
                " (needs beta0 >= 0.382 ||K||^2 / mu_f = " + std::to_string(threshold) +
                "); running anyway would void the convergence certificates");
        }
    }
}

}  // namespace

SolverState solver_init(const SaddleProblem& prob, const Vec& x0, const Vec& ytilde0,
                        double beta0, bool skip_beta0_check) {
    if (x0.size() != prob.p() || ytilde0.size() != prob.n()) {
        throw UsageError("solver_init: iterate dimensions do not match the problem");
    }
    if (!(beta0 > 0.0)) throw UsageError("solver_init: beta0 must be > 0");
    if (prob.f.value(x0) == kInf) throw UsageError("solver_init: x0 outside dom f");
    if (prob.gstar.value(ytilde0) == kInf) throw UsageError("solver_init: ytilde0 outside dom g*");
    if (!skip_beta0_check) check_beta0(prob, beta0);

    SolverState st;
    st.k = 0;
    st.x = x0;
    st.x_prev = x0;
    st.xhat = x0;
    st.ytilde = ytilde0;
    st.y = ytilde0;
    st.kx = prob.K->apply(x0);
    st.kxhat = st.kx;
    return st;
}

void solver_step(const SaddleProblem& prob, const Schedule& sched, SolverState& st) {
    const ScheduleState s = sched.at(st.k);

    Vec y_next = prob.gstar.prox(prob.ycenter + st.kxhat / s.beta_k, 1.0 / s.beta_k);
    Vec kty = prob.K->adjoint(y_next);
    const double gamma = s.L_k > 0.0 ? 1.0 / s.L_k : kDegenerateGamma;
    Vec x_next = prob.f.prox(st.xhat - gamma * kty, gamma);
    Vec kx_next = prob.K->apply(x_next);
    Vec xhat_next = x_next + s.eta_next * (x_next - st.x);
    // K xhat^{k+1} from cached images; keeps the step at one apply + one adjoint.
    Vec kxhat_next = (1.0 + s.eta_next) * kx_next - s.eta_next * st.kx;
    st.ytilde = (1.0 - s.tau_k) * st.ytilde + s.tau_k * y_next;

    st.y = std::move(y_next);
    st.x_prev = std::move(st.x);
    st.x = std::move(x_next);
    st.xhat = std::move(xhat_next);
    st.kx = std::move(kx_next);
    st.kxhat = std::move(kxhat_next);
    ++st.k;
}

RunRecord solver_run(const SaddleProblem& prob, const Vec& x0, const Vec& ytilde0, double beta0,
                     const RunOptions& opts) {
    if (opts.k_max < 1) throw UsageError("solver_run: k_max must be >= 1");

    Schedule sched(prob.regime, beta0, prob.K->opnorm());
    SolverState st = solver_init(prob, x0, ytilde0, beta0, opts.skip_beta0_check);

    RunRecord rec;
    rec.beta0 = beta0;

    const bool want_dual = (opts.eval_dual || opts.stop_tol.has_value()) && prob.f.has_conj_value();
    const double mu_f = prob.regime.mu_f;

    // Anchor data for the Lyapunov column, computed once.
    Vec k_anchor;
    double f_anchor = 0.0;
    if (opts.lyapunov_anchor) {
        k_anchor = prob.K->apply(*opts.lyapunov_anchor);
        f_anchor = prob.f.value(*opts.lyapunov_anchor);
    }

    const auto t_start = std::chrono::steady_clock::now();

    auto emit = [&](long k) -> TraceRow {
        TraceRow row;
        row.k = k;
        row.tau = sched.tau(k);
        row.beta = sched.beta(k);
        row.lip = sched.lipschitz(k);
        row.eta = k >= 1 ? sched.at(k - 1).eta_next : 0.0;
        row.f_primal = primal_value_cached(prob, st.x, st.kx);

        const double beta_used = k >= 1 ? sched.beta(k - 1) : beta0;
        if (opts.eval_smoothed || opts.lyapunov_anchor) {
            row.f_smoothed = smoothed_objective_cached(prob, beta_used, st.x, st.kx);
        }
        if (want_dual) {
            const Vec kty = prob.K->adjoint(st.ytilde);
            row.d_dual = dual_value_cached(prob, st.ytilde, kty);
            if (row.f_primal != kInf && row.d_dual != kInf) {
                row.gap_cert = row.f_primal + row.d_dual;
            }
        }
        if (opts.lyapunov_anchor && k >= 1) {
            const double lagr =
                f_anchor + k_anchor.dot(st.ytilde) - prob.gstar.value(st.ytilde);
            const double tau_prev = sched.tau(k - 1);
            const Vec momentum =
                (st.x - (1.0 - tau_prev) * st.x_prev) / tau_prev - *opts.lyapunov_anchor;
            row.lyapunov = row.f_smoothed - lagr +
                           0.5 * (sched.lipschitz(k - 1) + mu_f) * sqr(tau_prev) *
                               momentum.squaredNorm();
        }
        if (opts.theorem_bound_fn && k >= 1) row.bound_theorem = opts.theorem_bound_fn(k);
        row.wallclock_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

        if (row.f_primal < rec.best_f) {
            rec.best_f = row.f_primal;
            rec.best_f_k = k;
            rec.best_x = st.x;
        }
        if (row.d_dual < rec.best_d) {
            rec.best_d = row.d_dual;
            rec.best_d_k = k;
            rec.best_y = st.ytilde;
        }
        if (opts.trace_limit < 0 || static_cast<long>(rec.trace.size()) < opts.trace_limit) {
            rec.trace.push_back(row);
        }
        if (opts.observer) opts.observer(st, row);
        return row;
    };

    emit(0);
    for (long it = 0; it < opts.k_max; ++it) {
        solver_step(prob, sched, st);
        if (!all_finite(st.x) || !all_finite(st.y) || !all_finite(st.ytilde)) {
            throw NumericError("solver_run: non-finite iterate at iteration " +
                               std::to_string(st.k));
        }
        const TraceRow row = emit(st.k);
        if (opts.stop_tol && row.gap_cert <= *opts.stop_tol) {
            rec.stopped_early = true;
            break;
        }
    }

    rec.final_state = std::move(st);
    rec.iterations = rec.final_state.k;
    return rec;
}

void write_trace_csv(const RunRecord& rec, std::ostream& out) {
    out << "k,tau_k,beta_k,L_k,eta_k,F_primal,F_smoothed,D_dual,gap_cert,lyapunov,"
           "bound_theorem,wallclock_s\n";
    char buf[512];
    for (const TraceRow& r : rec.trace) {
        std::snprintf(buf, sizeof(buf),
                      "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.6f\n",
                      r.k, r.tau, r.beta, r.lip, r.eta, r.f_primal, r.f_smoothed, r.d_dual,
                      r.gap_cert, r.lyapunov, r.bound_theorem, r.wallclock_s);
        out << buf;
    }
}

}  // namespace asgard
