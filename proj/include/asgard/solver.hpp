#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asgard/problem.hpp"
#include "asgard/scheduler.hpp"

namespace asgard {

// Iterates around iteration k: x = x^k, x_prev = x^{k-1}, xhat = the
// extrapolated point, ytilde = the averaged dual iterate, y = y^k (the last
// dual prox output). kx / kxhat cache the operator images so a step costs
// exactly one apply and one adjoint.
struct SolverState {
    long k = 0;
    Vec x, x_prev, xhat;
    Vec ytilde, y;
    Vec kx, kxhat;
};

struct TraceRow {
    long k = 0;
    double tau = 0, beta = 0, lip = 0, eta = 0;
    double f_primal = kInf;
    double f_smoothed = kInf;
    double d_dual = kInf;
    double gap_cert = kInf;
    double lyapunov = kInf;
    double bound_theorem = kInf;
    double wallclock_s = 0;
};

struct RunRecord {
    std::string algorithm = "asgard+";
    double beta0 = 0;
    std::vector<TraceRow> trace;
    SolverState final_state;
    double best_f = kInf;
    long best_f_k = -1;
    Vec best_x;
    double best_d = kInf;  // +inf when no dual value was ever finite
    long best_d_k = -1;
    Vec best_y;
    bool stopped_early = false;
    long iterations = 0;
};

struct RunOptions {
    long k_max = 0;
    std::optional<double> stop_tol;  // early stop on F(x^k) + D(ytilde^k)
    bool eval_dual = false;          // costs one extra adjoint per iteration
    bool eval_smoothed = false;
    std::optional<Vec> lyapunov_anchor;
    std::function<double(long)> theorem_bound_fn;  // fills the bound column
    long trace_limit = -1;                         // cap kept rows, -1 = keep all
    std::function<void(const SolverState&, const TraceRow&)> observer;
    bool skip_beta0_check = false;  // bypass Case-2 feasibility (negative controls)
};

// Algorithm initialization: validates x0 in dom f, ytilde0 in dom g*, and
// (unless bypassed) that beta0 yields a feasible Case-2 schedule. Returns the
// state at k = 0 with xhat^0 = x^0 and the K images cached.
SolverState solver_init(const SaddleProblem& prob, const Vec& x0, const Vec& ytilde0,
                        double beta0, bool skip_beta0_check = false);

// One iteration: dual prox, primal prox, primal extrapolation, dual
// averaging, in this order, with the index-k parameters of the schedule.
void solver_step(const SaddleProblem& prob, const Schedule& sched, SolverState& st);

// Full loop with per-iteration trace. Throws NumericError naming the
// iteration if an iterate turns non-finite.
RunRecord solver_run(const SaddleProblem& prob, const Vec& x0, const Vec& ytilde0, double beta0,
                     const RunOptions& opts);

// CSV columns: k, tau_k, beta_k, L_k, eta_k, F_primal, F_smoothed, D_dual,
// gap_cert, lyapunov, bound_theorem, wallclock_s. Non-finite values are
// emitted as "inf"/"-inf".
void write_trace_csv(const RunRecord& rec, std::ostream& out);

}  // namespace asgard
