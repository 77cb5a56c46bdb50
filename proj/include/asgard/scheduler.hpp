#pragma once

#include <iosfwd>
#include <vector>

#include "asgard/core.hpp"

namespace asgard {

enum class RegimeTag { GeneralConvex, StronglyConvexPrimal, StronglyConvexBoth };

const char* regime_name(RegimeTag tag);

// Convexity regime the schedule is generated for. The moduli recorded here
// are the ones the parameter sequences USE; running the general-convex
// schedule on a problem whose f happens to be strongly convex is legitimate
// (the strong convexity is simply not exploited).
struct Regime {
    RegimeTag tag = RegimeTag::GeneralConvex;
    double mu_f = 0.0;
    double mu_gstar = 0.0;
    double kappa_f = 0.0;  // ||K||^2 / (mu_f mu_gstar); StronglyConvexBoth only

    static Regime general();
    static Regime strongly_convex_primal(double mu_f);
    static Regime strongly_convex_both(double mu_f, double mu_gstar, double opnorm);

    // Constant step size 1/sqrt(1 + kappa_f) for the doubly strongly convex
    // regime; the starting tau otherwise.
    double tau_fixed() const;
    double tau0() const;
};

// One regime-specific tau update:
//   GeneralConvex:        unique root in (0,1) of t^3 + t^2 + tau_k^2 t - tau_k^2 = 0
//   StronglyConvexPrimal: (tau_k/2) (sqrt(tau_k^2 + 4) - tau_k)
//   StronglyConvexBoth:   the constant tau_fixed(), independent of tau_k
double next_tau(const Regime& regime, double tau_k);

// Snapshot of the parameter sequences around iteration k. Fields with the
// _next suffix are the index k+1 values the momentum step needs.
struct ScheduleState {
    long k = 0;
    double tau_k = 0, tau_next = 0;
    double beta_k = 0, beta_next = 0;
    double L_k = 0, L_next = 0;
    double m_next = 0;    // (L_{k+1} + mu_f) / (L_k + mu_f)
    double a_next = 0;    // L_{k+1} / (L_k + mu_f)
    double eta_next = 0;  // (1 - tau_k) tau_k / (tau_k^2 + m_{k+1} tau_{k+1})
};

// Deterministic parameter schedule for one (regime, beta0, ||K||) triple.
// Nodes are generated lazily and cached; call ensure() up front if the
// object is shared across threads.
class Schedule {
public:
    Schedule(Regime regime, double beta0, double opnorm);

    ScheduleState at(long k) const;
    void ensure(long k) const;

    double tau(long k) const;
    double beta(long k) const;
    double lipschitz(long k) const;  // L_k

    const Regime& regime() const { return regime_; }
    double beta0() const { return beta0_; }
    double opnorm() const { return opnorm_; }

private:
    struct Node {
        double tau, beta, L;
    };
    Regime regime_;
    double beta0_;
    double opnorm_;
    mutable std::vector<Node> nodes_;
};

// Signed slacks of the two feasibility inequalities the rate proofs need
// from the schedule at index k (k >= 1). slack = (lhs - rhs) / scale with
// scale = max(1, |lhs|, |rhs|); pass means both slacks >= -1e-12.
struct ParamCondReport {
    double lhs1 = 0, rhs1 = 0, slack1 = 0;
    double lhs2 = 0, rhs2 = 0, slack2 = 0;
    bool pass = false;
};

ParamCondReport check_param_cond(double tau_prev, double tau, double l_prev, double l,
                                 double mu_f);
ParamCondReport check_param_cond(const Schedule& sched, long k);

// Admissible window [lower, upper] for the momentum denominator omega_k at
// index k >= 1; 1/eta_k sits at the upper endpoint by construction.
// Undefined when tau_{k-1} = 1 (the very first step of regimes that start
// at tau_0 = 1).
struct OmegaWindow {
    double lower = 0, upper = 0;
};

OmegaWindow omega_window(double tau_prev, double tau, double l_prev, double l, double mu_f);
OmegaWindow omega_window(const Schedule& sched, long k);

// CSV columns: k, tau, beta, L, m, eta, cond1_slack, cond2_slack, omega_lo, omega_hi
void dump_schedule_csv(const Schedule& sched, long k_max, std::ostream& out);

}  // namespace asgard
