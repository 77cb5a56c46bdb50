#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asgard/problem.hpp"
#include "asgard/scheduler.hpp"

namespace asgard {

// F(x) = f(x) + g(Kx);  +inf outside dom f.
double primal_value(const SaddleProblem& prob, const Vec& x);
double primal_value_cached(const SaddleProblem& prob, const Vec& x, const Vec& kx);

// D(y) = f*(-K^T y) + g*(y). Throws CapabilityError when f has no conjugate
// value; returns +inf at infeasible points.
double dual_value(const SaddleProblem& prob, const Vec& y);
double dual_value_cached(const SaddleProblem& prob, const Vec& y, const Vec& kty);

// L(x, y) = f(x) + <Kx, y> - g*(y).
double lagrangian(const SaddleProblem& prob, const Vec& x, const Vec& y);
double lagrangian_cached(const SaddleProblem& prob, const Vec& x, const Vec& y, const Vec& kx);

// F(x) + D(y): nonnegative whenever finite, zero exactly at saddle points.
double gap_certificate(const SaddleProblem& prob, const Vec& x, const Vec& y);

// Potential at iteration k >= 1 (index k-1 parameters):
//   V_k(x) = F_{beta_{k-1}}(x^k, yc) - L(x, ytilde^k)
//          + ((L_{k-1} + mu_f) tau_{k-1}^2 / 2) ||(1/tau_{k-1})[x^k - (1 - tau_{k-1}) x^{k-1}] - x||^2
double lyapunov(const SaddleProblem& prob, const Schedule& sched, long k, const Vec& x_k,
                const Vec& x_prev, const Vec& ytilde_k, const Vec& anchor);

struct ContractionReport {
    struct Violation {
        long k;
        double slack;
    };
    std::vector<Violation> violations;
    double worst_slack = -kInf;  // max over k of V_{k+1} - (1-tau_k) V_k, scaled
    long worst_k = -1;
    long checked = 0;
    bool pass() const { return violations.empty(); }
};

// Verifies V_{k+1} <= (1 - tau_k) V_k + tol * max(1, |V_k|) along a recorded
// sequence; v[i] is V at iteration first_k + i and tau[i] the tau used to go
// from it to the next entry.
ContractionReport check_contraction(std::span<const double> v, std::span<const double> tau,
                                    long first_k, double tol = 1e-8);

// Everything one completed primal-dual step exposes, for replaying the
// one-iteration descent estimate at arbitrary test points.
struct StepSnapshot {
    Vec x_k, xhat_k, x_next, y_next;
    Vec kx_k;  // K x^k
    double tau_k = 0, beta_k = 0, beta_prev = 0, l_k = 0;
};

// Signed surplus (lhs - rhs) of the one-iteration estimate at x_test; values
// <= tol * max(1, |lhs|, |rhs|) certify the step. Positive beyond tolerance
// means the inequality failed.
double check_one_iteration(const SaddleProblem& prob, const StepSnapshot& snap,
                           const Vec& x_test);

enum class BoundKind { Gap, Primal, Dual };

// Inputs of the closed-form rate bounds. Distances are measured against the
// reference solution standing in for the (unknown) exact one.
struct BoundSpec {
    RegimeTag regime = RegimeTag::GeneralConvex;
    double beta0 = 0;
    double opnorm = 0;
    double dist_x0 = 0;        // ||x0 - x_ref||
    double norm_x0 = 0;        // ||x0||
    double norm_ycenter = 0;   // ||yc||
    double dist_ycenter = 0;   // ||yc - y_ref||
    std::optional<double> m_g;
    std::optional<double> m_fstar;
    double tau = 0;  // StronglyConvexBoth only
    std::optional<double> sup_x_sq;  // sup_{x in X} ||x0 - x||^2
    std::optional<double> sup_y_sq;  // sup_{y in Y} ||y - yc||^2
    std::optional<double> rbar_p, rbar_pstar, rbar_dstar;  // Case-3 constants
};

// Exact arithmetic value of the selected printed bound at iteration k >= 1.
// Throws CapabilityError when a required field is missing.
double theorem_bound(const BoundSpec& spec, long k, BoundKind kind);

// Assembles a BoundSpec from a problem and reference data; computes the
// Case-3 constants from their definitions. m_g_override replaces the
// catalog Lipschitz constant (used when g is not globally Lipschitz and a
// run-specific bound on ||grad g|| is supplied instead).
BoundSpec make_bound_spec(const SaddleProblem& prob, const Vec& x0, const Vec& ytilde0,
                          double beta0, const Vec& x_ref, const std::optional<Vec>& y_ref,
                          std::optional<double> m_g_override = {});

// sup over the radius-r box of ||x0 - x||^2 and over the unit ball of
// ||y - yc||^2; the closed-form domain radii of the gap bounds.
double sup_sq_dist_box(const Vec& x0, double radius);
double sup_sq_dist_unit_ball(const Vec& ycenter);

}  // namespace asgard
