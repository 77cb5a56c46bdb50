#pragma once

#include "asgard/problem.hpp"
#include "asgard/prox.hpp"

namespace asgard {

// Smoothed approximation of g around the dual center:
//   g_beta(u, yc) = max_y { <u, y> - g*(y) - (beta/2)||y - yc||^2 }.
// The maximizer is prox_{g*/beta}(yc + u/beta), which is also the gradient
// of g_beta with respect to u; values are computed through that prox, never
// by an inner iterative maximization.
struct SmoothedG {
    SmoothedG(ProxFriendlyFn gstar_fn, double beta_param, Vec ycenter_vec);

    ProxFriendlyFn gstar;
    double beta;
    Vec ycenter;
};

Vec smoothed_grad(const ProxFriendlyFn& gstar, double beta, const Vec& ycenter, const Vec& u);
double smoothed_value(const ProxFriendlyFn& gstar, double beta, const Vec& ycenter, const Vec& u);

inline Vec smoothed_grad(const SmoothedG& s, const Vec& u) {
    return smoothed_grad(s.gstar, s.beta, s.ycenter, u);
}
inline double smoothed_value(const SmoothedG& s, const Vec& u) {
    return smoothed_value(s.gstar, s.beta, s.ycenter, u);
}

// F_beta(x, yc) = f(x) + g_beta(Kx, yc); +inf outside dom f.
double smoothed_objective(const SaddleProblem& prob, double beta, const Vec& x);

// Same with Kx already available (the solver caches operator images).
double smoothed_objective_cached(const SaddleProblem& prob, double beta, const Vec& x,
                                 const Vec& kx);

}  // namespace asgard
