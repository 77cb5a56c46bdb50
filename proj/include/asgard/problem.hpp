#pragma once

#include <functional>
#include <memory>

#include "asgard/linops.hpp"
#include "asgard/prox.hpp"
#include "asgard/scheduler.hpp"

namespace asgard {

// min_x max_y  f(x) + <Kx, y> - g*(y), with the fixed dual center ycenter
// used by the smoothed surrogate. g_value is the primal partner g for
// objective evaluation; for catalog conjugates it is gstar.conj_value.
struct SaddleProblem {
    ProxFriendlyFn f;
    ProxFriendlyFn gstar;
    std::function<double(const Vec&)> g_value;
    std::shared_ptr<const LinearMap> K;
    Vec ycenter;
    Regime regime;

    // Offset b of g(u) = ||u - b|| (or (1/2)||u - b||^2); the smoothing
    // baseline and the instance writers need it explicitly.
    Vec g_offset;

    Index p() const { return K->cols(); }
    Index n() const { return K->rows(); }
};

// Square-root regression problem  min  lambda ||x||_1 + (rho/2)||x||^2 + ||Kx - b||.
// use_strong_convexity selects whether the schedule exploits mu_f = rho.
SaddleProblem make_sqrt_lasso(std::shared_ptr<const LinearMap> k, Vec b, double lambda,
                              double rho, bool use_strong_convexity);

// min  lambda ||x||_1 + (rho/2)||x||^2 + (1/2)||Kx - b||^2,  rho > 0; the
// doubly strongly convex regime (mu_gstar = 1).
SaddleProblem make_quadratic_problem(std::shared_ptr<const LinearMap> k, Vec b, double lambda,
                                     double rho);

// Bounded-domain test problem: f the box indicator of [-radius, radius]^p
// (plus an optional quadratic term with modulus curvature), g(u) = ||u - b||.
SaddleProblem make_box_ball(std::shared_ptr<const LinearMap> k, Vec b, double radius,
                            double curvature);

// The one-dimensional demo  min |x| + |x - 1|  written as a saddle point;
// optimum value 1 on [0, 1].
SaddleProblem make_demo_1d();

}  // namespace asgard
