#pragma once

#include "asgard/problem.hpp"
#include "asgard/solver.hpp"

namespace asgard {

// Smoothing baseline: fix gamma > 0, replace g(u) = ||u - b|| by
//   g_gamma(u) = max { <u - b, v> - (gamma/2)||v||^2 : ||v|| <= 1 },
// and run an accelerated proximal gradient method on f + g_gamma(K x) with
// step gamma / ||K||^2 and the standard t-sequence momentum.
struct BaselineConfig {
    double gamma = 0;
    long k_max = 0;
    long trace_limit = -1;
    std::function<void(const TraceRow&)> observer;
};

// The gamma minimizing the smoothing method's k_max-iteration bound:
// sqrt(2) ||K|| dist0 / (k_max sqrt(D_V)) with D_V = 1/2 for the unit ball.
double gamma_star(double opnorm, double dist0, long k_max);

// g_gamma value and gradient at u (gradient is the ball projection of
// (u - b)/gamma).
double baseline_smoothed_g(const Vec& u, const Vec& b, double gamma);
Vec baseline_smoothed_g_grad(const Vec& u, const Vec& b, double gamma);

// Requires g(u) = ||u - b|| (the problem's g_offset is b). Traces F(x^k).
RunRecord run_baseline(const SaddleProblem& prob, const Vec& x0, const BaselineConfig& cfg);

}  // namespace asgard
