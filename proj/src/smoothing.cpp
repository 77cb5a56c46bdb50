#include "asgard/smoothing.hpp"

namespace asgard {

SmoothedG::SmoothedG(ProxFriendlyFn gstar_fn, double beta_param, Vec ycenter_vec)
    : gstar(std::move(gstar_fn)), beta(beta_param), ycenter(std::move(ycenter_vec)) {
    if (!(beta > 0.0)) throw UsageError("SmoothedG: beta must be > 0");
    if (!all_finite(ycenter)) throw UsageError("SmoothedG: ycenter must be finite");
}

Vec smoothed_grad(const ProxFriendlyFn& gstar, double beta, const Vec& ycenter, const Vec& u) {
    return gstar.prox(ycenter + u / beta, 1.0 / beta);
}

double smoothed_value(const ProxFriendlyFn& gstar, double beta, const Vec& ycenter,
                      const Vec& u) {
    const Vec ystar = smoothed_grad(gstar, beta, ycenter, u);
    return u.dot(ystar) - gstar.value(ystar) - 0.5 * beta * (ystar - ycenter).squaredNorm();
}

double smoothed_objective(const SaddleProblem& prob, double beta, const Vec& x) {
    return smoothed_objective_cached(prob, beta, x, prob.K->apply(x));
}

double smoothed_objective_cached(const SaddleProblem& prob, double beta, const Vec& x,
                                 const Vec& kx) {
    const double fx = prob.f.value(x);
    if (fx == kInf) return kInf;
    return fx + smoothed_value(prob.gstar, beta, prob.ycenter, kx);
}

}  // namespace asgard
