#include "asgard/problem.hpp"

namespace asgard {

SaddleProblem make_sqrt_lasso(std::shared_ptr<const LinearMap> k, Vec b, double lambda,
                              double rho, bool use_strong_convexity) {
    SaddleProblem prob;
    prob.f = elastic_net(lambda, rho);
    prob.gstar = l2dist_conjugate(b);
    prob.g_value = prob.gstar.conj_value;
    prob.K = std::move(k);
    prob.ycenter = Vec::Zero(prob.K->rows());
    prob.g_offset = std::move(b);
    prob.regime = (use_strong_convexity && rho > 0.0) ? Regime::strongly_convex_primal(rho)
                                                      : Regime::general();
    return prob;
}

SaddleProblem make_quadratic_problem(std::shared_ptr<const LinearMap> k, Vec b, double lambda,
                                     double rho) {
    SaddleProblem prob;
    prob.f = elastic_net(lambda, rho);
    prob.gstar = quadratic_conjugate(b);
    prob.g_value = prob.gstar.conj_value;
    prob.K = std::move(k);
    prob.ycenter = Vec::Zero(prob.K->rows());
    prob.g_offset = std::move(b);
    prob.regime = Regime::strongly_convex_both(rho, prob.gstar.mu, prob.K->opnorm());
    return prob;
}

SaddleProblem make_box_ball(std::shared_ptr<const LinearMap> k, Vec b, double radius,
                            double curvature) {
    SaddleProblem prob;
    const Index p = k->cols();
    prob.f = curvature > 0.0 ? box_quadratic(radius, curvature, p) : box_indicator(radius, p);
    prob.gstar = l2dist_conjugate(b);
    prob.g_value = prob.gstar.conj_value;
    prob.K = std::move(k);
    prob.ycenter = Vec::Zero(prob.K->rows());
    prob.g_offset = std::move(b);
    prob.regime = curvature > 0.0 ? Regime::strongly_convex_primal(curvature) : Regime::general();
    return prob;
}

SaddleProblem make_demo_1d() {
    Mat k(1, 1);
    k << 1.0;
    Vec b(1);
    b << 1.0;
    return make_sqrt_lasso(std::make_shared<LinearMap>(k), b, 1.0, 0.0, false);
}

}  // namespace asgard
