#include "asgard/linops.hpp"

#include "asgard/rng.hpp"

namespace asgard {

LinearMap::LinearMap(Mat dense, int opnorm_iters, double opnorm_tol)
    : mat_(std::move(dense)), opnorm_tol_(opnorm_tol) {
    if (mat_.rows() < 1 || mat_.cols() < 1) {
        throw UsageError("LinearMap: matrix must be nonempty");
    }
    const double sigma = estimate_opnorm(mat_, opnorm_iters, opnorm_tol);
    opnorm_est_ = sigma * (1.0 + opnorm_tol);
}

Vec LinearMap::apply(const Vec& x) const {
    if (x.size() != mat_.cols()) {
        throw UsageError("LinearMap::apply: expected dimension " +
                         std::to_string(mat_.cols()) + ", got " +
                         std::to_string(x.size()));
    }
    apply_count_.fetch_add(1, std::memory_order_relaxed);
    return mat_ * x;
}

Vec LinearMap::adjoint(const Vec& y) const {
    if (y.size() != mat_.rows()) {
        throw UsageError("LinearMap::adjoint: expected dimension " +
                         std::to_string(mat_.rows()) + ", got " +
                         std::to_string(y.size()));
    }
    adjoint_count_.fetch_add(1, std::memory_order_relaxed);
    return mat_.transpose() * y;
}

LinearMap LinearMap::identity(Index n) { return LinearMap(Mat::Identity(n, n)); }

double estimate_opnorm(const Mat& k, int max_iters, double tol) {
    if (max_iters < 1) throw UsageError("estimate_opnorm: max_iters must be >= 1");
    if (!(tol > 0.0)) throw UsageError("estimate_opnorm: tol must be > 0");

    const double frob = k.norm();
    if (frob == 0.0) return 0.0;

    // Seed the start vector from the dimensions only, so repeated estimates
    // of the same operator are bitwise identical.
    Rng rng(0x5eedULL ^ (static_cast<std::uint64_t>(k.rows()) << 32) ^
            static_cast<std::uint64_t>(k.cols()));
    Vec v = rng.gaussian_vec(k.cols());
    v /= v.norm();

    double lambda = 0.0;  // Rayleigh quotient estimate of ||K||^2
    for (int it = 0; it < max_iters; ++it) {
        Vec w = k.transpose() * (k * v);
        const double lambda_new = v.dot(w);
        const double wn = w.norm();
        if (wn == 0.0) return 0.0;  // start vector landed in the null space
        v = w / wn;
        // Rayleigh quotients converge at the square of the vector rate;
        // demand extra headroom so the (1+tol) inflation certifies the bound.
        if (it > 0 && std::abs(lambda_new - lambda) <= 0.01 * tol * std::abs(lambda_new)) {
            lambda = lambda_new;
            break;
        }
        lambda = lambda_new;
    }
    return std::sqrt(std::max(lambda, 0.0));
}

}  // namespace asgard
