#pragma once

#include <atomic>
#include <cstdint>

#include "asgard/core.hpp"

namespace asgard {

// Dense linear operator K : R^p -> R^n with adjoint and a cached spectral
// norm estimate. The cached value is inflated by (1 + tol) after the power
// iteration converges, so it is a certified upper bound on ||K||; the solver
// step sizes stay valid under over-estimation but not under-estimation.
class LinearMap {
public:
    explicit LinearMap(Mat dense, int opnorm_iters = 20000, double opnorm_tol = 1e-8);

    Index rows() const { return mat_.rows(); }
    Index cols() const { return mat_.cols(); }

    Vec apply(const Vec& x) const;    // K x
    Vec adjoint(const Vec& y) const;  // K^T y

    double opnorm() const { return opnorm_est_; }
    double opnorm_tol() const { return opnorm_tol_; }

    const Mat& matrix() const { return mat_; }

    static LinearMap identity(Index n);

    // Call counters, used by structural tests that pin the per-iteration
    // oracle complexity of the solver.
    std::uint64_t apply_count() const { return apply_count_.load(); }
    std::uint64_t adjoint_count() const { return adjoint_count_.load(); }
    void reset_counters() const { apply_count_ = 0; adjoint_count_ = 0; }

private:
    Mat mat_;
    double opnorm_est_ = 0.0;
    double opnorm_tol_ = 0.0;
    mutable std::atomic<std::uint64_t> apply_count_{0};
    mutable std::atomic<std::uint64_t> adjoint_count_{0};
};

// Power iteration on K^T K from a seed-fixed start vector. Returns sigma with
// |sigma - ||K||| / ||K|| <= tol for generic K; returns 0 for the zero map.
double estimate_opnorm(const Mat& k, int max_iters, double tol);

}  // namespace asgard
