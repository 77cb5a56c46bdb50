#include "asgard/baseline.hpp"

#include <chrono>

#include "asgard/diagnostics.hpp"

namespace asgard {

double gamma_star(double opnorm, double dist0, long k_max) {
    if (!(opnorm > 0.0) || !(dist0 > 0.0) || k_max < 1) {
        throw UsageError("gamma_star: inputs must be positive");
    }
    // sqrt(2)/sqrt(1/2) = 2
    return 2.0 * opnorm * dist0 / static_cast<double>(k_max);
}

Vec baseline_smoothed_g_grad(const Vec& u, const Vec& b, double gamma) {
    Vec v = (u - b) / gamma;
    const double nrm = v.norm();
    if (nrm > 1.0) v /= nrm;
    return v;
}

double baseline_smoothed_g(const Vec& u, const Vec& b, double gamma) {
    const Vec v = baseline_smoothed_g_grad(u, b, gamma);
    return (u - b).dot(v) - 0.5 * gamma * v.squaredNorm();
}

RunRecord run_baseline(const SaddleProblem& prob, const Vec& x0, const BaselineConfig& cfg) {
    if (!(cfg.gamma > 0.0)) throw UsageError("run_baseline: gamma must be > 0");
    if (cfg.k_max < 1) throw UsageError("run_baseline: k_max must be >= 1");
    if (prob.g_offset.size() != prob.n()) {
        throw UsageError("run_baseline: problem does not carry the g offset b");
    }

    const Vec& b = prob.g_offset;
    const double opnorm = prob.K->opnorm();
    const double lip = sqr(opnorm) / cfg.gamma;
    const double step = lip > 0.0 ? 1.0 / lip : 1e12;

    RunRecord rec;
    rec.algorithm = "nesterov";
    rec.beta0 = cfg.gamma;

    Vec x = x0;
    Vec x_prev = x0;
    Vec z = x0;  // extrapolated point
    Vec kx = prob.K->apply(x);
    Vec kz = kx;
    double t = 1.0;

    const auto t_start = std::chrono::steady_clock::now();

    auto emit = [&](long k) {
        TraceRow row;
        row.k = k;
        row.beta = cfg.gamma;
        row.lip = lip;
        row.f_primal = primal_value_cached(prob, x, kx);
        row.f_smoothed = prob.f.value(x) + baseline_smoothed_g(kx, b, cfg.gamma);
        row.wallclock_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        if (row.f_primal < rec.best_f) {
            rec.best_f = row.f_primal;
            rec.best_f_k = k;
            rec.best_x = x;
        }
        if (cfg.trace_limit < 0 || static_cast<long>(rec.trace.size()) < cfg.trace_limit) {
            rec.trace.push_back(row);
        }
        if (cfg.observer) cfg.observer(row);
    };

    emit(0);
    for (long k = 0; k < cfg.k_max; ++k) {
        const Vec grad = prob.K->adjoint(baseline_smoothed_g_grad(kz, b, cfg.gamma));
        Vec x_next = prob.f.prox(z - step * grad, step);
        Vec kx_next = prob.K->apply(x_next);

        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        const double w = (t - 1.0) / t_next;
        z = x_next + w * (x_next - x);
        kz = (1.0 + w) * kx_next - w * kx;
        t = t_next;

        x_prev = std::move(x);
        x = std::move(x_next);
        kx = std::move(kx_next);
        if (!all_finite(x)) {
            throw NumericError("run_baseline: non-finite iterate at iteration " +
                               std::to_string(k + 1));
        }
        emit(k + 1);
    }

    rec.final_state.k = cfg.k_max;
    rec.final_state.x = std::move(x);
    rec.final_state.x_prev = std::move(x_prev);
    rec.iterations = cfg.k_max;
    return rec;
}

}  // namespace asgard
