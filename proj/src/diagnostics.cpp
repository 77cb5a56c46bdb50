#include "asgard/diagnostics.hpp"

#include "asgard/smoothing.hpp"

namespace asgard {

double primal_value(const SaddleProblem& prob, const Vec& x) {
    return primal_value_cached(prob, x, prob.K->apply(x));
}

double primal_value_cached(const SaddleProblem& prob, const Vec& x, const Vec& kx) {
    const double fx = prob.f.value(x);
    if (fx == kInf) return kInf;
    return fx + prob.g_value(kx);
}

double dual_value(const SaddleProblem& prob, const Vec& y) {
    return dual_value_cached(prob, y, prob.K->adjoint(y));
}

double dual_value_cached(const SaddleProblem& prob, const Vec& y, const Vec& kty) {
    if (!prob.f.has_conj_value()) {
        throw CapabilityError("dual_value: f provides no conjugate value");
    }
    const double gy = prob.gstar.value(y);
    if (gy == kInf) return kInf;
    const double fstar = prob.f.conj_value(Vec(-kty));
    if (fstar == kInf) return kInf;
    return fstar + gy;
}

double lagrangian(const SaddleProblem& prob, const Vec& x, const Vec& y) {
    return lagrangian_cached(prob, x, y, prob.K->apply(x));
}

double lagrangian_cached(const SaddleProblem& prob, const Vec& x, const Vec& y, const Vec& kx) {
    return prob.f.value(x) + kx.dot(y) - prob.gstar.value(y);
}

double gap_certificate(const SaddleProblem& prob, const Vec& x, const Vec& y) {
    const double fv = primal_value(prob, x);
    const double dv = dual_value(prob, y);
    if (fv == kInf || dv == kInf) return kInf;
    return fv + dv;
}

double lyapunov(const SaddleProblem& prob, const Schedule& sched, long k, const Vec& x_k,
                const Vec& x_prev, const Vec& ytilde_k, const Vec& anchor) {
    if (k < 1) throw UsageError("lyapunov: defined for k >= 1");
    const double tau_prev = sched.tau(k - 1);
    const double beta_prev = sched.beta(k - 1);
    const double l_prev = sched.lipschitz(k - 1);
    const double mu_f = sched.regime().mu_f;

    const Vec kx = prob.K->apply(x_k);
    const double f_beta = smoothed_objective_cached(prob, beta_prev, x_k, kx);
    const double lagr = lagrangian(prob, anchor, ytilde_k);
    const Vec momentum = (x_k - (1.0 - tau_prev) * x_prev) / tau_prev - anchor;
    return f_beta - lagr + 0.5 * (l_prev + mu_f) * sqr(tau_prev) * momentum.squaredNorm();
}

ContractionReport check_contraction(std::span<const double> v, std::span<const double> tau,
                                    long first_k, double tol) {
    if (v.size() < 2 || tau.size() + 1 < v.size()) {
        throw UsageError("check_contraction: need V_k, V_{k+1} pairs with matching tau");
    }
    ContractionReport rep;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double scale = std::max(1.0, std::abs(v[i]));
        const double slack = (v[i + 1] - (1.0 - tau[i]) * v[i]) / scale;
        if (slack > rep.worst_slack) {
            rep.worst_slack = slack;
            rep.worst_k = first_k + static_cast<long>(i);
        }
        if (slack > tol) {
            rep.violations.push_back({first_k + static_cast<long>(i), slack});
        }
        ++rep.checked;
    }
    return rep;
}

double check_one_iteration(const SaddleProblem& prob, const StepSnapshot& snap,
                           const Vec& x_test) {
    const double tau = snap.tau_k;
    const double beta = snap.beta_k;
    const double lk = snap.l_k;
    const double mu_f = prob.regime.mu_f;
    const double mu_gstar = prob.regime.mu_gstar;
    const Vec& yc = prob.ycenter;

    const double lhs = smoothed_objective(prob, beta, snap.x_next);

    const double f_prev = smoothed_objective_cached(prob, snap.beta_prev, snap.x_k, snap.kx_k);
    const double lagr = lagrangian(prob, x_test, snap.y_next);
    const Vec fwd = (snap.xhat_k - (1.0 - tau) * snap.x_k) / tau - x_test;
    const Vec bwd = (snap.x_next - (1.0 - tau) * snap.x_k) / tau - x_test;
    const Vec dx = snap.x_next - snap.xhat_k;
    const Vec grad_at_xk = smoothed_grad(prob.gstar, beta, yc, snap.kx_k);

    double rhs = (1.0 - tau) * f_prev + tau * lagr;
    rhs += 0.5 * lk * sqr(tau) * fwd.squaredNorm();
    rhs -= 0.5 * mu_f * (1.0 - tau) * tau * (x_test - snap.x_k).squaredNorm();
    rhs -= 0.5 * sqr(tau) * (lk + mu_f) * bwd.squaredNorm();
    rhs -= 0.5 * lk * dx.squaredNorm();
    rhs += 0.5 / (mu_gstar + beta) * prob.K->apply(dx).squaredNorm();
    rhs -= 0.5 * (1.0 - tau) * (tau * beta - (snap.beta_prev - beta)) *
           (grad_at_xk - yc).squaredNorm();

    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return (lhs - rhs) / scale;
}

namespace {

double need(const std::optional<double>& v, const char* what) {
    if (!v) throw CapabilityError(std::string("theorem_bound: missing field ") + what);
    return *v;
}

}  // namespace

double theorem_bound(const BoundSpec& spec, long k, BoundKind kind) {
    if (k < 1) throw UsageError("theorem_bound: defined for k >= 1");
    const double kk = static_cast<double>(k);
    const double s2 = sqr(spec.opnorm);

    switch (spec.regime) {
        case RegimeTag::GeneralConvex: {
            const double lead = s2 / (2.0 * spec.beta0 * kk);
            const double tail = spec.beta0 / (kk + 1.0);
            switch (kind) {
                case BoundKind::Gap:
                    return lead * need(spec.sup_x_sq, "sup_x_sq") +
                           tail * need(spec.sup_y_sq, "sup_y_sq");
                case BoundKind::Primal:
                    return lead * sqr(spec.dist_x0) +
                           tail * sqr(spec.norm_ycenter + need(spec.m_g, "m_g"));
                case BoundKind::Dual:
                    return lead * sqr(spec.norm_x0 + need(spec.m_fstar, "m_fstar")) +
                           tail * sqr(spec.dist_ycenter);
            }
            break;
        }
        case RegimeTag::StronglyConvexPrimal: {
            const double lead = 2.0 * s2 / (spec.beta0 * sqr(kk + 1.0));
            const double tail = 10.0 * spec.beta0 / sqr(kk + 3.0);
            switch (kind) {
                case BoundKind::Gap:
                    return lead * need(spec.sup_x_sq, "sup_x_sq") +
                           tail * need(spec.sup_y_sq, "sup_y_sq");
                case BoundKind::Primal:
                    return lead * sqr(spec.dist_x0) +
                           tail * sqr(spec.norm_ycenter + need(spec.m_g, "m_g"));
                case BoundKind::Dual:
                    return lead * sqr(spec.norm_x0 + need(spec.m_fstar, "m_fstar")) +
                           tail * sqr(spec.dist_ycenter);
            }
            break;
        }
        case RegimeTag::StronglyConvexBoth: {
            if (!(spec.tau > 0.0) || spec.tau >= 1.0) {
                throw CapabilityError("theorem_bound: Case-3 spec needs tau in (0,1)");
            }
            const double shrink = std::pow(1.0 - spec.tau, kk);
            const double grow = std::pow(1.0 + spec.tau, kk);
            switch (kind) {
                case BoundKind::Gap:
                    return shrink * need(spec.rbar_p, "rbar_p") +
                           need(spec.sup_y_sq, "sup_y_sq") / (2.0 * grow);
                case BoundKind::Primal:
                    return shrink * need(spec.rbar_pstar, "rbar_pstar") +
                           spec.beta0 / (2.0 * grow) *
                               sqr(spec.norm_ycenter + need(spec.m_g, "m_g"));
                case BoundKind::Dual:
                    return shrink * need(spec.rbar_dstar, "rbar_dstar") +
                           spec.beta0 * sqr(spec.dist_ycenter) / (2.0 * grow);
            }
            break;
        }
    }
    throw UsageError("theorem_bound: bad kind");
}

BoundSpec make_bound_spec(const SaddleProblem& prob, const Vec& x0, const Vec& ytilde0,
                          double beta0, const Vec& x_ref, const std::optional<Vec>& y_ref,
                          std::optional<double> m_g_override) {
    BoundSpec spec;
    spec.regime = prob.regime.tag;
    spec.beta0 = beta0;
    spec.opnorm = prob.K->opnorm();
    spec.dist_x0 = (x0 - x_ref).norm();
    spec.norm_x0 = x0.norm();
    spec.norm_ycenter = prob.ycenter.norm();
    if (y_ref) spec.dist_ycenter = (prob.ycenter - *y_ref).norm();
    spec.m_g = m_g_override ? m_g_override : prob.gstar.lipschitz;
    spec.m_fstar = prob.f.lipschitz;

    if (prob.regime.tag == RegimeTag::StronglyConvexBoth) {
        spec.tau = prob.regime.tau_fixed();
        const double f_beta0 = smoothed_objective(prob, beta0, x0);
        const double quad_coef =
            sqr(spec.opnorm) * sqr(spec.tau) / (2.0 * (prob.regime.mu_gstar + beta0));
        spec.rbar_pstar = (1.0 - spec.tau) * (f_beta0 - lagrangian(prob, x_ref, ytilde0)) +
                          quad_coef * sqr(spec.dist_x0);
        if (prob.f.has_conj_value() && spec.m_fstar) {
            const double d0 = dual_value(prob, ytilde0);
            if (d0 != kInf) {
                spec.rbar_dstar = (1.0 - spec.tau) * (f_beta0 - d0) +
                                  quad_coef * sqr(spec.norm_x0 + *spec.m_fstar);
            }
        }
    }
    return spec;
}

double sup_sq_dist_box(const Vec& x0, double radius) {
    double s = 0.0;
    for (Index i = 0; i < x0.size(); ++i) {
        s += sqr(std::max(std::abs(x0[i] + radius), std::abs(x0[i] - radius)));
    }
    return s;
}

double sup_sq_dist_unit_ball(const Vec& ycenter) { return sqr(1.0 + ycenter.norm()); }

}  // namespace asgard
