#include "asgard/prox.hpp"

namespace asgard {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw UsageError(msg);
}

void require_gamma(double gamma) {
    if (!(gamma > 0.0)) throw UsageError("prox: gamma must be > 0");
}

}  // namespace

ProxFriendlyFn elastic_net(double lambda, double rho) {
    require(lambda > 0.0, "elastic_net: lambda must be > 0");
    require(rho >= 0.0, "elastic_net: rho must be >= 0");

    ProxFriendlyFn f;
    f.name = "elastic_net(lambda=" + std::to_string(lambda) + ",rho=" + std::to_string(rho) + ")";
    f.mu = rho;

    f.value = [lambda, rho](const Vec& x) {
        return lambda * x.lpNorm<1>() + 0.5 * rho * x.squaredNorm();
    };
    f.prox = [lambda, rho](const Vec& v, double gamma) {
        require_gamma(gamma);
        Vec p(v.size());
        const double shrink = 1.0 / (1.0 + gamma * rho);
        for (Index i = 0; i < v.size(); ++i) {
            p[i] = soft_threshold(v[i], gamma * lambda) * shrink;
        }
        return p;
    };
    if (rho > 0.0) {
        f.conj_value = [lambda, rho](const Vec& z) {
            double s = 0.0;
            for (Index i = 0; i < z.size(); ++i) s += sqr(soft_threshold(z[i], lambda));
            return s / (2.0 * rho);
        };
        f.conj_argmax = [lambda, rho](const Vec& z) {
            Vec x(z.size());
            for (Index i = 0; i < z.size(); ++i) x[i] = soft_threshold(z[i], lambda) / rho;
            return x;
        };
    } else {
        // Conjugate of lambda||.||_1 is the indicator of the dual-norm ball.
        f.conj_value = [lambda](const Vec& z) {
            return z.lpNorm<Eigen::Infinity>() <= lambda + kDomainTol ? 0.0 : kInf;
        };
        // conj_argmax is set-valued on the boundary; not exposed.
    }
    return f;
}

ProxFriendlyFn l2dist_conjugate(Vec b) {
    ProxFriendlyFn g;
    g.name = "l2dist_conjugate";
    g.mu = 0.0;
    g.lipschitz = 1.0;  // M_g of the primal partner g(u) = ||u - b||

    const Vec bc = std::move(b);
    g.value = [bc](const Vec& y) {
        if (y.size() != bc.size()) throw UsageError("l2dist_conjugate: dimension mismatch");
        return y.norm() <= 1.0 + kDomainTol ? bc.dot(y) : kInf;
    };
    g.prox = [bc](const Vec& z, double gamma) {
        require_gamma(gamma);
        Vec y = z - gamma * bc;
        const double nrm = y.norm();
        if (nrm > 1.0) y /= nrm;
        return y;
    };
    // Conjugate of g* is g itself.
    g.conj_value = [bc](const Vec& u) { return (u - bc).norm(); };
    g.conj_argmax = [bc](const Vec& u) {
        Vec d = u - bc;
        const double nrm = d.norm();
        if (nrm > 0.0) d /= nrm;
        return d;  // 0 in ∂g(b); unit residual direction elsewhere
    };
    return g;
}

ProxFriendlyFn quadratic_conjugate(Vec b) {
    ProxFriendlyFn g;
    g.name = "quadratic_conjugate";
    g.mu = 1.0;

    const Vec bc = std::move(b);
    g.value = [bc](const Vec& y) { return 0.5 * y.squaredNorm() + bc.dot(y); };
    g.prox = [bc](const Vec& z, double gamma) {
        require_gamma(gamma);
        return Vec(((z - gamma * bc) / (1.0 + gamma)).eval());
    };
    g.conj_value = [bc](const Vec& u) { return 0.5 * (u - bc).squaredNorm(); };
    g.conj_argmax = [bc](const Vec& u) { return Vec(u - bc); };
    return g;
}

ProxFriendlyFn box_indicator(double radius, Index dim) {
    require(radius > 0.0, "box_indicator: radius must be > 0");

    ProxFriendlyFn f;
    f.name = "box_indicator(r=" + std::to_string(radius) + ")";
    f.mu = 0.0;
    f.lipschitz = radius * std::sqrt(static_cast<double>(dim));  // M_{f*}

    f.value = [radius](const Vec& x) {
        return x.lpNorm<Eigen::Infinity>() <= radius + kDomainTol ? 0.0 : kInf;
    };
    f.prox = [radius](const Vec& v, double gamma) {
        require_gamma(gamma);
        return Vec(v.cwiseMax(-radius).cwiseMin(radius));
    };
    f.conj_value = [radius](const Vec& z) { return radius * z.lpNorm<1>(); };
    f.conj_argmax = [radius](const Vec& z) {
        Vec x(z.size());
        for (Index i = 0; i < z.size(); ++i) {
            x[i] = z[i] > 0.0 ? radius : (z[i] < 0.0 ? -radius : 0.0);
        }
        return x;
    };
    return f;
}

ProxFriendlyFn box_quadratic(double radius, double curvature, Index dim) {
    require(radius > 0.0, "box_quadratic: radius must be > 0");
    require(curvature > 0.0, "box_quadratic: curvature must be > 0");

    ProxFriendlyFn f;
    f.name = "box_quadratic(r=" + std::to_string(radius) + ",mu=" + std::to_string(curvature) + ")";
    f.mu = curvature;
    f.lipschitz = radius * std::sqrt(static_cast<double>(dim));  // M_{f*}

    f.value = [radius, curvature](const Vec& x) {
        if (x.lpNorm<Eigen::Infinity>() > radius + kDomainTol) return kInf;
        return 0.5 * curvature * x.squaredNorm();
    };
    f.prox = [radius, curvature](const Vec& v, double gamma) {
        require_gamma(gamma);
        const double shrink = 1.0 / (1.0 + gamma * curvature);
        return Vec((v * shrink).cwiseMax(-radius).cwiseMin(radius));
    };
    f.conj_value = [radius, curvature](const Vec& z) {
        double s = 0.0;
        for (Index i = 0; i < z.size(); ++i) {
            const double xi = std::clamp(z[i] / curvature, -radius, radius);
            s += z[i] * xi - 0.5 * curvature * xi * xi;
        }
        return s;
    };
    f.conj_argmax = [radius, curvature](const Vec& z) {
        Vec x(z.size());
        for (Index i = 0; i < z.size(); ++i) x[i] = std::clamp(z[i] / curvature, -radius, radius);
        return x;
    };
    return f;
}

ProxFriendlyFn zero_fn() {
    ProxFriendlyFn f;
    f.name = "zero";
    f.mu = 0.0;
    f.lipschitz = 0.0;
    f.value = [](const Vec&) { return 0.0; };
    f.prox = [](const Vec& v, double gamma) {
        require_gamma(gamma);
        return v;
    };
    f.conj_value = [](const Vec& z) {
        return z.lpNorm<Eigen::Infinity>() <= kDomainTol ? 0.0 : kInf;
    };
    return f;
}

}  // namespace asgard
