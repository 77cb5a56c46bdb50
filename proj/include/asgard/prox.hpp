#pragma once

#include <functional>
#include <optional>
#include <string>

#include "asgard/core.hpp"

namespace asgard {

// A convex function together with everything the solver and the certificate
// machinery may need from it: exact value, exact prox map, strong convexity
// modulus, and (where available) Lipschitz constant, conjugate value, and a
// selection from the conjugate subdifferential.
//
// conj_value / conj_argmax are empty std::function when the entry does not
// provide them; query has_conj_value()/has_conj_argmax() before calling.
struct ProxFriendlyFn {
    std::string name;

    // Extended-real value; +inf outside the domain.
    std::function<double(const Vec&)> value;

    // prox(v, gamma) = argmin_u { value(u) + ||u - v||^2 / (2 gamma) },  gamma > 0.
    std::function<Vec(const Vec&, double)> prox;

    double mu = 0.0;  // strong convexity modulus

    // Lipschitz constant of the function this entry stands in for in rate
    // bounds: M_g for conjugate-side entries, M_{f*} for bounded-domain
    // primal entries. Empty when no finite constant exists.
    std::optional<double> lipschitz;

    std::function<double(const Vec&)> conj_value;  // z -> f*(z)
    std::function<Vec(const Vec&)> conj_argmax;    // z -> element of subdiff f*(z)

    bool has_conj_value() const { return static_cast<bool>(conj_value); }
    bool has_conj_argmax() const { return static_cast<bool>(conj_argmax); }

    double conj_value_or_throw(const Vec& z) const {
        if (!has_conj_value()) {
            throw CapabilityError("ProxFriendlyFn '" + name + "': conjugate value unavailable");
        }
        return conj_value(z);
    }
};

inline double soft_threshold(double t, double a) {
    if (t > a) return t - a;
    if (t < -a) return t + a;
    return 0.0;
}

// f(x) = lambda ||x||_1 + (rho/2) ||x||_2^2
ProxFriendlyFn elastic_net(double lambda, double rho);

// g*(y) = <b, y> + indicator{ ||y||_2 <= 1 },  the conjugate of g(u) = ||u - b||_2.
ProxFriendlyFn l2dist_conjugate(Vec b);

// g*(y) = (1/2)||y||^2 + <b, y>,  the conjugate of g(u) = (1/2)||u - b||^2.
ProxFriendlyFn quadratic_conjugate(Vec b);

// f = indicator of [-radius, radius]^dim. dim is needed to record the
// l2 bound M_{f*} = radius * sqrt(dim).
ProxFriendlyFn box_indicator(double radius, Index dim);

// f(x) = indicator of [-radius, radius]^dim + (curvature/2)||x||^2.
// Strongly convex with bounded domain, so both mu and M_{f*} are finite.
ProxFriendlyFn box_quadratic(double radius, double curvature, Index dim);

// f = 0 on R^p.
ProxFriendlyFn zero_fn();

}  // namespace asgard
