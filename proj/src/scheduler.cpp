#include "asgard/scheduler.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace asgard {

const char* regime_name(RegimeTag tag) {
    switch (tag) {
        case RegimeTag::GeneralConvex: return "general_convex";
        case RegimeTag::StronglyConvexPrimal: return "strongly_convex_primal";
        case RegimeTag::StronglyConvexBoth: return "strongly_convex_both";
    }
    return "unknown";
}

Regime Regime::general() { return Regime{RegimeTag::GeneralConvex, 0.0, 0.0, 0.0}; }

Regime Regime::strongly_convex_primal(double mu_f) {
    if (!(mu_f > 0.0)) throw UsageError("Regime: StronglyConvexPrimal needs mu_f > 0");
    return Regime{RegimeTag::StronglyConvexPrimal, mu_f, 0.0, 0.0};
}

Regime Regime::strongly_convex_both(double mu_f, double mu_gstar, double opnorm) {
    if (!(mu_f > 0.0) || !(mu_gstar > 0.0)) {
        throw UsageError("Regime: StronglyConvexBoth needs mu_f > 0 and mu_gstar > 0");
    }
    Regime r{RegimeTag::StronglyConvexBoth, mu_f, mu_gstar, 0.0};
    r.kappa_f = sqr(opnorm) / (mu_f * mu_gstar);
    return r;
}

double Regime::tau_fixed() const {
    if (tag != RegimeTag::StronglyConvexBoth) {
        throw UsageError("tau_fixed: defined for StronglyConvexBoth only");
    }
    return 1.0 / std::sqrt(1.0 + kappa_f);
}

double Regime::tau0() const {
    return tag == RegimeTag::StronglyConvexBoth ? tau_fixed() : 1.0;
}

namespace {

// Unique root in (0,1) of t^3 + t^2 + c t - c with c = tau_k^2: bisection to
// a 1e-12 bracket, then Newton polish until the residual is at rounding level.
double solve_tau_cubic(double c) {
    auto phi = [c](double t) { return ((t + 1.0) * t + c) * t - c; };
    auto dphi = [c](double t) { return (3.0 * t + 2.0) * t + c; };

    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (phi(mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    double t = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        const double r = phi(t);
        if (r == 0.0) break;
        t -= r / dphi(t);
    }
    return std::clamp(t, 0.0, 1.0);
}

}  // namespace

double next_tau(const Regime& regime, double tau_k) {
    if (!(tau_k > 0.0) || tau_k > 1.0) {
        throw UsageError("next_tau: tau_k must lie in (0, 1]");
    }
    switch (regime.tag) {
        case RegimeTag::GeneralConvex:
            return solve_tau_cubic(sqr(tau_k));
        case RegimeTag::StronglyConvexPrimal:
            return 0.5 * tau_k * (std::sqrt(sqr(tau_k) + 4.0) - tau_k);
        case RegimeTag::StronglyConvexBoth:
            return regime.tau_fixed();
    }
    throw UsageError("next_tau: bad regime");
}

Schedule::Schedule(Regime regime, double beta0, double opnorm)
    : regime_(regime), beta0_(beta0), opnorm_(opnorm) {
    if (!(beta0 > 0.0)) throw UsageError("Schedule: beta0 must be > 0");
    if (!(opnorm >= 0.0)) throw UsageError("Schedule: opnorm must be >= 0");
    const double tau0 = regime_.tau0();
    nodes_.push_back({tau0, beta0, sqr(opnorm) / (regime_.mu_gstar + beta0)});
}

void Schedule::ensure(long k) const {
    if (k < 0) throw UsageError("Schedule: negative index");
    while (static_cast<long>(nodes_.size()) <= k) {
        const Node& prev = nodes_.back();
        Node n;
        n.tau = next_tau(regime_, prev.tau);
        n.beta = prev.beta / (1.0 + n.tau);
        n.L = sqr(opnorm_) / (regime_.mu_gstar + n.beta);
        if (!(n.beta > 0.0) || !std::isfinite(n.L)) {
            throw NumericError("Schedule: beta underflowed at k = " +
                               std::to_string(nodes_.size()) +
                               "; horizon too long for the geometric regime");
        }
        nodes_.push_back(n);
    }
}

double Schedule::tau(long k) const {
    ensure(k);
    return nodes_[k].tau;
}
double Schedule::beta(long k) const {
    ensure(k);
    return nodes_[k].beta;
}
double Schedule::lipschitz(long k) const {
    ensure(k);
    return nodes_[k].L;
}

ScheduleState Schedule::at(long k) const {
    ensure(k + 1);
    const Node& cur = nodes_[k];
    const Node& nxt = nodes_[k + 1];
    ScheduleState s;
    s.k = k;
    s.tau_k = cur.tau;
    s.tau_next = nxt.tau;
    s.beta_k = cur.beta;
    s.beta_next = nxt.beta;
    s.L_k = cur.L;
    s.L_next = nxt.L;
    const double denom = cur.L + regime_.mu_f;
    if (denom > 0.0) {
        s.m_next = (nxt.L + regime_.mu_f) / denom;
        s.a_next = nxt.L / denom;
    } else {
        // Zero operator with no strong convexity: all L vanish, take the limit.
        s.m_next = 1.0;
        s.a_next = 1.0;
    }
    s.eta_next = (1.0 - s.tau_k) * s.tau_k / (sqr(s.tau_k) + s.m_next * s.tau_next);
    return s;
}

ParamCondReport check_param_cond(double tau_prev, double tau, double l_prev, double l,
                                 double mu_f) {
    ParamCondReport r;
    const double lp = l_prev + mu_f;
    const double lc = l + mu_f;

    r.lhs1 = lp * (1.0 - tau) * sqr(tau_prev) + mu_f * (1.0 - tau) * tau;
    r.rhs1 = l * sqr(tau);
    r.lhs2 = lp * lc * tau * sqr(tau_prev) + sqr(lc) * sqr(tau);
    r.rhs2 = lp * l * sqr(tau_prev);

    const double scale1 = std::max({1.0, std::abs(r.lhs1), std::abs(r.rhs1)});
    const double scale2 = std::max({1.0, std::abs(r.lhs2), std::abs(r.rhs2)});
    r.slack1 = (r.lhs1 - r.rhs1) / scale1;
    r.slack2 = (r.lhs2 - r.rhs2) / scale2;
    r.pass = r.slack1 >= -1e-12 && r.slack2 >= -1e-12;
    return r;
}

ParamCondReport check_param_cond(const Schedule& sched, long k) {
    if (k < 1) throw UsageError("check_param_cond: needs k >= 1");
    return check_param_cond(sched.tau(k - 1), sched.tau(k), sched.lipschitz(k - 1),
                            sched.lipschitz(k), sched.regime().mu_f);
}

OmegaWindow omega_window(double tau_prev, double tau, double l_prev, double l, double mu_f) {
    if (tau_prev >= 1.0) {
        throw UsageError("omega_window: undefined when tau_{k-1} = 1 (first step)");
    }
    const double lp = l_prev + mu_f;
    const double m = (l + mu_f) / lp;
    const double a = l / lp;

    OmegaWindow w;
    const double lo1 = (tau_prev + std::sqrt(sqr(tau_prev) + 4.0 * a)) / (2.0 * (1.0 - tau_prev));
    const double lo2 = a * tau / ((1.0 - tau) * (1.0 - tau_prev) * tau_prev);
    w.lower = std::max(lo1, lo2);
    w.upper = (sqr(tau_prev) + m * tau) / (tau_prev * (1.0 - tau_prev));
    return w;
}

OmegaWindow omega_window(const Schedule& sched, long k) {
    if (k < 1) throw UsageError("omega_window: needs k >= 1");
    return omega_window(sched.tau(k - 1), sched.tau(k), sched.lipschitz(k - 1),
                        sched.lipschitz(k), sched.regime().mu_f);
}

void dump_schedule_csv(const Schedule& sched, long k_max, std::ostream& out) {
    out << "k,tau,beta,L,m,eta,cond1_slack,cond2_slack,omega_lo,omega_hi\n";
    char buf[400];
    for (long k = 0; k <= k_max; ++k) {
        const ScheduleState s = sched.at(k);
        double c1 = 0, c2 = 0, wlo = 0, whi = 0;
        if (k >= 1) {
            const ParamCondReport r = check_param_cond(sched, k);
            c1 = r.slack1;
            c2 = r.slack2;
            if (sched.tau(k - 1) < 1.0) {
                const OmegaWindow w = omega_window(sched, k);
                wlo = w.lower;
                whi = w.upper;
            }
        }
        const double m_k = k >= 1 ? sched.at(k - 1).m_next : 1.0;
        const double eta_k = k >= 1 ? sched.at(k - 1).eta_next : 0.0;
        std::snprintf(buf, sizeof(buf),
                      "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", k, s.tau_k,
                      s.beta_k, s.L_k, m_k, eta_k, c1, c2, wlo, whi);
        out << buf;
    }
}

}  // namespace asgard
