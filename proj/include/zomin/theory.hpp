#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace zomin {

/// Constant bundle consumed by the convergence-bound and hyperparameter
/// calculators. Fields left as NaN count as "not provided"; each calculator
/// validates exactly the constants its regime needs.
struct ProblemConstants {
    double L1 = nan();     ///< gradient Lipschitz constant
    double gamma = nan();  ///< quasar parameter in (0, 1]
    double beta = 0.0;     ///< strong-quasar modulus; 0 means plain quasar
    long n = 0;            ///< dimension
    double R = nan();      ///< initial distance to the minimiser
    double dX = std::numeric_limits<double>::infinity();  ///< set diameter
    double sigma = nan();  ///< oracle standard-deviation bound
    double h = nan();      ///< step size
    double mu = nan();     ///< smoothing parameter
    long t = 1;            ///< oracle batch size
    double eps = nan();    ///< target tolerance

    static constexpr double nan() { return std::numeric_limits<double>::quiet_NaN(); }
};

/// One tag per supported convergence regime. The unconstrained bounds assume
/// a single oracle direction per step; batch size enters only through the
/// constrained variance terms.
enum class Regime {
    QcUnconstrained,   ///< quasar-convex, X = R^n, averaged-gap bound
    SqcUnconstrained,  ///< strongly quasar-convex, X = R^n, final-gap bound
    SqcDistance,       ///< strongly quasar-convex, bound on E||x_N - x*||^2
    QcConstrained,     ///< proximal quasar-convex on a compact convex set
    SqcConstrained     ///< proximal strongly quasar-convex on a compact set
};

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::QcUnconstrained: return "qc-unconstrained";
        case Regime::SqcUnconstrained: return "sqc-unconstrained";
        case Regime::SqcDistance: return "sqc-distance";
        case Regime::QcConstrained: return "qc-constrained";
        case Regime::SqcConstrained: return "sqc-constrained";
    }
    return "?";
}

inline Regime parse_regime(const std::string& s) {
    if (s == "qc-unconstrained") return Regime::QcUnconstrained;
    if (s == "sqc-unconstrained") return Regime::SqcUnconstrained;
    if (s == "sqc-distance") return Regime::SqcDistance;
    if (s == "qc-constrained") return Regime::QcConstrained;
    if (s == "sqc-constrained") return Regime::SqcConstrained;
    throw std::invalid_argument("unknown regime: " + s);
}

inline bool is_strong(Regime r) {
    return r == Regime::SqcUnconstrained || r == Regime::SqcDistance || r == Regime::SqcConstrained;
}

inline bool is_constrained(Regime r) {
    return r == Regime::QcConstrained || r == Regime::SqcConstrained;
}

struct Hyperparameters {
    double mu_max = 0.0;
    long long N_min = 0;
    long long t_min = 1;
};

namespace detail {

inline void require_positive(double v, const char* name) {
    if (!(v > 0)) throw std::invalid_argument(std::string("constant ") + name + " must be > 0");
}

inline void require_base(const ProblemConstants& c) {
    require_positive(c.L1, "L1");
    require_positive(c.gamma, "gamma");
    if (c.gamma > 1.0) throw std::invalid_argument("constant gamma must lie in (0, 1]");
    if (c.n < 1) throw std::invalid_argument("constant n must be >= 1");
}

inline void require_diameter(const ProblemConstants& c) {
    if (!(c.dX > 0) || std::isinf(c.dX)) {
        throw std::invalid_argument("constrained regimes need a finite positive diameter dX");
    }
}

// Shared denominator gamma - 2(n+4)L1 h of the strong-regime bounds.
inline double sqc_denominator(const ProblemConstants& c) {
    require_positive(c.h, "h");
    const double d = c.gamma - 2.0 * static_cast<double>(c.n + 4) * c.L1 * c.h;
    if (!(d > 0)) {
        throw std::invalid_argument("step size too large: gamma - 2(n+4)L1*h must stay positive");
    }
    if (c.gamma * c.beta * c.h > 1.0) {
        throw std::invalid_argument("step size too large: gamma*beta*h must stay within (0, 1]");
    }
    return d;
}

inline long long ceil_to_count(double v) {
    const double c = std::ceil(v);
    if (c > 4.6e18) {
        throw std::domain_error("required count exceeds the 64-bit range; the regime is out of reach");
    }
    return c < 0 ? 0 : static_cast<long long>(c);
}

}  // namespace detail

/// Step size prescribed by the convergence analysis for the given regime.
/// Quasar regimes use gamma / (4(n+4)L1). Strong regimes use
/// min{gamma / (2(n+4)L1), 1/(gamma*beta)} scaled by `safety` in (0, 1]
/// (default 0.9) so the bound denominator gamma - 2(n+4)L1*h stays strictly
/// positive at the boundary choice.
inline double default_step(Regime regime, const ProblemConstants& c, double safety = 0.9) {
    detail::require_base(c);
    if (!(safety > 0) || safety > 1.0) {
        throw std::invalid_argument("default_step: safety factor must lie in (0, 1]");
    }
    const double n4 = static_cast<double>(c.n + 4);
    if (!is_strong(regime)) {
        return c.gamma / (4.0 * n4 * c.L1);
    }
    detail::require_positive(c.beta, "beta");
    return safety * std::min(c.gamma / (2.0 * n4 * c.L1), 1.0 / (c.gamma * c.beta));
}

/// Smallest sufficient (mu, N, t) for tolerance eps in the given regime
/// (ceilings included). t_min is 1 where the regime imposes no batch
/// requirement. Strong regimes read the step size from c.h and require
/// gamma - 2(n+4)L1*h > 0.
inline Hyperparameters hyperparameters(Regime regime, const ProblemConstants& c) {
    detail::require_base(c);
    detail::require_positive(c.eps, "eps");
    detail::require_positive(c.R, "R");
    const double n4 = static_cast<double>(c.n + 4);
    const double n6 = static_cast<double>(c.n + 6);
    const double n3 = static_cast<double>(c.n + 3);

    Hyperparameters out;
    switch (regime) {
        case Regime::QcUnconstrained: {
            const double denom =
                4.0 * c.L1 * static_cast<double>(c.n) * (1.0 + c.gamma) / c.gamma +
                n6 * n6 * n6 * c.L1 / (4.0 * n4);
            out.mu_max = std::sqrt(c.eps / denom);
            out.N_min = detail::ceil_to_count(4.0 * n4 * c.L1 * c.R * c.R / (c.gamma * c.gamma * c.eps) - 1.0);
            out.t_min = 1;
            return out;
        }
        case Regime::SqcUnconstrained: {
            detail::require_positive(c.beta, "beta");
            const double d = detail::sqc_denominator(c);
            const double a = c.L1 * static_cast<double>(c.n) * (1.0 + c.gamma) / (c.h * c.gamma * c.beta * d);
            const double b = c.L1 * c.L1 * n6 * n6 * n6 / (4.0 * c.gamma * c.beta * d);
            const double q = 2.0 * c.h * d;
            out.mu_max = std::sqrt(0.5 * c.eps / (a + b));
            out.N_min = detail::ceil_to_count(std::log(c.R * c.R / (q * c.eps)) / (c.gamma * c.beta * c.h) - 1.0);
            out.t_min = 1;
            return out;
        }
        case Regime::SqcDistance: {
            detail::require_positive(c.beta, "beta");
            const double d = detail::sqc_denominator(c);
            const double g3b3 = std::pow(c.gamma, 3) * std::pow(c.beta, 3);
            const double a = 8.0 * c.L1 * c.L1 * static_cast<double>(c.n) * (1.0 + c.gamma) / (c.h * g3b3 * d);
            const double b = 2.0 * std::pow(c.L1, 3) * n6 * n6 * n6 / (g3b3 * d);
            const double q = 2.0 * c.h * c.gamma * c.gamma * c.beta * c.beta * d;
            out.mu_max = std::sqrt(0.5 * c.eps / (a + b));
            out.N_min = detail::ceil_to_count(
                std::log(8.0 * c.L1 * c.R * c.R / (q * c.eps)) / (c.gamma * c.beta * c.h) - 1.0);
            out.t_min = 1;
            return out;
        }
        case Regime::QcConstrained: {
            detail::require_diameter(c);
            detail::require_positive(c.sigma, "sigma");
            const double a = n6 * n6 * n6 * c.L1 / (8.0 * n4);
            const double b = c.dX * c.L1 * std::pow(n3, 1.5) / c.gamma;
            // Positive root of a*mu^2 + b*mu = eps in the cancellation-free form.
            out.mu_max = 2.0 * c.eps / (b + std::sqrt(b * b + 4.0 * a * c.eps));
            out.t_min = detail::ceil_to_count(16.0 * c.dX * c.dX * c.sigma * c.sigma /
                                              (c.eps * c.eps * c.gamma * c.gamma));
            out.N_min = detail::ceil_to_count(16.0 * n4 * c.L1 * c.R * c.R / (c.gamma * c.gamma * c.eps) - 1.0);
            return out;
        }
        case Regime::SqcConstrained: {
            detail::require_positive(c.beta, "beta");
            detail::require_diameter(c);
            detail::require_positive(c.sigma, "sigma");
            const double d = detail::sqc_denominator(c);
            const double a = c.L1 * c.L1 * n6 * n6 * n6 / (4.0 * c.gamma * c.beta * d);
            const double b = c.dX * c.L1 * std::pow(n3, 1.5) / (2.0 * c.gamma * c.beta * c.h * d);
            const double q = 2.0 * c.h * d;
            out.mu_max = 2.0 * c.eps / (b + std::sqrt(b * b + 4.0 * a * c.eps));
            out.t_min = detail::ceil_to_count(4.0 * c.dX * c.dX * c.sigma * c.sigma /
                                              (q * q * c.gamma * c.gamma * c.beta * c.beta * c.eps * c.eps));
            out.N_min = detail::ceil_to_count(std::log(c.R * c.R / (q * c.eps)) / (c.gamma * c.beta * c.h) - 1.0);
            return out;
        }
    }
    throw std::logic_error("hyperparameters: unreachable");
}

/// Right-hand side of the regime's main convergence inequality after N
/// iterations. Quasar regimes bound the averaged gap; strong regimes bound
/// the final gap (every term of the weighted sum is nonnegative in
/// expectation, so the last one is bounded by the whole right-hand side);
/// the distance regime divides the strong bound by the quadratic-growth
/// constant gamma^2 beta^2 / (8 L1).
inline double theorem_bound(Regime regime, const ProblemConstants& c, long long N) {
    detail::require_base(c);
    detail::require_positive(c.R, "R");
    if (!(c.mu >= 0)) throw std::invalid_argument("constant mu must be >= 0");
    if (N < 0) throw std::invalid_argument("theorem_bound: N must be >= 0");
    const double n4 = static_cast<double>(c.n + 4);
    const double n6 = static_cast<double>(c.n + 6);
    const double n3 = static_cast<double>(c.n + 3);
    const double mu2 = c.mu * c.mu;

    switch (regime) {
        case Regime::QcUnconstrained:
            return 4.0 * n4 * c.L1 * c.R * c.R / (c.gamma * c.gamma * static_cast<double>(N + 1)) +
                   2.0 * mu2 * c.L1 * static_cast<double>(c.n) * (1.0 + c.gamma) / c.gamma +
                   mu2 * n6 * n6 * n6 * c.L1 / (8.0 * n4);
        case Regime::SqcUnconstrained:
        case Regime::SqcDistance: {
            detail::require_positive(c.beta, "beta");
            const double d = detail::sqc_denominator(c);
            const double decay = std::pow(1.0 - c.gamma * c.beta * c.h, static_cast<double>(N + 1));
            const double gap = decay * c.R * c.R / (2.0 * c.h * d) +
                               mu2 * c.L1 * static_cast<double>(c.n) * (1.0 + c.gamma) /
                                   (c.h * c.gamma * c.beta * d) +
                               mu2 * c.L1 * c.L1 * n6 * n6 * n6 / (4.0 * c.gamma * c.beta * d);
            if (regime == Regime::SqcUnconstrained) return gap;
            const double growth = c.gamma * c.gamma * c.beta * c.beta / (8.0 * c.L1);
            return gap / growth;
        }
        case Regime::QcConstrained: {
            detail::require_diameter(c);
            detail::require_positive(c.sigma, "sigma");
            if (c.t < 1) throw std::invalid_argument("constant t must be >= 1");
            return 4.0 * n4 * c.L1 * c.R * c.R / (c.gamma * c.gamma * static_cast<double>(N + 1)) +
                   c.dX * c.mu * c.L1 * std::pow(n3, 1.5) / c.gamma +
                   mu2 * n6 * n6 * n6 * c.L1 / (8.0 * n4) +
                   2.0 * c.dX * c.sigma / (std::sqrt(static_cast<double>(c.t)) * c.gamma);
        }
        case Regime::SqcConstrained: {
            detail::require_positive(c.beta, "beta");
            detail::require_diameter(c);
            detail::require_positive(c.sigma, "sigma");
            if (c.t < 1) throw std::invalid_argument("constant t must be >= 1");
            const double d = detail::sqc_denominator(c);
            const double decay = std::pow(1.0 - c.gamma * c.beta * c.h, static_cast<double>(N + 1));
            return decay * c.R * c.R / (2.0 * c.h * d) +
                   c.dX * c.sigma /
                       (c.h * std::sqrt(static_cast<double>(c.t)) * c.gamma * c.beta * d) +
                   mu2 * c.L1 * c.L1 * n6 * n6 * n6 / (4.0 * c.gamma * c.beta * d) +
                   c.dX * c.mu * c.L1 * std::pow(n3, 1.5) / (2.0 * c.gamma * c.beta * c.h * d);
        }
    }
    throw std::logic_error("theorem_bound: unreachable");
}

/// Polyak-Lojasiewicz and quadratic-growth constants implied by strong
/// quasar-convexity with Lipschitz gradients.
inline std::pair<double, double> pl_qg_constants(double gamma, double beta, double L1) {
    detail::require_positive(gamma, "gamma");
    detail::require_positive(beta, "beta");
    detail::require_positive(L1, "L1");
    const double pl = gamma * gamma * beta * beta / (4.0 * L1);
    return {pl, 0.5 * pl};
}

}  // namespace zomin
