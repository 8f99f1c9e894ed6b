#pragma once

#include <cmath>
#include <numbers>

#include "zomin/problem.hpp"

namespace zomin::problems {

/// Closed form of 120 * integral_1^theta t^2 (t-1) / (1 + t^2) dt.
/// Antiderivative of the integrand: t^2/2 - t - ln(1+t^2)/2 + atan(t).
inline double upsilon(double theta) {
    auto anti = [](double t) {
        return 0.5 * t * t - t - 0.5 * std::log1p(t * t) + std::atan(t);
    };
    return 120.0 * (anti(theta) - anti(1.0));
}

inline double upsilon_derivative(double theta) {
    return 120.0 * theta * theta * (theta - 1.0) / (1.0 + theta * theta);
}

/// Chained quadratic plus a scaled sum of one-dimensional nonconvex wells;
/// quasar-convex with gamma = 1/(100 T sqrt(sigma)) and gradient Lipschitz
/// constant 3. Global minimum at the all-ones point with value 0.
inline Problem hard_quasar(int T, double sigma) {
    if (T < 1) throw std::invalid_argument("hard_quasar: T must be >= 1");
    if (!(sigma > 0)) throw std::invalid_argument("hard_quasar: sigma must be > 0");

    Problem p;
    p.dim = T;
    p.name = "hard_quasar";
    p.eval = [T, sigma](const Vector& x) {
        double q = 0.25 * (x[0] - 1.0) * (x[0] - 1.0);
        for (int i = 0; i + 1 < T; ++i) q += 0.25 * (x[i] - x[i + 1]) * (x[i] - x[i + 1]);
        double wells = 0.0;
        for (int i = 0; i < T; ++i) wells += upsilon(x[i]);
        return q + sigma * wells;
    };
    p.grad = [T, sigma](const Vector& x) {
        Vector g = Vector::Zero(T);
        g[0] = 0.5 * (x[0] - 1.0);
        for (int i = 0; i + 1 < T; ++i) {
            const double d = 0.5 * (x[i] - x[i + 1]);
            g[i] += d;
            g[i + 1] -= d;
        }
        for (int i = 0; i < T; ++i) g[i] += sigma * upsilon_derivative(x[i]);
        return g;
    };
    p.optimum = Optimum{Vector::Ones(T), 0.0};
    p.constants.L1 = 3.0;
    p.constants.gamma = 1.0 / (100.0 * static_cast<double>(T) * std::sqrt(sigma));
    return p;
}

}  // namespace zomin::problems
