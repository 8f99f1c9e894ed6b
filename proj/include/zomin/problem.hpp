#pragma once

#include <functional>
#include <optional>
#include <string>

#include "zomin/vector.hpp"

namespace zomin {

struct Optimum {
    Vector point;
    double value = 0.0;
};

/// Constants a benchmark declares about itself, when known.
struct DeclaredConstants {
    std::optional<double> L1;
    std::optional<double> gamma;
    std::optional<double> beta;
};

/// An evaluatable objective with optional analytic gradient, known optimum
/// and declared constants. Evaluation is pure; problems are immutable after
/// construction.
struct Problem {
    Eigen::Index dim = 0;
    std::string name;
    std::string doc;
    std::function<double(const Vector&)> eval;
    std::function<Vector(const Vector&)> grad;  // empty when unavailable
    std::optional<Optimum> optimum;
    DeclaredConstants constants;

    bool has_gradient() const { return static_cast<bool>(grad); }
};

/// Central finite-difference gradient with step scaled by (1 + ||x||).
inline Vector finite_difference_gradient(const std::function<double(const Vector&)>& f,
                                         const Vector& x, double base_step = 1e-6) {
    const double h = base_step * (1.0 + x.norm());
    Vector g(x.size());
    Vector probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        probe[i] = xi + h;
        const double fp = checked_eval(f, probe);
        probe[i] = xi - h;
        const double fm = checked_eval(f, probe);
        probe[i] = xi;
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

/// Analytic gradient when present, central differences otherwise.
inline Vector gradient_or_fd(const Problem& p, const Vector& x, double base_step = 1e-6) {
    if (p.has_gradient()) return p.grad(x);
    return finite_difference_gradient(p.eval, x, base_step);
}

}  // namespace zomin
