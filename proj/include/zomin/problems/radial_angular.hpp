#pragma once

#include <cmath>
#include <memory>

#include "zomin/geometry.hpp"
#include "zomin/problem.hpp"
#include "zomin/random.hpp"

namespace zomin::problems {

struct RadialAngular {
    Problem problem;
    FeasibleSet set;
    Vector amp;   // a_i ~ U[0, 1]
    Vector freq;  // b_i ~ U[-2.5, 2.5]
};

/// Oscillatory strongly quasar-convex test function
/// h(x) = ||x||^2 * sum_i (a_i sin(b_i x_i / ||x||)^2 + 1), paired with an
/// l1-ball constraint of the given radius. Declared constants gamma = 1,
/// beta = 2; global minimum at the origin.
inline RadialAngular radial_angular(const Vector& amplitudes, const Vector& frequencies,
                                    double radius) {
    require_same_dim(amplitudes, frequencies, "radial_angular");
    const auto dim = static_cast<int>(amplitudes.size());
    if (dim < 1) throw std::invalid_argument("radial_angular: dim must be >= 1");
    auto amp = std::make_shared<Vector>(amplitudes);
    auto freq = std::make_shared<Vector>(frequencies);

    auto angular = [amp, freq](const Vector& theta) {
        double g = 0.0;
        for (Eigen::Index i = 0; i < theta.size(); ++i) {
            const double s = std::sin((*freq)[i] * theta[i]);
            g += (*amp)[i] * s * s + 1.0;
        }
        return g;
    };

    Problem p;
    p.dim = dim;
    p.name = "radial_angular";
    p.doc = "value at the origin is defined as the limit 0 (the angular factor is bounded)";
    p.eval = [angular](const Vector& x) {
        const double r = x.norm();
        if (r == 0.0) return 0.0;
        return r * r * angular(x / r);
    };
    p.grad = [amp, freq, angular](const Vector& x) {
        const double r = x.norm();
        if (r == 0.0) return Vector(Vector::Zero(x.size()));
        const Vector theta = x / r;
        const double g = angular(theta);
        Vector dg(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            dg[i] = (*amp)[i] * (*freq)[i] * std::sin(2.0 * (*freq)[i] * theta[i]);
        }
        // h = r^2 g(theta); d theta / dx = (I - theta theta^T) / r
        return Vector(2.0 * g * x + r * (dg - theta.dot(dg) * theta));
    };
    p.optimum = Optimum{Vector::Zero(dim), 0.0};
    p.constants.gamma = 1.0;
    p.constants.beta = 2.0;

    return RadialAngular{std::move(p), FeasibleSet::l1_ball(Vector::Zero(dim), radius), *amp, *freq};
}

/// Coefficients drawn as a_i ~ U[0,1] and b_i ~ U[-2.5, 2.5].
inline RadialAngular radial_angular(int dim, double radius, RandomStream& stream) {
    if (dim < 1) throw std::invalid_argument("radial_angular: dim must be >= 1");
    Vector amp(dim), freq(dim);
    for (int i = 0; i < dim; ++i) {
        amp[i] = stream.uniform(0.0, 1.0);
        freq[i] = stream.uniform(-2.5, 2.5);
    }
    return radial_angular(amp, freq, radius);
}

}  // namespace zomin::problems
