#pragma once

#include "zomin/problem.hpp"

namespace zomin::problems {

/// f(x) = (curvature/2) ||x||^2; strongly convex, hence strongly
/// quasar-convex with gamma = 1 and beta = curvature.
inline Problem quadratic(int dim, double curvature = 1.0) {
    if (dim < 1) throw std::invalid_argument("quadratic: dim must be >= 1");
    if (!(curvature > 0)) throw std::invalid_argument("quadratic: curvature must be > 0");
    Problem p;
    p.dim = dim;
    p.name = "quadratic";
    p.eval = [curvature](const Vector& x) { return 0.5 * curvature * x.squaredNorm(); };
    p.grad = [curvature](const Vector& x) { return Vector(curvature * x); };
    p.optimum = Optimum{Vector::Zero(dim), 0.0};
    p.constants.L1 = curvature;
    p.constants.gamma = 1.0;
    p.constants.beta = curvature;
    return p;
}

}  // namespace zomin::problems
