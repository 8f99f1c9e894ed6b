#pragma once

#include <cmath>
#include <memory>

#include "zomin/problem.hpp"

namespace zomin::problems {

inline Vector softmax(const Vector& logits) {
    const Vector shifted = logits.array() - logits.maxCoeff();
    Vector e = shifted.array().exp();
    return e / e.sum();
}

struct Bandit {
    Problem problem;              ///< negated regularised value (minimised)
    std::function<double(const Vector&)> soft_suboptimality;  ///< delta(theta)
    double optimal_value = 0.0;   ///< tau * log sum exp(r / tau)
};

/// Entropy-regularised multi-armed bandit over softmax policies
/// pi_theta = softmax(theta): the (negated) objective is
/// -pi^T (r - tau log pi), whose unique optimal policy is softmax(r/tau).
inline Bandit bandit(const Vector& rewards, double tau) {
    if (rewards.size() < 2) throw std::invalid_argument("bandit: need at least 2 actions");
    if (!(tau > 0)) throw std::invalid_argument("bandit: tau must be > 0");

    auto r = std::make_shared<Vector>(rewards);
    const Eigen::Index K = rewards.size();

    auto value = [r, tau](const Vector& theta) {
        const Vector pi = softmax(theta);
        double v = 0.0;
        for (Eigen::Index i = 0; i < pi.size(); ++i) {
            v += pi[i] * ((*r)[i] - tau * std::log(pi[i]));
        }
        return v;
    };

    const double max_r = rewards.maxCoeff();
    const double optimal = max_r + tau * std::log(((rewards.array() - max_r) / tau).exp().sum());

    Bandit out;
    out.optimal_value = optimal;
    out.soft_suboptimality = [value, optimal](const Vector& theta) { return optimal - value(theta); };

    Problem p;
    p.dim = K;
    p.name = "bandit";
    p.eval = [value](const Vector& theta) { return -value(theta); };
    p.grad = [r, tau, value](const Vector& theta) {
        const Vector pi = softmax(theta);
        const double v = value(theta);
        Vector g(theta.size());
        for (Eigen::Index i = 0; i < theta.size(); ++i) {
            g[i] = -pi[i] * (((*r)[i] - tau * std::log(pi[i])) - v);
        }
        return g;
    };
    p.optimum = Optimum{rewards / tau, -optimal};
    out.problem = std::move(p);
    return out;
}

}  // namespace zomin::problems
