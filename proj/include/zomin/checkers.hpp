#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "zomin/geometry.hpp"
#include "zomin/problem.hpp"
#include "zomin/random.hpp"
#include "zomin/smoothing.hpp"

namespace zomin {

/// Result of a sampler-based inequality check. worst_violation is the
/// largest observed left-over of the inequality (<= slack when passed);
/// witness holds the most violating probe when one exists.
struct CheckReport {
    bool passed = false;
    long trials = 0;
    double worst_violation = 0.0;
    double slack = 1e-9;
    std::optional<Vector> witness;
    std::vector<std::string> skipped;  // sub-checks skipped for missing inputs
};

/// Axis-aligned sampling region for the checkers. The quasar inequalities
/// quantify over the whole space, which cannot be sampled; the box is the
/// documented scope of the check.
struct SamplingBox {
    Vector lo;
    Vector hi;

    static SamplingBox cube(Eigen::Index dim, double lo, double hi) {
        return {Vector::Constant(dim, lo), Vector::Constant(dim, hi)};
    }
};

namespace detail {

struct ProbeResult {
    double violation = 0.0;
    double allowance = 0.0;  // finite-difference error budget at this probe
};

}  // namespace detail

/// Samples `trials` points x in the box and records the largest value of
///   f(x) + (1/gamma) <grad f(x), x* - x> + (beta/2) ||x* - x||^2 - f(x*).
/// Negative everywhere means the (strong, when beta > 0) quasar inequality
/// held on the sampled region. Falls back to central differences when the
/// problem has no analytic gradient, widening the per-probe slack by
/// 1e-4 * (1 + |f(x)|).
inline CheckReport check_quasar_convexity(const Problem& problem, double gamma, double beta,
                                          const Vector& xstar, const SamplingBox& box,
                                          long trials, RandomStream& stream) {
    if (!(gamma > 0) || gamma > 1.0) throw std::invalid_argument("check_quasar_convexity: gamma in (0,1]");
    if (beta < 0) throw std::invalid_argument("check_quasar_convexity: beta must be >= 0");
    require_same_dim(box.lo, box.hi, "check_quasar_convexity box");
    if (box.lo.size() != problem.dim) throw std::invalid_argument("check_quasar_convexity: box dimension");

    const bool numerical = !problem.has_gradient();
    const double fstar = checked_eval(problem.eval, xstar);

    CheckReport report;
    report.trials = trials;
    double worst = -std::numeric_limits<double>::infinity();
    for (long trial = 0; trial < trials; ++trial) {
        const Vector x = sample_uniform_box(stream, box.lo, box.hi);
        const double fx = checked_eval(problem.eval, x);
        const Vector g = gradient_or_fd(problem, x);
        const Vector to_star = xstar - x;
        const double lhs = fx + g.dot(to_star) / gamma + 0.5 * beta * to_star.squaredNorm() - fstar;
        const double allowance = numerical ? 1e-4 * (1.0 + std::abs(fx)) : 0.0;
        const double violation = lhs - allowance;
        if (violation > worst) {
            worst = violation;
            if (violation > report.slack) report.witness = x;
        }
    }
    report.worst_violation = worst;
    report.passed = worst <= report.slack;
    if (report.passed) report.witness.reset();
    return report;
}

/// Constrained analogue: probes are drawn in the box and projected onto the
/// set, the gradient is replaced by the projected-gradient surrogate
/// P(x, a) = (x - Proj(x - a grad f(x))) / a, and the checked inequality is
///   F(x) + (1/gamma) <P(x,a), x* - x> + (beta/2) ||x - x*||^2 <= F(x*).
inline CheckReport check_proximal_quasar_convexity(const Problem& problem, const FeasibleSet& set,
                                                   double gamma, double beta, double a,
                                                   const Vector& xstar, const SamplingBox& box,
                                                   long trials, RandomStream& stream) {
    if (!(gamma > 0) || gamma > 1.0) throw std::invalid_argument("check_proximal_quasar_convexity: gamma in (0,1]");
    if (beta < 0) throw std::invalid_argument("check_proximal_quasar_convexity: beta must be >= 0");
    if (!(a > 0)) throw std::invalid_argument("check_proximal_quasar_convexity: a must be > 0");
    if (!set.contains(xstar, 1e-9)) {
        throw std::invalid_argument("check_proximal_quasar_convexity: xstar is infeasible");
    }

    const bool numerical = !problem.has_gradient();
    const double fstar = checked_eval(problem.eval, xstar);

    CheckReport report;
    report.trials = trials;
    double worst = -std::numeric_limits<double>::infinity();
    for (long trial = 0; trial < trials; ++trial) {
        const Vector x = set.project(sample_uniform_box(stream, box.lo, box.hi));
        const double fx = checked_eval(problem.eval, x);
        const Vector g = gradient_or_fd(problem, x);
        const Vector mapping = gradient_mapping(x, g, a, set);
        const Vector to_star = xstar - x;
        const double lhs = fx + mapping.dot(to_star) / gamma + 0.5 * beta * to_star.squaredNorm() - fstar;
        const double allowance = numerical ? 1e-4 * (1.0 + std::abs(fx)) : 0.0;
        const double violation = lhs - allowance;
        if (violation > worst) {
            worst = violation;
            if (violation > report.slack) report.witness = x;
        }
    }
    report.worst_violation = worst;
    report.passed = worst <= report.slack;
    if (report.passed) report.witness.reset();
    return report;
}

/// Statistical health check of the two-point oracle at a fixed point x:
///  (i)  unbiasedness: per-coordinate z-statistic between the mean oracle
///       and the mean of grad f(x + mu u) stays below 4;
///  (ii) smoothing bias: |mean f(x + mu u) - f(x)| <= mu^2 L1 n / 2 plus
///       three standard errors (needs a declared L1, skipped otherwise);
///  (iii) variance scaling: batch variances at t in {1, 4, 16} match the
///       1/t law within factor 1.5.
/// Sub-checks whose inputs are missing are reported in `skipped`, not
/// failed. worst_violation is the largest excess over the allowed bound
/// among executed sub-checks.
inline CheckReport check_oracle_statistics(const Problem& problem, const Vector& x,
                                           const SmoothingConfig& cfg, long samples,
                                           RandomStream& stream) {
    cfg.validate();
    if (samples < 16) throw std::invalid_argument("check_oracle_statistics: too few samples");

    CheckReport report;
    report.trials = samples;
    double worst = -std::numeric_limits<double>::infinity();

    if (problem.has_gradient()) {
        const Eigen::Index n = problem.dim;
        Vector mean_oracle = Vector::Zero(n), m2_oracle = Vector::Zero(n);
        Vector mean_grad = Vector::Zero(n), m2_grad = Vector::Zero(n);
        for (long i = 0; i < samples; ++i) {
            const Vector g = zo_oracle_single(problem.eval, x, cfg.mu, sample_standard_normal(stream, n));
            const Vector delta = g - mean_oracle;
            mean_oracle += delta / static_cast<double>(i + 1);
            m2_oracle.array() += delta.array() * (g - mean_oracle).array();
        }
        for (long i = 0; i < samples; ++i) {
            const Vector g = problem.grad(x + cfg.mu * sample_standard_normal(stream, n));
            const Vector delta = g - mean_grad;
            mean_grad += delta / static_cast<double>(i + 1);
            m2_grad.array() += delta.array() * (g - mean_grad).array();
        }
        const double m = static_cast<double>(samples);
        double worst_z = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double se2 = m2_oracle[j] / ((m - 1.0) * m) + m2_grad[j] / ((m - 1.0) * m);
            const double z = std::abs(mean_oracle[j] - mean_grad[j]) / std::sqrt(se2);
            worst_z = std::max(worst_z, z);
        }
        worst = std::max(worst, worst_z - 4.0);
    } else {
        report.skipped.push_back("unbiasedness (no analytic gradient)");
    }

    if (problem.constants.L1) {
        const double fx = checked_eval(problem.eval, x);
        const MonteCarloEstimate est = estimate_f_mu(problem.eval, x, cfg.mu, samples, stream);
        const double budget = 0.5 * cfg.mu * cfg.mu * (*problem.constants.L1) *
                                  static_cast<double>(problem.dim) +
                              3.0 * est.std_error;
        worst = std::max(worst, std::abs(est.mean - fx) - budget);
    } else {
        report.skipped.push_back("smoothing bias (no declared L1)");
    }

    {
        const long reps = std::max<long>(samples / 8, 64);
        double v1 = 0.0;
        for (long t : {1L, 4L, 16L}) {
            SmoothingConfig batch_cfg{cfg.mu, t};
            const MonteCarloEstimate est = estimate_sigma_squared(problem.eval, x, batch_cfg, reps, stream);
            if (t == 1) {
                v1 = est.mean;
            } else {
                const double expected = v1 / static_cast<double>(t);
                double excess = 1.0 - 1.5;  // degenerate zero-variance oracles fit trivially
                if (expected > 1e-300 || est.mean > 1e-300) {
                    excess = std::max(est.mean / std::max(expected, 1e-300),
                                      expected / std::max(est.mean, 1e-300)) -
                             1.5;
                }
                worst = std::max(worst, excess);
            }
        }
    }

    report.worst_violation = worst;
    report.passed = worst <= report.slack;
    return report;
}

}  // namespace zomin
