#pragma once

#include <functional>
#include <vector>

#include "zomin/random.hpp"
#include "zomin/vector.hpp"

namespace zomin {

using Objective = std::function<double(const Vector&)>;

/// Gaussian smoothing parameters: scale mu and the number of directions
/// averaged per oracle call.
struct SmoothingConfig {
    double mu = 1e-7;
    long batch = 1;

    void validate() const {
        if (!(mu > 0)) throw std::invalid_argument("SmoothingConfig: mu must be > 0");
        if (batch < 1) throw std::invalid_argument("SmoothingConfig: batch must be >= 1");
    }
};

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long samples = 0;
};

/// Two-point directional estimate ((f(x + mu*u) - f(x)) / mu) * u.
/// Exactly two objective evaluations; throws EvaluationError on non-finite
/// values.
inline Vector zo_oracle_single(const Objective& f, const Vector& x, double mu, const Vector& u) {
    require_same_dim(x, u, "zo_oracle_single");
    if (!(mu > 0)) throw std::invalid_argument("zo_oracle_single: mu must be > 0");
    const double forward = checked_eval(f, x + mu * u);
    const double base = checked_eval(f, x);
    return ((forward - base) / mu) * u;
}

/// Mean of cfg.batch single-direction oracles; directions are drawn from the
/// stream and reduced in draw order, so results are reproducible regardless
/// of worker count.
inline Vector zo_oracle_batch(const Objective& f, const Vector& x, const SmoothingConfig& cfg,
                              RandomStream& stream) {
    cfg.validate();
    Vector acc = Vector::Zero(x.size());
    for (long i = 0; i < cfg.batch; ++i) {
        acc += zo_oracle_single(f, x, cfg.mu, sample_standard_normal(stream, x.size()));
    }
    return acc / static_cast<double>(cfg.batch);
}

/// Monte-Carlo estimate of the smoothed objective value E_u[f(x + mu*u)].
inline MonteCarloEstimate estimate_f_mu(const Objective& f, const Vector& x, double mu,
                                        long samples, RandomStream& stream) {
    if (samples < 2) throw std::invalid_argument("estimate_f_mu: need at least 2 samples");
    if (!(mu > 0)) throw std::invalid_argument("estimate_f_mu: mu must be > 0");
    double mean = 0.0, m2 = 0.0;
    for (long i = 0; i < samples; ++i) {
        const double v = checked_eval(f, x + mu * sample_standard_normal(stream, x.size()));
        const double delta = v - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (v - mean);
    }
    const double var = m2 / static_cast<double>(samples - 1);
    return {mean, std::sqrt(var / static_cast<double>(samples)), samples};
}

/// Plug-in estimate of the oracle variance E_u ||g - g_bar||^2, with g_bar
/// the empirical mean oracle standing in for the smoothed gradient.
inline MonteCarloEstimate estimate_sigma_squared(const Objective& f, const Vector& x,
                                                 const SmoothingConfig& cfg, long samples,
                                                 RandomStream& stream) {
    if (samples < 2) throw std::invalid_argument("estimate_sigma_squared: need at least 2 samples");
    cfg.validate();
    std::vector<Vector> draws;
    draws.reserve(static_cast<std::size_t>(samples));
    Vector mean_oracle = Vector::Zero(x.size());
    for (long i = 0; i < samples; ++i) {
        draws.push_back(zo_oracle_batch(f, x, cfg, stream));
        mean_oracle += draws.back();
    }
    mean_oracle /= static_cast<double>(samples);

    double mean = 0.0, m2 = 0.0;
    long count = 0;
    for (const Vector& g : draws) {
        const double v = (g - mean_oracle).squaredNorm();
        ++count;
        const double delta = v - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (v - mean);
    }
    const double var = m2 / static_cast<double>(samples - 1);
    return {mean, std::sqrt(var / static_cast<double>(samples)), samples};
}

}  // namespace zomin
