#pragma once

#include <chrono>
#include <functional>
#include <vector>

#include "zomin/geometry.hpp"
#include "zomin/problem.hpp"
#include "zomin/random.hpp"
#include "zomin/smoothing.hpp"

namespace zomin {

struct ArmijoParams {
    double h0 = 1.0;
    double shrink = 0.5;
    double slope = 1e-4;
    int max_backtracks = 30;

    void validate() const {
        if (!(h0 > 0)) throw std::invalid_argument("ArmijoParams: h0 must be > 0");
        if (!(shrink > 0) || shrink >= 1.0) throw std::invalid_argument("ArmijoParams: shrink must lie in (0, 1)");
        if (!(slope > 0) || slope >= 1.0) throw std::invalid_argument("ArmijoParams: slope must lie in (0, 1)");
        if (max_backtracks < 0) throw std::invalid_argument("ArmijoParams: max_backtracks must be >= 0");
    }
};

struct StepRule {
    enum class Kind { Fixed, Armijo };

    Kind kind = Kind::Fixed;
    double h = 1e-3;
    ArmijoParams armijo;

    static StepRule fixed(double h) {
        if (!(h > 0)) throw std::invalid_argument("StepRule::fixed: h must be > 0");
        StepRule r;
        r.kind = Kind::Fixed;
        r.h = h;
        return r;
    }

    static StepRule backtracking(ArmijoParams params) {
        params.validate();
        StepRule r;
        r.kind = Kind::Armijo;
        r.armijo = params;
        return r;
    }
};

struct RunConfig {
    long iterations = 0;
    StepRule step;
    std::uint64_t seed = 0;
    SmoothingConfig smoothing;  // used by random_min only
};

struct TraceRecord {
    long iter = 0;
    double f = 0.0;
    double best_f = 0.0;
    double step = 0.0;       // step size used to reach this iterate (0 at iter 0)
    long long fevals = 0;    // cumulative algorithmic evaluations
    double elapsed_ms = 0.0;
};

/// Per-iteration log of a solver run. best_f is non-increasing; on ties the
/// earliest iterate keeps the best slot. A run that hits an evaluation
/// failure keeps everything recorded so far and sets `failed`.
struct Trace {
    std::vector<TraceRecord> records;
    Vector final_point;
    Vector best_point;
    bool failed = false;
    std::string error;

    double final_f() const { return records.empty() ? 0.0 : records.back().f; }
    double best_f() const { return records.empty() ? 0.0 : records.back().best_f; }
};

/// Observer invoked with (iteration, iterate) after every recorded step.
using IterateCallback = std::function<void(long, const Vector&)>;

/// Largest h in {h0 * shrink^i : 0 <= i <= max_backtracks} satisfying
/// f(x + h d) <= f(x) - slope * h * ||d||^2, or 0 when none qualifies
/// (callers skip the update). Works from objective values only, so it is
/// usable with oracle directions as well as gradients. A trial point whose
/// evaluation diverges fails the decrease test and is backtracked past; only
/// the baseline f(x) failing is an evaluation error.
inline double armijo_step(const Objective& f, const Vector& x, const Vector& direction,
                          const ArmijoParams& params) {
    params.validate();
    const double fx = checked_eval(f, x);
    const double dir_sq = direction.squaredNorm();
    double h = params.h0;
    for (int i = 0; i <= params.max_backtracks; ++i) {
        double trial = std::numeric_limits<double>::infinity();
        try {
            trial = f(x + h * direction);
        } catch (const EvaluationError&) {
        }
        if (trial <= fx - params.slope * h * dir_sq) return h;
        h *= params.shrink;
    }
    return 0.0;
}

namespace detail {

class TraceBuilder {
public:
    TraceBuilder(const Problem& problem, const FeasibleSet& set, long iterations)
        : problem_(problem), set_(set), start_(std::chrono::steady_clock::now()) {
        trace_.records.reserve(static_cast<std::size_t>(iterations) + 1);
    }

    void check_start(const Vector& x0) const {
        if (x0.size() != problem_.dim) {
            throw std::invalid_argument("solver: initial point dimension does not match the problem");
        }
        if (!set_.contains(x0, 1e-9)) {
            throw std::invalid_argument("solver: initial point is infeasible");
        }
    }

    void record(long iter, const Vector& x, double step, long long fevals,
                const IterateCallback& callback) {
        const double fx = problem_.eval(x);  // bookkeeping only, not counted
        if (trace_.records.empty() || fx < best_f_) {
            best_f_ = fx;
            trace_.best_point = x;
        }
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start_).count();
        trace_.records.push_back({iter, fx, best_f_, step, fevals, ms});
        trace_.final_point = x;
        if (callback) callback(iter, x);
    }

    Trace finish() { return std::move(trace_); }

    Trace fail(const std::string& what) {
        trace_.failed = true;
        trace_.error = what;
        return std::move(trace_);
    }

private:
    const Problem& problem_;
    const FeasibleSet& set_;
    std::chrono::steady_clock::time_point start_;
    Trace trace_;
    double best_f_ = 0.0;
};

}  // namespace detail

/// Projected zeroth-order descent: at every iteration the search direction
/// is a mini-batch two-point Gaussian oracle, followed by a projected step.
/// Runs exactly config.iterations iterations (no early stopping) and is
/// bit-reproducible for a fixed seed.
inline Trace random_min(const Problem& problem, const FeasibleSet& set, const Vector& x0,
                        const RunConfig& config, const IterateCallback& callback = {}) {
    config.smoothing.validate();
    detail::TraceBuilder builder(problem, set, config.iterations);
    builder.check_start(x0);

    RandomStream stream = make_stream(config.seed);
    long long fevals = 0;
    const Objective counted = [&](const Vector& x) {
        ++fevals;
        return problem.eval(x);
    };

    Vector x = x0;
    try {
        builder.record(0, x, 0.0, fevals, callback);
        for (long k = 0; k < config.iterations; ++k) {
            const Vector g = zo_oracle_batch(counted, x, config.smoothing, stream);
            const double h = config.step.kind == StepRule::Kind::Fixed
                                 ? config.step.h
                                 : armijo_step(counted, x, -g, config.step.armijo);
            if (h > 0.0) x = set.project(x - h * g);
            builder.record(k + 1, x, h, fevals, callback);
        }
    } catch (const EvaluationError& e) {
        return builder.fail(e.what());
    }
    return builder.finish();
}

/// Projected gradient descent baseline; requires an analytic gradient.
/// Gradient evaluations count one feval each; Armijo trials add objective
/// evaluations on top.
inline Trace projected_gd(const Problem& problem, const FeasibleSet& set, const Vector& x0,
                          const RunConfig& config, const IterateCallback& callback = {}) {
    if (!problem.has_gradient()) {
        throw std::invalid_argument("projected_gd: the problem exposes no analytic gradient");
    }
    detail::TraceBuilder builder(problem, set, config.iterations);
    builder.check_start(x0);

    long long fevals = 0;
    const Objective counted = [&](const Vector& x) {
        ++fevals;
        return problem.eval(x);
    };

    Vector x = x0;
    try {
        builder.record(0, x, 0.0, fevals, callback);
        for (long k = 0; k < config.iterations; ++k) {
            const Vector g = problem.grad(x);
            ++fevals;
            if (!all_finite(g)) throw EvaluationError("gradient returned non-finite entries", x);
            const double h = config.step.kind == StepRule::Kind::Fixed
                                 ? config.step.h
                                 : armijo_step(counted, x, -g, config.step.armijo);
            if (h > 0.0) x = set.project(x - h * g);
            builder.record(k + 1, x, h, fevals, callback);
        }
    } catch (const EvaluationError& e) {
        return builder.fail(e.what());
    }
    return builder.finish();
}

}  // namespace zomin
