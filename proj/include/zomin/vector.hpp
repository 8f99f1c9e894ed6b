#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace zomin {

/// Dense real coordinate vector used for decision variables, gradients and
/// oracle outputs throughout the library.
using Vector = Eigen::VectorXd;

inline bool all_finite(const Vector& v) { return v.allFinite(); }

/// Thrown when an objective (or gradient) evaluation produces a non-finite
/// value. Carries the offending query point for diagnosis.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(std::string what, Vector point)
        : std::runtime_error(std::move(what)), point_(std::move(point)) {}

    const Vector& point() const { return point_; }

private:
    Vector point_;
};

inline void require_same_dim(const Vector& a, const Vector& b, const char* where) {
    if (a.size() != b.size()) {
        std::ostringstream oss;
        oss << where << ": dimension mismatch (" << a.size() << " vs " << b.size() << ")";
        throw std::invalid_argument(oss.str());
    }
}

inline double checked_eval(const std::function<double(const Vector&)>& f, const Vector& x,
                           const char* what = "objective") {
    const double v = f(x);
    if (!std::isfinite(v)) {
        throw EvaluationError(std::string(what) + " evaluation returned a non-finite value", x);
    }
    return v;
}

}  // namespace zomin
