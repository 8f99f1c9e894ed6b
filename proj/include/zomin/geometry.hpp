#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "zomin/vector.hpp"

namespace zomin {

/// Convex feasible region with an exact Euclidean projection.
///
/// Supported kinds: the whole space, axis-aligned boxes, l2 balls and l1
/// balls. Projection is idempotent and the identity on feasible points;
/// diameter() reports +inf for the whole space.
class FeasibleSet {
public:
    enum class Kind { WholeSpace, Box, L2Ball, L1Ball };

    static FeasibleSet whole_space() { return FeasibleSet(Kind::WholeSpace); }

    static FeasibleSet box(Vector lower, Vector upper) {
        require_same_dim(lower, upper, "FeasibleSet::box");
        if ((lower.array() > upper.array()).any()) {
            throw std::invalid_argument("FeasibleSet::box: lower > upper in some coordinate");
        }
        FeasibleSet s(Kind::Box);
        s.lo_ = std::move(lower);
        s.hi_ = std::move(upper);
        return s;
    }

    static FeasibleSet l2_ball(Vector center, double radius) {
        if (!(radius > 0)) throw std::invalid_argument("FeasibleSet::l2_ball: radius must be > 0");
        FeasibleSet s(Kind::L2Ball);
        s.center_ = std::move(center);
        s.radius_ = radius;
        return s;
    }

    static FeasibleSet l1_ball(Vector center, double radius) {
        if (!(radius > 0)) throw std::invalid_argument("FeasibleSet::l1_ball: radius must be > 0");
        FeasibleSet s(Kind::L1Ball);
        s.center_ = std::move(center);
        s.radius_ = radius;
        return s;
    }

    Kind kind() const { return kind_; }
    double radius() const { return radius_; }
    const Vector& lower() const { return lo_; }
    const Vector& upper() const { return hi_; }
    const Vector& center() const { return center_; }

    /// Ambient dimension, or -1 for the dimension-agnostic whole space.
    Eigen::Index dimension() const {
        switch (kind_) {
            case Kind::WholeSpace: return -1;
            case Kind::Box: return lo_.size();
            default: return center_.size();
        }
    }

    Vector project(const Vector& z) const {
        check_dim(z);
        switch (kind_) {
            case Kind::WholeSpace:
                return z;
            case Kind::Box:
                return z.cwiseMax(lo_).cwiseMin(hi_);
            case Kind::L2Ball: {
                const Vector d = z - center_;
                const double nrm = d.norm();
                if (nrm <= radius_) return z;
                return center_ + d * (radius_ / nrm);
            }
            case Kind::L1Ball:
                return center_ + project_l1(z - center_, radius_);
        }
        throw std::logic_error("FeasibleSet::project: unreachable");
    }

    bool contains(const Vector& z, double tol = 1e-12) const {
        check_dim(z);
        switch (kind_) {
            case Kind::WholeSpace: return true;
            case Kind::Box:
                return ((z - lo_).array() >= -tol).all() && ((hi_ - z).array() >= -tol).all();
            case Kind::L2Ball: return (z - center_).norm() <= radius_ + tol;
            case Kind::L1Ball: return (z - center_).lpNorm<1>() <= radius_ + tol;
        }
        return false;
    }

    /// Supremum of pairwise distances; +inf when unbounded.
    double diameter() const {
        switch (kind_) {
            case Kind::WholeSpace: return std::numeric_limits<double>::infinity();
            case Kind::Box: return (hi_ - lo_).norm();
            case Kind::L2Ball: return 2.0 * radius_;
            case Kind::L1Ball: return 2.0 * radius_;
        }
        return std::numeric_limits<double>::quiet_NaN();
    }

private:
    explicit FeasibleSet(Kind k) : kind_(k) {}

    void check_dim(const Vector& z) const {
        const Eigen::Index d = dimension();
        if (d >= 0 && z.size() != d) {
            throw std::invalid_argument("FeasibleSet: point dimension does not match the set");
        }
    }

    // Sort-and-threshold projection onto the l1 ball of the given radius
    // centred at the origin. O(n log n); ties broken by coordinate index so
    // results are deterministic.
    static Vector project_l1(const Vector& v, double radius) {
        if (v.lpNorm<1>() <= radius) return v;
        const Eigen::Index n = v.size();
        std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            const double va = std::abs(v[a]), vb = std::abs(v[b]);
            if (va != vb) return va > vb;
            return a < b;
        });
        double cumsum = 0.0;
        double tau = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            const double vk = std::abs(v[order[static_cast<std::size_t>(k)]]);
            cumsum += vk;
            const double cand = (cumsum - radius) / static_cast<double>(k + 1);
            if (cand >= vk && k > 0) {
                break;  // vk no longer active; keep previous tau
            }
            tau = cand;
        }
        Vector out(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double mag = std::abs(v[i]) - tau;
            out[i] = mag > 0 ? (v[i] > 0 ? mag : -mag) : 0.0;
        }
        return out;
    }

    Kind kind_;
    Vector lo_, hi_, center_;
    double radius_ = 0.0;
};

/// Projected-gradient surrogate (x - Proj(x - a*g)) / a. Vanishes exactly at
/// points where the projected step is a fixed point; equals g on the whole
/// space and whenever x - a*g stays feasible.
inline Vector gradient_mapping(const Vector& x, const Vector& g, double a, const FeasibleSet& set) {
    require_same_dim(x, g, "gradient_mapping");
    if (!(a > 0)) throw std::invalid_argument("gradient_mapping: a must be > 0");
    return (x - set.project(x - a * g)) / a;
}

}  // namespace zomin
