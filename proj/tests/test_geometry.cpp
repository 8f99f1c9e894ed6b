#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "zomin/geometry.hpp"
#include "zomin/random.hpp"

using namespace zomin;
using Catch::Approx;

namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

// Exhaustive grid search for the nearest feasible point; the independent
// oracle the closed-form projections are checked against.
Vector brute_force_project(const FeasibleSet& set, const Vector& z, double lo, double hi, int steps) {
    REQUIRE(z.size() == 2);
    Vector best = vec2(0, 0);
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) {
        for (int j = 0; j <= steps; ++j) {
            Vector cand = vec2(lo + (hi - lo) * i / steps, lo + (hi - lo) * j / steps);
            if (!set.contains(cand, 1e-9)) continue;
            const double dist = (cand - z).squaredNorm();
            if (dist < best_dist) {
                best_dist = dist;
                best = cand;
            }
        }
    }
    return best;
}

FeasibleSet sample_set(int kind, Eigen::Index dim) {
    switch (kind) {
        case 0: return FeasibleSet::whole_space();
        case 1: return FeasibleSet::box(Vector::Constant(dim, -1.0), Vector::Constant(dim, 2.0));
        case 2: return FeasibleSet::l2_ball(Vector::Zero(dim), 1.5);
        default: return FeasibleSet::l1_ball(Vector::Zero(dim), 2.0);
    }
}

}  // namespace

TEST_CASE("projection fixed points") {
    const auto set = FeasibleSet::box(vec2(-1, -1), vec2(1, 1));
    const Vector inside = vec2(0.3, -0.9);
    REQUIRE(set.project(inside) == inside);
    REQUIRE(FeasibleSet::whole_space().project(inside) == inside);
}

TEST_CASE("box projection clamps coordinates") {
    const auto set = FeasibleSet::box(vec2(-1, -1), vec2(1, 1));
    const Vector p = set.project(vec2(2.0, 0.5));
    REQUIRE(p[0] == 1.0);
    REQUIRE(p[1] == 0.5);

    const Vector oracle = brute_force_project(set, vec2(2.0, 0.5), -1.0, 1.0, 400);
    REQUIRE((p - oracle).norm() < 1e-2);
}

TEST_CASE("l1 projection soft-thresholds") {
    const auto set = FeasibleSet::l1_ball(Vector::Zero(2), 1.0);
    const Vector p = set.project(vec2(2.0, 1.0));
    REQUIRE(p[0] == Approx(1.0).margin(1e-12));
    REQUIRE(p[1] == Approx(0.0).margin(1e-12));

    const Vector oracle = brute_force_project(set, vec2(2.0, 1.0), -1.0, 1.0, 400);
    REQUIRE((p - oracle).norm() < 1e-2);
}

TEST_CASE("l2 projection rescales radially") {
    const auto set = FeasibleSet::l2_ball(Vector::Zero(2), 1.0);
    const Vector p = set.project(vec2(3.0, 4.0));
    REQUIRE(p.norm() == Approx(1.0));
    REQUIRE(p[0] == Approx(0.6));
    REQUIRE(p[1] == Approx(0.8));
}

TEST_CASE("projection properties on random pairs") {
    RandomStream stream = make_stream(11);
    constexpr Eigen::Index dim = 6;
    for (int kind = 0; kind < 4; ++kind) {
        const FeasibleSet set = sample_set(kind, dim);
        for (int i = 0; i < 10000; ++i) {
            const Vector z1 = 3.0 * sample_standard_normal(stream, dim);
            const Vector z2 = 3.0 * sample_standard_normal(stream, dim);
            const Vector p1 = set.project(z1);
            const Vector p2 = set.project(z2);

            // non-expansiveness
            REQUIRE((p1 - p2).norm() <= (z1 - z2).norm() + 1e-12);
            // idempotence
            REQUIRE((set.project(p1) - p1).norm() <= 1e-12);
            REQUIRE(set.contains(p1, 1e-9));
        }
    }
}

TEST_CASE("projection optimality certificate") {
    RandomStream stream = make_stream(12);
    constexpr Eigen::Index dim = 4;
    for (int kind = 1; kind < 4; ++kind) {
        const FeasibleSet set = sample_set(kind, dim);
        for (int i = 0; i < 10; ++i) {
            const Vector z = 4.0 * sample_standard_normal(stream, dim);
            const Vector p = set.project(z);
            for (int j = 0; j < 1000; ++j) {
                const Vector y = set.project(2.0 * sample_standard_normal(stream, dim));
                REQUIRE((z - p).dot(y - p) <= 1e-9);
            }
        }
    }
}

TEST_CASE("diameters") {
    REQUIRE(FeasibleSet::l2_ball(Vector::Zero(3), 2.5).diameter() == 5.0);
    REQUIRE(FeasibleSet::box(Vector::Constant(4, -1.0), Vector::Constant(4, 1.0)).diameter() ==
            Approx(4.0));
    REQUIRE(std::isinf(FeasibleSet::whole_space().diameter()));
    REQUIRE(FeasibleSet::l1_ball(Vector::Zero(3), 2.0).diameter() == 4.0);
}

TEST_CASE("gradient mapping") {
    SECTION("whole space returns the input direction") {
        const Vector x = vec2(1, 2), g = vec2(-3, 0.5);
        for (double a : {0.1, 1.0, 10.0}) {
            REQUIRE((gradient_mapping(x, g, a, FeasibleSet::whole_space()) - g).norm() < 1e-15);
        }
    }
    SECTION("half-line at the boundary") {
        const auto set = FeasibleSet::box(Vector::Constant(1, 0.0),
                                          Vector::Constant(1, std::numeric_limits<double>::max()));
        Vector x(1), g(1);
        x << 0.0;
        g << 1.0;
        const Vector m = gradient_mapping(x, g, 0.5, set);
        REQUIRE(m[0] == 0.0);
    }
    SECTION("interior point with a small step returns g") {
        const auto set = FeasibleSet::l2_ball(Vector::Zero(2), 10.0);
        const Vector x = vec2(0.5, -0.5), g = vec2(1, 1);
        REQUIRE((gradient_mapping(x, g, 0.01, set) - g).norm() < 1e-12);
    }
    SECTION("vanishes exactly at projected fixed points") {
        const auto set = FeasibleSet::box(vec2(0, 0), vec2(1, 1));
        const Vector x = vec2(0.0, 0.0), g = vec2(3.0, 4.0);  // pushes outside, projects back to x
        const Vector m = gradient_mapping(x, g, 1.0, set);
        REQUIRE(m.norm() == 0.0);
    }
}

TEST_CASE("contract violations") {
    const auto set = FeasibleSet::box(vec2(-1, -1), vec2(1, 1));
    Vector z3(3);
    z3 << 1, 2, 3;
    REQUIRE_THROWS_AS(set.project(z3), std::invalid_argument);
    REQUIRE_THROWS_AS(FeasibleSet::box(vec2(1, 1), vec2(0, 0)), std::invalid_argument);
    REQUIRE_THROWS_AS(FeasibleSet::l2_ball(Vector::Zero(2), -1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(gradient_mapping(vec2(0, 0), vec2(1, 1), 0.0, set), std::invalid_argument);
}
