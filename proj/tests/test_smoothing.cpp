#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "zomin/problems/hard_quasar.hpp"
#include "zomin/smoothing.hpp"

using namespace zomin;
using Catch::Approx;

namespace {

const Objective first_coordinate = [](const Vector& x) { return x[0]; };
const Objective half_norm_sq = [](const Vector& x) { return 0.5 * x.squaredNorm(); };

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("single oracle is exact for linear objectives") {
    const Vector x = Vector::Zero(2);
    const Vector u = vec2(1, 1);
    for (double mu : {1e-6, 0.1, 2.0}) {
        const Vector g = zo_oracle_single(first_coordinate, x, mu, u);
        REQUIRE(g[0] == Approx(1.0).margin(1e-9));
        REQUIRE(g[1] == Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("single oracle hand value on the quadratic") {
    const Vector g = zo_oracle_single(half_norm_sq, vec2(1, 0), 2.0, vec2(0, 1));
    REQUIRE(g[0] == 0.0);
    REQUIRE(g[1] == Approx(1.0));
}

TEST_CASE("single oracle vanishes on constants") {
    const Objective constant = [](const Vector&) { return 3.25; };
    RandomStream stream = make_stream(5);
    const Vector u = sample_standard_normal(stream, 4);
    REQUIRE(zo_oracle_single(constant, Vector::Ones(4), 0.37, u).norm() == 0.0);
}

TEST_CASE("single oracle reports non-finite evaluations") {
    const Objective bad = [](const Vector& x) { return x[0] > 0.5 ? std::nan("") : 0.0; };
    const Vector x = Vector::Zero(1);
    Vector u(1);
    u << 100.0;
    REQUIRE_THROWS_AS(zo_oracle_single(bad, x, 0.1, u), EvaluationError);
    try {
        zo_oracle_single(bad, x, 0.1, u);
    } catch (const EvaluationError& e) {
        REQUIRE(e.point().size() == 1);
        REQUIRE(e.point()[0] == Approx(10.0));  // the offending query x + mu*u
    }
}

TEST_CASE("batch of one equals the single oracle on the next draw") {
    const Vector x = vec2(0.3, -1.2);
    RandomStream a = make_stream(77);
    RandomStream b = make_stream(77);
    const Vector u = sample_standard_normal(a, 2);
    const Vector single = zo_oracle_single(half_norm_sq, x, 0.05, u);
    const Vector batch = zo_oracle_batch(half_norm_sq, x, {0.05, 1}, b);
    REQUIRE((single - batch).norm() == 0.0);
}

TEST_CASE("batch oracle is deterministic per seed") {
    const Vector x = vec2(0.5, 0.25);
    RandomStream a = make_stream(123);
    RandomStream b = make_stream(123);
    const Vector g1 = zo_oracle_batch(half_norm_sq, x, {1e-3, 8}, a);
    const Vector g2 = zo_oracle_batch(half_norm_sq, x, {1e-3, 8}, b);
    REQUIRE((g1 - g2).norm() == 0.0);
}

TEST_CASE("batch mean approaches the gradient of a linear objective") {
    // E[(c^T u) u] = c for standard normal u.
    constexpr long kDraws = 10000;
    const Vector x = vec2(2.0, -1.0);
    RandomStream stream = make_stream(31);
    Vector mean = Vector::Zero(2), m2 = Vector::Zero(2);
    for (long i = 0; i < kDraws; ++i) {
        const Vector g = zo_oracle_batch(first_coordinate, x, {1e-4, 1}, stream);
        const Vector delta = g - mean;
        mean += delta / static_cast<double>(i + 1);
        m2.array() += delta.array() * (g - mean).array();
    }
    for (int j = 0; j < 2; ++j) {
        const double se = std::sqrt(m2[j] / (kDraws - 1.0) / kDraws);
        const double target = j == 0 ? 1.0 : 0.0;
        REQUIRE(std::abs(mean[j] - target) < 3.0 * se);
    }
}

TEST_CASE("batch variance follows the 1/t law") {
    const Vector x = vec2(1.0, 1.0);
    RandomStream stream = make_stream(404);
    constexpr long kReps = 4000;

    double v1 = 0.0;
    for (long t : {1L, 4L, 16L, 64L}) {
        const MonteCarloEstimate est = estimate_sigma_squared(half_norm_sq, x, {1e-4, t}, kReps, stream);
        if (t == 1) {
            v1 = est.mean;
            continue;
        }
        const double expected = v1 / static_cast<double>(t);
        REQUIRE(est.mean < 1.5 * expected);
        REQUIRE(est.mean > expected / 1.5);
    }
}

TEST_CASE("smoothed value of a constant is the constant") {
    const Objective constant = [](const Vector&) { return -2.5; };
    RandomStream stream = make_stream(8);
    const MonteCarloEstimate est = estimate_f_mu(constant, Vector::Ones(3), 0.2, 100, stream);
    REQUIRE(est.mean == -2.5);
    REQUIRE(est.std_error == 0.0);
    REQUIRE(est.samples == 100);
}

TEST_CASE("smoothing shift of the quadratic is mu^2 n / 2") {
    // Gaussian convolution of ||x||^2/2 adds exactly mu^2 n / 2.
    RandomStream stream = make_stream(15);
    const MonteCarloEstimate est = estimate_f_mu(half_norm_sq, Vector::Zero(5), 0.1, 100000, stream);
    REQUIRE(std::abs(est.mean - 0.025) < 3.0 * est.std_error);
}

TEST_CASE("smoothing bias at the hard function minimum stays within budget") {
    const Problem hard = problems::hard_quasar(20, 1e-6);
    RandomStream stream = make_stream(16);
    const double mu = 1e-4;
    const MonteCarloEstimate est = estimate_f_mu(hard.eval, Vector::Ones(20), mu, 100000, stream);
    const double budget = 0.5 * mu * mu * 3.0 * 20.0;  // mu^2 L1 n / 2 with L1 = 3
    REQUIRE(est.mean >= -3.0 * est.std_error);
    REQUIRE(est.mean <= budget + 3.0 * est.std_error);
}

TEST_CASE("oracle variance of a constant objective is zero") {
    const Objective constant = [](const Vector&) { return 1.0; };
    RandomStream stream = make_stream(21);
    const MonteCarloEstimate est = estimate_sigma_squared(constant, Vector::Zero(3), {0.5, 1}, 1000, stream);
    REQUIRE(est.mean == 0.0);
}

TEST_CASE("oracle variance of a linear objective matches the moment value") {
    // For f(x) = x_1 in dimension n: E||g - E g||^2 = (n + 2) - 2 + 1 = n + 1.
    RandomStream stream = make_stream(22);
    const MonteCarloEstimate est =
        estimate_sigma_squared(first_coordinate, Vector::Zero(3), {1e-5, 1}, 200000, stream);
    REQUIRE(std::abs(est.mean - 4.0) < 3.0 * est.std_error);
}

TEST_CASE("oracle variance stays below the Lipschitz-gradient candidate bound") {
    const Vector x = vec2(1.5, -0.5);
    const double mu = 0.05;
    RandomStream stream = make_stream(23);
    const MonteCarloEstimate est = estimate_sigma_squared(half_norm_sq, x, {mu, 1}, 100000, stream);
    const double n = 2.0, L1 = 1.0;
    const double bound = 0.5 * mu * mu * L1 * L1 * std::pow(n + 6.0, 3) +
                         2.0 * (n + 4.0) * x.squaredNorm();  // ||grad f(x)||^2 = ||x||^2
    REQUIRE(est.mean <= bound + 3.0 * est.std_error);
}

TEST_CASE("two-estimator unbiasedness agreement per coordinate") {
    // Mean single oracle vs mean gradient at Gaussian-perturbed points; both
    // estimate the smoothed gradient, so their z-distance stays small.
    constexpr long kDraws = 100000;
    const double mu = 0.05;
    const Vector x = vec2(0.7, -0.3);
    RandomStream stream = make_stream(24);

    Vector mean_a = Vector::Zero(2), m2_a = Vector::Zero(2);
    Vector mean_b = Vector::Zero(2), m2_b = Vector::Zero(2);
    for (long i = 0; i < kDraws; ++i) {
        const Vector g = zo_oracle_single(half_norm_sq, x, mu, sample_standard_normal(stream, 2));
        const Vector d = g - mean_a;
        mean_a += d / static_cast<double>(i + 1);
        m2_a.array() += d.array() * (g - mean_a).array();
    }
    for (long i = 0; i < kDraws; ++i) {
        const Vector g = x + mu * sample_standard_normal(stream, 2);  // gradient of the quadratic
        const Vector d = g - mean_b;
        mean_b += d / static_cast<double>(i + 1);
        m2_b.array() += d.array() * (g - mean_b).array();
    }
    for (int j = 0; j < 2; ++j) {
        const double se2 = m2_a[j] / ((kDraws - 1.0) * kDraws) + m2_b[j] / ((kDraws - 1.0) * kDraws);
        const double z = std::abs(mean_a[j] - mean_b[j]) / std::sqrt(se2);
        REQUIRE(z < 4.0);
    }
}

TEST_CASE("smoothing input validation") {
    RandomStream stream = make_stream(1);
    REQUIRE_THROWS_AS(zo_oracle_single(half_norm_sq, vec2(0, 0), -1.0, vec2(1, 0)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(zo_oracle_single(half_norm_sq, vec2(0, 0), 1.0, Vector::Ones(3)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(zo_oracle_batch(half_norm_sq, vec2(0, 0), {0.1, 0}, stream),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(estimate_f_mu(half_norm_sq, vec2(0, 0), 0.1, 1, stream), std::invalid_argument);
}
