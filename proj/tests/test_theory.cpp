#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "zomin/random.hpp"
#include "zomin/theory.hpp"

using namespace zomin;
using Catch::Approx;

namespace {

ProblemConstants base_constants() {
    ProblemConstants c;
    c.L1 = 1.0;
    c.gamma = 1.0;
    c.n = 1;
    c.R = 1.0;
    c.eps = 0.1;
    return c;
}

constexpr Regime kAllRegimes[] = {Regime::QcUnconstrained, Regime::SqcUnconstrained,
                                  Regime::SqcDistance, Regime::QcConstrained,
                                  Regime::SqcConstrained};

// Moderately conditioned bundles: the constrained batch prescriptions scale
// like 1/(q^2 eps^2) and overflow any integer count for extreme constants.
ProblemConstants random_bundle(RandomStream& stream) {
    ProblemConstants c;
    c.L1 = std::exp(stream.uniform(std::log(0.3), std::log(3.0)));
    c.gamma = stream.uniform(0.3, 1.0);
    c.beta = std::exp(stream.uniform(std::log(0.3), std::log(3.0)));
    c.n = 1 + static_cast<long>(stream.uniform(0.0, 20.0));
    c.R = std::exp(stream.uniform(std::log(0.1), std::log(10.0)));
    c.dX = std::exp(stream.uniform(std::log(0.5), std::log(10.0)));
    c.sigma = std::exp(stream.uniform(std::log(0.1), std::log(2.0)));
    c.eps = std::exp(stream.uniform(std::log(1e-2), std::log(1.0)));
    c.t = 1 + static_cast<long>(stream.uniform(0.0, 63.0));
    c.mu = 0.0;
    return c;
}

}  // namespace

TEST_CASE("default step sizes") {
    ProblemConstants c = base_constants();
    REQUIRE(default_step(Regime::QcUnconstrained, c) == Approx(0.05));
    REQUIRE(default_step(Regime::QcConstrained, c) == Approx(0.05));

    c.beta = 10.0;
    REQUIRE(default_step(Regime::SqcUnconstrained, c, 1.0) == Approx(0.1));
    REQUIRE(default_step(Regime::SqcUnconstrained, c) == Approx(0.09));

    c.beta = 0.0;
    REQUIRE_THROWS_AS(default_step(Regime::SqcUnconstrained, c), std::invalid_argument);
}

TEST_CASE("quasar-regime hyperparameters match the printed arithmetic") {
    ProblemConstants c = base_constants();
    const Hyperparameters hp = hyperparameters(Regime::QcUnconstrained, c);
    REQUIRE(hp.N_min == 199);
    REQUIRE(hp.t_min == 1);
    REQUIRE(hp.mu_max == Approx(std::sqrt(0.1 / 25.15)).margin(1e-12));

    c.eps = 0.01;
    REQUIRE(hyperparameters(Regime::QcUnconstrained, c).N_min == 1999);
}

TEST_CASE("constrained batch requirement") {
    ProblemConstants c = base_constants();
    c.dX = 1.0;
    c.sigma = 1.0;
    c.eps = 1.0;
    const Hyperparameters hp = hyperparameters(Regime::QcConstrained, c);
    REQUIRE(hp.t_min == 16);
}

TEST_CASE("bound values at hand-checked points") {
    SECTION("averaged-gap bound with vanished smoothing terms") {
        ProblemConstants c = base_constants();
        c.mu = 0.0;
        REQUIRE(theorem_bound(Regime::QcUnconstrained, c, 19) == Approx(1.0));
    }
    SECTION("strong-regime bound, first term only") {
        ProblemConstants c = base_constants();
        c.beta = 1.0;
        c.h = 0.05;
        c.mu = 0.0;
        REQUIRE(theorem_bound(Regime::SqcUnconstrained, c, 0) == Approx(19.0));
    }
    SECTION("constrained residual variance term") {
        ProblemConstants c = base_constants();
        c.mu = 0.0;
        c.dX = 1.0;
        c.sigma = 1.0;
        c.t = 4;
        // Large N so the initialisation term is negligible.
        REQUIRE(theorem_bound(Regime::QcConstrained, c, 4000000000LL) == Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("bound monotonicity in N, mu and t") {
    RandomStream stream = make_stream(61);
    for (int rep = 0; rep < 200; ++rep) {
        ProblemConstants c = random_bundle(stream);
        for (Regime regime : kAllRegimes) {
            if (is_strong(regime)) c.h = default_step(regime, c);
            c.mu = 0.01;
            const double b1 = theorem_bound(regime, c, 10);
            const double b2 = theorem_bound(regime, c, 100);
            REQUIRE(b2 <= b1 * (1 + 1e-12));

            c.mu = 0.02;
            REQUIRE(theorem_bound(regime, c, 10) >= b1);

            if (is_constrained(regime)) {
                ProblemConstants more = c;
                more.t = c.t * 4;
                REQUIRE(theorem_bound(regime, more, 10) <= theorem_bound(regime, c, 10) * (1 + 1e-12));
            }
        }
    }
}

TEST_CASE("distance bound equals the gap bound over the quadratic growth constant") {
    RandomStream stream = make_stream(62);
    for (int rep = 0; rep < 500; ++rep) {
        ProblemConstants c = random_bundle(stream);
        c.h = default_step(Regime::SqcDistance, c);
        c.mu = 0.3 * hyperparameters(Regime::SqcUnconstrained, c).mu_max;
        const double growth = pl_qg_constants(c.gamma, c.beta, c.L1).second;
        const double gap = theorem_bound(Regime::SqcUnconstrained, c, 25);
        const double dist = theorem_bound(Regime::SqcDistance, c, 25);
        REQUIRE(dist == Approx(gap / growth).epsilon(1e-12));
    }
}

// The printed prescriptions control each bound term separately: the
// mu-dependent terms stay below eps/2 in the unconstrained regimes (exactly
// eps in the constrained ones, whose mu bound solves a*mu^2 + b*mu = eps),
// the variance term stays below its budget, and the initialisation term
// stays below eps. The whole right-hand side therefore lands within a small
// constant multiple of eps, tight when the ceilings bind.
TEST_CASE("hyperparameter plug-back meets per-term budgets") {
    RandomStream stream = make_stream(63);
    for (int rep = 0; rep < 1000; ++rep) {
        ProblemConstants c = random_bundle(stream);
        for (Regime regime : kAllRegimes) {
            if (is_strong(regime)) c.h = default_step(regime, c);
            const Hyperparameters hp = hyperparameters(regime, c);
            ProblemConstants plugged = c;
            plugged.mu = hp.mu_max;
            plugged.t = hp.t_min;

            ProblemConstants mu_only = plugged;
            mu_only.R = 1e-30;  // suppress the initialisation term
            mu_only.sigma = is_constrained(regime) ? 1e-30 : mu_only.sigma;
            const double mu_terms = theorem_bound(regime, mu_only, hp.N_min);
            const double mu_budget = is_constrained(regime) ? c.eps : 0.5 * c.eps;
            REQUIRE(mu_terms <= mu_budget * (1 + 1e-9));

            const double total = theorem_bound(regime, plugged, hp.N_min);
            const double cap = is_constrained(regime)
                                   ? (regime == Regime::QcConstrained ? 1.75 : 3.0)
                                   : 1.5;
            REQUIRE(total <= cap * c.eps * (1 + 1e-9));
        }
    }
}

TEST_CASE("PL and quadratic growth constants") {
    const auto [pl1, qg1] = pl_qg_constants(1.0, 2.0, 1.0);
    REQUIRE(pl1 == Approx(1.0));
    REQUIRE(qg1 == Approx(0.5));

    const auto [pl2, qg2] = pl_qg_constants(1.0, 2.0, 3.0);
    REQUIRE(pl2 == Approx(1.0 / 3.0));
    REQUIRE(qg2 == Approx(1.0 / 6.0));

    REQUIRE_THROWS_AS(pl_qg_constants(0.0, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("validation failures") {
    ProblemConstants c = base_constants();
    SECTION("infinite diameter rejected in constrained regimes") {
        c.sigma = 1.0;
        REQUIRE_THROWS_AS(hyperparameters(Regime::QcConstrained, c), std::invalid_argument);
    }
    SECTION("nonpositive strong denominator rejected") {
        c.beta = 1.0;
        c.h = 1.0;  // gamma - 2(n+4)L1 h < 0
        c.mu = 0.0;
        REQUIRE_THROWS_AS(theorem_bound(Regime::SqcUnconstrained, c, 10), std::invalid_argument);
    }
    SECTION("gamma above one rejected") {
        c.gamma = 1.5;
        REQUIRE_THROWS_AS(default_step(Regime::QcUnconstrained, c), std::invalid_argument);
    }
    SECTION("counts beyond the 64-bit range are reported, not wrapped") {
        c.beta = 0.1;
        c.gamma = 0.05;
        c.L1 = 10.0;
        c.n = 40;
        c.dX = 50.0;
        c.sigma = 10.0;
        c.eps = 1e-4;
        c.h = default_step(Regime::SqcConstrained, c);
        REQUIRE_THROWS_AS(hyperparameters(Regime::SqcConstrained, c), std::domain_error);
    }
    SECTION("regime tags round-trip") {
        for (Regime regime : kAllRegimes) REQUIRE(parse_regime(to_string(regime)) == regime);
        REQUIRE_THROWS_AS(parse_regime("qc"), std::invalid_argument);
    }
}
