#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "degenzeta/kernel.hpp"

using namespace degenzeta;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("DegenParam validates its domain") {
    CHECK_THROWS_AS(DegenParam::strict(0.0), std::domain_error);
    CHECK_THROWS_AS(DegenParam::strict(1.5), std::domain_error);
    CHECK_THROWS_AS(DegenParam::strict(-0.3), std::domain_error);
    CHECK_THROWS_AS(DegenParam::extended(0.0), std::domain_error);
    CHECK_NOTHROW(DegenParam::strict(1.0));
    CHECK_NOTHROW(DegenParam::extended(-2.5));
    CHECK(DegenParam::strict(0.5).is_strict());
}

TEST_CASE("factorial primitives match direct products") {
    const DegenParam half = DegenParam::strict(0.5);

    CHECK(falling_factorial(5.0, 0, half) == 1.0);
    CHECK_THAT(falling_factorial(1.0, 2, half), WithinAbs(0.5, 1e-15));
    CHECK_THAT(falling_factorial(2.0, 3, half), WithinAbs(3.0, 1e-15));

    CHECK(rising_factorial(3.0, 0, DegenParam::strict(0.2)) == 1.0);
    CHECK_THAT(rising_factorial(1.0, 3, half), WithinAbs(3.0, 1e-15));
    CHECK_THAT(rising_factorial(2.0, 2, DegenParam::strict(0.25)), WithinAbs(4.5, 1e-15));

    CHECK(generalized_binomial(0.7, 0) == 1.0);
    CHECK_THAT(generalized_binomial(1.5, 1), WithinAbs(1.5, 1e-15));
    CHECK_THAT(generalized_binomial(2.5, 2), WithinAbs(1.875, 1e-15));

    CHECK_THAT(degenerate_binomial(1.0, 2, half), WithinAbs(0.25, 1e-15));
    CHECK(degenerate_binomial(4.0, 0, DegenParam::strict(0.3)) == 1.0);
    CHECK_THAT(degenerate_binomial(1.0, 1, DegenParam::strict(0.9)), WithinAbs(1.0, 1e-15));
}

TEST_CASE("factorial step law holds over random arguments") {
    std::mt19937 rng(20240511);
    std::uniform_real_distribution<double> xs(-5.0, 5.0);
    std::uniform_real_distribution<double> ls(0.05, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = xs(rng);
        const DegenParam lam = DegenParam::strict(ls(rng));
        const std::size_t n = static_cast<std::size_t>(trial % 12);
        const double step =
            falling_factorial(x, n, lam) * (x - static_cast<double>(n) * lam.value());
        const double full = falling_factorial(x, n + 1, lam);
        CHECK_THAT(full, WithinAbs(step, 4.0 * (n + 1) * 1e-16 * (std::fabs(step) + 1.0)));

        const double rstep =
            rising_factorial(x, n, lam) * (x + static_cast<double>(n) * lam.value());
        CHECK_THAT(rising_factorial(x, n + 1, lam),
                   WithinAbs(rstep, 4.0 * (n + 1) * 1e-16 * (std::fabs(rstep) + 1.0)));
    }
}

TEST_CASE("rising/falling duality <x>_{n,l} = (-1)^n (-x)_{n,l}") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> xs(-4.0, 4.0);
    std::uniform_real_distribution<double> ls(-1.5, 1.5);
    for (int trial = 0; trial < 300; ++trial) {
        double lv = ls(rng);
        if (std::fabs(lv) < 1e-3) lv = 0.7;
        const DegenParam lam = DegenParam::extended(lv);
        const double x = xs(rng);
        const std::size_t n = static_cast<std::size_t>(trial % 21);
        const double lhs = rising_factorial(x, n, lam);
        const double rhs = (n % 2 == 0 ? 1.0 : -1.0) * falling_factorial(-x, n, lam);
        if (std::fabs(rhs) > 1e-8) {
            CHECK_THAT(lhs, WithinRel(rhs, 1e-12));
        } else {
            CHECK_THAT(lhs, WithinAbs(rhs, 1e-12));
        }
    }
}

TEST_CASE("coefficient table matches the spec examples") {
    CHECK(coeff_prefix(1, DegenParam::strict(0.5)).c(1) == 1.0);

    const CoefficientTable t2 = coeff_prefix(2, DegenParam::strict(0.5));
    CHECK(t2.c(1) == 1.0);
    CHECK_THAT(t2.c(2), WithinAbs(0.5, 1e-16));

    // direct product oracle prod_{j<n}(j - lambda)/(n-1)!
    const CoefficientTable t4 = coeff_prefix(4, DegenParam::strict(0.5));
    const double expected[] = {1.0, 0.5, 0.375, 0.3125};
    for (std::size_t n = 1; n <= 4; ++n) CHECK_THAT(t4.c(n), WithinAbs(expected[n - 1], 1e-15));

    CHECK_THROWS_AS(coeff_prefix(0, DegenParam::strict(0.5)), std::invalid_argument);
}

TEST_CASE("coefficients agree with the literal definition") {
    // c_n = (-1)^{n-1} lambda^{n-1} (1)_{n,1/lambda} / (n-1)!
    for (double lambda : {0.1, 0.5, 0.9}) {
        const CoefficientTable table = coeff_prefix(20, DegenParam::strict(lambda));
        const DegenParam inv = DegenParam::extended(1.0 / lambda);
        double factorial = 1.0;
        for (std::size_t n = 1; n <= 20; ++n) {
            if (n > 1) factorial *= static_cast<double>(n - 1);
            const double literal = (n % 2 == 1 ? 1.0 : -1.0) *
                                   std::pow(lambda, static_cast<double>(n - 1)) *
                                   falling_factorial(1.0, n, inv) / factorial;
            CHECK_THAT(table.c(n), WithinRel(literal, 1e-12));
        }
    }
}

TEST_CASE("lambda = 1 collapses the coefficients exactly") {
    const CoefficientTable table = coeff_prefix(40, DegenParam::strict(1.0));
    CHECK(table.c(1) == 1.0);
    for (std::size_t n = 2; n <= 40; ++n) CHECK(table.c(n) == 0.0);
}

TEST_CASE("strict-mode coefficients are non-increasing in [0,1]") {
    for (double lambda : {0.05, 0.3, 0.6, 0.95, 1.0}) {
        const CoefficientTable table = coeff_prefix(200, DegenParam::strict(lambda));
        for (std::size_t n = 1; n < 200; ++n) {
            CHECK(table.c(n + 1) <= table.c(n));
            CHECK(table.c(n + 1) >= 0.0);
            CHECK(table.c(n) <= 1.0);
        }
    }
}

TEST_CASE("coefficient stream matches the table") {
    const CoefficientTable table = coeff_prefix(64, DegenParam::strict(0.37));
    detail::CoeffStream cs(0.37);
    for (std::size_t n = 1; n <= 64; ++n) {
        CHECK(cs.current() == table.c(n));
        cs.advance();
    }
}
