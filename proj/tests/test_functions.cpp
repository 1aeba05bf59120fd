#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "degenzeta/functions.hpp"

using namespace degenzeta;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// classical dilogarithm by direct series, test-only oracle
double classical_li2(double t) {
    double sum = 0.0, tp = 1.0;
    for (int n = 1; n <= 200; ++n) {
        tp *= t;
        sum += tp / (static_cast<double>(n) * n);
    }
    return sum;
}

} // namespace

TEST_CASE("degenerate exponential closed form") {
    CHECK_THAT(degenerate_exp(1.0, 1.0, DegenParam::strict(0.5)), WithinAbs(2.25, 1e-14));
    CHECK(degenerate_exp(3.0, 0.0, DegenParam::strict(0.7)) == 1.0);
    CHECK_THAT(degenerate_exp(1.0, 0.3, DegenParam::strict(1.0)), WithinAbs(1.3, 1e-15));
    CHECK_THROWS_AS(degenerate_exp(1.0, -2.0, DegenParam::strict(1.0)), std::domain_error);
}

TEST_CASE("degenerate logarithm closed form") {
    CHECK(degenerate_log1p(0.0, DegenParam::strict(0.4)) == 0.0);
    CHECK_THAT(degenerate_log1p(0.3, DegenParam::strict(1.0)), WithinAbs(0.3, 1e-15));
    // 2(sqrt(2)-1)
    CHECK_THAT(degenerate_log1p(1.0, DegenParam::strict(0.5)),
               WithinAbs(0.82842712474619009, 1e-12));
    // limit value at t = -1 in strict mode
    CHECK_THAT(degenerate_log1p(-1.0, DegenParam::strict(0.25)), WithinAbs(-4.0, 1e-15));
    CHECK_THROWS_AS(degenerate_log1p(-1.5, DegenParam::strict(0.5)), std::domain_error);
    CHECK_THROWS_AS(degenerate_log1p(-1.0, DegenParam::extended(-0.5)), std::domain_error);
}

TEST_CASE("inverse round-trip e_l(log_l(1+t)) = 1+t") {
    for (double t : {-0.9, -0.5, 0.0, 0.5, 2.0, 10.0}) {
        for (double lambda : {0.1, 0.5, 1.0}) {
            const DegenParam lam = DegenParam::strict(lambda);
            const double back = degenerate_exp(1.0, degenerate_log1p(t, lam), lam);
            CHECK_THAT(back, WithinRel(1.0 + t, 1e-12));
        }
    }
}

TEST_CASE("log series: examples and closed-form agreement") {
    const SeriesValue zero = degenerate_log1p_series(0.0, DegenParam::strict(0.5), 10);
    CHECK(zero.value == 0.0);
    CHECK(zero.tail_bound == 0.0);

    // lambda = 1 collapse: series is exactly t
    const SeriesValue collapsed = degenerate_log1p_series(0.5, DegenParam::strict(1.0), 5);
    CHECK(collapsed.value == 0.5);
    CHECK(collapsed.converged);

    const DegenParam half = DegenParam::strict(0.5);
    const SeriesValue sv = degenerate_log1p_series(0.5, half, 40);
    CHECK(sv.converged);
    CHECK_THAT(sv.value, WithinAbs(degenerate_log1p(0.5, half), sv.tail_bound + 1e-13));

    CHECK_THROWS_AS(degenerate_log1p_series(1.0, half, 10), std::domain_error);
    CHECK_THROWS_AS(degenerate_log1p_series(0.9, half, 3, 1e-14), non_convergence_error);
}

TEST_CASE("log series agrees with closed form over a grid") {
    for (double t = -0.85; t <= 0.86; t += 0.17) {
        for (double lambda : {0.05, 0.3, 0.55, 0.8, 1.0}) {
            const DegenParam lam = DegenParam::strict(lambda);
            const SeriesValue sv = degenerate_log1p_series(t, lam, 2000, 1e-13);
            REQUIRE(sv.converged);
            CHECK(sv.certified);
            CHECK_THAT(sv.value, WithinAbs(degenerate_log1p(t, lam), sv.tail_bound + 1e-13));
        }
    }
}

TEST_CASE("polylog: spec examples") {
    CHECK(polylog(3, 0.0, DegenParam::strict(0.5)).value == 0.0);

    // lambda = 1 collapse: only the n = 1 term survives
    const SeriesValue collapsed = polylog(2, 0.7, DegenParam::strict(1.0));
    CHECK_THAT(collapsed.value, WithinAbs(0.7, 1e-15));

    const SeriesValue li1 = polylog(1, 0.5, DegenParam::strict(0.5), 1e-11);
    CHECK_THAT(li1.value, WithinAbs(0.58578643762690495, li1.tail_bound + 1e-13));

    CHECK_THROWS_AS(polylog(0, 0.5, DegenParam::strict(0.5)), std::domain_error);
    CHECK_THROWS_AS(polylog(2, 1.5, DegenParam::strict(0.5)), std::domain_error);
    CHECK_THROWS_AS(polylog(2, -1.0, DegenParam::strict(0.5)), std::domain_error);
    CHECK_THROWS_AS(polylog(2, 1.0, DegenParam::extended(0.5)), std::domain_error);
    CHECK_THROWS_AS(polylog(2, 0.99, DegenParam::strict(0.5), 1e-14, 10),
                    non_convergence_error);
}

TEST_CASE("Li_1 equals -log_lambda(1-t) through the series route") {
    for (double t : {0.1, 0.35, 0.6, 0.85}) {
        for (double lambda : {0.2, 0.5, 0.8, 1.0}) {
            const DegenParam lam = DegenParam::strict(lambda);
            const SeriesValue sv = polylog(1, t, lam, 1e-12);
            CHECK(sv.terms_used > 0);  // series path, not the closed-form fallback
            CHECK_THAT(sv.value,
                       WithinAbs(-degenerate_log1p(-t, lam), sv.tail_bound + 1e-13));
        }
    }
}

TEST_CASE("derivative relation d/dx Li_p = Li_{p-1}/x by central differences") {
    const double h = 1e-5;
    for (int p : {2, 3}) {
        for (double lambda : {0.3, 0.7}) {
            const DegenParam lam = DegenParam::strict(lambda);
            for (double x : {0.2, 0.5, 0.8}) {
                const double up = polylog(p, x + h, lam, 1e-13).value;
                const double dn = polylog(p, x - h, lam, 1e-13).value;
                const double diff = (up - dn) / (2.0 * h);
                const double expected = polylog(p - 1, x, lam, 1e-13).value / x;
                CHECK_THAT(diff, WithinAbs(expected, 1e-6));
            }
        }
    }
}

TEST_CASE("endpoint identity Li_1(1) = 1/lambda") {
    for (double lambda : {0.25, 0.5, 0.75}) {
        const SeriesValue sv = polylog(1, 1.0, DegenParam::strict(lambda));
        CHECK_THAT(sv.value, WithinRel(1.0 / lambda, 1e-10));
        CHECK(sv.certified);
    }
}

TEST_CASE("polylog t = 1 endpoint is certified for p >= 2") {
    const SeriesValue sv = polylog(2, 1.0, DegenParam::strict(0.5), 1e-10);
    CHECK(sv.converged);
    CHECK(sv.certified);
    CHECK(sv.tail_bound <= 1e-10);
}

TEST_CASE("small-lambda polylog approaches the classical dilogarithm") {
    const SeriesValue sv = polylog(2, 0.5, DegenParam::strict(1e-4), 1e-10);
    CHECK_THAT(sv.value, WithinAbs(classical_li2(0.5), 5e-4));
}

TEST_CASE("alternating arguments use the first-omitted-term bound") {
    const DegenParam lam = DegenParam::strict(0.5);
    const SeriesValue neg = polylog(2, -0.5, lam, 1e-12);
    CHECK(neg.converged);
    CHECK(neg.certified);
    // reference by generous direct summation
    detail::KahanSum acc;
    detail::CoeffStream cs(0.5);
    double tp = 1.0;
    for (int n = 1; n <= 400; ++n) {
        tp *= -0.5;
        acc.add(cs.current() * tp / (static_cast<double>(n) * n));
        cs.advance();
    }
    CHECK_THAT(neg.value, WithinAbs(acc.total(), neg.tail_bound + 1e-14));
}

TEST_CASE("extended mode returns uncertified estimates") {
    const SeriesValue sv = polylog(2, 0.5, DegenParam::extended(-0.8), 1e-10);
    CHECK_FALSE(sv.certified);
    CHECK(sv.converged);
    // brute reference with growing coefficients
    detail::KahanSum acc;
    detail::CoeffStream cs(-0.8);
    double tp = 1.0;
    for (int n = 1; n <= 2000; ++n) {
        tp *= 0.5;
        acc.add(cs.current() * tp / (static_cast<double>(n) * n));
        cs.advance();
    }
    CHECK_THAT(sv.value, WithinAbs(acc.total(), 1e-9));
}

TEST_CASE("series values respect the converged contract") {
    const SeriesValue sv = polylog(3, 0.9, DegenParam::strict(0.3), 1e-9);
    CHECK(sv.converged);
    CHECK(sv.tail_bound <= 1e-9);
    CHECK(sv.terms_used > 0);
}
