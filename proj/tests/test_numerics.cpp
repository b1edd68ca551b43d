// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "swipt/numerics.hpp"

using namespace swipt::numerics;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
std::vector<double> log_grid(double lo, double hi, int points)
{
    std::vector<double> g;
    for (int i = 0; i < points; ++i)
        g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
    return g;
}
} // namespace

TEST_CASE("factorial small values", "[numerics]")
{
    CHECK(factorial(0) == 1.0);
    CHECK(factorial(1) == 1.0);
    CHECK(factorial(5) == 120.0);
    CHECK(factorial(20) == 2432902008176640000.0);
}

TEST_CASE("factorial matches iterated product and lgamma above 20", "[numerics]")
{
    double product = 1.0;
    for (unsigned n = 1; n <= 30; ++n)
    {
        product *= n;
        CHECK_THAT(factorial(n), WithinRel(product, 1e-15));
    }
    CHECK_THAT(factorial(170), WithinRel(std::exp(std::lgamma(171.0)), 1e-12));
    CHECK(std::isfinite(factorial(max_factorial_arg)));
    CHECK_THROWS_AS(factorial(171), std::overflow_error);
    CHECK_THAT(log_factorial(500), WithinRel(std::lgamma(501.0), 1e-14));
}

TEST_CASE("incomplete gamma trivial values", "[numerics]")
{
    CHECK(upper_incomplete_gamma_int(1, 0.0) == 1.0);
    CHECK(upper_incomplete_gamma_int(3, 0.0) == 2.0);
    CHECK(lower_incomplete_gamma_int(1, 0.0) == 0.0);
    CHECK_THAT(lower_incomplete_gamma_int(2, 700.0), WithinRel(1.0, 1e-15));
}

TEST_CASE("incomplete gamma against numeric integration", "[numerics]")
{
    // int_{1.5}^inf t e^-t dt = 2.5 e^-1.5
    CHECK_THAT(upper_incomplete_gamma_int(2, 1.5), WithinRel(oracle::upper_gamma(2, 1.5), 1e-12));
    CHECK_THAT(upper_incomplete_gamma_int(2, 1.5), WithinRel(2.5 * std::exp(-1.5), 1e-14));
    // int_0^2 t^2 e^-t dt = 2 - 10 e^-2
    CHECK_THAT(lower_incomplete_gamma_int(3, 2.0), WithinRel(oracle::lower_gamma(3, 2.0), 1e-12));
    CHECK_THAT(lower_incomplete_gamma_int(3, 2.0), WithinRel(2.0 - 10.0 * std::exp(-2.0), 1e-14));
}

TEST_CASE("incomplete gamma series vs oracle on a log grid", "[numerics]")
{
    for (int m = 1; m <= 8; ++m)
        for (double x : log_grid(1e-6, 1e2, 25))
        {
            INFO("m = " << m << ", x = " << x);
            CHECK_THAT(upper_incomplete_gamma_int(m, x), WithinRel(oracle::upper_gamma(m, x), 1e-9));
            CHECK_THAT(lower_incomplete_gamma_int(m, x), WithinRel(oracle::lower_gamma(m, x), 1e-9));
        }
}

TEST_CASE("lower plus upper incomplete gamma is (m-1)!", "[numerics]")
{
    for (int m = 1; m <= 8; ++m)
        for (double x : log_grid(1e-6, 1e2, 60))
        {
            const double sum = lower_incomplete_gamma_int(m, x) + upper_incomplete_gamma_int(m, x);
            INFO("m = " << m << ", x = " << x);
            CHECK_THAT(sum, WithinRel(factorial(m - 1), 1e-12));
        }
}

TEST_CASE("incomplete gammas are monotone in x", "[numerics]")
{
    for (int m = 1; m <= 8; ++m)
    {
        double prev_upper = upper_incomplete_gamma_int(m, 0.0);
        double prev_lower = lower_incomplete_gamma_int(m, 0.0);
        for (double x : log_grid(1e-6, 1e2, 200))
        {
            const double u = upper_incomplete_gamma_int(m, x);
            const double l = lower_incomplete_gamma_int(m, x);
            // Flat regions may wobble in the last bit.
            CHECK(u <= prev_upper * (1.0 + 4e-16));
            CHECK(l >= prev_lower * (1.0 - 4e-16));
            prev_upper = u;
            prev_lower = l;
        }
    }
}

TEST_CASE("regularized forms stay finite for large arguments", "[numerics]")
{
    CHECK(regularized_upper_gamma(50, 700.0) >= 0.0);
    CHECK(regularized_upper_gamma(50, 700.0) < 1e-200);
    CHECK_THAT(regularized_lower_gamma(50, 700.0), WithinRel(1.0, 1e-15));
    CHECK_THAT(regularized_upper_gamma(3, 1e-300), WithinRel(1.0, 1e-15));
    CHECK(regularized_lower_gamma(3, 1e-100) > 0.0);
}

TEST_CASE("incomplete gamma domain errors", "[numerics]")
{
    CHECK_THROWS_AS(upper_incomplete_gamma_int(2, -1.0), std::domain_error);
    CHECK_THROWS_AS(lower_incomplete_gamma_int(2, -1e-300), std::domain_error);
    CHECK_THROWS_AS(upper_incomplete_gamma_int(0, 1.0), std::domain_error);
    CHECK_THROWS_AS(upper_incomplete_gamma_int(2.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(lower_incomplete_gamma_int(1.0000001, 1.0), std::domain_error);
    CHECK_THROWS_AS(upper_incomplete_gamma_int(2, std::nan("")), std::domain_error);
    CHECK_NOTHROW(upper_incomplete_gamma_int(2.0, 1.0));
}

TEST_CASE("chebyshev rule nodes", "[numerics]")
{
    const auto one = chebyshev_rule(1, 0.0, 2.0);
    REQUIRE(one.nodes.size() == 1);
    CHECK_THAT(one.nodes[0], WithinAbs(0.0, 1e-15));
    CHECK_THAT(one.abscissas[0], WithinAbs(1.0, 1e-15));

    const auto four = chebyshev_rule(4, -1.0, 1.0);
    REQUIRE(four.nodes.size() == 4);
    const double pi = std::numbers::pi;
    CHECK_THAT(four.nodes[0], WithinAbs(std::cos(pi / 8), 1e-15));
    CHECK_THAT(four.nodes[1], WithinAbs(std::cos(3 * pi / 8), 1e-15));
    CHECK_THAT(four.nodes[2], WithinAbs(std::cos(5 * pi / 8), 1e-15));
    CHECK_THAT(four.nodes[3], WithinAbs(std::cos(7 * pi / 8), 1e-15));
    for (int n = 0; n < 4; ++n)
        CHECK(four.abscissas[n] == four.nodes[n]);
}

TEST_CASE("chebyshev nodes are distinct and strictly interior", "[numerics]")
{
    for (int order : {1, 2, 7, 16, 64, 257})
    {
        const auto rule = chebyshev_rule(order, 3.0, 5.0);
        REQUIRE(static_cast<int>(rule.nodes.size()) == order);
        for (int n = 0; n < order; ++n)
        {
            CHECK(rule.nodes[n] > -1.0);
            CHECK(rule.nodes[n] < 1.0);
            CHECK(rule.abscissas[n] > 3.0);
            CHECK(rule.abscissas[n] < 5.0);
            if (n > 0)
                CHECK(rule.nodes[n] < rule.nodes[n - 1]);
        }
    }
}

TEST_CASE("chebyshev rule integrates x over [0, 1] to 0.5 at N = 16", "[numerics]")
{
    const auto rule = chebyshev_rule(16, 0.0, 1.0);
    CHECK_THAT(rule.integrate([](double x) { return x; }), WithinAbs(0.5, 1e-3));
}

TEST_CASE("chebyshev rule on an empty interval integrates to zero", "[numerics]")
{
    const auto rule = chebyshev_rule(16, 2.0, 2.0);
    CHECK(rule.integrate([](double) { return 1e300; }) == 0.0);
}

TEST_CASE("chebyshev constant sum matches its closed form", "[numerics]")
{
    // sum_n sqrt(1 - v_n^2) = 1 / sin(pi / 2N), so the rule returns
    // (b - a) c pi / (2N sin(pi / 2N)) for a constant c.
    for (int order : {1, 2, 8, 16, 64, 1024})
    {
        const auto rule = chebyshev_rule(order, -0.5, 2.5);
        const double expected = 3.0 * 1.7 * std::numbers::pi / (2.0 * order * std::sin(std::numbers::pi / (2.0 * order)));
        CHECK_THAT(rule.integrate([](double) { return 1.7; }), WithinRel(expected, 1e-13));
    }
}

TEST_CASE("chebyshev rule error falls as 1/N^2", "[numerics]")
{
    auto f = [](double x) { return std::exp(-x) * x; };
    const double exact = 1.0 - 2.0 * std::exp(-1.0);
    double prev = std::abs(chebyshev_rule(16, 0.0, 1.0).integrate(f) - exact);
    for (int order : {32, 64, 128})
    {
        const double err = std::abs(chebyshev_rule(order, 0.0, 1.0).integrate(f) - exact);
        CHECK_THAT(prev / err, WithinRel(4.0, 0.02));
        prev = err;
    }
}

// The rule carries an O(1/N^2) error even for constants, so exactness to
// 1e-6 at N = 8 does not hold (relative error 6.4e-3 there).
TEST_CASE("chebyshev degree-0 exact to 1e-6 for N >= 8", "[numerics][!shouldfail]")
{
    const auto rule = chebyshev_rule(8, 0.0, 1.0);
    CHECK_THAT(rule.integrate([](double) { return 1.0; }), WithinRel(1.0, 1e-6));
}

TEST_CASE("chebyshev rule precondition errors", "[numerics]")
{
    CHECK_THROWS_AS(chebyshev_rule(0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(chebyshev_rule(4, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("shape_from_real", "[numerics]")
{
    CHECK(shape_from_real(3.0) == 3);
    CHECK_THROWS_AS(shape_from_real(0.0), std::domain_error);
    CHECK_THROWS_AS(shape_from_real(1.5), std::domain_error);
    CHECK_THROWS_AS(shape_from_real(INFINITY), std::domain_error);
}
