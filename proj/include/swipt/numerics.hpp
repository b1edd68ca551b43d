// SPDX-License-Identifier: Apache-2.0
#pragma once

// Special functions for integer-shape gamma variates and the Gauss-Chebyshev
// rule used by the outage closed forms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace swipt::numerics
{

// Largest n with n! finite in double precision.
inline constexpr unsigned max_factorial_arg = 170;

inline double factorial(unsigned n)
{
    if (n > max_factorial_arg)
        throw std::overflow_error("factorial(" + std::to_string(n) + ") overflows double; use log_factorial");
    if (n <= 20)
    {
        std::uint64_t r = 1;
        for (unsigned i = 2; i <= n; ++i)
            r *= i;
        return static_cast<double>(r);
    }
    double r = 2432902008176640000.0; // 20!
    for (unsigned i = 21; i <= n; ++i)
        r *= i;
    return r;
}

inline double log_factorial(unsigned n)
{
    if (n <= 20)
        return std::log(factorial(n));
    return std::lgamma(static_cast<double>(n) + 1.0);
}

// Validates a shape parameter given as a real number. Non-integral values are
// rejected rather than rounded.
inline int shape_from_real(double m)
{
    if (!std::isfinite(m) || m < 1.0 || std::floor(m) != m || m > 1e6)
        throw std::domain_error("shape parameter must be a positive integer, got " + std::to_string(m));
    return static_cast<int>(m);
}

namespace detail
{
inline void check_args(int m, double x)
{
    if (m < 1)
        throw std::domain_error("incomplete gamma: shape must be >= 1");
    if (!(x >= 0.0) || std::isinf(x))
        throw std::domain_error("incomplete gamma: argument must be finite and >= 0");
}
} // namespace detail

// Q(m, x) = Gamma(m, x) / Gamma(m) = e^{-x} sum_{l<m} x^l / l!.
// Terms are assembled in the log domain so large x or large l cannot overflow.
inline double regularized_upper_gamma(int m, double x)
{
    detail::check_args(m, x);
    if (x == 0.0)
        return 1.0;
    const double log_x = std::log(x);
    double sum = 0.0;
    for (int l = 0; l < m; ++l)
        sum += std::exp(l * log_x - x - log_factorial(static_cast<unsigned>(l)));
    return std::min(sum, 1.0);
}

// P(m, x) = gamma(m, x) / Gamma(m). Below x = m + 1 the tail series
// e^{-x} sum_{l>=m} x^l / l! is used so small arguments keep full relative
// precision; above it 1 - Q is already well conditioned.
inline double regularized_lower_gamma(int m, double x)
{
    detail::check_args(m, x);
    if (x == 0.0)
        return 0.0;
    if (x >= m + 1.0)
        return 1.0 - regularized_upper_gamma(m, x);

    const double lead = std::exp(m * std::log(x) - x - log_factorial(static_cast<unsigned>(m)));
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j < 1000; ++j)
    {
        term *= x / (m + j);
        sum += term;
        if (term < sum * 1e-17)
            break;
    }
    return std::min(lead * sum, 1.0);
}

// Gamma(m, x) for integer m via the finite series (m-1)! e^{-x} sum x^l/l!.
inline double upper_incomplete_gamma_int(int m, double x)
{
    detail::check_args(m, x);
    if (m - 1 <= static_cast<int>(max_factorial_arg))
        return factorial(static_cast<unsigned>(m - 1)) * regularized_upper_gamma(m, x);
    const double log_gamma_m = log_factorial(static_cast<unsigned>(m - 1));
    if (x == 0.0)
        return std::exp(log_gamma_m);
    const double log_x = std::log(x);
    double sum = 0.0;
    for (int l = 0; l < m; ++l)
        sum += std::exp(log_gamma_m + l * log_x - x - log_factorial(static_cast<unsigned>(l)));
    return sum;
}

inline double lower_incomplete_gamma_int(int m, double x)
{
    detail::check_args(m, x);
    if (m - 1 <= static_cast<int>(max_factorial_arg))
        return factorial(static_cast<unsigned>(m - 1)) * regularized_lower_gamma(m, x);
    return std::exp(log_factorial(static_cast<unsigned>(m - 1))) * regularized_lower_gamma(m, x);
}

inline double upper_incomplete_gamma_int(double m, double x)
{
    return upper_incomplete_gamma_int(shape_from_real(m), x);
}

inline double lower_incomplete_gamma_int(double m, double x)
{
    return lower_incomplete_gamma_int(shape_from_real(m), x);
}

// N-point Gauss-Chebyshev rule (first kind) mapped onto [lower, upper].
// Applied to a plain integrand through the sqrt(1 - v^2) correction:
//   int_a^b g(x) dx ~ pi (b - a) / (2N) * sum_n sqrt(1 - v_n^2) g(x_n).
struct QuadratureRule
{
    int order = 0;
    double lower = 0.0;
    double upper = 0.0;
    std::vector<double> nodes;     // v_n = cos((2n - 1) pi / 2N)
    std::vector<double> abscissas; // lower + (upper - lower) (v_n + 1) / 2

    double scale() const { return std::numbers::pi * (upper - lower) / (2.0 * order); }

    template <typename F>
    double integrate(F &&integrand) const
    {
        if (upper == lower)
            return 0.0;
        double acc = 0.0;
        for (int n = 0; n < order; ++n)
            acc += std::sqrt(1.0 - nodes[n] * nodes[n]) * integrand(abscissas[n]);
        return scale() * acc;
    }
};

inline QuadratureRule chebyshev_rule(int order, double lower, double upper)
{
    if (order < 1)
        throw std::invalid_argument("chebyshev_rule: order must be >= 1");
    if (!(upper >= lower))
        throw std::invalid_argument("chebyshev_rule: upper bound below lower bound");

    QuadratureRule rule;
    rule.order = order;
    rule.lower = lower;
    rule.upper = upper;
    rule.nodes.reserve(order);
    rule.abscissas.reserve(order);
    const double half_width = (upper - lower) / 2.0;
    for (int n = 1; n <= order; ++n)
    {
        const double v = std::cos((2.0 * n - 1.0) * std::numbers::pi / (2.0 * order));
        rule.nodes.push_back(v);
        rule.abscissas.push_back(lower + half_width * (v + 1.0));
    }
    return rule;
}

} // namespace swipt::numerics
