// SPDX-License-Identifier: Apache-2.0
#pragma once

// Gamma-distributed channel power gains (squared Nakagami-m amplitudes).

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

#include "swipt/numerics.hpp"

namespace swipt::channel
{

// Shape m and average power Omega of the three links. Scales follow as
// theta = Omega / m. Index a: S_a -> R, b: S_b -> R, d: S_a <-> S_b.
struct ChannelParams
{
    int m_a = 1;
    int m_b = 1;
    int m_d = 1;
    double omega_a = 1.0;
    double omega_b = 1.0;
    double omega_d = 1.0;

    double theta_a() const { return omega_a / m_a; }
    double theta_b() const { return omega_b / m_b; }
    double theta_d() const { return omega_d / m_d; }

    // Exchanges the roles of the two terminal-to-relay links.
    ChannelParams swapped() const { return {m_b, m_a, m_d, omega_b, omega_a, omega_d}; }

    void validate() const
    {
        if (m_a < 1 || m_b < 1 || m_d < 1)
            throw std::invalid_argument("channel shapes must be integers >= 1");
        if (!(omega_a > 0.0 && omega_b > 0.0 && omega_d > 0.0) || !std::isfinite(omega_a) ||
            !std::isfinite(omega_b) || !std::isfinite(omega_d))
            throw std::invalid_argument("channel average powers must be finite and > 0");
    }
};

// One block-fading realization: X = |h_ar|^2, Y = |h_br|^2, Z = |h_ab|^2.
struct ChannelDraw
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline double gamma_pdf(double v, int m, double theta)
{
    if (!(v >= 0.0))
        throw std::domain_error("gamma_pdf: v must be >= 0");
    if (m < 1 || !(theta > 0.0))
        throw std::domain_error("gamma_pdf: invalid shape or scale");
    if (v == 0.0)
        return m == 1 ? 1.0 / theta : 0.0;
    const double log_pdf = (m - 1) * std::log(v) - v / theta -
                           numerics::log_factorial(static_cast<unsigned>(m - 1)) - m * std::log(theta);
    return std::exp(log_pdf);
}

inline double gamma_cdf(double v, int m, double theta)
{
    if (!(v >= 0.0))
        throw std::domain_error("gamma_cdf: v must be >= 0");
    if (m < 1 || !(theta > 0.0))
        throw std::domain_error("gamma_cdf: invalid shape or scale");
    if (std::isinf(v))
        return 1.0;
    return numerics::regularized_lower_gamma(m, v / theta);
}

// Complementary CDF, kept separate so tails do not go through 1 - cdf.
inline double gamma_ccdf(double v, int m, double theta)
{
    if (!(v >= 0.0))
        throw std::domain_error("gamma_ccdf: v must be >= 0");
    if (std::isinf(v))
        return 0.0;
    return numerics::regularized_upper_gamma(m, v / theta);
}

// Uniform variate on (0, 1] from the top 53 bits of a 64-bit engine.
template <typename Engine>
double uniform_open_closed(Engine &engine)
{
    static_assert(Engine::max() - Engine::min() == std::numeric_limits<std::uint64_t>::max(),
                  "a full-range 64-bit engine is required");
    return (static_cast<double>((engine() - Engine::min()) >> 11) + 1.0) * 0x1.0p-53;
}

// Erlang(m, theta) as -theta log(U_1 ... U_m). Each U_i >= 2^-53, so the
// product stays a normal double up to m = 19; larger shapes sum logs instead.
template <typename Engine>
double sample_erlang(Engine &engine, int m, double theta)
{
    if (m > 16)
    {
        double acc = 0.0;
        for (int i = 0; i < m; ++i)
            acc -= std::log(uniform_open_closed(engine));
        return theta * acc;
    }
    double product = 1.0;
    for (int i = 0; i < m; ++i)
        product *= uniform_open_closed(engine);
    return -theta * std::log(product);
}

template <typename Engine>
ChannelDraw sample_draw(Engine &engine, const ChannelParams &params)
{
    ChannelDraw draw;
    draw.x = sample_erlang(engine, params.m_a, params.theta_a());
    draw.y = sample_erlang(engine, params.m_b, params.theta_b());
    draw.z = sample_erlang(engine, params.m_d, params.theta_d());
    return draw;
}

} // namespace swipt::channel
