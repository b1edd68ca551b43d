// SPDX-License-Identifier: Apache-2.0
#pragma once

// Closed-form system outage probability of the SWIPT two-way DF relay under
// transceiver impairments, together with the diversity order, energy
// efficiency and the outage-minimising power-splitting ratio.
//
// Notation used throughout:
//   gamma_th          SNDR threshold, 2^{3 R_th / T} - 1
//   kappa             k1^2 + k2^2; the ceiling 1/kappa bounds every SNDR
//   c                 1 - kappa gamma_th (> 0 below the ceiling)
//   delta1            gamma_th / ((1 - beta) c rho): relay decoding needs X, Y > delta1
//   delta2            gamma_th / (eta beta c rho):   terminals need X(X+Y), Y(X+Y) > delta2
//   corner            sqrt(delta2 / 2), where y(x + y) = delta2 meets y = x
//   phi               delta2 / delta1 - delta1, where y(x + y) = delta2 meets y = delta1
//
// P2 = Pr{X > delta1, Y > delta1, X(X+Y) > delta2, Y(X+Y) > delta2} is split
// along the diagonal; each half is a one-dimensional integral of f_X against a
// CDF difference of Y, and the other half is the same expression with the
// links exchanged.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/errors.hpp"
#include "swipt/linkmodel.hpp"
#include "swipt/numerics.hpp"

namespace swipt::analytics
{

enum class Branch
{
    OscCeiling, // gamma_th >= 1 / kappa: outage is certain
    P2CaseA,    // delta1 >= sqrt(delta2 / 2)
    P2CaseB,    // delta1 <  sqrt(delta2 / 2)
};

inline std::string_view to_string(Branch b)
{
    switch (b)
    {
    case Branch::OscCeiling:
        return "osc_ceiling";
    case Branch::P2CaseA:
        return "p2_case_a";
    case Branch::P2CaseB:
        return "p2_case_b";
    }
    return "unknown";
}

struct Deltas
{
    double delta1 = 0.0;
    double delta2 = 0.0;
    double phi = 0.0; // only meaningful in case B; left at 0 otherwise

    double corner() const { return std::sqrt(delta2 / 2.0); }

    // Both closed forms coincide on the boundary, so plain comparison is used.
    bool case_a() const { return delta1 >= corner(); }
};

struct OutageBreakdown
{
    double p_out = 1.0;
    double p1 = 1.0;
    double p2 = 0.0;
    Branch branch = Branch::OscCeiling;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double phi = 0.0;
};

inline double osc_threshold(const HardwareProfile &hw) { return hw.osc_threshold(); }

inline bool below_ceiling(const SystemConfig &cfg)
{
    return link::sndr_threshold(cfg) < osc_threshold(cfg.hardware);
}

// std::nullopt at or above the ceiling.
inline std::optional<Deltas> deltas(const SystemConfig &cfg)
{
    if (!below_ceiling(cfg))
        return std::nullopt;
    const double gth = link::sndr_threshold(cfg);
    const double c = 1.0 - cfg.hardware.distortion() * gth;
    const double rho = cfg.snr();
    Deltas d;
    d.delta1 = gth / ((1.0 - cfg.beta) * c * rho);
    d.delta2 = gth / (cfg.eta * cfg.beta * c * rho);
    if (!d.case_a())
        d.phi = d.delta2 / d.delta1 - d.delta1;
    return d;
}

// Positive root y of y (t + y) = delta2, written without the cancellation of
// (-t + sqrt(t^2 + 4 delta2)) / 2 at large t.
inline double q_curve(double t, double delta2)
{
    return 2.0 * delta2 / (t + std::sqrt(t * t + 4.0 * delta2));
}

namespace detail
{

struct Link
{
    int m;
    double theta;

    double pdf(double v) const { return channel::gamma_pdf(v, m, theta); }
    double cdf(double v) const { return channel::gamma_cdf(v, m, theta); }
    double ccdf(double v) const { return channel::gamma_ccdf(v, m, theta); }
};

inline Link link_a(const SystemConfig &cfg) { return {cfg.channels.m_a, cfg.channels.theta_a()}; }
inline Link link_b(const SystemConfig &cfg) { return {cfg.channels.m_b, cfg.channels.theta_b()}; }

// Weights C(l + m1 - 1, l) p^m1 q^l with p = theta2 / (theta1 + theta2),
// q = 1 - p. They absorb the Gamma(m1) theta1^m1 l! theta2^l
// (1/theta1 + 1/theta2)^(l + m1) prefactors of the series, which overflow
// individually for small scales.
inline double series_weight(int l, const Link &first, const Link &second)
{
    const double sum = first.theta + second.theta;
    const double log_w = std::lgamma(l + first.m) - std::lgamma(first.m) - std::lgamma(l + 1.0) +
                         first.m * std::log(second.theta / sum) + l * std::log(first.theta / sum);
    return std::exp(log_w);
}

inline double rate_sum(const Link &first, const Link &second)
{
    return 1.0 / first.theta + 1.0 / second.theta;
}

// int_{x0}^inf f_first(x) F_second(x) dx
//   = Q(m1, x0/theta1) - sum_{l<m2} w_l Q(l + m1, x0 (1/theta1 + 1/theta2)).
inline double tail_against_cdf(double x0, const Link &first, const Link &second)
{
    const double c = rate_sum(first, second);
    double acc = first.ccdf(x0);
    for (int l = 0; l < second.m; ++l)
        acc -= series_weight(l, first, second) * numerics::regularized_upper_gamma(l + first.m, x0 * c);
    return acc;
}

// Pr{first > lo, delta1 < second <= first} for lo >= delta1.
inline double upper_wedge(double lo, double delta1, const Link &first, const Link &second)
{
    return tail_against_cdf(lo, first, second) - second.cdf(delta1) * first.ccdf(lo);
}

// Half of case A: delta1 < Y <= X.
inline double case_a_half(const Deltas &d, const Link &first, const Link &second)
{
    return upper_wedge(d.delta1, d.delta1, first, second);
}

// Half of case B: Q(X) < Y <= X on [corner, phi], then delta1 < Y <= X beyond phi.
inline double case_b_half(const Deltas &d, int order, const Link &first, const Link &second)
{
    const double corner = d.corner();
    const double c = rate_sum(first, second);

    // f_first(x) Pr{Y > Q(x)} on [corner, phi], by the Chebyshev rule.
    const auto rule = numerics::chebyshev_rule(order, corner, d.phi);
    const double curved = rule.integrate([&](double x) { return first.pdf(x) * second.ccdf(q_curve(x, d.delta2)); });

    // f_first(x) Pr{Y > x} on [corner, phi], closed form.
    double diagonal = 0.0;
    for (int l = 0; l < second.m; ++l)
        diagonal += series_weight(l, first, second) *
                    (numerics::regularized_upper_gamma(l + first.m, corner * c) -
                     numerics::regularized_upper_gamma(l + first.m, d.phi * c));

    return curved - diagonal + upper_wedge(d.phi, d.delta1, first, second);
}

// int_0^a f_first(x) F_second(x) dx. For a c < 2 the positive tail series
// sum_{l>=m2} w_l P(l + m1, a c) avoids the cancellation in
// F_first(a) - sum_{l<m2} w_l P(l + m1, a c); P(n, ac) <= (ac)^n / n! makes
// it converge factorially whatever the weights do.
inline double head_against_cdf(double a, const Link &first, const Link &second)
{
    const double c = rate_sum(first, second);
    const double ac = a * c;
    if (ac >= 2.0)
    {
        double acc = first.cdf(a);
        for (int l = 0; l < second.m; ++l)
            acc -= series_weight(l, first, second) * numerics::regularized_lower_gamma(l + first.m, ac);
        return std::max(acc, 0.0);
    }
    double acc = 0.0;
    for (int l = second.m; l < second.m + 500; ++l)
    {
        const double term = series_weight(l, first, second) * numerics::regularized_lower_gamma(l + first.m, ac);
        acc += term;
        if (term <= acc * 1e-17 || term == 0.0)
            break;
    }
    return acc;
}

// Relay-failure counterparts of the halves above: Pr{Y <= X, relaying fails}.
// Every term is nonnegative, so 1 - P2 keeps its relative accuracy when P2 -> 1.
inline double case_a_failure_half(const Deltas &d, const Link &first, const Link &second)
{
    return head_against_cdf(d.delta1, first, second) + second.cdf(d.delta1) * first.ccdf(d.delta1);
}

inline double case_b_failure_half(const Deltas &d, int order, const Link &first, const Link &second)
{
    const double corner = d.corner();
    const auto rule = numerics::chebyshev_rule(order, corner, d.phi);
    const double curved = rule.integrate([&](double x) { return first.pdf(x) * second.cdf(q_curve(x, d.delta2)); });
    return head_against_cdf(corner, first, second) + curved + second.cdf(d.delta1) * first.ccdf(d.phi);
}

inline double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

} // namespace detail

// Probability that the direct link alone fails to carry either message.
inline double p1(const SystemConfig &cfg)
{
    if (!below_ceiling(cfg))
        return 1.0;
    const double gth = link::sndr_threshold(cfg);
    const double c = 1.0 - cfg.hardware.distortion() * gth;
    const double u = gth / (cfg.channels.theta_d() * cfg.snr() * c);
    return numerics::regularized_lower_gamma(cfg.channels.m_d, u);
}

inline double p2_case_a(const SystemConfig &cfg)
{
    const auto d = deltas(cfg);
    if (!d || !d->case_a())
        throw BranchError("p2_case_a requires gamma_th below the ceiling and delta1 >= sqrt(delta2/2)");
    const auto a = detail::link_a(cfg);
    const auto b = detail::link_b(cfg);
    return detail::clamp_probability(detail::case_a_half(*d, a, b) + detail::case_a_half(*d, b, a));
}

inline double p2_case_b(const SystemConfig &cfg)
{
    const auto d = deltas(cfg);
    if (!d || d->case_a())
        throw BranchError("p2_case_b requires gamma_th below the ceiling and delta1 < sqrt(delta2/2)");
    const auto a = detail::link_a(cfg);
    const auto b = detail::link_b(cfg);
    const int n = cfg.quadrature_order;
    return detail::clamp_probability(detail::case_b_half(*d, n, a, b) + detail::case_b_half(*d, n, b, a));
}

// Joint relaying success probability (0 at the ceiling), literal closed forms.
inline double p2(const SystemConfig &cfg)
{
    const auto d = deltas(cfg);
    if (!d)
        return 0.0;
    return d->case_a() ? p2_case_a(cfg) : p2_case_b(cfg);
}

// 1 - P2 summed over the failure regions directly. Same regions, same
// Chebyshev nodes on [corner, phi]; only the curved integrand is the
// complementary one, f_X(x) F_Y(Q(x)).
inline double relay_outage(const SystemConfig &cfg)
{
    const auto d = deltas(cfg);
    if (!d)
        return 1.0;
    const auto a = detail::link_a(cfg);
    const auto b = detail::link_b(cfg);
    if (d->case_a())
        return detail::clamp_probability(detail::case_a_failure_half(*d, a, b) +
                                          detail::case_a_failure_half(*d, b, a));
    const int n = cfg.quadrature_order;
    return detail::clamp_probability(detail::case_b_failure_half(*d, n, a, b) +
                                      detail::case_b_failure_half(*d, n, b, a));
}

enum class Evaluation
{
    // P_out = P1 * (1 - P2) with 1 - P2 from relay_outage(). Accurate when
    // P_out is small.
    Complementary,
    // P_out = P1 * (1 - P2) with P2 from p2_case_a / p2_case_b as written.
    // At finite N the quadrature error of P2 dominates once 1 - P2 is small.
    Literal,
};

inline OutageBreakdown system_outage(const SystemConfig &cfg, Evaluation mode = Evaluation::Complementary)
{
    OutageBreakdown out;
    const auto d = deltas(cfg);
    if (!d)
        return out;
    out.delta1 = d->delta1;
    out.delta2 = d->delta2;
    out.phi = d->phi;
    out.branch = d->case_a() ? Branch::P2CaseA : Branch::P2CaseB;
    out.p1 = p1(cfg);
    if (mode == Evaluation::Literal)
    {
        out.p2 = out.branch == Branch::P2CaseA ? p2_case_a(cfg) : p2_case_b(cfg);
        out.p_out = out.p1 * (1.0 - out.p2);
    }
    else
    {
        const double failure = relay_outage(cfg);
        out.p2 = 1.0 - failure;
        out.p_out = out.p1 * failure;
    }
    return out;
}

inline int diversity_gain(const SystemConfig &cfg)
{
    if (!below_ceiling(cfg))
        return 0;
    return cfg.channels.m_d + std::min(cfg.channels.m_a, cfg.channels.m_b);
}

// Delivered bits per unit of terminal energy: R_th (1 - P_out) / (2 T P_o / 3).
inline double energy_efficiency(const SystemConfig &cfg, double p_out)
{
    return cfg.target_rate * (1.0 - p_out) / (2.0 * cfg.block_duration_s * cfg.transmit_power_w / 3.0);
}

inline double energy_efficiency(const SystemConfig &cfg)
{
    return energy_efficiency(cfg, system_outage(cfg).p_out);
}

struct BetaPoint
{
    double beta;
    double p_out;
};

struct BetaSearch
{
    double beta = 0.0;
    double p_out = 1.0;
    std::vector<BetaPoint> grid;
};

struct BetaSearchOptions
{
    int points = 199;
    double lower = 0.005;
    double upper = 0.995;
    double refine_width = 1e-4;
};

inline double outage_at_beta(SystemConfig cfg, double beta)
{
    cfg.beta = beta;
    return system_outage(cfg).p_out;
}

// Grid argmin of P_out over beta (ties go to the smaller beta), polished by a
// golden-section search inside the bracketing grid cell pair. The refined
// point replaces the grid point only if it is strictly better.
inline BetaSearch optimal_beta(const SystemConfig &cfg, const BetaSearchOptions &opt = {})
{
    if (opt.points < 3 || !(opt.lower > 0.0) || !(opt.upper < 1.0) || !(opt.lower < opt.upper))
        throw std::invalid_argument("optimal_beta: need >= 3 points on an interior interval of (0, 1)");

    BetaSearch result;
    result.grid.reserve(opt.points);
    const double step = (opt.upper - opt.lower) / (opt.points - 1);
    std::size_t best = 0;
    for (int i = 0; i < opt.points; ++i)
    {
        const double beta = i == opt.points - 1 ? opt.upper : opt.lower + i * step;
        result.grid.push_back({beta, outage_at_beta(cfg, beta)});
        if (result.grid.back().p_out < result.grid[best].p_out)
            best = result.grid.size() - 1;
    }
    result.beta = result.grid[best].beta;
    result.p_out = result.grid[best].p_out;

    double lo = result.grid[best == 0 ? 0 : best - 1].beta;
    double hi = result.grid[std::min(best + 1, result.grid.size() - 1)].beta;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = outage_at_beta(cfg, x1);
    double f2 = outage_at_beta(cfg, x2);
    while (hi - lo > opt.refine_width)
    {
        if (f1 <= f2)
        {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = outage_at_beta(cfg, x1);
        }
        else
        {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = outage_at_beta(cfg, x2);
        }
    }
    const double candidate = f1 <= f2 ? x1 : x2;
    const double candidate_p = std::min(f1, f2);
    if (candidate_p < result.p_out)
    {
        result.beta = candidate;
        result.p_out = candidate_p;
    }
    return result;
}

} // namespace swipt::analytics
