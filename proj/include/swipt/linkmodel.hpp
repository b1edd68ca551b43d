// SPDX-License-Identifier: Apache-2.0
#pragma once

// Instantaneous SNDR and energy-harvesting arithmetic of the three-phase
// (TDBC) two-way decode-and-forward link with power-splitting SWIPT at the
// relay and aggregate transceiver impairments.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "swipt/channel.hpp"

namespace swipt
{

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

// Transmitter (k1) and receiver (k2) impairment levels.
struct HardwareProfile
{
    double k1 = 0.0;
    double k2 = 0.0;

    double distortion() const { return k1 * k1 + k2 * k2; }

    // 1 / (k1^2 + k2^2); +inf for ideal hardware.
    double osc_threshold() const
    {
        const double d = distortion();
        return d > 0.0 ? 1.0 / d : std::numeric_limits<double>::infinity();
    }

    static HardwareProfile uniform(double k) { return {k, k}; }
};

struct SystemConfig
{
    double transmit_power_w = dbm_to_watts(10.0); // P_o, per terminal
    double noise_power_w = dbm_to_watts(-50.0);   // sigma^2
    double eta = 0.6;                             // energy conversion efficiency
    double beta = 0.9;                            // power-splitting ratio (EH share)
    double block_duration_s = 1.0;                // T
    double target_rate = 1.0;                     // R_th, bit/s/Hz
    int quadrature_order = 16;                    // N
    double bandwidth_hz = 1e6;                    // recorded only; no formula uses it
    HardwareProfile hardware{0.1, 0.1};
    channel::ChannelParams channels{};

    // Input SNR rho = P_o / sigma^2.
    double snr() const { return transmit_power_w / noise_power_w; }

    void validate() const
    {
        auto require = [](bool ok, const char *what) {
            if (!ok)
                throw std::invalid_argument(std::string("invalid system config: ") + what);
        };
        require(transmit_power_w > 0.0 && std::isfinite(transmit_power_w), "transmit power must be > 0");
        require(noise_power_w > 0.0 && std::isfinite(noise_power_w), "noise power must be > 0");
        require(eta > 0.0 && eta < 1.0, "eta must lie in (0, 1)");
        require(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
        require(block_duration_s > 0.0, "T must be > 0");
        require(target_rate > 0.0 && std::isfinite(target_rate), "R_th must be > 0");
        require(quadrature_order >= 1, "N must be >= 1");
        require(hardware.k1 >= 0.0 && hardware.k2 >= 0.0, "impairment levels must be >= 0");
        channels.validate();
    }
};

namespace link
{

// Decoding needs 3 log2(1 + gamma) / T >= R_th over the three phases.
inline double sndr_threshold(double target_rate, double block_duration_s)
{
    return std::exp2(3.0 * target_rate / block_duration_s) - 1.0;
}

inline double sndr_threshold(const SystemConfig &cfg)
{
    return sndr_threshold(cfg.target_rate, cfg.block_duration_s);
}

// Common saturating form s / (kappa s + 1) shared by every hop.
inline double impaired_sndr(double signal, const HardwareProfile &hw)
{
    return signal / (hw.distortion() * signal + 1.0);
}

inline double sndr_direct(double z, double rho, const HardwareProfile &hw)
{
    return impaired_sndr(rho * z, hw);
}

inline double sndr_terminal_to_relay(double x, double rho, double beta, const HardwareProfile &hw)
{
    return impaired_sndr((1.0 - beta) * rho * x, hw);
}

// Relay transmit power funded by the energy harvested over both broadcast phases.
inline double relay_power(double x, double y, double transmit_power_w, double eta, double beta)
{
    return eta * beta * transmit_power_w * (x + y);
}

// x_i is the gain of the hop between the relay and the receiving terminal.
inline double sndr_relay_to_terminal(double x_i, double x, double y, double rho, double eta, double beta,
                                     const HardwareProfile &hw)
{
    return impaired_sndr(eta * beta * rho * x_i * (x + y), hw);
}

struct LinkSndrs
{
    double direct = 0.0;     // gamma_ab = gamma_ba (reciprocal channel)
    double a_to_relay = 0.0; // gamma_ar
    double b_to_relay = 0.0; // gamma_br
    double relay_to_a = 0.0; // gamma_ra
    double relay_to_b = 0.0; // gamma_rb
    double at_a = 0.0;       // selection-combined SNDR for x_b at S_a
    double at_b = 0.0;       // selection-combined SNDR for x_a at S_b

    // The relay forwards x_a XOR x_b only after decoding both messages, and
    // both terminals must then decode the relay broadcast.
    bool relay_succeeds(double threshold) const
    {
        return a_to_relay > threshold && b_to_relay > threshold && relay_to_a > threshold &&
               relay_to_b > threshold;
    }
};

inline LinkSndrs end_to_end_sndrs(const channel::ChannelDraw &draw, const SystemConfig &cfg)
{
    const double rho = cfg.snr();
    const auto &hw = cfg.hardware;
    LinkSndrs s;
    s.direct = sndr_direct(draw.z, rho, hw);
    s.a_to_relay = sndr_terminal_to_relay(draw.x, rho, cfg.beta, hw);
    s.b_to_relay = sndr_terminal_to_relay(draw.y, rho, cfg.beta, hw);
    s.relay_to_a = sndr_relay_to_terminal(draw.x, draw.x, draw.y, rho, cfg.eta, cfg.beta, hw);
    s.relay_to_b = sndr_relay_to_terminal(draw.y, draw.x, draw.y, rho, cfg.eta, cfg.beta, hw);
    s.at_a = std::max(s.direct, std::min(s.b_to_relay, s.relay_to_a));
    s.at_b = std::max(s.direct, std::min(s.a_to_relay, s.relay_to_b));
    return s;
}

} // namespace link
} // namespace swipt
