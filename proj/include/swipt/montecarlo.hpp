// SPDX-License-Identifier: Apache-2.0
#pragma once

// Empirical outage estimation by direct simulation of channel draws.
//
// Trials are cut into fixed-size batches; batch i runs its own engine seeded
// from (seed, i). Batch counts are merged by addition, so the estimate does not
// depend on how many workers ran or in which order batches finished.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/errors.hpp"
#include "swipt/linkmodel.hpp"

namespace swipt::montecarlo
{

using Engine = std::mt19937_64;

struct SimEstimate
{
    double value = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t count = 0;
    double std_error = 0.0; // sqrt(value (1 - value) / trials)
    std::uint64_t seed = 0;
};

enum class LinkEvent
{
    SystemOutage,      // min(R_a, R_b) < R_th
    DirectOutage,      // gamma_ab <= gamma_th
    RelayJointSuccess, // all four relaying hops above gamma_th
    T2TA,              // selection-combined SNDR at S_a below gamma_th
    T2TB,              // same at S_b
};

inline LinkEvent parse_link_event(std::string_view name)
{
    if (name == "system_outage")
        return LinkEvent::SystemOutage;
    if (name == "direct_outage")
        return LinkEvent::DirectOutage;
    if (name == "relay_joint_success")
        return LinkEvent::RelayJointSuccess;
    if (name == "t2t_a")
        return LinkEvent::T2TA;
    if (name == "t2t_b")
        return LinkEvent::T2TB;
    throw std::invalid_argument("unknown event selector '" + std::string(name) + "'");
}

struct RunOptions
{
    unsigned workers = 0; // 0: SWIPT_WORKERS or hardware concurrency
    std::uint64_t batch_size = 1 << 16;
};

// Worker count from SWIPT_WORKERS when set to a positive integer, otherwise
// the hardware concurrency.
inline unsigned default_workers()
{
    if (const char *env = std::getenv("SWIPT_WORKERS"))
    {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch)
{
    return splitmix64(splitmix64(seed) ^ splitmix64(batch + 0x632be59bd9b4e019ULL));
}

inline SimEstimate make_estimate(std::uint64_t count, std::uint64_t trials, std::uint64_t seed)
{
    SimEstimate e;
    e.trials = trials;
    e.count = count;
    e.seed = seed;
    e.value = static_cast<double>(count) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials));
    return e;
}

inline bool event_occurs(const link::LinkSndrs &s, double threshold, LinkEvent event)
{
    switch (event)
    {
    case LinkEvent::SystemOutage:
        return !(s.direct > threshold) && !s.relay_succeeds(threshold);
    case LinkEvent::DirectOutage:
        return !(s.direct > threshold);
    case LinkEvent::RelayJointSuccess:
        return s.relay_succeeds(threshold);
    case LinkEvent::T2TA:
        return s.at_a < threshold;
    case LinkEvent::T2TB:
        return s.at_b < threshold;
    }
    return false;
}

inline SimEstimate estimate_link_probability(const SystemConfig &cfg, std::uint64_t trials, std::uint64_t seed,
                                             LinkEvent event, const RunOptions &opt = {})
{
    if (trials < 1)
        throw std::invalid_argument("estimate: trials must be >= 1");
    if (opt.batch_size < 1)
        throw std::invalid_argument("estimate: batch size must be >= 1");
    cfg.validate();

    const double threshold = link::sndr_threshold(cfg);
    const std::uint64_t batches = (trials + opt.batch_size - 1) / opt.batch_size;
    std::vector<std::uint64_t> counts(batches, 0);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&] {
        for (std::uint64_t b = next.fetch_add(1); b < batches; b = next.fetch_add(1))
        {
            Engine engine(batch_seed(seed, b));
            const std::uint64_t begin = b * opt.batch_size;
            const std::uint64_t n = std::min(opt.batch_size, trials - begin);
            std::uint64_t hits = 0;
            for (std::uint64_t t = 0; t < n; ++t)
            {
                const auto draw = channel::sample_draw(engine, cfg.channels);
                hits += event_occurs(link::end_to_end_sndrs(draw, cfg), threshold, event) ? 1 : 0;
            }
            counts[b] = hits;
        }
    };

    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(opt.workers ? opt.workers : default_workers(), batches));
    if (workers <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }

    std::uint64_t total = 0;
    for (auto c : counts)
        total += c;
    return make_estimate(total, trials, seed);
}

// Outage unless the direct link or the jointly successful relay path carries
// both messages.
inline SimEstimate estimate_outage(const SystemConfig &cfg, std::uint64_t trials, std::uint64_t seed,
                                   const RunOptions &opt = {})
{
    return estimate_link_probability(cfg, trials, seed, LinkEvent::SystemOutage, opt);
}

inline SystemConfig with_snr_db(SystemConfig cfg, double rho_db)
{
    cfg.transmit_power_w = cfg.noise_power_w * std::pow(10.0, rho_db / 10.0);
    return cfg;
}

// Two-point log-log slope of the estimated outage against rho, using the
// same seed at both points. Minus the slope approximates the diversity order.
inline double measure_diversity_slope(const SystemConfig &cfg, double rho_low_db, double rho_high_db,
                                      std::uint64_t trials, std::uint64_t seed, const RunOptions &opt = {})
{
    if (rho_low_db == rho_high_db)
        throw std::invalid_argument("measure_diversity_slope: the two SNR points must differ");
    const auto low = estimate_outage(with_snr_db(cfg, rho_low_db), trials, seed, opt);
    const auto high = estimate_outage(with_snr_db(cfg, rho_high_db), trials, seed, opt);
    if (low.count == 0 || high.count == 0)
        throw DegenerateEstimate("outage estimate is zero at one SNR point; raise trials or lower the SNR");
    return (std::log10(low.value) - std::log10(high.value)) / ((rho_low_db - rho_high_db) / 10.0);
}

} // namespace swipt::montecarlo
