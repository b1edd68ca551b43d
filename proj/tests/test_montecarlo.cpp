// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <random>

#include "swipt/analytics.hpp"
#include "swipt/montecarlo.hpp"

using namespace swipt;
using namespace swipt::montecarlo;
using Catch::Matchers::WithinRel;

namespace
{
SystemConfig reference(double po_dbm, double r_th = 1.0)
{
    SystemConfig cfg;
    cfg.channels = {2, 2, 1, std::pow(5.0, -2.7), std::pow(5.0, -2.7), 1e-3};
    cfg.transmit_power_w = dbm_to_watts(po_dbm);
    cfg.target_rate = r_th;
    return cfg;
}
} // namespace

TEST_CASE("event selector parsing", "[montecarlo]")
{
    CHECK(parse_link_event("system_outage") == LinkEvent::SystemOutage);
    CHECK(parse_link_event("direct_outage") == LinkEvent::DirectOutage);
    CHECK(parse_link_event("relay_joint_success") == LinkEvent::RelayJointSuccess);
    CHECK(parse_link_event("t2t_a") == LinkEvent::T2TA);
    CHECK(parse_link_event("t2t_b") == LinkEvent::T2TB);
    CHECK_THROWS_AS(parse_link_event("relay"), std::invalid_argument);
}

TEST_CASE("estimate bookkeeping", "[montecarlo]")
{
    const auto e = make_estimate(25, 100, 9);
    CHECK(e.value == 0.25);
    CHECK(e.count == 25);
    CHECK(e.seed == 9);
    CHECK_THAT(e.std_error, WithinRel(std::sqrt(0.25 * 0.75 / 100), 1e-15));
    CHECK(e.value * e.trials == static_cast<double>(e.count));
}

TEST_CASE("outage is certain at the ceiling", "[montecarlo]")
{
    const auto e = estimate_outage(reference(30.0, 2.0), 100000, 1);
    CHECK(e.value == 1.0);
    CHECK(e.std_error == 0.0);
}

TEST_CASE("outage vanishes with ideal hardware and a strong direct link", "[montecarlo]")
{
    auto cfg = reference(10.0);
    cfg.hardware = {0.0, 0.0};
    cfg.channels.omega_d = 1e6;
    CHECK(estimate_outage(cfg, 100000, 1).value == 0.0);
}

TEST_CASE("per-terminal outage with dead links", "[montecarlo]")
{
    auto cfg = reference(10.0);
    cfg.channels = {1, 1, 1, 1e-30, 1e-30, 1e-30};
    CHECK(estimate_link_probability(cfg, 10000, 3, LinkEvent::T2TA).value == 1.0);
    CHECK(estimate_link_probability(cfg, 10000, 3, LinkEvent::T2TB).value == 1.0);
}

TEST_CASE("simulation matches the analytic pieces", "[montecarlo]")
{
    auto cfg = reference(-5.0);
    cfg.quadrature_order = 4096;
    const std::uint64_t n = 2000000;
    const auto direct = estimate_link_probability(cfg, n, 5, LinkEvent::DirectOutage);
    CHECK(std::abs(direct.value - analytics::p1(cfg)) < 3 * direct.std_error);
    const auto relay = estimate_link_probability(cfg, n, 6, LinkEvent::RelayJointSuccess);
    CHECK(std::abs(relay.value - analytics::p2(cfg)) < 3 * relay.std_error);
    const auto outage = estimate_outage(cfg, n, 7);
    CHECK(std::abs(outage.value - analytics::system_outage(cfg).p_out) < 3 * outage.std_error);
}

TEST_CASE("system outage at 10 dBm against the closed form", "[montecarlo]")
{
    auto cfg = reference(10.0);
    cfg.quadrature_order = 4096;
    const auto e = estimate_outage(cfg, 10000000, 21);
    CHECK(std::abs(e.value - analytics::system_outage(cfg).p_out) < 3 * e.std_error);
}

TEST_CASE("system outage is the joint event", "[montecarlo]")
{
    // Outage needs the direct link and the joint relay path to fail, so it
    // sits between the per-terminal outage and the direct-link outage.
    const auto cfg = reference(0.0);
    const auto sys = estimate_outage(cfg, 200000, 4);
    const auto direct = estimate_link_probability(cfg, 200000, 4, LinkEvent::DirectOutage);
    const auto a = estimate_link_probability(cfg, 200000, 4, LinkEvent::T2TA);
    CHECK(sys.count <= direct.count);
    CHECK(a.count <= direct.count);
    CHECK(sys.count >= a.count);
}

TEST_CASE("deterministic replay", "[montecarlo]")
{
    const auto cfg = reference(0.0);
    const auto a = estimate_outage(cfg, 300000, 42);
    const auto b = estimate_outage(cfg, 300000, 42);
    CHECK(a.count == b.count);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    CHECK(estimate_outage(cfg, 300000, 43).count != a.count);
}

TEST_CASE("worker count does not change the estimate", "[montecarlo]")
{
    const auto cfg = reference(0.0);
    RunOptions one{1, 1 << 14};
    RunOptions four{4, 1 << 14};
    RunOptions seven{7, 1 << 14};
    const auto a = estimate_outage(cfg, 200000, 8, one);
    CHECK(estimate_outage(cfg, 200000, 8, four).count == a.count);
    CHECK(estimate_outage(cfg, 200000, 8, seven).count == a.count);
}

TEST_CASE("worker count from the environment", "[montecarlo]")
{
    ::setenv("SWIPT_WORKERS", "3", 1);
    CHECK(default_workers() == 3);
    ::setenv("SWIPT_WORKERS", "zero", 1);
    CHECK(default_workers() >= 1);
    ::unsetenv("SWIPT_WORKERS");
    CHECK(default_workers() >= 1);
}

TEST_CASE("standard error scales as 1/sqrt(n)", "[montecarlo]")
{
    const auto cfg = reference(-5.0);
    const auto small = estimate_outage(cfg, 10000, 2);
    const auto large = estimate_outage(cfg, 1000000, 2);
    CHECK_THAT(small.std_error / large.std_error, WithinRel(10.0, 0.1));
}

TEST_CASE("coverage over random configurations", "[montecarlo]")
{
    std::mt19937_64 engine(555);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int inside = 0, total = 0;
    while (total < 20)
    {
        SystemConfig cfg;
        cfg.channels = {1 + static_cast<int>(3 * u(engine)), 1 + static_cast<int>(3 * u(engine)),
                        1 + static_cast<int>(3 * u(engine)), 0.01 * (0.5 + u(engine)), 0.01 * (0.5 + u(engine)),
                        1e-3 * (0.5 + u(engine))};
        cfg.transmit_power_w = dbm_to_watts(-10.0 + 20.0 * u(engine));
        cfg.beta = 0.3 + 0.65 * u(engine);
        cfg.hardware = HardwareProfile::uniform(0.15 * u(engine));
        cfg.target_rate = 0.5 + 0.7 * u(engine);
        cfg.quadrature_order = 4096;
        if (!analytics::below_ceiling(cfg))
            continue;
        const double p = analytics::system_outage(cfg).p_out;
        const auto e = estimate_outage(cfg, 400000, 100 + total);
        inside += std::abs(e.value - p) < 3.5 * e.std_error ? 1 : 0;
        ++total;
    }
    CHECK(inside >= 19);
}

TEST_CASE("diversity slope", "[montecarlo]")
{
    SECTION("ceiling gives slope 0")
    {
        auto cfg = reference(0.0, 2.0);
        CHECK(measure_diversity_slope(cfg, 40.0, 50.0, 10000, 1) == 0.0);
    }
    SECTION("zero estimate is degenerate")
    {
        auto cfg = reference(0.0);
        cfg.hardware = {0.0, 0.0};
        cfg.channels.omega_d = 1e6;
        CHECK_THROWS_AS(measure_diversity_slope(cfg, 40.0, 50.0, 1000, 1), DegenerateEstimate);
    }
    SECTION("equal SNR points")
    {
        CHECK_THROWS_AS(measure_diversity_slope(reference(0.0), 40.0, 40.0, 1000, 1), std::invalid_argument);
    }
    SECTION("ideal hardware, unit shapes")
    {
        // d = m_d + min(m_a, m_b) = 2.
        SystemConfig cfg;
        cfg.hardware = {0.0, 0.0};
        cfg.channels = {1, 1, 1, 1.0, 1.0, 0.1};
        const double slope = measure_diversity_slope(cfg, 30.0, 40.0, 4000000, 17);
        CHECK(std::abs(slope + 2.0) < 0.15);
    }
}

TEST_CASE("with_snr_db", "[montecarlo]")
{
    const auto cfg = with_snr_db(reference(0.0), 45.0);
    CHECK_THAT(cfg.snr(), WithinRel(std::pow(10.0, 4.5), 1e-14));
}
