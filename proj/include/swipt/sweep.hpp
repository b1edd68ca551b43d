// SPDX-License-Identifier: Apache-2.0
#pragma once

// One-parameter sweeps and their CSV rendering.
//
// Sweep CSV columns, in order:
//   <param>    swept value (column named after the parameter, e.g. Po_dBm)
//   p_out      analytic outage probability
//   branch     osc_ceiling | p2_case_a | p2_case_b
//   p_out_sim  Monte Carlo outage estimate
//   std_error  binomial standard error of p_out_sim
//   p1, p2     direct-link outage and relay joint-success probabilities
//   delta      |p_out_sim - p_out| / p_out_sim
//   diversity  m_d + min(m_a, m_b) below the ceiling, else 0
//   ee         energy efficiency at the analytic p_out
// Cells that a mode does not produce are left empty.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "swipt/analytics.hpp"
#include "swipt/montecarlo.hpp"

namespace swipt::sweep
{

enum class Parameter
{
    PoDbm,
    Beta,
    GammaTh,
    RTh,
    N,
    KAve,
};

enum class Mode
{
    Analytic,
    Simulation,
    Both,
};

inline std::string_view to_string(Parameter p)
{
    switch (p)
    {
    case Parameter::PoDbm:
        return "Po_dBm";
    case Parameter::Beta:
        return "beta";
    case Parameter::GammaTh:
        return "gamma_th";
    case Parameter::RTh:
        return "R_th";
    case Parameter::N:
        return "N";
    case Parameter::KAve:
        return "k_ave";
    }
    return "unknown";
}

inline Parameter parse_parameter(std::string_view name)
{
    for (auto p : {Parameter::PoDbm, Parameter::Beta, Parameter::GammaTh, Parameter::RTh, Parameter::N,
                   Parameter::KAve})
        if (name == to_string(p))
            return p;
    throw std::invalid_argument("unknown sweep parameter '" + std::string(name) +
                                "' (expected Po_dBm, beta, gamma_th, R_th, N or k_ave)");
}

inline Mode parse_mode(std::string_view name)
{
    if (name == "analytic")
        return Mode::Analytic;
    if (name == "simulation")
        return Mode::Simulation;
    if (name == "both")
        return Mode::Both;
    throw std::invalid_argument("unknown sweep mode '" + std::string(name) + "' (expected analytic, simulation or both)");
}

inline bool has_analytic(Mode m) { return m != Mode::Simulation; }
inline bool has_simulation(Mode m) { return m != Mode::Analytic; }

// Inclusive arithmetic range; the stop value is kept when it lies on the grid
// up to rounding.
inline std::vector<double> linear_range(double start, double stop, double step)
{
    if (!(step > 0.0) || !std::isfinite(step))
        throw std::invalid_argument("sweep range: step must be > 0");
    if (!(stop >= start))
        throw std::invalid_argument("sweep range: stop must be >= start");
    const auto count = static_cast<std::uint64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 1000000)
        throw std::invalid_argument("sweep range: more than 10^6 points");
    std::vector<double> v;
    v.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
        v.push_back(start + static_cast<double>(i) * step);
    return v;
}

struct SweepSpec
{
    Parameter parameter = Parameter::PoDbm;
    std::vector<double> values;
    Mode mode = Mode::Analytic;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;
    std::string output; // empty: standard output
    analytics::Evaluation evaluation = analytics::Evaluation::Complementary;

    void validate() const
    {
        if (values.empty())
            throw std::invalid_argument("sweep: empty range");
        if (has_simulation(mode) && trials < 1)
            throw std::invalid_argument("sweep: trials must be >= 1 when simulating");
    }
};

// Returns cfg with the swept parameter set to `value`.
inline SystemConfig apply(SystemConfig cfg, Parameter p, double value)
{
    switch (p)
    {
    case Parameter::PoDbm:
        cfg.transmit_power_w = dbm_to_watts(value);
        break;
    case Parameter::Beta:
        cfg.beta = value;
        break;
    case Parameter::GammaTh:
        if (!(value > 0.0))
            throw std::invalid_argument("sweep: gamma_th must be > 0");
        cfg.target_rate = cfg.block_duration_s * std::log2(1.0 + value) / 3.0;
        break;
    case Parameter::RTh:
        cfg.target_rate = value;
        break;
    case Parameter::N:
        if (std::floor(value) != value || value < 1.0 || value > 1e6)
            throw std::invalid_argument("sweep: N must be a positive integer");
        cfg.quadrature_order = static_cast<int>(value);
        break;
    case Parameter::KAve:
        cfg.hardware = HardwareProfile::uniform(value);
        break;
    }
    cfg.validate();
    return cfg;
}

struct SweepRow
{
    double x = 0.0;
    std::optional<analytics::OutageBreakdown> analytic;
    std::optional<montecarlo::SimEstimate> simulated;
    int diversity = 0;
    std::optional<double> ee;

    std::optional<double> delta() const
    {
        if (!analytic || !simulated || simulated->value == 0.0)
            return std::nullopt;
        return std::abs(simulated->value - analytic->p_out) / simulated->value;
    }
};

// Every point is simulated with the same seed, so neighbouring points share
// their channel draws.
inline std::vector<SweepRow> run_sweep(const SweepSpec &spec, const SystemConfig &base,
                                       const montecarlo::RunOptions &opt = {})
{
    spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(spec.values.size());
    for (double x : spec.values)
    {
        const SystemConfig cfg = apply(base, spec.parameter, x);
        SweepRow row;
        row.x = x;
        row.diversity = analytics::diversity_gain(cfg);
        if (has_analytic(spec.mode))
        {
            row.analytic = analytics::system_outage(cfg, spec.evaluation);
            row.ee = analytics::energy_efficiency(cfg, row.analytic->p_out);
        }
        if (has_simulation(spec.mode))
            row.simulated = montecarlo::estimate_outage(cfg, spec.trials, spec.seed, opt);
        rows.push_back(row);
    }
    return rows;
}

inline std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string format_cell(const std::optional<double> &v) { return v ? format_number(*v) : std::string(); }

inline void write_csv(std::ostream &out, const SweepSpec &spec, const std::vector<SweepRow> &rows)
{
    out << to_string(spec.parameter) << ",p_out,branch,p_out_sim,std_error,p1,p2,delta,diversity,ee\n";
    for (const auto &r : rows)
    {
        std::optional<double> p_out, p1, p2, sim, se;
        std::string branch;
        if (r.analytic)
        {
            p_out = r.analytic->p_out;
            p1 = r.analytic->p1;
            p2 = r.analytic->p2;
            branch = std::string(analytics::to_string(r.analytic->branch));
        }
        if (r.simulated)
        {
            sim = r.simulated->value;
            se = r.simulated->std_error;
        }
        out << format_number(r.x) << ',' << format_cell(p_out) << ',' << branch << ',' << format_cell(sim) << ','
            << format_cell(se) << ',' << format_cell(p1) << ',' << format_cell(p2) << ',' << format_cell(r.delta())
            << ',' << r.diversity << ',' << format_cell(r.ee) << '\n';
    }
}

// Scan grid with the refined optimum merged in. Columns: beta,p_out,optimal.
inline void write_beta_csv(std::ostream &out, const analytics::BetaSearch &search)
{
    auto points = search.grid;
    const bool on_grid = std::any_of(points.begin(), points.end(),
                                     [&](const analytics::BetaPoint &p) { return p.beta == search.beta; });
    if (!on_grid)
        points.push_back({search.beta, search.p_out});
    std::sort(points.begin(), points.end(),
              [](const analytics::BetaPoint &l, const analytics::BetaPoint &r) { return l.beta < r.beta; });
    out << "beta,p_out,optimal\n";
    for (const auto &p : points)
        out << format_number(p.beta) << ',' << format_number(p.p_out) << ',' << (p.beta == search.beta ? 1 : 0)
            << '\n';
}

} // namespace swipt::sweep
