// SPDX-License-Identifier: Apache-2.0
//
// swipt: outage, diversity and energy-efficiency calculator for a SWIPT
// two-way DF relay with hardware impairments.
//
//   swipt analytic --config configs/table2.cfg --set Po_dBm=0
//   swipt sweep --config configs/table2.cfg --param Po_dBm --range -10:30:5 --mode both
//
// Parameters come from the built-in reference set, then --config, then --set
// (later wins). All output is CSV on standard output unless --output is given.
// SWIPT_WORKERS sets the Monte Carlo thread count.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "swipt/analytics.hpp"
#include "swipt/config.hpp"
#include "swipt/montecarlo.hpp"
#include "swipt/sweep.hpp"

namespace
{

using namespace swipt;

struct Common
{
    std::string config_path;
    std::vector<std::string> overrides;
    bool literal = false;
    std::string output;

    void attach(CLI::App *app, bool with_literal = true)
    {
        app->add_option("-c,--config", config_path, "key = value config file")->check(CLI::ExistingFile);
        app->add_option("-s,--set", overrides, "override one key, e.g. --set Po_dBm=5")->take_all();
        app->add_option("-o,--output", output, "write CSV here instead of standard output");
        if (with_literal)
            app->add_flag("--literal-p2", literal, "evaluate P_out = P1 (1 - P2) with P2 in its direct closed form");
    }

    SystemConfig build() const
    {
        auto kv = config::reference_defaults();
        if (!config_path.empty())
            kv = config::overlay(kv, config::read_key_values(config_path));
        config::KeyValues flags;
        for (const auto &s : overrides)
        {
            auto [k, v] = config::parse_assignment(s);
            flags.insert_or_assign(k, v);
        }
        return config::config_from_values(config::overlay(kv, flags));
    }

    analytics::Evaluation evaluation() const
    {
        return literal ? analytics::Evaluation::Literal : analytics::Evaluation::Complementary;
    }

    template <typename F>
    void emit(F &&write) const
    {
        if (output.empty())
        {
            write(std::cout);
            std::cout.flush();
            if (!std::cout)
                throw std::runtime_error("write to standard output failed");
            return;
        }
        std::ofstream out(output);
        if (!out)
            throw std::runtime_error("cannot open '" + output + "' for writing");
        write(out);
        out.flush();
        if (!out)
            throw std::runtime_error("write to '" + output + "' failed");
    }
};

std::vector<double> parse_range(const std::string &text)
{
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':'))
        parts.push_back(config::parse_real("range", item));
    if (parts.size() != 3)
        throw std::invalid_argument("--range must look like start:stop:step");
    return sweep::linear_range(parts[0], parts[1], parts[2]);
}

std::vector<double> sweep_values(const std::string &range, const std::vector<std::string> &list)
{
    if (!range.empty() && !list.empty())
        throw std::invalid_argument("give either --range or --values, not both");
    if (!range.empty())
        return parse_range(range);
    std::vector<double> v;
    for (const auto &s : list)
        v.push_back(config::parse_real("values", s));
    if (v.empty())
        throw std::invalid_argument("a sweep needs --range or --values");
    return v;
}

using sweep::format_number;

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"SWIPT two-way DF relay outage calculator"};
    app.require_subcommand(1);

    // analytic
    Common analytic_opts;
    auto *analytic_cmd = app.add_subcommand("analytic", "closed-form outage breakdown at one configuration");
    analytic_opts.attach(analytic_cmd);

    // simulate
    Common sim_opts;
    std::uint64_t sim_trials = 1000000, sim_seed = 1;
    std::string sim_event = "system_outage";
    auto *sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimate at one configuration");
    sim_opts.attach(sim_cmd, false);
    sim_cmd->add_option("-n,--trials", sim_trials, "channel draws")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim_seed, "RNG seed");
    sim_cmd->add_option("--event", sim_event,
                        "system_outage | direct_outage | relay_joint_success | t2t_a | t2t_b");

    // sweep
    Common sweep_opts;
    std::string sweep_param = "Po_dBm", sweep_range, sweep_mode = "analytic";
    std::vector<std::string> sweep_list;
    std::uint64_t sweep_trials = 1000000, sweep_seed = 1;
    auto *sweep_cmd = app.add_subcommand("sweep", "vary one parameter and tabulate");
    sweep_opts.attach(sweep_cmd);
    sweep_cmd->add_option("-p,--param", sweep_param, "Po_dBm | beta | gamma_th | R_th | N | k_ave");
    sweep_cmd->add_option("-r,--range", sweep_range, "start:stop:step, stop inclusive");
    sweep_cmd->add_option("-v,--values", sweep_list, "explicit list of values")->delimiter(',');
    sweep_cmd->add_option("-m,--mode", sweep_mode, "analytic | simulation | both");
    sweep_cmd->add_option("-n,--trials", sweep_trials, "channel draws per point")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", sweep_seed, "RNG seed, shared by all points");

    // optimal-beta
    Common beta_opts;
    int beta_points = 199;
    auto *beta_cmd = app.add_subcommand("optimal-beta", "scan the power-splitting ratio for minimum outage");
    beta_opts.attach(beta_cmd, false);
    beta_cmd->add_option("--points", beta_points, "grid points on [0.005, 0.995]")->check(CLI::Range(3, 100000));

    // diversity
    Common div_opts;
    std::uint64_t div_trials = 0, div_seed = 1;
    double rho_low = 40.0, rho_high = 50.0;
    auto *div_cmd = app.add_subcommand("diversity", "diversity gain, optionally with a simulated slope");
    div_opts.attach(div_cmd, false);
    div_cmd->add_option("-n,--trials", div_trials, "draws per SNR point; 0 skips the simulated slope");
    div_cmd->add_option("--seed", div_seed, "RNG seed, shared by both points");
    div_cmd->add_option("--rho-low", rho_low, "lower SNR point in dB");
    div_cmd->add_option("--rho-high", rho_high, "upper SNR point in dB");

    // ee
    Common ee_opts;
    std::string ee_range = "-30:30:1";
    auto *ee_cmd = app.add_subcommand("ee", "energy efficiency against transmit power");
    ee_opts.attach(ee_cmd);
    ee_cmd->add_option("-r,--range", ee_range, "Po_dBm start:stop:step");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*analytic_cmd)
        {
            const auto cfg = analytic_opts.build();
            const auto b = analytics::system_outage(cfg, analytic_opts.evaluation());
            analytic_opts.emit([&](std::ostream &out) {
                out << "gamma_th,osc_threshold,branch,p_out,p1,p2,delta1,delta2,phi,diversity,ee\n"
                    << format_number(link::sndr_threshold(cfg)) << ','
                    << format_number(analytics::osc_threshold(cfg.hardware)) << ','
                    << analytics::to_string(b.branch) << ',' << format_number(b.p_out) << ','
                    << format_number(b.p1) << ',' << format_number(b.p2) << ',' << format_number(b.delta1) << ','
                    << format_number(b.delta2) << ',' << format_number(b.phi) << ','
                    << analytics::diversity_gain(cfg) << ','
                    << format_number(analytics::energy_efficiency(cfg, b.p_out)) << '\n';
            });
        }
        else if (*sim_cmd)
        {
            const auto cfg = sim_opts.build();
            const auto event = montecarlo::parse_link_event(sim_event);
            const auto e = montecarlo::estimate_link_probability(cfg, sim_trials, sim_seed, event);
            sim_opts.emit([&](std::ostream &out) {
                out << "event,value,std_error,count,trials,seed\n"
                    << sim_event << ',' << format_number(e.value) << ',' << format_number(e.std_error) << ','
                    << e.count << ',' << e.trials << ',' << e.seed << '\n';
            });
        }
        else if (*sweep_cmd)
        {
            const auto cfg = sweep_opts.build();
            sweep::SweepSpec spec;
            spec.parameter = sweep::parse_parameter(sweep_param);
            spec.values = sweep_values(sweep_range, sweep_list);
            spec.mode = sweep::parse_mode(sweep_mode);
            spec.trials = sweep_trials;
            spec.seed = sweep_seed;
            spec.output = sweep_opts.output;
            spec.evaluation = sweep_opts.evaluation();
            const auto rows = sweep::run_sweep(spec, cfg);
            sweep_opts.emit([&](std::ostream &out) { sweep::write_csv(out, spec, rows); });
        }
        else if (*beta_cmd)
        {
            const auto cfg = beta_opts.build();
            analytics::BetaSearchOptions opt;
            opt.points = beta_points;
            const auto search = analytics::optimal_beta(cfg, opt);
            std::cerr << "beta_opt=" << format_number(search.beta) << " p_out=" << format_number(search.p_out)
                      << '\n';
            beta_opts.emit([&](std::ostream &out) { sweep::write_beta_csv(out, search); });
        }
        else if (*div_cmd)
        {
            const auto cfg = div_opts.build();
            const int gain = analytics::diversity_gain(cfg);
            std::string slope;
            if (div_trials > 0)
                slope = format_number(montecarlo::measure_diversity_slope(cfg, rho_low, rho_high, div_trials, div_seed));
            div_opts.emit([&](std::ostream &out) {
                out << "diversity_gain,rho_low_dB,rho_high_dB,slope,trials,seed\n"
                    << gain << ',' << format_number(rho_low) << ',' << format_number(rho_high) << ',' << slope << ','
                    << div_trials << ',' << div_seed << '\n';
            });
        }
        else if (*ee_cmd)
        {
            const auto cfg = ee_opts.build();
            const auto grid = parse_range(ee_range);
            ee_opts.emit([&](std::ostream &out) {
                out << "Po_dBm,p_out,ee\n";
                for (double po : grid)
                {
                    const auto point = sweep::apply(cfg, sweep::Parameter::PoDbm, po);
                    const double p_out = analytics::system_outage(point, ee_opts.evaluation()).p_out;
                    out << format_number(po) << ',' << format_number(p_out) << ','
                        << format_number(analytics::energy_efficiency(point, p_out)) << '\n';
                }
            });
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "swipt: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
