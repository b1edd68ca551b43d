// SPDX-License-Identifier: Apache-2.0
#pragma once

// Flat "key = value" configuration files.
//
//   # comment
//   eta = 0.6
//   Po_dBm = 10
//
// Required keys: eta, beta, T, k1 and k2 (or k_ave), noise_dBm, Po_dBm, R_th,
// N, m_a, m_b, m_d, and for each link either its average power (omega_a,
// omega_b, omega_d) or its distance (d_ar, d_br, d_ab) with the path-loss
// exponent (alpha1 for the relay links, alpha2 for the direct link).
// Optional: bandwidth_Hz, which is recorded but enters no formula.

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "swipt/errors.hpp"
#include "swipt/linkmodel.hpp"

namespace swipt::config
{

using KeyValues = std::map<std::string, std::string, std::less<>>;

inline const std::set<std::string, std::less<>> &known_keys()
{
    static const std::set<std::string, std::less<>> keys{
        "eta",    "beta",    "T",       "k1",        "k2",     "k_ave",   "d_ar",    "d_br",    "d_ab",
        "alpha1", "alpha2",  "omega_a", "omega_b",   "omega_d", "noise_dBm", "Po_dBm", "R_th", "N",
        "m_a",    "m_b",     "m_d",     "bandwidth_Hz"};
    return keys;
}

// Parameters of the reference scenario: eta 0.6, beta 0.9, T 1 s, 5/5/10 m
// links with exponents 2.7 (relay) and 3 (direct), -50 dBm noise, 1 MHz,
// plus k_ave 0.1, shapes {2, 2, 1}, P_o 10 dBm, R_th 1, N 16.
inline KeyValues reference_defaults()
{
    return {{"eta", "0.6"},       {"beta", "0.9"},   {"T", "1"},        {"k_ave", "0.1"},
            {"d_ar", "5"},        {"d_br", "5"},     {"d_ab", "10"},    {"alpha1", "2.7"},
            {"alpha2", "3"},      {"noise_dBm", "-50"}, {"Po_dBm", "10"}, {"R_th", "1"},
            {"N", "16"},          {"m_a", "2"},      {"m_b", "2"},      {"m_d", "1"},
            {"bandwidth_Hz", "1e6"}};
}

namespace detail
{
inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}
} // namespace detail

inline double parse_real(std::string_view key, std::string_view text)
{
    text = detail::trim(text);
    double value = 0.0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value))
        throw ConfigError(std::string(key), "not a finite number: '" + std::string(text) + "'");
    return value;
}

inline int parse_integer(std::string_view key, std::string_view text)
{
    const double v = parse_real(key, text);
    if (std::floor(v) != v || std::abs(v) > 1e9)
        throw ConfigError(std::string(key), "must be an integer, got '" + std::string(detail::trim(text)) + "'");
    return static_cast<int>(v);
}

// Splits "key = value" lines. Unknown and repeated keys are errors.
inline KeyValues parse_key_values(std::istream &in)
{
    KeyValues kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = detail::trim(view);
        if (view.empty())
            continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(std::string(view), "line " + std::to_string(line_no) + " is not of the form key = value");
        const std::string key(detail::trim(view.substr(0, eq)));
        const std::string value(detail::trim(view.substr(eq + 1)));
        if (!known_keys().contains(key))
            throw ConfigError(key, "unknown key");
        if (!kv.emplace(key, value).second)
            throw ConfigError(key, "given more than once");
    }
    return kv;
}

// Entries of `top` replace those of `base`.
inline KeyValues overlay(KeyValues base, const KeyValues &top)
{
    for (const auto &[k, v] : top)
    {
        if (!known_keys().contains(k))
            throw ConfigError(k, "unknown key");
        // k_ave and k1/k2 are alternatives; the more specific layer wins.
        if (k == "k_ave")
        {
            base.erase("k1");
            base.erase("k2");
        }
        else if (k == "k1" || k == "k2")
        {
            base.erase("k_ave");
        }
        base.insert_or_assign(k, v);
    }
    return base;
}

inline SystemConfig config_from_values(const KeyValues &kv)
{
    auto get = [&](std::string_view key) -> const std::string & {
        const auto it = kv.find(key);
        if (it == kv.end())
            throw ConfigError(std::string(key), "missing");
        return it->second;
    };
    auto real = [&](std::string_view key) { return parse_real(key, get(key)); };
    auto has = [&](std::string_view key) { return kv.contains(key); };

    SystemConfig cfg;
    cfg.eta = real("eta");
    if (!(cfg.eta > 0.0 && cfg.eta < 1.0))
        throw ConfigError("eta", "must lie in (0, 1)");
    cfg.beta = real("beta");
    if (!(cfg.beta > 0.0 && cfg.beta < 1.0))
        throw ConfigError("beta", "must lie in (0, 1)");
    cfg.block_duration_s = real("T");
    if (!(cfg.block_duration_s > 0.0))
        throw ConfigError("T", "must be > 0");

    if (has("k_ave"))
    {
        if (has("k1") || has("k2"))
            throw ConfigError("k_ave", "cannot be combined with k1/k2");
        const double k = real("k_ave");
        cfg.hardware = {k, k};
    }
    else
    {
        cfg.hardware = {real("k1"), real("k2")};
    }
    if (cfg.hardware.k1 < 0.0)
        throw ConfigError(has("k_ave") ? "k_ave" : "k1", "must be >= 0");
    if (cfg.hardware.k2 < 0.0)
        throw ConfigError("k2", "must be >= 0");

    cfg.noise_power_w = dbm_to_watts(real("noise_dBm"));
    cfg.transmit_power_w = dbm_to_watts(real("Po_dBm"));
    cfg.target_rate = real("R_th");
    if (!(cfg.target_rate > 0.0))
        throw ConfigError("R_th", "must be > 0");
    cfg.quadrature_order = parse_integer("N", get("N"));
    if (cfg.quadrature_order < 1)
        throw ConfigError("N", "must be >= 1");
    if (has("bandwidth_Hz"))
    {
        cfg.bandwidth_hz = real("bandwidth_Hz");
        if (!(cfg.bandwidth_hz > 0.0))
            throw ConfigError("bandwidth_Hz", "must be > 0");
    }

    auto shape = [&](std::string_view key) {
        const int m = parse_integer(key, get(key));
        if (m < 1)
            throw ConfigError(std::string(key), "shape must be >= 1");
        return m;
    };
    cfg.channels.m_a = shape("m_a");
    cfg.channels.m_b = shape("m_b");
    cfg.channels.m_d = shape("m_d");

    auto average_power = [&](std::string_view omega_key, std::string_view distance_key,
                             std::string_view exponent_key) {
        double omega = 0.0;
        std::string_view blamed = omega_key;
        if (has(omega_key))
        {
            omega = real(omega_key);
        }
        else
        {
            const double d = real(distance_key);
            if (!(d > 0.0))
                throw ConfigError(std::string(distance_key), "must be > 0");
            omega = std::pow(d, -real(exponent_key));
            blamed = distance_key;
        }
        if (!(omega > 0.0) || !std::isfinite(omega))
            throw ConfigError(std::string(blamed), "average power must be finite and > 0");
        return omega;
    };
    cfg.channels.omega_a = average_power("omega_a", "d_ar", "alpha1");
    cfg.channels.omega_b = average_power("omega_b", "d_br", "alpha1");
    cfg.channels.omega_d = average_power("omega_d", "d_ab", "alpha2");

    cfg.validate();
    return cfg;
}

inline KeyValues read_key_values(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path + "'");
    return parse_key_values(in);
}

inline SystemConfig load_config(const std::string &path) { return config_from_values(read_key_values(path)); }

// Parses "key=value" as given on the command line.
inline std::pair<std::string, std::string> parse_assignment(std::string_view text)
{
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError(std::string(text), "override must look like key=value");
    std::string key(detail::trim(text.substr(0, eq)));
    if (!known_keys().contains(key))
        throw ConfigError(key, "unknown key");
    return {key, std::string(detail::trim(text.substr(eq + 1)))};
}

} // namespace swipt::config
