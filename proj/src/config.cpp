// SPDX-License-Identifier: Apache-2.0
//
// mmwave-cellsearch: link-level initial cell search simulator for mmWave receivers
// Copyright (C) 2026 The mmwave-cellsearch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cellsearch/config.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace cellsearch
{

using nlohmann::json;

double degrees_to_radians(double deg)
{
    return deg * std::numbers::pi / 180.0;
}

double radians_to_degrees(double rad)
{
    return rad * 180.0 / std::numbers::pi;
}

std::string read_text_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("", "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

namespace
{

void reject_unknown(const json &object, const std::string &prefix, const std::set<std::string> &allowed)
{
    for (const auto &[key, _] : object.items())
        if (!allowed.count(key))
            throw ConfigError(prefix + key, "unknown key");
}

const json &require_object(const json &parent, const std::string &key, const std::string &path)
{
    if (!parent.contains(key))
        throw ConfigError(path, "missing required key");
    const json &v = parent.at(key);
    if (!v.is_object())
        throw ConfigError(path, "expected an object");
    return v;
}

double get_number(const json &parent, const std::string &key, const std::string &path, double fallback)
{
    if (!parent.contains(key))
        return fallback;
    const json &v = parent.at(key);
    if (!v.is_number())
        throw ConfigError(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
        throw ConfigError(path, "must be finite");
    return x;
}

std::size_t get_count(const json &v, const std::string &path)
{
    if (!v.is_number_integer() || v.get<long long>() < 1)
        throw ConfigError(path, "expected a positive integer");
    return v.get<std::size_t>();
}

std::size_t get_count(const json &parent, const std::string &key, const std::string &path, std::size_t fallback)
{
    if (!parent.contains(key))
        return fallback;
    return get_count(parent.at(key), path);
}

const json &require_array(const json &parent, const std::string &key)
{
    if (!parent.contains(key))
        throw ConfigError(key, "missing required key");
    const json &v = parent.at(key);
    if (!v.is_array() || v.empty())
        throw ConfigError(key, "expected a non-empty array");
    return v;
}

// Re-raises a module validation failure as a ConfigError tied to its config section.
template <typename Fn> void validate_section(const std::string &section, Fn &&fn)
{
    try
    {
        fn();
    }
    catch (const std::invalid_argument &e)
    {
        std::string what = e.what();
        // module messages start with "channel.n_bs ..." style keys where available
        const auto space = what.find(' ');
        const std::string key = what.rfind(section + ".", 0) == 0 && space != std::string::npos
                                    ? what.substr(0, space)
                                    : section;
        throw ConfigError(key, what);
    }
}

} // namespace

ExperimentConfig parse_experiment_config(const std::string &text)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError("", std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("", "config must be a JSON object");

    reject_unknown(doc, "",
                   {"name", "description", "channel", "link", "strategies", "distances_m", "phi_e_max_deg", "n_ms",
                    "threshold_db", "n_trials", "master_seed"});

    ExperimentConfig cfg;
    if (doc.contains("name"))
    {
        if (!doc.at("name").is_string() || doc.at("name").get<std::string>().empty())
            throw ConfigError("name", "expected a non-empty string");
        cfg.name = doc.at("name").get<std::string>();
        if (cfg.name.find_first_of("/\\") != std::string::npos)
            throw ConfigError("name", "must not contain path separators");
    }
    if (doc.contains("description") && !doc.at("description").is_string())
        throw ConfigError("description", "expected a string");

    const json &ch = require_object(doc, "channel", "channel");
    reject_unknown(ch, "channel.",
                   {"n_bs", "n_paths", "rician_k", "carrier_freq_hz", "pathloss_exponent", "reference_distance_m"});
    cfg.channel.n_bs = get_count(ch, "n_bs", "channel.n_bs", cfg.channel.n_bs);
    cfg.channel.n_paths = get_count(ch, "n_paths", "channel.n_paths", cfg.channel.n_paths);
    cfg.channel.rician_k = get_number(ch, "rician_k", "channel.rician_k", cfg.channel.rician_k);
    cfg.channel.carrier_freq_hz = get_number(ch, "carrier_freq_hz", "channel.carrier_freq_hz", cfg.channel.carrier_freq_hz);
    cfg.channel.pathloss_exponent =
        get_number(ch, "pathloss_exponent", "channel.pathloss_exponent", cfg.channel.pathloss_exponent);
    cfg.channel.reference_distance_m =
        get_number(ch, "reference_distance_m", "channel.reference_distance_m", cfg.channel.reference_distance_m);
    validate_section("channel", [&] { cfg.channel.validate(); });
    if (!is_power_of_two(cfg.channel.n_bs))
        throw ConfigError("channel.n_bs", "must be a power of two");

    if (doc.contains("link"))
    {
        const json &ln = require_object(doc, "link", "link");
        reject_unknown(ln, "link.", {"tx_power_dbm", "noise_figure_db", "thermal_density_dbm_hz", "bandwidth_hz"});
        cfg.budget.tx_power_dbm = get_number(ln, "tx_power_dbm", "link.tx_power_dbm", cfg.budget.tx_power_dbm);
        cfg.budget.noise_figure_db = get_number(ln, "noise_figure_db", "link.noise_figure_db", cfg.budget.noise_figure_db);
        cfg.budget.thermal_density_dbm_hz =
            get_number(ln, "thermal_density_dbm_hz", "link.thermal_density_dbm_hz", cfg.budget.thermal_density_dbm_hz);
        cfg.budget.bandwidth_hz = get_number(ln, "bandwidth_hz", "link.bandwidth_hz", cfg.budget.bandwidth_hz);
        validate_section("link", [&] { cfg.budget.validate(); });
    }

    const json &strategies = require_array(doc, "strategies");
    for (std::size_t i = 0; i < strategies.size(); ++i)
    {
        const std::string path = "strategies[" + std::to_string(i) + "]";
        const json &s = strategies.at(i);
        if (!s.is_object())
            throw ConfigError(path, "expected an object");
        reject_unknown(s, path + ".", {"search", "scheme", "branches"});
        if (!s.contains("search") || !s.at("search").is_string())
            throw ConfigError(path + ".search", "expected one of CI, ES, RS");
        const auto kind = parse_search(s.at("search").get<std::string>());
        if (!kind)
            throw ConfigError(path + ".search", "expected one of CI, ES, RS");
        SearchStrategy strategy;
        strategy.kind = *kind;
        if (s.contains("scheme"))
        {
            if (!s.at("scheme").is_string())
                throw ConfigError(path + ".scheme", "expected one of ABF, PSN, HBF, DBF");
            const auto arch = parse_architecture(s.at("scheme").get<std::string>());
            if (!arch)
                throw ConfigError(path + ".scheme", "expected one of ABF, PSN, HBF, DBF");
            strategy.scheme.architecture = *arch;
        }
        strategy.scheme.branches = get_count(s, "branches", path + ".branches", 1);
        if (strategy.scheme.architecture == Architecture::abf && strategy.scheme.branches != 1)
            throw ConfigError(path + ".branches", "ABF has exactly one branch");
        if (strategy.kind != SearchKind::ci && strategy.scheme.architecture != Architecture::abf)
            throw ConfigError(path + ".scheme", "ES and RS search use ABF at the MS");
        cfg.strategies.push_back(strategy);
    }

    for (const json &d : require_array(doc, "distances_m"))
    {
        if (!d.is_number() || !(d.get<double>() >= cfg.channel.reference_distance_m))
            throw ConfigError("distances_m", "entries must be numbers no smaller than the reference distance");
        cfg.distances_m.push_back(d.get<double>());
    }
    for (const json &e : require_array(doc, "phi_e_max_deg"))
    {
        if (!e.is_number() || !(e.get<double>() >= 0.0) || !(e.get<double>() <= 180.0))
            throw ConfigError("phi_e_max_deg", "entries must be numbers in [0, 180]");
        cfg.max_angular_errors.push_back(degrees_to_radians(e.get<double>()));
    }
    for (const json &n : require_array(doc, "n_ms"))
    {
        const std::size_t v = get_count(n, "n_ms");
        if (!is_power_of_two(v))
            throw ConfigError("n_ms", "entries must be powers of two");
        cfg.n_ms.push_back(v);
    }
    for (const auto &strategy : cfg.strategies)
        for (std::size_t n : cfg.n_ms)
        {
            if (strategy.scheme.architecture == Architecture::dbf)
                continue;
            if (strategy.scheme.branches > 2 * n ||
                (strategy.scheme.architecture == Architecture::hbf && strategy.scheme.branches > n))
                throw ConfigError("strategies", "branch count " + std::to_string(strategy.scheme.branches) +
                                                    " does not fit an MS array of " + std::to_string(n));
        }

    cfg.threshold_db = get_number(doc, "threshold_db", "threshold_db", cfg.threshold_db);
    cfg.n_trials = get_count(doc, "n_trials", "n_trials", cfg.n_trials);
    if (doc.contains("master_seed"))
    {
        const json &seed = doc.at("master_seed");
        if (!seed.is_number_integer() || (seed.is_number_integer() && !seed.is_number_unsigned() && seed.get<long long>() < 0))
            throw ConfigError("master_seed", "expected a non-negative 64-bit integer");
        cfg.master_seed = seed.get<std::uint64_t>();
    }

    validate_section("config", [&] { cfg.validate(); });
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path &path)
{
    return parse_experiment_config(read_text_file(path));
}

} // namespace cellsearch
