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

#include "cellsearch/power.hpp"

#include "cellsearch/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cellsearch
{

const std::vector<std::string> &PowerComponents::keys()
{
    static const std::vector<std::string> names = {"p_lna", "p_ps",  "p_c",  "p_m",    "p_lo",  "p_lpf",
                                                   "p_bb_amp", "p_sp", "p_sw", "p_comp", "adc_c", "adc_bandwidth"};
    return names;
}

double &PowerComponents::field(const std::string &key)
{
    if (key == "p_lna")
        return p_lna;
    if (key == "p_ps")
        return p_ps;
    if (key == "p_c")
        return p_c;
    if (key == "p_m")
        return p_m;
    if (key == "p_lo")
        return p_lo;
    if (key == "p_lpf")
        return p_lpf;
    if (key == "p_bb_amp")
        return p_bb_amp;
    if (key == "p_sp")
        return p_sp;
    if (key == "p_sw")
        return p_sw;
    if (key == "p_comp")
        return p_comp;
    if (key == "adc_c")
        return adc_c;
    if (key == "adc_bandwidth")
        return adc_bandwidth;
    throw ConfigError(key, "unknown power component");
}

double PowerComponents::field(const std::string &key) const
{
    return const_cast<PowerComponents *>(this)->field(key);
}

void PowerComponents::validate() const
{
    for (const auto &key : keys())
    {
        const double v = field(key);
        if (!std::isfinite(v) || v < 0.0)
            throw ConfigError(key, "must be a finite non-negative number");
    }
    if (adc_c <= 0.0)
        throw ConfigError("adc_c", "must be positive");
    if (adc_bandwidth <= 0.0)
        throw ConfigError("adc_bandwidth", "must be positive");
}

double adc_power(double c, double bandwidth_hz, int bits)
{
    if (bits < 1)
        throw std::invalid_argument("adc_power: at least one bit is required");
    if (!(c > 0.0) || !(bandwidth_hz > 0.0))
        throw std::invalid_argument("adc_power: c and B must be positive");
    return c * bandwidth_hz * std::ldexp(1.0, bits);
}

const std::vector<std::string> &power_term_names()
{
    static const std::vector<std::string> names = {"lna_w",    "splitters_w", "phase_shifters_w", "combiners_w",
                                                   "rf_chains_w", "adcs_w",    "comparator_w",     "switch_w"};
    return names;
}

PowerBreakdown total_power(const SchemeKind &scheme, const PowerComponents &comps, std::size_t n_ms, int bits)
{
    if (n_ms == 0)
        throw std::invalid_argument("total_power: n_ms must be positive");
    if (scheme.architecture != Architecture::dbf && scheme.architecture != Architecture::abf && scheme.branches == 0)
        throw std::invalid_argument("total_power: branch count must be positive");

    const double n = static_cast<double>(n_ms);
    const double k = static_cast<double>(scheme.branches);
    const double adc_pair = 2.0 * adc_power(comps.adc_c, comps.adc_bandwidth, bits);
    const double rf = comps.p_rf();

    double lna = n * comps.p_lna;
    double splitters = 0.0, phase_shifters = 0.0, combiners = 0.0, rf_chains = 0.0, adcs = 0.0;
    double comparator = 0.0, sw = 0.0;

    switch (scheme.architecture)
    {
    case Architecture::abf:
        phase_shifters = n * comps.p_ps;
        combiners = comps.p_c;
        rf_chains = rf;
        adcs = adc_pair;
        break;
    case Architecture::dbf:
        rf_chains = n * rf;
        adcs = n * adc_pair;
        break;
    case Architecture::hbf:
        splitters = n * comps.p_sp;
        phase_shifters = n * k * comps.p_ps;
        combiners = k * comps.p_c;
        rf_chains = k * rf;
        adcs = k * adc_pair;
        break;
    case Architecture::psn:
        splitters = n * comps.p_sp;
        phase_shifters = n * k * comps.p_ps;
        combiners = k * comps.p_c;
        rf_chains = rf;
        adcs = adc_pair;
        comparator = comps.p_comp;
        sw = comps.p_sw;
        break;
    default:
        throw std::invalid_argument("total_power: unknown scheme");
    }

    PowerBreakdown out;
    out.scheme = scheme;
    out.n_ms = n_ms;
    out.adc_bits = bits;
    out.adc_iq_pair = adc_pair;
    const double terms[] = {lna, splitters, phase_shifters, combiners, rf_chains, adcs, comparator, sw};
    const auto &names = power_term_names();
    for (std::size_t i = 0; i < names.size(); ++i)
    {
        out.per_component.emplace_back(names[i], terms[i]);
        out.total += terms[i];
    }
    return out;
}

PowerComponents parse_power_components(const std::string &text)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(text, nullptr, true, true);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw ConfigError("", std::string("component file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("", "component file must be a JSON object");

    const auto &keys = PowerComponents::keys();
    const std::set<std::string> known(keys.begin(), keys.end());
    for (const auto &[key, _] : doc.items())
        if (key != "_comment" && !known.count(key))
            throw ConfigError(key, "unknown power component key");

    PowerComponents comps;
    for (const auto &key : keys)
    {
        if (!doc.contains(key))
            throw ConfigError(key, "missing power component");
        const auto &entry = doc.at(key);
        if (!entry.is_object() || !entry.contains("value") || !entry.at("value").is_number())
            throw ConfigError(key, "expected an object with a numeric \"value\"");
        if (!entry.contains("source") || !entry.at("source").is_string() ||
            entry.at("source").get<std::string>().empty())
            throw ConfigError(key, "every component needs a non-empty \"source\" annotation");
        for (const auto &[field, _] : entry.items())
            if (field != "value" && field != "source")
                throw ConfigError(key + "." + field, "unknown field");
        comps.field(key) = entry.at("value").get<double>();
        comps.sources[key] = entry.at("source").get<std::string>();
    }
    comps.validate();
    return comps;
}

PowerComponents load_power_components(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot open component file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_power_components(buffer.str());
}

} // namespace cellsearch
