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

#ifndef CELLSEARCH_POWER_HPP
#define CELLSEARCH_POWER_HPP

#include "cellsearch/schemes.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cellsearch
{

/// Per-unit power draw of the receiver building blocks, watts unless noted.
struct PowerComponents
{
    double p_lna = 0.0;
    double p_ps = 0.0;       // phase shifter
    double p_c = 0.0;        // combiner
    double p_m = 0.0;        // mixer
    double p_lo = 0.0;       // local oscillator
    double p_lpf = 0.0;      // low pass filter
    double p_bb_amp = 0.0;   // baseband amplifier
    double p_sp = 0.0;       // splitter
    double p_sw = 0.0;       // switch
    double p_comp = 0.0;     // comparator
    double adc_c = 0.0;      // J per conversion step
    double adc_bandwidth = 0.0; // Hz

    /// Mixer + LO + LPF + baseband amplifier.
    double p_rf() const { return p_m + p_lo + p_lpf + p_bb_amp; }

    void validate() const;

    /// The component keys, in file order.
    static const std::vector<std::string> &keys();
    double &field(const std::string &key);
    double field(const std::string &key) const;

    /// Per-key provenance notes as read from the component file.
    std::map<std::string, std::string> sources;
};

/// c B 2^b. Throws std::invalid_argument for b < 1 or non-positive c, B.
double adc_power(double c, double bandwidth_hz, int bits);

struct PowerBreakdown
{
    SchemeKind scheme;
    std::size_t n_ms = 0;
    int adc_bits = 0;
    double total = 0.0;
    double adc_iq_pair = 0.0; // 2 P_ADC, one I/Q converter pair
    std::vector<std::pair<std::string, double>> per_component; // contribution of every block type
};

/// Column names of PowerBreakdown::per_component, in order.
const std::vector<std::string> &power_term_names();

/// Total receiver power:
///   ABF  N (P_LNA + P_PS) + P_C + P_RF + 2 P_ADC
///   DBF  N (P_LNA + P_RF + 2 P_ADC)
///   HBF  N (P_LNA + P_SP + N_RF P_PS) + N_RF (P_C + P_RF + 2 P_ADC)
///   PSN  N (P_LNA + P_SP + N_C P_PS) + N_C P_C + P_RF + P_Comp + P_Sw + 2 P_ADC
PowerBreakdown total_power(const SchemeKind &scheme, const PowerComponents &comps, std::size_t n_ms, int bits);

/// Loads a component file: a JSON object mapping every key of PowerComponents::keys() to
/// {"value": number, "source": string}. Throws ConfigError naming the offending key.
PowerComponents load_power_components(const std::filesystem::path &path);
PowerComponents parse_power_components(const std::string &text);

} // namespace cellsearch

#endif
