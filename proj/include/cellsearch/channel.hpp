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

#ifndef CELLSEARCH_CHANNEL_HPP
#define CELLSEARCH_CHANNEL_HPP

#include "cellsearch/array.hpp"
#include "cellsearch/rng.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace cellsearch
{

inline constexpr double speed_of_light = 299792458.0;

struct ChannelParams
{
    std::size_t n_bs = 64;
    std::size_t n_ms = 16;
    std::size_t n_paths = 1;
    double rician_k = 10.0;              // linear
    double carrier_freq_hz = 28e9;
    double pathloss_exponent = 2.2;
    double reference_distance_m = 1.0;

    double wavelength_m() const { return speed_of_light / carrier_freq_hz; }

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// One draw of the geometric channel
///   H = sqrt(N_BS N_MS / (rho L)) sum_l eta_l a_MS(phi_l) a_BS(theta_l)^H
struct ChannelRealization
{
    CMatrix h;                                 // N_MS x N_BS
    std::vector<double> aoa;                   // phi_l, radians
    std::vector<double> aod;                   // theta_l, radians
    std::vector<std::complex<double>> gains;   // eta_l
    double pathloss = 1.0;                     // rho, linear

    double true_aoa() const { return aoa.front(); }
    double true_aod() const { return aod.front(); }
};

struct LinkBudget
{
    double tx_power_dbm = 30.0;
    double noise_figure_db = 5.0;
    double thermal_density_dbm_hz = -174.0;
    double bandwidth_hz = 500e6;

    double tx_power_w() const;
    void validate() const;
};

/// Log-distance path loss with a free-space intercept at the reference distance:
/// 20 log10(4 pi d0 / lambda) + 10 alpha log10(d / d0) dB, returned as a linear ratio.
double path_loss(double distance_m, const ChannelParams &params);
double path_loss_db(double distance_m, const ChannelParams &params);

/// Unit-mean-power Rician gain sqrt(k/(k+1)) e^{j chi} + sqrt(1/(k+1)) g.
/// k = +inf gives the pure line-of-sight term.
std::complex<double> rician_gain(double k, Rng &rng);

/// Builds H from explicit path parameters. All three vectors must have equal, non-zero length.
ChannelRealization assemble_channel(std::size_t n_bs, std::size_t n_ms, double pathloss, std::vector<double> aoa,
                                    std::vector<double> aod, std::vector<std::complex<double>> gains);

/// Draws AoA and AoD uniformly on [-pi/2, pi/2) and a Rician gain, in that order, per path.
ChannelRealization sample_channel(const ChannelParams &params, double distance_m, Rng &rng);

/// Thermal noise power in watts over the budget bandwidth.
double noise_power(const LinkBudget &budget);
double noise_power_dbm(const LinkBudget &budget);

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);

} // namespace cellsearch

#endif
