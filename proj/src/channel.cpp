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

#include "cellsearch/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cellsearch
{

namespace
{
void require(bool condition, const char *what)
{
    if (!condition)
        throw std::invalid_argument(what);
}
} // namespace

void ChannelParams::validate() const
{
    require(n_bs >= 1, "channel.n_bs must be positive");
    require(n_ms >= 1, "channel.n_ms must be positive");
    require(n_paths >= 1, "channel.n_paths must be positive");
    require(std::isfinite(rician_k) ? rician_k >= 0.0 : rician_k > 0.0, "channel.rician_k must be non-negative");
    require(std::isfinite(carrier_freq_hz) && carrier_freq_hz > 0.0, "channel.carrier_freq_hz must be positive");
    require(std::isfinite(pathloss_exponent) && pathloss_exponent > 0.0,
            "channel.pathloss_exponent must be positive");
    require(std::isfinite(reference_distance_m) && reference_distance_m > 0.0,
            "channel.reference_distance_m must be positive");
}

double LinkBudget::tx_power_w() const
{
    return dbm_to_watts(tx_power_dbm);
}

void LinkBudget::validate() const
{
    require(std::isfinite(tx_power_dbm), "link.tx_power_dbm must be finite");
    require(std::isfinite(noise_figure_db), "link.noise_figure_db must be finite");
    require(std::isfinite(thermal_density_dbm_hz), "link.thermal_density_dbm_hz must be finite");
    require(std::isfinite(bandwidth_hz) && bandwidth_hz > 0.0, "link.bandwidth_hz must be positive");
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

double dbm_to_watts(double dbm)
{
    return db_to_linear(dbm - 30.0);
}

double path_loss_db(double distance_m, const ChannelParams &params)
{
    const double d0 = params.reference_distance_m;
    if (!(distance_m >= d0))
        throw std::invalid_argument("path_loss: distance " + std::to_string(distance_m) +
                                    " m is below the reference distance");
    const double intercept = 20.0 * std::log10(4.0 * std::numbers::pi * d0 / params.wavelength_m());
    return intercept + 10.0 * params.pathloss_exponent * std::log10(distance_m / d0);
}

double path_loss(double distance_m, const ChannelParams &params)
{
    return db_to_linear(path_loss_db(distance_m, params));
}

std::complex<double> rician_gain(double k, Rng &rng)
{
    if (!(k >= 0.0))
        throw std::invalid_argument("rician_gain: k must be non-negative");
    const double chi = 2.0 * std::numbers::pi * uniform01(rng);
    const std::complex<double> g = complex_gaussian(rng);
    if (std::isinf(k))
        return std::polar(1.0, chi);
    const double los = std::sqrt(k / (k + 1.0));
    const double diffuse = std::sqrt(1.0 / (k + 1.0));
    return std::polar(los, chi) + diffuse * g;
}

ChannelRealization assemble_channel(std::size_t n_bs, std::size_t n_ms, double pathloss, std::vector<double> aoa,
                                    std::vector<double> aod, std::vector<std::complex<double>> gains)
{
    const std::size_t n_paths = gains.size();
    if (n_paths == 0 || aoa.size() != n_paths || aod.size() != n_paths)
        throw std::invalid_argument("assemble_channel: path parameter vectors must be non-empty and equal length");
    if (!(pathloss > 0.0))
        throw std::invalid_argument("assemble_channel: path loss must be positive");

    const double scale = std::sqrt(static_cast<double>(n_bs * n_ms) / (pathloss * static_cast<double>(n_paths)));

    ChannelRealization chan;
    chan.h = CMatrix::Zero(static_cast<Eigen::Index>(n_ms), static_cast<Eigen::Index>(n_bs));
    for (std::size_t l = 0; l < n_paths; ++l)
    {
        const CVector a_ms = steering_vector(n_ms, aoa[l]).elements;
        const CVector a_bs = steering_vector(n_bs, aod[l]).elements;
        chan.h.noalias() += (scale * gains[l]) * (a_ms * a_bs.adjoint());
    }
    chan.aoa = std::move(aoa);
    chan.aod = std::move(aod);
    chan.gains = std::move(gains);
    chan.pathloss = pathloss;
    return chan;
}

ChannelRealization sample_channel(const ChannelParams &params, double distance_m, Rng &rng)
{
    params.validate();
    const double rho = path_loss(distance_m, params);

    std::vector<double> aoa(params.n_paths), aod(params.n_paths);
    std::vector<std::complex<double>> gains(params.n_paths);
    constexpr double pi = std::numbers::pi;
    for (std::size_t l = 0; l < params.n_paths; ++l)
    {
        aoa[l] = -pi / 2.0 + pi * uniform01(rng);
        aod[l] = -pi / 2.0 + pi * uniform01(rng);
        gains[l] = rician_gain(params.rician_k, rng);
    }
    return assemble_channel(params.n_bs, params.n_ms, rho, std::move(aoa), std::move(aod), std::move(gains));
}

double noise_power_dbm(const LinkBudget &budget)
{
    if (!(budget.bandwidth_hz > 0.0))
        throw std::invalid_argument("noise_power: bandwidth must be positive");
    return budget.thermal_density_dbm_hz + 10.0 * std::log10(budget.bandwidth_hz) + budget.noise_figure_db;
}

double noise_power(const LinkBudget &budget)
{
    return dbm_to_watts(noise_power_dbm(budget));
}

} // namespace cellsearch
