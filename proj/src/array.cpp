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

#include "cellsearch/array.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cellsearch
{

bool is_power_of_two(std::size_t n)
{
    return std::has_single_bit(n);
}

SteeringVector steering_vector(std::size_t n_antennas, double angle)
{
    if (n_antennas == 0)
        throw std::invalid_argument("steering_vector: number of antennas must be positive");
    if (!std::isfinite(angle))
        throw std::invalid_argument("steering_vector: angle must be finite");

    const double scale = 1.0 / std::sqrt(static_cast<double>(n_antennas));
    const double psi = std::numbers::pi * std::sin(angle);

    SteeringVector a;
    a.angle = angle;
    a.elements.resize(static_cast<Eigen::Index>(n_antennas));
    for (std::size_t m = 0; m < n_antennas; ++m)
        a.elements[static_cast<Eigen::Index>(m)] = std::polar(scale, static_cast<double>(m) * psi);
    return a;
}

Codebook Codebook::build(std::size_t n_antennas)
{
    if (n_antennas == 0 || !is_power_of_two(n_antennas))
        throw std::invalid_argument("Codebook: number of antennas must be a power of two, got " +
                                    std::to_string(n_antennas));

    Codebook cb;
    cb.n_antennas_ = n_antennas;
    const std::size_t cardinality = 2 * n_antennas;
    cb.n_bits_ = static_cast<unsigned>(std::countr_zero(cardinality));

    const double scale = 1.0 / std::sqrt(static_cast<double>(n_antennas));
    const auto n = static_cast<Eigen::Index>(n_antennas);
    cb.phases_.resize(cardinality);
    cb.vectors_.resize(n, static_cast<Eigen::Index>(cardinality));
    for (std::size_t i = 0; i < cardinality; ++i)
    {
        // 2*pi*i / 2^q with 2^q == cardinality
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(cardinality);
        cb.phases_[i] = phase;
        for (Eigen::Index m = 0; m < n; ++m)
            cb.vectors_(m, static_cast<Eigen::Index>(i)) = std::polar(scale, static_cast<double>(m) * phase);
    }
    return cb;
}

double Codebook::steer_angle(std::size_t index) const
{
    return phase_to_angle(quantized_phase(index));
}

double beamwidth_3db(std::size_t n_antennas)
{
    if (n_antennas == 0)
        throw std::invalid_argument("beamwidth_3db: number of antennas must be positive");
    return 2.0 * std::asin(0.891 / static_cast<double>(n_antennas));
}

double phase_to_spatial_frequency(double quantized_phase)
{
    constexpr double pi = std::numbers::pi;
    if (!(quantized_phase >= 0.0 && quantized_phase < 2.0 * pi))
        throw std::invalid_argument("phase_to_spatial_frequency: phase must lie in [0, 2pi)");
    return quantized_phase <= pi ? quantized_phase : quantized_phase - 2.0 * pi;
}

double phase_to_angle(double quantized_phase)
{
    const double ratio = phase_to_spatial_frequency(quantized_phase) / std::numbers::pi;
    return std::asin(std::clamp(ratio, -1.0, 1.0));
}

double array_gain(const CVector &combiner, const CVector &signature)
{
    if (combiner.size() != signature.size())
        throw std::invalid_argument("array_gain: combiner and signature lengths differ");
    return std::abs(combiner.dot(signature)); // dot() conjugates the left operand
}

double array_gain(const CVector &combiner, const SteeringVector &signature)
{
    return array_gain(combiner, signature.elements);
}

} // namespace cellsearch
