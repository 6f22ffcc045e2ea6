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

#ifndef CELLSEARCH_ARRAY_HPP
#define CELLSEARCH_ARRAY_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace cellsearch
{

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Half-wavelength ULA response a(angle), unit norm.
/// Element m is exp(j m pi sin(angle)) / sqrt(N); angles are measured from broadside.
struct SteeringVector
{
    CVector elements;
    double angle = 0.0; // generating angle, radians

    std::size_t n_antennas() const { return static_cast<std::size_t>(elements.size()); }
};

SteeringVector steering_vector(std::size_t n_antennas, double angle);

/// Reduced analog codebook of a ULA with N elements.
///
/// Holds the 2N constant-modulus combining vectors built from the uniformly spaced
/// quantized progressive phases 2*pi*i / 2^q, q = log2(2N). Column i of matrix() is
/// codebook vector i, ordered by increasing phase. Immutable once built.
class Codebook
{
  public:
    /// Throws std::invalid_argument unless n_antennas is a power of two.
    static Codebook build(std::size_t n_antennas);

    std::size_t size() const { return phases_.size(); }
    std::size_t n_antennas() const { return n_antennas_; }
    unsigned n_bits() const { return n_bits_; }

    const CMatrix &matrix() const { return vectors_; }
    CVector vector(std::size_t index) const { return vectors_.col(static_cast<Eigen::Index>(index)); }
    std::span<const double> quantized_phases() const { return phases_; }
    double quantized_phase(std::size_t index) const { return phases_.at(index); }

    /// Physical steering angle of vector i (see phase_to_angle).
    double steer_angle(std::size_t index) const;

  private:
    Codebook() = default;

    std::size_t n_antennas_ = 0;
    unsigned n_bits_ = 0;
    std::vector<double> phases_;
    CMatrix vectors_;
};

/// Half-power beamwidth 2*asin(0.891/N) of an N-element half-wavelength ULA, radians.
double beamwidth_3db(std::size_t n_antennas);

/// Wraps a quantized phase in [0, 2pi) to the spatial frequency in [-pi, pi).
/// Phases in (pi, 2pi) are negative spatial frequencies; exactly pi stays pi (endfire).
double phase_to_spatial_frequency(double quantized_phase);

/// Physical angle steered by a progressive phase: asin(psi / pi) after wrapping.
double phase_to_angle(double quantized_phase);

/// |w^H a|. Throws std::invalid_argument on length mismatch.
double array_gain(const CVector &combiner, const CVector &signature);
double array_gain(const CVector &combiner, const SteeringVector &signature);

bool is_power_of_two(std::size_t n);

} // namespace cellsearch

#endif
