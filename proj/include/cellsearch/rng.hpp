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

#ifndef CELLSEARCH_RNG_HPP
#define CELLSEARCH_RNG_HPP

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace cellsearch
{

// The engine is std::mt19937_64, whose output sequence is fixed by the standard.
// The std:: distributions are not (their algorithms are implementation-defined),
// so every variate used by the simulator goes through the transforms below.
using Rng = std::mt19937_64;

// Folds a list of 64-bit words into one seed with the splitmix64 finalizer.
// Used to derive independent per-trial streams from (master seed, coordinates).
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words);

// Bit pattern of a double, for keying streams on real-valued coordinates.
std::uint64_t double_bits(double value);

// Uniform on [0, 1) with 53 bits of resolution.
double uniform01(Rng &rng);

// Uniform on the closed interval [0, 1].
double uniform_closed01(Rng &rng);

// Uniform integer in [0, n). Requires n >= 1.
std::uint64_t uniform_index(Rng &rng, std::uint64_t n);

// Circularly-symmetric complex Gaussian CN(0, 1) via Box-Muller.
std::complex<double> complex_gaussian(Rng &rng);

} // namespace cellsearch

#endif
