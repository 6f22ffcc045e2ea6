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

#include "cellsearch/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cellsearch
{

namespace
{
std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}
} // namespace

std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words)
{
    std::uint64_t state = 0x6A09E667F3BCC908ULL;
    for (std::uint64_t w : words)
        state = splitmix64(state ^ splitmix64(w));
    return state;
}

std::uint64_t double_bits(double value)
{
    // +0.0 and -0.0 describe the same coordinate
    if (value == 0.0)
        value = 0.0;
    return std::bit_cast<std::uint64_t>(value);
}

double uniform01(Rng &rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_closed01(Rng &rng)
{
    return static_cast<double>(rng() >> 11) / static_cast<double>((1ULL << 53) - 1);
}

std::uint64_t uniform_index(Rng &rng, std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("uniform_index: range must be non-empty");
    // reject the low 2^64 mod n outputs so that the remainder is exactly uniform
    const std::uint64_t threshold = (0 - n) % n;
    for (;;)
    {
        const std::uint64_t x = rng();
        if (x >= threshold)
            return x % n;
    }
}

std::complex<double> complex_gaussian(Rng &rng)
{
    const double u1 = 1.0 - uniform01(rng); // (0, 1]
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-std::log(u1)); // E[r^2] = 1
    const double angle = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(angle), r * std::sin(angle)};
}

} // namespace cellsearch
