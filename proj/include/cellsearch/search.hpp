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

#ifndef CELLSEARCH_SEARCH_HPP
#define CELLSEARCH_SEARCH_HPP

#include "cellsearch/array.hpp"
#include "cellsearch/channel.hpp"
#include "cellsearch/rng.hpp"
#include "cellsearch/schemes.hpp"

#include <cstddef>
#include <optional>
#include <string_view>

namespace cellsearch
{

enum class SearchKind
{
    ci,         // MS beam from context information (true AoA + bounded angular error)
    exhaustive, // MS sweeps its whole codebook for every BS beam
    random      // MS listens on one uniformly drawn codebook beam
};

std::string_view search_name(SearchKind kind); // "CI", "ES", "RS"
std::optional<SearchKind> parse_search(std::string_view name);

struct SearchStrategy
{
    SearchKind kind = SearchKind::ci;
    SchemeKind scheme = SchemeKind::abf();
    double max_angular_error = 0.0; // radians, CI only

    // Throws std::invalid_argument; exhaustive and random search require ABF at the MS.
    void validate() const;
};

struct Codebooks
{
    Codebook bs;
    Codebook ms;

    static Codebooks build(std::size_t n_bs, std::size_t n_ms)
    {
        return {Codebook::build(n_bs), Codebook::build(n_ms)};
    }
};

/// Outcome of one initial-search sweep. The BS always sweeps its full codebook, so
/// slots == card(W_BS) * ms_combiner_count.
struct SweepResult
{
    double best_snr = 0.0;
    std::size_t slots = 0;
    std::size_t ms_combiner_count = 0;
    std::size_t best_bs_index = 0;
    std::size_t best_ms_index = no_ms_index;
};

/// Uniform on the closed interval [-max_error, max_error]. Always consumes one draw.
double draw_angular_error(double max_error, Rng &rng);

SweepResult sweep_ci(const ChannelRealization &chan, const Codebooks &codebooks, const SearchStrategy &strategy,
                     const LinkBudget &budget, Rng &rng);

/// CI sweep with an explicit (already perturbed) context-information angle.
SweepResult sweep_ci_at(const ChannelRealization &chan, const Codebooks &codebooks, const SchemeKind &scheme,
                        double ci_angle, const LinkBudget &budget);

SweepResult sweep_exhaustive(const ChannelRealization &chan, const Codebooks &codebooks, const LinkBudget &budget);

SweepResult sweep_random(const ChannelRealization &chan, const Codebooks &codebooks, const LinkBudget &budget,
                         Rng &rng);

/// Sweeps every BS beam against a fixed MS front end.
SweepResult sweep_bs(const MsFrontEnd &front_end, const Codebook &bs_codebook, double tx_power_w,
                     double noise_power_w);

} // namespace cellsearch

#endif
