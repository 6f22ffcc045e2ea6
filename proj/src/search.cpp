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

#include "cellsearch/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cellsearch
{

std::string_view search_name(SearchKind kind)
{
    switch (kind)
    {
    case SearchKind::ci:
        return "CI";
    case SearchKind::exhaustive:
        return "ES";
    case SearchKind::random:
        return "RS";
    }
    throw std::invalid_argument("unknown search kind");
}

std::optional<SearchKind> parse_search(std::string_view name)
{
    if (name == "CI" || name == "ci")
        return SearchKind::ci;
    if (name == "ES" || name == "es" || name == "exhaustive")
        return SearchKind::exhaustive;
    if (name == "RS" || name == "rs" || name == "random")
        return SearchKind::random;
    return std::nullopt;
}

void SearchStrategy::validate() const
{
    if (!(max_angular_error >= 0.0) || !std::isfinite(max_angular_error))
        throw std::invalid_argument("maximum angular error must be finite and non-negative");
    if (kind != SearchKind::ci && scheme.architecture != Architecture::abf)
        throw std::invalid_argument(std::string(search_name(kind)) + " search requires ABF at the MS");
}

double draw_angular_error(double max_error, Rng &rng)
{
    if (!(max_error >= 0.0))
        throw std::invalid_argument("draw_angular_error: maximum error must be non-negative");
    const double u = uniform_closed01(rng);
    return max_error * (2.0 * u - 1.0);
}

SweepResult sweep_bs(const MsFrontEnd &front_end, const Codebook &bs_codebook, double tx_power_w,
                     double noise_power_w)
{
    SweepResult result;
    result.best_snr = -1.0;
    for (std::size_t i = 0; i < bs_codebook.size(); ++i)
    {
        const BeamSnr beam = front_end.evaluate(bs_codebook.matrix().col(static_cast<Eigen::Index>(i)), tx_power_w, noise_power_w);
        if (beam.snr > result.best_snr)
        {
            result.best_snr = beam.snr;
            result.best_bs_index = i;
            result.best_ms_index = beam.ms_index;
        }
    }
    result.ms_combiner_count = 1;
    result.slots = bs_codebook.size();
    return result;
}

SweepResult sweep_ci_at(const ChannelRealization &chan, const Codebooks &codebooks, const SchemeKind &scheme,
                        double ci_angle, const LinkBudget &budget)
{
    scheme.validate(codebooks.ms);
    const std::size_t branches = std::max<std::size_t>(1, scheme.analog_branches());
    const CombinerSelection selection = select_combiners(codebooks.ms, ci_angle, branches);
    const MsFrontEnd front_end = MsFrontEnd::for_scheme(scheme, chan.h, selection, codebooks.ms);
    // every MS architecture listens with one fixed configuration
    return sweep_bs(front_end, codebooks.bs, budget.tx_power_w(), noise_power(budget));
}

SweepResult sweep_ci(const ChannelRealization &chan, const Codebooks &codebooks, const SearchStrategy &strategy,
                     const LinkBudget &budget, Rng &rng)
{
    if (strategy.kind != SearchKind::ci)
        throw std::invalid_argument("sweep_ci: strategy is not CI");
    strategy.validate();
    const double ci_angle = clamp_ci_angle(chan.true_aoa() + draw_angular_error(strategy.max_angular_error, rng));
    return sweep_ci_at(chan, codebooks, strategy.scheme, ci_angle, budget);
}

SweepResult sweep_exhaustive(const ChannelRealization &chan, const Codebooks &codebooks, const LinkBudget &budget)
{
    const double tx = budget.tx_power_w();
    const double noise = noise_power(budget);

    SweepResult best;
    best.best_snr = -1.0;
    for (std::size_t m = 0; m < codebooks.ms.size(); ++m)
    {
        const MsFrontEnd front_end = MsFrontEnd::single(chan.h, codebooks.ms.matrix().col(static_cast<Eigen::Index>(m)), m);
        const SweepResult row = sweep_bs(front_end, codebooks.bs, tx, noise);
        if (row.best_snr > best.best_snr)
            best = row;
    }
    best.ms_combiner_count = codebooks.ms.size();
    best.slots = codebooks.bs.size() * codebooks.ms.size();
    return best;
}

SweepResult sweep_random(const ChannelRealization &chan, const Codebooks &codebooks, const LinkBudget &budget,
                         Rng &rng)
{
    const auto m = static_cast<std::size_t>(uniform_index(rng, codebooks.ms.size()));
    const MsFrontEnd front_end = MsFrontEnd::single(chan.h, codebooks.ms.matrix().col(static_cast<Eigen::Index>(m)), m);
    return sweep_bs(front_end, codebooks.bs, budget.tx_power_w(), noise_power(budget));
}

} // namespace cellsearch
