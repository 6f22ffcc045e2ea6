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

#include "cellsearch/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace cellsearch
{

namespace
{
// stream tags
constexpr std::uint64_t tag_channel = 0x6368616E6E656CULL;     // "channel"
constexpr std::uint64_t tag_angular_error = 0x616E676C65ULL;   // "angle"
constexpr std::uint64_t tag_beam_choice = 0x6265616DULL;       // "beam"

std::uint64_t stream_seed(const GridPoint &point, std::uint64_t tag, std::uint64_t trial)
{
    return mix_seed({point.master_seed, tag, double_bits(point.distance_m), point.channel.n_bs, point.channel.n_ms,
                     trial});
}
} // namespace

TrialStreams TrialStreams::derive(const GridPoint &point, std::uint64_t trial)
{
    return {Rng(stream_seed(point, tag_channel, trial)), Rng(stream_seed(point, tag_angular_error, trial)),
            Rng(stream_seed(point, tag_beam_choice, trial))};
}

TrialOutcome run_trial(const GridPoint &point, const Codebooks &codebooks, TrialStreams &streams)
{
    const ChannelRealization chan = sample_channel(point.channel, point.distance_m, streams.channel);

    SweepResult sweep;
    switch (point.strategy.kind)
    {
    case SearchKind::ci:
        sweep = sweep_ci(chan, codebooks, point.strategy, point.budget, streams.angular_error);
        break;
    case SearchKind::exhaustive:
        sweep = sweep_exhaustive(chan, codebooks, point.budget);
        break;
    case SearchKind::random:
        sweep = sweep_random(chan, codebooks, point.budget, streams.beam_choice);
        break;
    }
    return {sweep.best_snr, sweep.slots};
}

bool is_access_error(double snr, double threshold_db)
{
    return 10.0 * std::log10(snr) < threshold_db;
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double z)
{
    if (n == 0)
        return {0.0, 1.0};
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    // clamp rounding so that low <= p <= high always holds
    return {std::clamp(center - half, 0.0, p), std::clamp(center + half, p, 1.0)};
}

AccessErrorEstimate estimate_access_error(std::size_t n_trials, double threshold_db, const TrialFunction &trial,
                                          unsigned workers)
{
    if (n_trials == 0)
        throw std::invalid_argument("estimate_access_error: at least one trial is required");
    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::min<std::size_t>(n_trials, 256)));

    struct Tally
    {
        std::size_t errors = 0;
        std::uint64_t slots = 0;
        std::exception_ptr failure;
    };
    std::vector<Tally> tallies(workers);

    auto run_block = [&](unsigned w) {
        const std::size_t begin = n_trials * w / workers;
        const std::size_t end = n_trials * (w + 1) / workers;
        Tally &tally = tallies[w];
        try
        {
            for (std::size_t t = begin; t < end; ++t)
            {
                const TrialOutcome outcome = trial(t);
                tally.errors += is_access_error(outcome.snr, threshold_db) ? 1 : 0;
                tally.slots += outcome.slots;
            }
        }
        catch (...)
        {
            tally.failure = std::current_exception();
        }
    };

    if (workers == 1)
        run_block(0);
    else
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            threads.emplace_back(run_block, w);
    }

    AccessErrorEstimate est;
    std::uint64_t slot_sum = 0;
    for (const Tally &tally : tallies)
    {
        if (tally.failure)
            std::rethrow_exception(tally.failure);
        est.n_errors += tally.errors;
        slot_sum += tally.slots;
    }
    est.n_trials = n_trials;
    est.p_hat = static_cast<double>(est.n_errors) / static_cast<double>(n_trials);
    const WilsonInterval ci = wilson_interval(est.n_errors, n_trials);
    est.ci95_low = ci.low;
    est.ci95_high = ci.high;
    est.mean_slots = static_cast<double>(slot_sum) / static_cast<double>(n_trials);
    return est;
}

AccessErrorEstimate estimate_access_error(const GridPoint &point, unsigned workers)
{
    point.channel.validate();
    point.strategy.validate();
    const Codebooks codebooks = Codebooks::build(point.channel.n_bs, point.channel.n_ms);
    if (point.strategy.kind == SearchKind::ci)
        point.strategy.scheme.validate(codebooks.ms);

    return estimate_access_error(
        point.n_trials, point.threshold_db,
        [&](std::uint64_t t) {
            TrialStreams streams = TrialStreams::derive(point, t);
            return run_trial(point, codebooks, streams);
        },
        workers);
}

void ExperimentConfig::validate() const
{
    channel.validate();
    budget.validate();
    if (strategies.empty())
        throw std::invalid_argument("strategies must not be empty");
    for (const auto &s : strategies)
        s.validate();
    if (distances_m.empty())
        throw std::invalid_argument("distances_m must not be empty");
    for (double d : distances_m)
        if (!(d >= channel.reference_distance_m) || !std::isfinite(d))
            throw std::invalid_argument("distances_m entries must be finite and at least the reference distance");
    if (max_angular_errors.empty())
        throw std::invalid_argument("phi_e_max_deg must not be empty");
    for (double e : max_angular_errors)
        if (!(e >= 0.0) || !std::isfinite(e))
            throw std::invalid_argument("phi_e_max_deg entries must be finite and non-negative");
    if (n_ms.empty())
        throw std::invalid_argument("n_ms must not be empty");
    for (std::size_t n : n_ms)
        if (n == 0 || !is_power_of_two(n))
            throw std::invalid_argument("n_ms entries must be powers of two");
    if (!is_power_of_two(channel.n_bs))
        throw std::invalid_argument("channel.n_bs must be a power of two");
    if (!std::isfinite(threshold_db))
        throw std::invalid_argument("threshold_db must be finite");
    if (n_trials == 0)
        throw std::invalid_argument("n_trials must be at least 1");
}

std::vector<GridPoint> expand_grid(const ExperimentConfig &config)
{
    std::vector<GridPoint> points;
    points.reserve(config.strategies.size() * config.n_ms.size() * config.max_angular_errors.size() *
                   config.distances_m.size());
    for (const SearchStrategy &strategy : config.strategies)
        for (std::size_t n_ms : config.n_ms)
            for (double max_error : config.max_angular_errors)
                for (double distance : config.distances_m)
                {
                    GridPoint p;
                    p.channel = config.channel;
                    p.channel.n_ms = n_ms;
                    p.budget = config.budget;
                    p.strategy = strategy;
                    p.strategy.max_angular_error = max_error;
                    p.distance_m = distance;
                    p.threshold_db = config.threshold_db;
                    p.n_trials = config.n_trials;
                    p.master_seed = config.master_seed;
                    points.push_back(p);
                }
    return points;
}

std::vector<GridCell> run_points(const std::vector<GridPoint> &points, unsigned workers)
{
    std::vector<GridCell> cells;
    cells.reserve(points.size());
    for (const GridPoint &p : points)
        cells.push_back({p, estimate_access_error(p, workers)});
    return cells;
}

std::vector<GridCell> run_grid(const ExperimentConfig &config, unsigned workers)
{
    config.validate();
    return run_points(expand_grid(config), workers);
}

} // namespace cellsearch
