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

#ifndef CELLSEARCH_MONTECARLO_HPP
#define CELLSEARCH_MONTECARLO_HPP

#include "cellsearch/channel.hpp"
#include "cellsearch/rng.hpp"
#include "cellsearch/search.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cellsearch
{

/// One fully specified grid cell.
struct GridPoint
{
    ChannelParams channel; // channel.n_ms is the cell's MS array size
    LinkBudget budget;
    SearchStrategy strategy;
    double distance_m = 100.0;
    double threshold_db = -4.0;
    std::size_t n_trials = 1;
    std::uint64_t master_seed = 1;
};

/// Independent random streams of one trial.
///
/// Stream seeds are mix_seed(master_seed, stream tag, distance bits, n_bs, n_ms, trial). They
/// do not depend on the search strategy, the scheme or the maximum angular error, so all of
/// those share the same channel draws (common random numbers), and the angular error of a
/// trial is the same uniform variate scaled by the cell's maximum error. Keying on coordinate
/// values rather than positions makes every cell independent of grid order.
struct TrialStreams
{
    Rng channel;
    Rng angular_error;
    Rng beam_choice;

    static TrialStreams derive(const GridPoint &point, std::uint64_t trial);
};

struct TrialOutcome
{
    double snr = 0.0; // linear
    std::size_t slots = 0;
};

TrialOutcome run_trial(const GridPoint &point, const Codebooks &codebooks, TrialStreams &streams);

/// 10 log10(snr) < threshold_db. SNR 0 is an error for every threshold above -inf.
bool is_access_error(double snr, double threshold_db);

struct WilsonInterval
{
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for a binomial proportion (z = 1.96 gives 95%).
WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double z = 1.959963984540054);

struct AccessErrorEstimate
{
    double p_hat = 0.0;
    std::size_t n_trials = 0;
    std::size_t n_errors = 0;
    double ci95_low = 0.0;
    double ci95_high = 1.0;
    double mean_slots = 0.0;
};

using TrialFunction = std::function<TrialOutcome(std::uint64_t trial)>;

/// Runs trials 0..n_trials-1 of an arbitrary trial generator, split over `workers` threads.
/// The result depends only on the generator, never on the worker count.
AccessErrorEstimate estimate_access_error(std::size_t n_trials, double threshold_db, const TrialFunction &trial,
                                          unsigned workers = 1);

AccessErrorEstimate estimate_access_error(const GridPoint &point, unsigned workers = 1);

struct ExperimentConfig
{
    std::string name = "experiment";
    ChannelParams channel;
    LinkBudget budget;
    std::vector<SearchStrategy> strategies;  // max_angular_error comes from the grid axis
    std::vector<double> distances_m;
    std::vector<double> max_angular_errors;  // radians
    std::vector<std::size_t> n_ms;
    double threshold_db = -4.0;
    std::size_t n_trials = 100000;
    std::uint64_t master_seed = 1;

    void validate() const;
};

struct GridCell
{
    GridPoint point;
    AccessErrorEstimate estimate;
};

/// Cartesian product in row order strategy > n_ms > max angular error > distance.
std::vector<GridPoint> expand_grid(const ExperimentConfig &config);

std::vector<GridCell> run_grid(const ExperimentConfig &config, unsigned workers = 1);
std::vector<GridCell> run_points(const std::vector<GridPoint> &points, unsigned workers = 1);

} // namespace cellsearch

#endif
