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

#ifndef CELLSEARCH_CONFIG_HPP
#define CELLSEARCH_CONFIG_HPP

#include "cellsearch/errors.hpp"
#include "cellsearch/montecarlo.hpp"

#include <filesystem>
#include <string>

namespace cellsearch
{

/// Parses an experiment file (JSON, schema in README). Unknown keys are rejected.
/// Angles are given in degrees in the file and stored in radians. Throws ConfigError naming the offending key.
ExperimentConfig parse_experiment_config(const std::string &text);
ExperimentConfig load_experiment_config(const std::filesystem::path &path);

std::string read_text_file(const std::filesystem::path &path);

double degrees_to_radians(double deg);
double radians_to_degrees(double rad);

} // namespace cellsearch

#endif
