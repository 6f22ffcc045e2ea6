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

#ifndef CELLSEARCH_CLI_HPP
#define CELLSEARCH_CLI_HPP

#include "cellsearch/montecarlo.hpp"
#include "cellsearch/power.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cellsearch::cli
{

inline constexpr std::string_view tool_name = "cellsearch";
inline constexpr std::string_view tool_version = "1.0.0";

enum ExitCode : int
{
    exit_ok = 0,
    exit_config_error = 2,
    exit_runtime_error = 3
};

struct SweepOptions
{
    std::filesystem::path config;
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    unsigned workers = 1;
};

struct PowerOptions
{
    std::filesystem::path components;
    std::filesystem::path out_dir = ".";
    int bits_min = 1;
    int bits_max = 10;
    std::vector<SchemeKind> schemes;
    std::size_t n_ms = 16;
};

struct CodebookOptions
{
    std::size_t n_antennas = 16;
    std::filesystem::path out_dir = ".";
};

// Each command writes <stem>.csv plus <stem>.manifest.json into its output directory and
// returns an ExitCode. Diagnostics go to `err`. On failure nothing is left behind.
int cmd_sweep(const SweepOptions &options, std::ostream &err);
int cmd_power(const PowerOptions &options, std::ostream &err);
int cmd_codebook(const CodebookOptions &options, std::ostream &err);

/// Full command line: `cellsearch {sweep|power|codebook} [flags]`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

// CSV rendering, exposed for tests.
std::string sweep_csv(const std::vector<GridCell> &cells);
std::string power_csv(const std::vector<PowerBreakdown> &rows);
std::string codebook_csv(const Codebook &codebook);

/// Parses "ABF,DBF,HBF,PSN" style lists; "PSN:4" overrides the default branch count.
std::vector<SchemeKind> parse_scheme_list(std::string_view text, std::size_t default_branches);
std::string scheme_label(const SchemeKind &scheme); // "ABF", "DBF", "PSN-3", "HBF-3"

std::string format_double(double value);
std::string sha256_hex(std::string_view data);

} // namespace cellsearch::cli

#endif
