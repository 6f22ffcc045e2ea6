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

#include "cellsearch/cli.hpp"

#include "cellsearch/config.hpp"
#include "cellsearch/errors.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

namespace cellsearch::cli
{

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// formatting helpers

std::string format_double(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace
{
std::string format_general(double value, int precision)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, precision);
    std::string s(buf, res.ptr);
    return s == "-0" ? "0" : s;
}

std::string csv_field(std::string_view field)
{
    if (field.find_first_of(",\"\n\r") == std::string_view::npos)
        return std::string(field);
    std::string quoted = "\"";
    for (char c : field)
    {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

void append_row(std::string &out, const std::vector<std::string> &fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i)
    {
        if (i)
            out += ',';
        out += csv_field(fields[i]);
    }
    out += '\n';
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct OutputFile
{
    fs::path path;
    std::string content;
};

// Writes all files or none: anything already written is removed when a later write fails.
void write_outputs(const std::vector<OutputFile> &files)
{
    std::vector<fs::path> written;
    try
    {
        for (const auto &f : files)
        {
            std::ofstream out(f.path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error("cannot write " + f.path.string());
            written.push_back(f.path);
            out << f.content;
            out.close();
            if (!out)
                throw std::runtime_error("failed writing " + f.path.string());
        }
    }
    catch (...)
    {
        std::error_code ec;
        for (const auto &p : written)
            fs::remove(p, ec);
        throw;
    }
}

json manifest_base(std::string_view command)
{
    json m;
    m["tool"] = tool_name;
    m["version"] = tool_version;
    m["command"] = command;
    return m;
}

std::string render_manifest(json manifest, const std::vector<OutputFile> &outputs)
{
    json files = json::array();
    for (const auto &f : outputs)
        files.push_back({{"path", f.path.filename().string()}, {"sha256", sha256_hex(f.content)}});
    manifest["outputs"] = files;
    return manifest.dump(2) + "\n";
}

bool prepare_out_dir(const fs::path &dir, std::ostream &err)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
    {
        err << "error: output directory " << dir << " is not usable: " << ec.message() << "\n";
        return false;
    }
    return true;
}
} // namespace

std::string sha256_hex(std::string_view data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 computation failed");
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i)
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return hex.str();
}

std::string scheme_label(const SchemeKind &scheme)
{
    std::string label(architecture_name(scheme.architecture));
    if (scheme.architecture == Architecture::psn || scheme.architecture == Architecture::hbf)
        label += "-" + std::to_string(scheme.branches);
    return label;
}

std::vector<SchemeKind> parse_scheme_list(std::string_view text, std::size_t default_branches)
{
    std::vector<SchemeKind> schemes;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string_view item = text.substr(pos, comma - pos);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        if (!item.empty())
        {
            const std::size_t colon = item.find(':');
            const auto arch = parse_architecture(item.substr(0, colon));
            if (!arch)
                throw ConfigError("schemes", "unknown scheme '" + std::string(item) + "'");
            SchemeKind scheme{*arch, *arch == Architecture::abf || *arch == Architecture::dbf ? 1 : default_branches};
            if (colon != std::string_view::npos)
            {
                const std::string_view count = item.substr(colon + 1);
                std::size_t branches = 0;
                const auto res = std::from_chars(count.data(), count.data() + count.size(), branches);
                if (res.ec != std::errc() || res.ptr != count.data() + count.size() || branches == 0)
                    throw ConfigError("schemes", "bad branch count in '" + std::string(item) + "'");
                if (*arch == Architecture::abf && branches != 1)
                    throw ConfigError("schemes", "ABF has exactly one branch");
                scheme.branches = branches;
            }
            schemes.push_back(scheme);
        }
        pos = comma + 1;
    }
    return schemes;
}

// ---------------------------------------------------------------------------
// CSV views

std::string sweep_csv(const std::vector<GridCell> &cells)
{
    std::string out;
    append_row(out, {"scheme", "strategy", "distance_m", "phi_e_max_deg", "n_ms", "n_bs", "p_acc_err", "ci95_low",
                     "ci95_high", "mean_slots", "n_trials"});
    for (const auto &cell : cells)
    {
        const GridPoint &p = cell.point;
        const AccessErrorEstimate &e = cell.estimate;
        append_row(out, {scheme_label(p.strategy.scheme), std::string(search_name(p.strategy.kind)),
                         format_double(p.distance_m),
                         format_general(radians_to_degrees(p.strategy.max_angular_error), 12),
                         std::to_string(p.channel.n_ms), std::to_string(p.channel.n_bs), format_double(e.p_hat),
                         format_double(e.ci95_low), format_double(e.ci95_high), format_double(e.mean_slots),
                         std::to_string(e.n_trials)});
    }
    return out;
}

std::string power_csv(const std::vector<PowerBreakdown> &rows)
{
    std::vector<std::string> header = {"scheme", "b", "n_ms", "branches", "total_w", "adc_iq_pair_w"};
    for (const auto &name : power_term_names())
        header.push_back(name);

    std::string out;
    append_row(out, header);
    for (const auto &r : rows)
    {
        std::vector<std::string> fields = {std::string(architecture_name(r.scheme.architecture)),
                                           std::to_string(r.adc_bits),
                                           std::to_string(r.n_ms),
                                           std::to_string(r.scheme.architecture == Architecture::dbf
                                                              ? r.n_ms
                                                              : r.scheme.analog_branches()),
                                           format_double(r.total),
                                           format_double(r.adc_iq_pair)};
        for (const auto &[_, watts] : r.per_component)
            fields.push_back(format_double(watts));
        append_row(out, fields);
    }
    return out;
}

std::string codebook_csv(const Codebook &codebook)
{
    constexpr double gain_floor_db = -200.0;
    std::vector<std::string> header = {"index", "quantized_phase_rad", "steer_angle_deg"};
    std::vector<SteeringVector> signatures;
    for (int deg = -90; deg <= 90; ++deg)
    {
        header.push_back("gain_db_" + std::to_string(deg));
        signatures.push_back(steering_vector(codebook.n_antennas(), degrees_to_radians(deg)));
    }

    std::string out;
    append_row(out, header);
    for (std::size_t i = 0; i < codebook.size(); ++i)
    {
        const CVector w = codebook.vector(i);
        std::vector<std::string> fields = {std::to_string(i), format_double(codebook.quantized_phase(i)),
                                           format_general(radians_to_degrees(codebook.steer_angle(i)), 12)};
        for (const auto &a : signatures)
        {
            const double gain = array_gain(w, a);
            const double db = gain > 0.0 ? std::max(gain_floor_db, 20.0 * std::log10(gain)) : gain_floor_db;
            fields.push_back(format_general(db, 10));
        }
        append_row(out, fields);
    }
    return out;
}

// ---------------------------------------------------------------------------
// commands

int cmd_sweep(const SweepOptions &options, std::ostream &err)
{
    ExperimentConfig cfg;
    std::string config_text;
    try
    {
        config_text = read_text_file(options.config);
        cfg = parse_experiment_config(config_text);
        if (options.seed)
            cfg.master_seed = *options.seed;
        if (options.trials)
        {
            if (*options.trials == 0)
                throw ConfigError("trials", "must be at least 1");
            cfg.n_trials = *options.trials;
        }
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    }
    if (!prepare_out_dir(options.out_dir, err))
        return exit_config_error;

    json manifest = manifest_base("sweep");
    manifest["config_path"] = options.config.string();
    manifest["config_sha256"] = sha256_hex(config_text);
    manifest["name"] = cfg.name;
    manifest["master_seed"] = cfg.master_seed;
    manifest["n_trials"] = cfg.n_trials;
    manifest["seed_overridden"] = options.seed.has_value();
    manifest["trials_overridden"] = options.trials.has_value();
    manifest["workers"] = options.workers;
    manifest["started_utc"] = utc_timestamp();

    try
    {
        const std::vector<GridCell> cells = run_grid(cfg, options.workers);
        std::vector<OutputFile> outputs = {{options.out_dir / (cfg.name + ".csv"), sweep_csv(cells)}};
        manifest["finished_utc"] = utc_timestamp();
        outputs.push_back({options.out_dir / (cfg.name + ".manifest.json"), render_manifest(manifest, outputs)});
        write_outputs(outputs);
    }
    catch (const std::invalid_argument &e)
    {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    }
    catch (const std::exception &e)
    {
        err << "runtime error: " << e.what() << "\n";
        return exit_runtime_error;
    }
    return exit_ok;
}

int cmd_power(const PowerOptions &options, std::ostream &err)
{
    PowerComponents comps;
    std::string text;
    try
    {
        if (options.bits_min < 1 || options.bits_max < options.bits_min)
            throw ConfigError("bits", "expected 1 <= min <= max");
        if (options.n_ms == 0)
            throw ConfigError("n_ms", "must be positive");
        text = read_text_file(options.components);
        comps = parse_power_components(text);
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    }
    if (!prepare_out_dir(options.out_dir, err))
        return exit_config_error;

    json manifest = manifest_base("power");
    manifest["config_path"] = options.components.string();
    manifest["config_sha256"] = sha256_hex(text);
    manifest["n_ms"] = options.n_ms;
    manifest["bits"] = {options.bits_min, options.bits_max};
    json labels = json::array();
    for (const auto &s : options.schemes)
        labels.push_back(scheme_label(s));
    manifest["schemes"] = labels;
    manifest["started_utc"] = utc_timestamp();

    try
    {
        std::vector<PowerBreakdown> rows;
        for (const auto &scheme : options.schemes)
            for (int b = options.bits_min; b <= options.bits_max; ++b)
                rows.push_back(total_power(scheme, comps, options.n_ms, b));
        std::vector<OutputFile> outputs = {{options.out_dir / "power.csv", power_csv(rows)}};
        manifest["finished_utc"] = utc_timestamp();
        outputs.push_back({options.out_dir / "power.manifest.json", render_manifest(manifest, outputs)});
        write_outputs(outputs);
    }
    catch (const std::invalid_argument &e)
    {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    }
    catch (const std::exception &e)
    {
        err << "runtime error: " << e.what() << "\n";
        return exit_runtime_error;
    }
    return exit_ok;
}

int cmd_codebook(const CodebookOptions &options, std::ostream &err)
{
    if (options.n_antennas == 0 || !is_power_of_two(options.n_antennas))
    {
        err << "config error: n_antennas: must be a power of two, got " << options.n_antennas << "\n";
        return exit_config_error;
    }
    if (!prepare_out_dir(options.out_dir, err))
        return exit_config_error;

    json manifest = manifest_base("codebook");
    manifest["n_antennas"] = options.n_antennas;
    manifest["started_utc"] = utc_timestamp();
    try
    {
        const Codebook codebook = Codebook::build(options.n_antennas);
        const std::string stem = "codebook_n" + std::to_string(options.n_antennas);
        std::vector<OutputFile> outputs = {{options.out_dir / (stem + ".csv"), codebook_csv(codebook)}};
        manifest["finished_utc"] = utc_timestamp();
        outputs.push_back({options.out_dir / (stem + ".manifest.json"), render_manifest(manifest, outputs)});
        write_outputs(outputs);
    }
    catch (const std::exception &e)
    {
        err << "runtime error: " << e.what() << "\n";
        return exit_runtime_error;
    }
    return exit_ok;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Monte Carlo simulator for mmWave initial cell search", std::string(tool_name)};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version));

    const unsigned default_workers = std::max(1u, std::thread::hardware_concurrency());

    SweepOptions sweep;
    sweep.workers = default_workers;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    auto *sweep_cmd = app.add_subcommand("sweep", "Run an experiment grid and write access-error CSV");
    sweep_cmd->add_option("--config", sweep.config, "Experiment file (JSON)")->required();
    sweep_cmd->add_option("--out", sweep.out_dir, "Output directory");
    auto *seed_opt = sweep_cmd->add_option("--seed", seed, "Override master_seed");
    auto *trials_opt = sweep_cmd->add_option("--trials", trials, "Override n_trials");
    sweep_cmd->add_option("--workers", sweep.workers, "Worker threads")->check(CLI::PositiveNumber);

    PowerOptions power;
    std::string scheme_text = "ABF,DBF,HBF,PSN";
    std::size_t branches = 3;
    std::string bits_text = "1..10";
    auto *power_cmd = app.add_subcommand("power", "Tabulate receiver power consumption against ADC bits");
    power_cmd->add_option("--components,--config", power.components, "Component-value file (JSON)")->required();
    power_cmd->add_option("--out", power.out_dir, "Output directory");
    power_cmd->add_option("--bits", bits_text, "ADC bit range, e.g. 1..10 or 5");
    power_cmd->add_option("--schemes", scheme_text, "Comma-separated list of ABF, DBF, HBF, PSN (PSN:4 sets branches)");
    power_cmd->add_option("--branches", branches, "Default N_C / N_RF for PSN and HBF")->check(CLI::PositiveNumber);
    power_cmd->add_option("--n-ms", power.n_ms, "Number of MS antennas")->check(CLI::PositiveNumber);

    CodebookOptions codebook;
    auto *codebook_cmd = app.add_subcommand("codebook", "Dump an analog codebook with its beam patterns");
    codebook_cmd->add_option("--n-antennas,-n", codebook.n_antennas, "Number of ULA elements (power of two)")
        ->required();
    codebook_cmd->add_option("--out", codebook.out_dir, "Output directory");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e, out, err);
        return exit_config_error;
    }

    if (*sweep_cmd)
    {
        if (*seed_opt)
            sweep.seed = seed;
        if (*trials_opt)
            sweep.trials = trials;
        return cmd_sweep(sweep, err);
    }
    if (*power_cmd)
    {
        try
        {
            const auto dots = bits_text.find("..");
            const std::string lo = bits_text.substr(0, dots);
            const std::string hi = dots == std::string::npos ? lo : bits_text.substr(dots + 2);
            std::size_t used_lo = 0, used_hi = 0;
            power.bits_min = std::stoi(lo, &used_lo);
            power.bits_max = std::stoi(hi, &used_hi);
            if (used_lo != lo.size() || used_hi != hi.size())
                throw std::invalid_argument("trailing characters");
        }
        catch (const std::exception &)
        {
            err << "config error: bits: expected N or MIN..MAX, got '" << bits_text << "'\n";
            return exit_config_error;
        }
        try
        {
            power.schemes = parse_scheme_list(scheme_text, branches);
        }
        catch (const ConfigError &e)
        {
            err << "config error: " << e.what() << "\n";
            return exit_config_error;
        }
        return cmd_power(power, err);
    }
    return cmd_codebook(codebook, err);
}

} // namespace cellsearch::cli
