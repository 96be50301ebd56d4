// SPDX-License-Identifier: Apache-2.0
//
// uwbrelay - capacity bounds for frequency-selective UWB relay channels
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

// Command-line front end. Talks to the library only through the C API.
//
// Exit status: 0 on success, 1 on any error, 2 when results were written but
// an optimizer hit its iteration limit, 3 when oracle-check exceeds its
// tolerance.

#include "uwbrelay/uwbrelay.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace
{

constexpr double oracle_tolerance = 2e-3;

struct Options
{
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    bool verbose = false;
    bool bits_per_second = false;
    std::vector<std::string> overrides;
};

struct Failure
{
    int exit_code;
};

// Throws Failure after printing the library's diagnostic.
void check(uwbr_status s, const char *what)
{
    if (s == UWBR_OK || s == UWBR_ERR_NOT_CONVERGED)
        return;
    std::fprintf(stderr, "uwbrelay: %s: %s: %s\n", what, uwbr_status_string(s), uwbr_last_error());
    throw Failure{1};
}

struct ConfigHandle
{
    uwbr_config *ptr = nullptr;
    ~ConfigHandle() { uwbr_config_free(ptr); }
};

void load(const Options &o, ConfigHandle &c)
{
    if (o.config_path.empty())
        check(uwbr_config_new_default(&c.ptr), "default configuration");
    else
        check(uwbr_config_load(o.config_path.c_str(), &c.ptr), o.config_path.c_str());
    for (const auto &kv : o.overrides)
    {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
        {
            std::fprintf(stderr, "uwbrelay: --set expects key=value, got '%s'\n", kv.c_str());
            throw Failure{1};
        }
        const std::string key = kv.substr(0, eq);
        check(uwbr_config_set(c.ptr, key.c_str(), kv.substr(eq + 1).c_str()), ("--set " + key).c_str());
    }
    if (o.seed)
        check(uwbr_config_set(c.ptr, "experiment.master_seed", std::to_string(*o.seed).c_str()), "--seed");
    check(uwbr_config_validate(c.ptr), "configuration");
}

std::string output_path(const Options &o, const std::string &name)
{
    return (std::filesystem::path(o.out_dir) / name).string();
}

void write_manifest(const Options &o, const ConfigHandle &c, const char *command, const std::vector<std::string> &files,
                    bool degraded)
{
    std::vector<const char *> names;
    for (const auto &f : files)
        names.push_back(f.c_str());
    const std::string path = output_path(o, std::string("manifest_") + command + ".json");
    check(uwbr_manifest_write(c.ptr, path.c_str(), command, names.data(), names.size(), degraded ? 1 : 0), path.c_str());
}

int warn_not_converged()
{
    std::fprintf(stderr, "uwbrelay: warning: %s; outputs are flagged in the manifest\n", uwbr_last_error());
    return 2;
}

int run_channel(const Options &o)
{
    ConfigHandle c;
    load(o, c);
    const std::string response = output_path(o, "channel_response.csv");
    const std::string taps = output_path(o, "channel_taps.csv");
    check(uwbr_channel_dump(c.ptr, response.c_str(), taps.c_str()), "channel");
    write_manifest(o, c, "channel", {"channel_response.csv", "channel_taps.csv"}, false);
    std::printf("%s\n%s\n", response.c_str(), taps.c_str());
    return 0;
}

int run_bounds(const Options &o)
{
    ConfigHandle c;
    load(o, c);
    uwbr_report *report = nullptr;
    const uwbr_status s = uwbr_bounds_run(c.ptr, &report);
    check(s, "bounds");
    struct Guard
    {
        uwbr_report *r;
        ~Guard() { uwbr_report_free(r); }
    } guard{report};

    const std::string rates = output_path(o, "bounds.csv");
    const std::string tones = output_path(o, "bounds_per_tone.csv");
    const std::string trace = output_path(o, "bounds_lambda_trace.csv");
    check(uwbr_report_write_csv(report, rates.c_str(), o.bits_per_second), rates.c_str());
    check(uwbr_report_write_per_tone_csv(report, tones.c_str()), tones.c_str());
    check(uwbr_report_write_trace_csv(report, trace.c_str()), trace.c_str());
    const bool degraded = uwbr_report_degraded_accuracy(report) != 0;
    write_manifest(o, c, "bounds", {"bounds.csv", "bounds_per_tone.csv", "bounds_lambda_trace.csv"}, degraded);

    static const struct
    {
        uwbr_bound bound;
        const char *name;
    } rows[] = {{UWBR_BOUND_PDF, "pdf"},
                {UWBR_BOUND_DF, "df"},
                {UWBR_BOUND_CUTSET, "cutset"},
                {UWBR_BOUND_DEGRADED_CAPACITY, "degraded_capacity"},
                {UWBR_BOUND_REVDEG_CAPACITY, "revdeg_capacity"},
                {UWBR_BOUND_DIRECT, "direct"}};
    for (const auto &row : rows)
    {
        double v = 0.0;
        check(uwbr_report_rate(report, row.bound, &v), row.name);
        std::printf("%-18s %.6f bits/sample\n", row.name, v);
    }

    if (o.verbose)
    {
        std::fprintf(stderr, "pdf lambda trace (binding term: %s)\n", uwbr_report_binding_term(report));
        std::fprintf(stderr, "%4s %14s %14s %14s\n", "iter", "lambda", "first", "second");
        for (std::size_t i = 0; i < uwbr_report_trace_length(report); ++i)
        {
            double lambda = 0, first = 0, second = 0;
            check(uwbr_report_trace_step(report, i, &lambda, &first, &second), "trace");
            std::fprintf(stderr, "%4zu %14.9f %14.9f %14.9f\n", i, lambda, first, second);
        }
    }
    return degraded ? warn_not_converged() : 0;
}

int run_sweep(const Options &o, bool rho)
{
    ConfigHandle c;
    load(o, c);
    uwbr_sweep *sweep = nullptr;
    const uwbr_status s = rho ? uwbr_sweep_rho(c.ptr, &sweep) : uwbr_sweep_distance(c.ptr, &sweep);
    check(s, rho ? "sweep-rho" : "sweep-distance");
    struct Guard
    {
        uwbr_sweep *s;
        ~Guard() { uwbr_sweep_free(s); }
    } guard{sweep};

    const std::string stem = rho ? "sweep_rho" : "sweep_distance";
    const std::string csv = output_path(o, stem + ".csv");
    const std::string svg = output_path(o, stem + ".svg");
    check(uwbr_sweep_write_csv(sweep, csv.c_str(), o.bits_per_second), csv.c_str());
    check(uwbr_plot_svg_from_csv(csv.c_str(), svg.c_str(),
                                 rho ? "Cut-set bound versus noise correlation" : "Relay bounds versus relay position"),
          svg.c_str());
    const bool degraded = uwbr_sweep_degraded_accuracy(sweep) != 0;
    write_manifest(o, c, stem.c_str(), {stem + ".csv", stem + ".svg"}, degraded);
    std::printf("%s\n%s\n", csv.c_str(), svg.c_str());
    return degraded ? warn_not_converged() : 0;
}

int run_oracle_check(const Options &o)
{
    ConfigHandle c;
    load(o, c);
    double deviation = 0.0;
    std::size_t cases = 0;
    check(uwbr_oracle_check(c.ptr, &deviation, &cases), "oracle-check");
    std::printf("max deviation %.3e bits over %zu cases (tolerance %.1e)\n", deviation, cases, oracle_tolerance);
    if (deviation > oracle_tolerance)
    {
        std::fprintf(stderr, "uwbrelay: oracle-check: deviation exceeds tolerance\n");
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Capacity bounds for UWB relay channels"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    if (const char *env = std::getenv("UWBRELAY_OUTPUT_DIR"))
        o.out_dir = env;
    else
        o.out_dir = ".";

    app.add_option("-c,--config", o.config_path, "Configuration file (key = value)")->check(CLI::ExistingFile);
    app.add_option("-o,--out", o.out_dir, "Output directory (default: $UWBRELAY_OUTPUT_DIR or .)");
    app.add_option("--seed", o.seed, "Override experiment.master_seed");
    app.add_option("--set", o.overrides, "Override a configuration key (key=value); repeatable");
    app.add_flag("-v,--verbose", o.verbose, "Print the lambda bisection trace");
    app.add_flag("--bits-per-second", o.bits_per_second, "Report rates in bits/s instead of bits/sample");

    auto *channel = app.add_subcommand("channel", "Dump one channel realization");
    auto *bounds = app.add_subcommand("bounds", "Evaluate all bounds on one seeded instance");
    auto *sweep_d = app.add_subcommand("sweep-distance", "Bounds versus source-relay distance");
    auto *sweep_r = app.add_subcommand("sweep-rho", "Cut-set bound versus distance for each rho");
    auto *oracle = app.add_subcommand("oracle-check", "Optimizer against exhaustive grid search");

    CLI11_PARSE(app, argc, argv);

    try
    {
        std::error_code ec;
        std::filesystem::create_directories(o.out_dir, ec);
        if (ec)
        {
            std::fprintf(stderr, "uwbrelay: cannot create output directory '%s': %s\n", o.out_dir.c_str(),
                         ec.message().c_str());
            return 1;
        }
        if (*channel)
            return run_channel(o);
        if (*bounds)
            return run_bounds(o);
        if (*sweep_d)
            return run_sweep(o, false);
        if (*sweep_r)
            return run_sweep(o, true);
        if (*oracle)
            return run_oracle_check(o);
    }
    catch (const Failure &f)
    {
        return f.exit_code;
    }
    return 1;
}
