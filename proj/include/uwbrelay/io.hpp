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

#pragma once

// Text serialization of channels, rate reports and sweeps, plus SVG charts.
// All numbers are printed with %.17g so that files round-trip exactly and
// are byte-identical across repeated runs.

#include "uwbrelay/config.hpp"
#include "uwbrelay/experiments.hpp"
#include "uwbrelay/optimizer.hpp"
#include "uwbrelay/rates.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace uwbrelay
{

class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

std::string format_number(double v);

/// Writes to `path.tmp` and renames over `path`.
void write_file_atomic(const std::string &path, const std::string &content);

std::string read_file(const std::string &path);

// Rates are in bits per complex sample unless a per-second scale (the
// bandwidth in Hz) is given.
struct RateUnit
{
    double scale = 1.0;
    const char *suffix = "bits_per_sample";

    static RateUnit per_sample() { return {}; }
    static RateUnit per_second(double bandwidth_hz) { return {bandwidth_hz, "bits_per_second"}; }
};

/// One row per tone with the three link gains; header comments carry K, Ts
/// and the link seeds.
std::string channel_response_csv(const TrialChannels &channels, double sample_period_ns);

/// One row per (link, tap) before and after pathloss.
std::string channel_taps_csv(const TrialChannels &channels, double sample_period_ns);

std::string rate_report_csv(const RateReport &report, RateUnit unit = {});

std::string per_tone_csv(const RateReport &report);

std::string lambda_trace_csv(const OptimizationResult &result);

std::string sweep_csv(const SweepResult &sweep, RateUnit unit = {});

struct ManifestEntry
{
    std::string command;
    std::uint64_t config_hash = 0;
    std::uint64_t master_seed = 0;
    std::vector<std::string> files;
    bool degraded_accuracy = false;
};

/// JSON manifest text; contains no timestamps so it is reproducible.
std::string manifest_json(const ManifestEntry &entry, const ExperimentConfig &config);

struct ChartLabels
{
    std::string title;
    std::string x_label = "d2 [m]";
    std::string y_label = "rate [bits/sample]";
};

/// Line chart of a sweep CSV (as produced by sweep_csv): one polyline per
/// bound, in order of first appearance. Depends only on the CSV text.
std::string svg_from_sweep_csv(const std::string &csv_text, const ChartLabels &labels = {});

} // namespace uwbrelay
