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

#include "uwbrelay/optimizer.hpp"
#include "uwbrelay/rates.hpp"
#include "uwbrelay/svchannel.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace uwbrelay
{

// Node placement. With collinear placement the relay sits on the
// source-destination segment and d3 = d1 - d2.
struct Geometry
{
    double d1 = 3.0;
    double d2 = 1.5;
    bool collinear = true;
    double d3_override = 0.0; // used when !collinear

    double d3() const { return collinear ? d1 - d2 : d3_override; }
    void validate() const;
};

struct ExperimentConfig
{
    // Regulatory masks (dBm/MHz) and bandwidth.
    double psd_tx_dbm_per_mhz = -41.3;
    double psd_noise_dbm_per_mhz = -114.0;
    double bandwidth_mhz = 500.0;

    std::size_t block_size = 1024;
    double coherence_time_ns = 100000.0;

    std::size_t trials = 500;
    std::uint64_t master_seed = 20111017;
    std::vector<double> rho_values{0.0, 0.6, 0.9};

    double d1 = 3.0;
    bool collinear = true;
    double d3_override = 0.0;
    std::vector<double> d2_grid{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5};

    // Single-instance evaluation (the `bounds` and `channel` commands).
    double single_d2 = 1.5;
    double single_rho = 0.0;
    std::uint64_t single_trial = 0;

    SVParameters sv;
    PathlossParameters pl;
    OptimizerSettings optimizer;

    // Worker threads for trials; 0 selects the hardware concurrency.
    std::size_t threads = 0;

    // Oracle-check suite.
    std::size_t oracle_instances_k1 = 50;
    std::size_t oracle_instances_k2 = 20;
    double oracle_resolution = 1e-3;

    double sample_period_ns() const { return 1000.0 / bandwidth_mhz; }
    std::size_t max_taps() const;
    Geometry geometry(double d2) const;
    void validate() const;
};

struct LinkPowers
{
    PowerBudget powers;
    double n_dest = 1.0;
    double n_relay = 1.0;
};

/// dBm/MHz over a bandwidth in MHz to watts per complex sample.
double psd_to_watts(double dbm_per_mhz, double bandwidth_mhz);

/// Source and relay transmit at the transmit mask, both receivers see the
/// noise mask. P0 is set equal to P1.
LinkPowers powers_from_config(const ExperimentConfig &config);

enum class Link : std::size_t
{
    source_destination = 0,
    source_relay = 1,
    relay_destination = 2,
};

/// Seed of one link of one trial; a pure function of its arguments.
std::uint64_t link_seed(std::uint64_t master_seed, std::uint64_t trial_index, Link link);

struct LinkRealization
{
    ContinuousImpulse impulse;
    ChannelTaps taps;  // before pathloss
    ChannelTaps faded; // after pathloss and shadowing
    FrequencyResponse response;
};

LinkRealization draw_link(const ExperimentConfig &config, std::uint64_t seed, double distance);

struct TrialChannels
{
    std::array<LinkRealization, 3> links;
    std::array<std::uint64_t, 3> seeds{};
};

TrialChannels draw_trial(const ExperimentConfig &config, const Geometry &geometry, std::uint64_t trial_index);
TrialChannels draw_trial(const ExperimentConfig &config, const Geometry &geometry,
                         const std::array<std::uint64_t, 3> &seeds);

RelayChannelInstance make_instance(const TrialChannels &channels, const LinkPowers &powers, double rho);

// Everything computed for one trial; reports[i] corresponds to rhos[i] and
// differ only in the cut-set bound.
struct TrialOutcome
{
    std::vector<RateReport> reports;
    OptimizationResult pdf;
    OptimizationResult df;
    std::vector<OptimizationResult> cutset;
};

TrialOutcome evaluate_bounds(const RelayChannelInstance &inst, const LinkPowers &powers,
                             const OptimizerSettings &settings, std::span<const double> rhos);

RateReport run_trial(const ExperimentConfig &config, const Geometry &geometry, double rho, std::uint64_t trial_index);

struct SweepSeries
{
    std::string bound;
    std::vector<double> mean;
    std::vector<double> stderr_mean;
    std::vector<std::vector<double>> samples; // [axis point][trial]
};

struct SweepResult
{
    std::string axis_name = "d2_m";
    std::vector<double> axis;
    std::vector<SweepSeries> series;
    std::size_t trials = 0;
    bool degraded_accuracy = false;

    const SweepSeries &get(const std::string &bound) const;
};

/// Bounds versus source-relay distance with rho = 0 in the upper bound:
/// pdf, df, cutset and direct (source at twice the power).
SweepResult sweep_distance(const ExperimentConfig &config);

/// Cut-set bound versus distance for each configured rho. The lower bound is
/// optimized once per trial and re-evaluated per rho.
SweepResult sweep_rho(const ExperimentConfig &config);

std::string rho_label(double rho);

struct OracleCase
{
    std::size_t tones = 0;
    std::uint64_t trial = 0;
    double d2 = 0.0;
    double rho = 0.0;
    Objective objective = Objective::pdf;
    double optimizer_rate = 0.0;
    double oracle_rate = 0.0;

    double deviation() const { return optimizer_rate - oracle_rate; }
};

struct OracleCheckResult
{
    std::vector<OracleCase> cases;
    double max_abs_deviation = 0.0;
};

/// Optimizer against the exhaustive grid on channel-model instances with
/// K = 1 and K = 2: both objectives on each instance. Instance j uses trial
/// index j, the j-th d2 grid point and the j-th rho (both cyclic).
OracleCheckResult oracle_check(const ExperimentConfig &config);

} // namespace uwbrelay
