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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace uwbrelay
{

using cdouble = std::complex<double>;
using Rng = std::mt19937_64;

// Saleh-Valenzuela clustered multipath parameters. Rates in 1/ns, times in ns.
// Defaults follow the 802.15.4a residential NLOS (CM2) report; the mixed
// Poisson ray process is reduced to its dominant rate.
struct SVParameters
{
    double cluster_arrival_rate = 0.12;
    double ray_arrival_rate = 0.15;
    double cluster_decay = 26.27;
    double ray_decay = 17.50;
    double mean_cluster_count = 3.5;
    double max_delay = 200.0;

    void validate() const;
};

// Log-distance pathloss with log-normal shadowing (CM2 defaults).
struct PathlossParameters
{
    double ref_loss_db = 48.7;
    double ref_distance = 1.0; // m
    double exponent = 4.58;
    double shadowing_sigma_db = 3.51;

    void validate() const;
};

struct Path
{
    double delay; // ns
    cdouble gain;
};

struct ContinuousImpulse
{
    std::vector<Path> paths;

    double energy() const;
};

struct ChannelTaps
{
    std::vector<cdouble> taps;
    double sample_period = 2.0; // ns

    std::size_t length() const { return taps.size(); }
    double energy() const;
};

struct FrequencyResponse
{
    std::vector<cdouble> gains;

    std::size_t size() const { return gains.size(); }
    const cdouble &operator[](std::size_t i) const { return gains[i]; }
};

/// Draws one clustered multipath realization.
///
/// Cluster arrivals form a Poisson process starting at T_0 = 0, rays within a
/// cluster a Poisson process starting at tau = 0. The number of clusters is
/// 1 + Poisson(mean_cluster_count - 1). Each path gain is complex Gaussian
/// with mean power exp(-T/cluster_decay) exp(-tau/ray_decay); paths later than
/// max_delay are discarded and the realization is scaled to unit total energy.
ContinuousImpulse sample_impulse_response(const SVParameters &params, Rng &rng);

/// Accumulates path gains into bins k = floor(delay / sample_period).
/// Bins at or beyond max_taps are dropped; trailing zero bins are trimmed
/// (at least one tap is always returned).
ChannelTaps discretize_taps(const ContinuousImpulse &impulse, double sample_period, std::size_t max_taps);

/// Deterministic part of the pathloss in dB at the given distance.
double pathloss_db(double distance, const PathlossParameters &pl);

/// Scales all taps by the amplitude of pathloss plus one shadowing draw.
ChannelTaps apply_pathloss(const ChannelTaps &taps, double distance, const PathlossParameters &pl, Rng &rng);

/// Unnormalized K-point forward DFT of the zero-padded taps.
FrequencyResponse dft_response(const ChannelTaps &taps, std::size_t block_size);

} // namespace uwbrelay
