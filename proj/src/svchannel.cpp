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

#include "uwbrelay/svchannel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uwbrelay
{

namespace
{

bool positive_finite(double x)
{
    return std::isfinite(x) && x > 0.0;
}

} // namespace

void SVParameters::validate() const
{
    if (!positive_finite(cluster_arrival_rate) || !positive_finite(ray_arrival_rate))
        throw std::invalid_argument("SV arrival rates must be positive.");
    if (!positive_finite(cluster_decay) || !positive_finite(ray_decay))
        throw std::invalid_argument("SV decay constants must be positive.");
    if (!std::isfinite(mean_cluster_count) || mean_cluster_count < 1.0)
        throw std::invalid_argument("SV mean cluster count must be at least 1.");
    if (!positive_finite(max_delay))
        throw std::invalid_argument("SV maximum delay must be positive.");
}

void PathlossParameters::validate() const
{
    if (!std::isfinite(ref_loss_db))
        throw std::invalid_argument("Reference pathloss must be finite.");
    if (!positive_finite(ref_distance))
        throw std::invalid_argument("Reference distance must be positive.");
    if (!positive_finite(exponent))
        throw std::invalid_argument("Pathloss exponent must be positive.");
    if (!std::isfinite(shadowing_sigma_db) || shadowing_sigma_db < 0.0)
        throw std::invalid_argument("Shadowing deviation cannot be negative.");
}

double ContinuousImpulse::energy() const
{
    double e = 0.0;
    for (const auto &p : paths)
        e += std::norm(p.gain);
    return e;
}

double ChannelTaps::energy() const
{
    double e = 0.0;
    for (const auto &g : taps)
        e += std::norm(g);
    return e;
}

ContinuousImpulse sample_impulse_response(const SVParameters &params, Rng &rng)
{
    params.validate();

    std::exponential_distribution<double> cluster_gap(params.cluster_arrival_rate);
    std::exponential_distribution<double> ray_gap(params.ray_arrival_rate);
    std::poisson_distribution<int> extra_clusters(params.mean_cluster_count - 1.0);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));

    // Poisson(0) is ill-defined in some implementations; mean 1 forces one cluster.
    const int n_clusters = params.mean_cluster_count > 1.0 ? 1 + extra_clusters(rng) : 1;

    ContinuousImpulse out;
    double cluster_time = 0.0;
    for (int l = 0; l < n_clusters; ++l)
    {
        if (l > 0)
            cluster_time += cluster_gap(rng);
        if (cluster_time > params.max_delay)
            break;

        double ray_time = 0.0;
        while (cluster_time + ray_time <= params.max_delay)
        {
            const double mean_power =
                std::exp(-cluster_time / params.cluster_decay) * std::exp(-ray_time / params.ray_decay);
            const double re = gauss(rng);
            const double im = gauss(rng);
            out.paths.push_back({cluster_time + ray_time, std::sqrt(mean_power) * cdouble(re, im)});
            ray_time += ray_gap(rng);
        }
    }

    const double e = out.energy();
    if (out.paths.empty() || !(e > 0.0) || !std::isfinite(e))
        throw std::invalid_argument("SV parameters produce no usable paths within the maximum delay.");

    const double scale = 1.0 / std::sqrt(e);
    for (auto &p : out.paths)
        p.gain *= scale;
    return out;
}

ChannelTaps discretize_taps(const ContinuousImpulse &impulse, double sample_period, std::size_t max_taps)
{
    if (!positive_finite(sample_period))
        throw std::invalid_argument("Sample period must be positive.");
    if (max_taps < 1)
        throw std::invalid_argument("At least one tap is required.");

    std::vector<cdouble> bins(max_taps, cdouble(0.0, 0.0));
    for (const auto &p : impulse.paths)
    {
        if (!(p.delay >= 0.0))
            throw std::invalid_argument("Path delays cannot be negative.");
        const double k = std::floor(p.delay / sample_period);
        if (k >= static_cast<double>(max_taps))
            continue;
        bins[static_cast<std::size_t>(k)] += p.gain;
    }

    std::size_t length = bins.size();
    while (length > 1 && bins[length - 1] == cdouble(0.0, 0.0))
        --length;
    bins.resize(length);
    return {std::move(bins), sample_period};
}

double pathloss_db(double distance, const PathlossParameters &pl)
{
    if (!positive_finite(distance))
        throw std::invalid_argument("Distance must be positive.");
    return pl.ref_loss_db + 10.0 * pl.exponent * std::log10(distance / pl.ref_distance);
}

ChannelTaps apply_pathloss(const ChannelTaps &taps, double distance, const PathlossParameters &pl, Rng &rng)
{
    pl.validate();
    double loss_db = pathloss_db(distance, pl);
    if (pl.shadowing_sigma_db > 0.0)
    {
        std::normal_distribution<double> shadow(0.0, pl.shadowing_sigma_db);
        loss_db += shadow(rng);
    }
    const double amplitude = std::sqrt(std::pow(10.0, -loss_db / 10.0));

    ChannelTaps out = taps;
    for (auto &g : out.taps)
        g *= amplitude;
    return out;
}

FrequencyResponse dft_response(const ChannelTaps &taps, std::size_t block_size)
{
    if (block_size < 1 || block_size < taps.length())
        throw std::invalid_argument("Block size " + std::to_string(block_size) +
                                    " is shorter than the ISI length " + std::to_string(taps.length()) + ".");

    // twiddle[m] = exp(-j 2 pi m / K)
    std::vector<cdouble> twiddle(block_size);
    for (std::size_t m = 0; m < block_size; ++m)
        twiddle[m] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(block_size));

    FrequencyResponse out;
    out.gains.assign(block_size, cdouble(0.0, 0.0));
    for (std::size_t i = 0; i < block_size; ++i)
    {
        cdouble acc(0.0, 0.0);
        for (std::size_t k = 0; k < taps.length(); ++k)
            acc += taps.taps[k] * twiddle[(i * k) % block_size];
        out.gains[i] = acc;
    }
    return out;
}

} // namespace uwbrelay
