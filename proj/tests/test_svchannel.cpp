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

#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

using namespace uwbrelay;

namespace
{

const cdouble iu(0.0, 1.0);

double taps_energy(const std::vector<cdouble> &taps)
{
    double e = 0.0;
    for (const auto &g : taps)
        e += std::norm(g);
    return e;
}

} // namespace

TEST_SUITE("svchannel")
{

TEST_CASE("binning examples")
{
    CHECK(discretize_taps({{{0.0, 1.0}}}, 2.0, 8).taps == std::vector<cdouble>{1.0});
    CHECK(discretize_taps({{{0.5, 1.0}, {1.0, 1.0}}}, 2.0, 8).taps == std::vector<cdouble>{2.0});
    CHECK(discretize_taps({{{0.0, 1.0}, {3.0, iu}}}, 2.0, 8).taps == std::vector<cdouble>{1.0, iu});
    // Paths past the last bin are dropped, and trailing empty bins trimmed.
    CHECK(discretize_taps({{{0.0, 1.0}, {9.0, iu}}}, 2.0, 3).taps == std::vector<cdouble>{1.0});
    CHECK_THROWS_AS(discretize_taps({{{0.0, 1.0}}}, 0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(discretize_taps({{{0.0, 1.0}}}, 2.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(discretize_taps({{{-1.0, 1.0}}}, 2.0, 3), std::invalid_argument);
}

TEST_CASE("binning equals per-path accumulation")
{
    Rng rng(5);
    std::uniform_real_distribution<double> delay(0.0, 60.0);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        ContinuousImpulse imp;
        const int n = 1 + trial % 40;
        for (int i = 0; i < n; ++i)
            imp.paths.push_back({delay(rng), cdouble(g(rng), g(rng))});
        const double ts = 0.5 + trial % 4;
        const std::size_t max_taps = 5 + trial % 30;

        // Same accumulation order as the path list, bin by bin.
        std::map<long, cdouble> bins;
        for (const auto &p : imp.paths)
        {
            const long k = static_cast<long>(std::floor(p.delay / ts));
            if (k < static_cast<long>(max_taps))
                bins[k] += p.gain;
        }
        const auto taps = discretize_taps(imp, ts, max_taps);
        const long last = bins.empty() ? 0 : bins.rbegin()->first;
        REQUIRE(taps.length() == static_cast<std::size_t>(last + 1));
        for (std::size_t k = 0; k < taps.length(); ++k)
        {
            const auto it = bins.find(static_cast<long>(k));
            REQUIRE(taps.taps[k] == (it == bins.end() ? cdouble(0.0) : it->second));
        }
    }
}

TEST_CASE("impulse responses are normalized, causal and truncated")
{
    Rng rng(6);
    SVParameters sv;
    for (int i = 0; i < 500; ++i)
    {
        const auto imp = sample_impulse_response(sv, rng);
        REQUIRE_FALSE(imp.paths.empty());
        REQUIRE(imp.energy() == doctest::Approx(1.0).epsilon(1e-12));
        REQUIRE(imp.paths.front().delay == 0.0);
        for (const auto &p : imp.paths)
        {
            REQUIRE(p.delay >= 0.0);
            REQUIRE(p.delay <= sv.max_delay);
        }
    }
}

TEST_CASE("a mean cluster count of one gives a single cluster")
{
    // With a single cluster and slow decay, delays grow by ray gaps only.
    SVParameters sv;
    sv.mean_cluster_count = 1.0;
    sv.max_delay = 50.0;
    Rng rng(7);
    for (int i = 0; i < 50; ++i)
    {
        const auto imp = sample_impulse_response(sv, rng);
        for (std::size_t k = 1; k < imp.paths.size(); ++k)
            REQUIRE(imp.paths[k].delay >= imp.paths[k - 1].delay);
    }
}

TEST_CASE("sampling is deterministic for a seed")
{
    SVParameters sv;
    Rng a(99), b(99);
    const auto x = sample_impulse_response(sv, a);
    const auto y = sample_impulse_response(sv, b);
    REQUIRE(x.paths.size() == y.paths.size());
    for (std::size_t i = 0; i < x.paths.size(); ++i)
    {
        CHECK(x.paths[i].delay == y.paths[i].delay);
        CHECK(x.paths[i].gain == y.paths[i].gain);
    }
}

TEST_CASE("parameter validation")
{
    Rng rng(1);
    SVParameters sv;
    sv.cluster_arrival_rate = 0.0;
    CHECK_THROWS_AS(sample_impulse_response(sv, rng), std::invalid_argument);
    sv = {};
    sv.mean_cluster_count = 0.5;
    CHECK_THROWS_AS(sample_impulse_response(sv, rng), std::invalid_argument);
    sv = {};
    sv.max_delay = -1.0;
    CHECK_THROWS_AS(sample_impulse_response(sv, rng), std::invalid_argument);

    PathlossParameters pl;
    pl.shadowing_sigma_db = -1.0;
    CHECK_THROWS_AS(apply_pathloss({{1.0}, 2.0}, 1.0, pl, rng), std::invalid_argument);
    CHECK_THROWS_AS(apply_pathloss({{1.0}, 2.0}, 0.0, PathlossParameters{}, rng), std::invalid_argument);
}

TEST_CASE("pathloss examples")
{
    Rng rng(2);
    PathlossParameters pl;
    pl.shadowing_sigma_db = 0.0;
    const ChannelTaps unit{{1.0, iu}, 2.0};

    const auto at_ref = apply_pathloss(unit, pl.ref_distance, pl, rng);
    CHECK(at_ref.taps[0].real() == doctest::Approx(std::pow(10.0, -pl.ref_loss_db / 20.0)).epsilon(1e-14));

    PathlossParameters square{0.0, 1.0, 2.0, 0.0};
    const auto far = apply_pathloss(unit, 10.0, square, rng);
    CHECK(std::norm(far.taps[0]) == doctest::Approx(1e-2).epsilon(1e-14));
    CHECK(std::norm(far.taps[1]) == doctest::Approx(1e-2).epsilon(1e-14));
}

TEST_CASE("pathloss is strictly decreasing in distance without shadowing")
{
    Rng rng(3);
    PathlossParameters pl;
    pl.shadowing_sigma_db = 0.0;
    const ChannelTaps taps{{cdouble(0.3, -0.2), cdouble(-0.5, 0.1), cdouble(0.01, 0.02)}, 2.0};
    ChannelTaps prev = apply_pathloss(taps, 0.1, pl, rng);
    for (double d = 0.2; d < 20.0; d *= 1.3)
    {
        const ChannelTaps cur = apply_pathloss(taps, d, pl, rng);
        for (std::size_t k = 0; k < taps.length(); ++k)
            REQUIRE(std::abs(cur.taps[k]) < std::abs(prev.taps[k]));
        prev = cur;
    }
}

TEST_CASE("shadowing averages to the closed-form pathloss in dB")
{
    Rng rng(4);
    const PathlossParameters pl;
    const ChannelTaps unit{{1.0}, 2.0};
    const int draws = 10000;
    double sum_db = 0.0;
    for (int i = 0; i < draws; ++i)
        sum_db += -10.0 * std::log10(std::norm(apply_pathloss(unit, 3.0, pl, rng).taps[0]));
    const double mean_db = sum_db / draws;
    CHECK(std::abs(mean_db - pathloss_db(3.0, pl)) <= 0.02 * pathloss_db(3.0, pl));
    // Tighter: the sample mean of N(0, sigma^2) shadowing is within 4 standard errors.
    CHECK(std::abs(mean_db - pathloss_db(3.0, pl)) <= 4.0 * pl.shadowing_sigma_db / std::sqrt(draws));
}

TEST_CASE("DFT examples")
{
    const auto flat = dft_response({{1.0}, 2.0}, 4);
    for (const auto &g : flat.gains)
        CHECK(std::abs(g - 1.0) < 1e-15);

    const auto ramp = dft_response({{0.0, 1.0}, 2.0}, 4);
    const cdouble expected[] = {1.0, -iu, -1.0, iu};
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(ramp[i] - expected[i]) < 1e-15);

    CHECK_THROWS_AS(dft_response({{1.0, 1.0, 1.0}, 2.0}, 2), std::invalid_argument);
    CHECK_NOTHROW(dft_response({{1.0, 1.0, 1.0}, 2.0}, 3));
}

TEST_CASE("DFT matches a direct evaluation and satisfies Parseval")
{
    Rng rng(8);
    SVParameters sv;
    for (int i = 0; i < 100; ++i)
    {
        const auto taps = discretize_taps(sample_impulse_response(sv, rng), 2.0, 64);
        const std::size_t k = 64;
        const auto g = dft_response(taps, k);
        REQUIRE(g.size() == k);
        double sum = 0.0;
        for (std::size_t t = 0; t < k; ++t)
        {
            cdouble direct = 0.0;
            for (std::size_t n = 0; n < taps.length(); ++n)
                direct += taps.taps[n] * std::polar(1.0, -2.0 * std::numbers::pi * double(t * n) / double(k));
            REQUIRE(std::abs(direct - g[t]) <= 1e-12 * (1.0 + std::abs(direct)));
            sum += std::norm(g[t]);
        }
        REQUIRE(std::abs(sum / double(k) - taps_energy(taps.taps)) <= 1e-12 * taps_energy(taps.taps));
    }
}

} // TEST_SUITE
