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

// Exhaustive grid oracle for the max-min bounds.
//
// Every grid point of every tone is evaluated through the closed forms of the
// rates module. For two tones the joint grid has n^4 points; instead of
// enumerating it, each tone's point cloud is reduced to its Pareto frontier
// in (first term, second term), which preserves the exact max-min value over
// the product grid, and the frontiers are merged with a monotone search.

#include "uwbrelay/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uwbrelay
{

namespace
{

struct TermPair
{
    double first;
    double second;
};

std::vector<TermPair> tone_cloud(const RelayChannelInstance &inst, const PowerBudget &p, std::size_t tone,
                                 Objective objective, std::size_t n)
{
    const ToneChannel t = tone_of(inst, tone);
    const std::vector<double> theta = align_phases(inst);

    std::vector<TermPair> cloud;
    cloud.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const double a = static_cast<double>(i) / static_cast<double>(n - 1);
        for (std::size_t j = 0; j < n; ++j)
        {
            const double b = static_cast<double>(j) / static_cast<double>(n - 1);
            const ToneSplit s{std::polar(a, theta[tone]), std::polar(b, theta[tone])};
            const double first = cap(gamma1(t, p, s));
            const double second =
                objective == Objective::pdf ? cap(gamma2(t, p, s)) : cap(gamma3(t, p, s, inst.rho[tone]));
            cloud.push_back({first, second});
        }
    }
    return cloud;
}

// Sorted by first ascending with second strictly descending.
std::vector<TermPair> frontier(std::vector<TermPair> cloud)
{
    std::sort(cloud.begin(), cloud.end(), [](const TermPair &x, const TermPair &y) {
        if (x.first != y.first)
            return x.first > y.first;
        return x.second > y.second;
    });
    std::vector<TermPair> out;
    double best_second = -std::numeric_limits<double>::infinity();
    for (const auto &c : cloud)
    {
        if (c.second > best_second)
        {
            out.push_back(c);
            best_second = c.second;
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

} // namespace

double brute_force_oracle(const RelayChannelInstance &inst, const PowerBudget &p, Objective objective,
                          double resolution)
{
    inst.validate();
    p.validate();
    const std::size_t k = inst.tones();
    if (k > 2)
        throw std::invalid_argument("Brute-force oracle supports at most 2 tones.");
    if (!(resolution > 0.0 && resolution <= 0.5))
        throw std::invalid_argument("Oracle resolution must lie in (0, 0.5].");
    const std::size_t n = static_cast<std::size_t>(std::llround(1.0 / resolution)) + 1;

    const auto f0 = frontier(tone_cloud(inst, p, 0, objective, n));
    double best = -std::numeric_limits<double>::infinity();
    if (k == 1)
    {
        for (const auto &c : f0)
            best = std::max(best, std::min(c.first, c.second));
        return best;
    }

    // For a fixed point of tone 0, min(first sum, second sum) over the tone-1
    // frontier increases then decreases; the maximum sits at the crossing.
    const auto f1 = frontier(tone_cloud(inst, p, 1, objective, n));
    for (const auto &c : f0)
    {
        const auto crossing = std::partition_point(f1.begin(), f1.end(), [&](const TermPair &d) {
            return c.first + d.first < c.second + d.second;
        });
        for (auto it : {crossing, crossing == f1.begin() ? crossing : crossing - 1})
        {
            if (it == f1.end())
                continue;
            best = std::max(best, std::min(c.first + it->first, c.second + it->second));
        }
    }
    return best / 2.0;
}

} // namespace uwbrelay
