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

// Max-min optimization of the split parameters.
//
// The bounds have the form max_x min{F1(x), F2(x)} with F1, F2 tone-averaged
// sums of per-tone terms. The solver scalarizes with a weight lambda,
//     g(lambda) = max_x lambda F1(x) + (1 - lambda) F2(x),
// which separates across tones, and bisects lambda on the sign of F1 - F2 at
// the weighted maximizer. Each per-tone weighted problem is solved on a grid
// (reduced to its Pareto frontier once per call) followed by coordinate
// refinement. The best primal value seen along the lambda path is kept, and
// known analytic corners are always evaluated as extra candidates.

#include "uwbrelay/rates.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace uwbrelay
{

struct OptimizerSettings
{
    std::size_t tone_grid_points = 101;
    double lambda_tolerance = 1e-6;
    std::size_t max_lambda_iters = 60;
    std::size_t refine_steps = 3;

    void validate() const;
};

enum class BindingTerm
{
    first,
    second,
    both,
};

std::string to_string(BindingTerm b);

struct LambdaStep
{
    double lambda;
    double first;
    double second;
};

struct OptimizationResult
{
    SplitParams split;
    double rate = 0.0;
    CutTerms terms;
    BindingTerm binding_term = BindingTerm::both;
    std::size_t iterations = 0;
    bool converged = true; // false: lambda bisection hit max_lambda_iters
    std::vector<LambdaStep> trace;
};

/// Per-tone phase theta_i = -arg(G1_i G3_i^*) that makes the cross term of
/// gamma1 real and nonnegative.
std::vector<double> align_phases(const RelayChannelInstance &inst);

/// Split with magnitudes a_i, b_i and phases from align_phases(), so that
/// sqrt(alpha_bar_i) sqrt(beta_bar_i) = sqrt(a_i b_i) exp(j theta_i).
SplitParams aligned_split(const RelayChannelInstance &inst, std::span<const double> a, std::span<const double> b);

/// Partial decode-and-forward lower bound, maximized over (a_i, b_i) in [0,1]^2.
OptimizationResult optimize_pdf(const RelayChannelInstance &inst, const PowerBudget &p,
                                const OptimizerSettings &settings = {});

/// Cut-set upper bound. The bound depends on a_i b_i only; it is searched over
/// t_i = a_i b_i and mapped back with a_i = b_i = sqrt(t_i). A warm_start
/// split, if given, is kept when it beats the search. For any split the
/// cut-set terms dominate the partial decode-and-forward terms, so passing
/// the optimize_pdf split guarantees the optimized bounds stay ordered.
OptimizationResult optimize_cutset(const RelayChannelInstance &inst, const PowerBudget &p,
                                   const OptimizerSettings &settings = {}, const SplitParams *warm_start = nullptr);

/// Degraded-channel capacity expression (beta_bar = 1), maximized over a_i.
/// Also the decode-and-forward rate of an arbitrary instance.
OptimizationResult optimize_degraded(const RelayChannelInstance &inst, const PowerBudget &p,
                                     const OptimizerSettings &settings = {});

enum class Objective
{
    pdf,
    cutset,
};

/// Exhaustive max-min over the joint (a_i, b_i) grid of spacing `resolution`
/// with aligned phases. Exact over the grid; K <= 2 only.
double brute_force_oracle(const RelayChannelInstance &inst, const PowerBudget &p, Objective objective,
                          double resolution);

} // namespace uwbrelay
