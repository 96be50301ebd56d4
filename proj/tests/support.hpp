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

// Random draws and independent reference formulas shared by the tests.
// The reference formulas are written directly from the textbook expressions
// and deliberately avoid the rearrangements used in the library.

#include "uwbrelay/rates.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace testsupport
{

using uwbrelay::cdouble;
using Rng = std::mt19937_64;

inline double uniform(Rng &rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(Rng &rng, double lo_exp, double hi_exp)
{
    return std::pow(10.0, uniform(rng, lo_exp, hi_exp));
}

inline cdouble random_phase(Rng &rng)
{
    return std::polar(1.0, uniform(rng, -std::numbers::pi, std::numbers::pi));
}

// Complex value with magnitude^2 log-uniform in [10^lo, 10^hi].
inline cdouble random_gain(Rng &rng, double lo_exp, double hi_exp)
{
    return std::sqrt(log_uniform(rng, lo_exp, hi_exp)) * random_phase(rng);
}

// Point in the closed unit disc with a uniform magnitude and phase.
inline cdouble random_disc(Rng &rng)
{
    return uniform(rng, 0.0, 1.0) * random_phase(rng);
}

inline uwbrelay::ToneChannel random_tone(Rng &rng)
{
    uwbrelay::ToneChannel t;
    t.g1 = random_gain(rng, -1.0, 1.0);
    t.g2 = random_gain(rng, -1.0, 1.0);
    t.g3 = random_gain(rng, -1.0, 1.0);
    t.n_dest = log_uniform(rng, -1.0, 0.5);
    t.n_relay = log_uniform(rng, -1.0, 0.5);
    return t;
}

inline uwbrelay::PowerBudget random_powers(Rng &rng)
{
    return {log_uniform(rng, -0.5, 1.0), log_uniform(rng, -0.5, 1.0), log_uniform(rng, -1.0, 1.0)};
}

inline uwbrelay::RelayChannelInstance random_instance(Rng &rng, std::size_t k, double lo_exp = -1.0,
                                                      double hi_exp = 1.0)
{
    uwbrelay::RelayChannelInstance inst;
    for (std::size_t i = 0; i < k; ++i)
    {
        inst.g1.gains.push_back(random_gain(rng, lo_exp, hi_exp));
        inst.g2.gains.push_back(random_gain(rng, lo_exp, hi_exp));
        inst.g3.gains.push_back(random_gain(rng, lo_exp, hi_exp));
    }
    inst.n_dest = log_uniform(rng, -0.5, 0.5);
    inst.n_relay = log_uniform(rng, -0.5, 0.5);
    inst.rho.assign(k, cdouble(0.0, 0.0));
    return inst;
}

inline double log2_1p(double x)
{
    return std::log2(1.0 + x);
}

// Reference per-tone terms. c = sqrt(alpha_bar) sqrt(beta_bar).
inline double ref_gamma1(const uwbrelay::ToneChannel &t, const uwbrelay::PowerBudget &p, cdouble ab, cdouble bb)
{
    const cdouble c = std::sqrt(ab) * std::sqrt(bb);
    return (std::norm(t.g1) * p.p1 + std::norm(t.g3) * p.p2 +
            2.0 * std::sqrt(p.p1 * p.p2) * std::real(c * t.g1 * std::conj(t.g3))) /
           t.n_dest;
}

inline double ref_gamma2(const uwbrelay::ToneChannel &t, const uwbrelay::PowerBudget &p, cdouble ab, cdouble bb)
{
    const double alpha = 1.0 - std::abs(ab);
    const double beta = 1.0 - std::abs(bb);
    const double g1 = std::norm(t.g1), g2 = std::norm(t.g2);
    return (1.0 + g2 * alpha * std::abs(bb) * p.p1 / (g2 * beta * p.p1 + t.n_relay)) *
               (1.0 + g1 * beta * p.p1 / t.n_dest) -
           1.0;
}

inline double ref_gamma3(const uwbrelay::ToneChannel &t, const uwbrelay::PowerBudget &p, cdouble ab, cdouble bb,
                         cdouble rho)
{
    const double bracket = std::norm(t.g1) / t.n_dest + std::norm(t.g2) / t.n_relay -
                           2.0 * std::real(t.g1 * std::conj(t.g2) * rho) / std::sqrt(t.n_dest * t.n_relay);
    return p.p1 * (1.0 - std::abs(ab) * std::abs(bb)) / (1.0 - std::norm(rho)) * bracket;
}

// Determinant of a 2x2 Hermitian matrix [[a, b], [conj(b), d]].
inline double det_hermitian(double a, cdouble b, double d)
{
    return a * d - std::norm(b);
}

// det cov(Y, Y1 | X2) built entry by entry. Given X2, the part of X1 that is
// not coherent with X2 has power v = P1 (1 - |alpha_bar||beta_bar|); it
// reaches the destination through G1 and the relay through G2. The noise
// cross-covariance entry E[Z Z1^*] is rho^* sqrt(N N1).
inline double ref_received_det(const uwbrelay::ToneChannel &t, const uwbrelay::PowerBudget &p, cdouble ab,
                               cdouble bb, cdouble rho)
{
    const double v = p.p1 * (1.0 - std::abs(ab) * std::abs(bb));
    const double a = std::norm(t.g1) * v + t.n_dest;
    const double d = std::norm(t.g2) * v + t.n_relay;
    const cdouble b = t.g1 * std::conj(t.g2) * v + std::conj(rho) * std::sqrt(t.n_dest * t.n_relay);
    return det_hermitian(a, b, d);
}

inline double ref_noise_det(const uwbrelay::ToneChannel &t, cdouble rho)
{
    return det_hermitian(t.n_dest, std::conj(rho) * std::sqrt(t.n_dest * t.n_relay), t.n_relay);
}

} // namespace testsupport
