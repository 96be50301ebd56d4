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

// Closed-form rate expressions for the Gaussian frequency-domain relay channel
//
//   Y1_i = G2_i X1_i + Z1_i                 (relay)
//   Y_i  = G1_i X1_i + G3_i X2_i + Z_i      (destination)
//
// with Z_i ~ CN(0, N), Z1_i ~ CN(0, N1) and E{Z1_i Z_i^*} = rho_i sqrt(N N1).
// All rates are in bits per complex sample; multiply by the bandwidth in Hz
// for bits per second.

#include "uwbrelay/svchannel.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace uwbrelay
{

// Values of |rho| at or above this are treated as singular by the cut-set term.
inline constexpr double rho_singular_margin = 1e-9;

struct RelayChannelInstance
{
    FrequencyResponse g1; // source -> destination
    FrequencyResponse g2; // source -> relay
    FrequencyResponse g3; // relay -> destination
    double n_dest = 1.0;
    double n_relay = 1.0;
    std::vector<cdouble> rho;

    std::size_t tones() const { return g1.size(); }
    void validate() const;

    // Same instance with a constant correlation on every tone.
    RelayChannelInstance with_rho(cdouble value) const;
};

// p0 is the power of the auxiliary codeword U. It cancels from every rate.
struct PowerBudget
{
    double p1 = 1.0;
    double p2 = 1.0;
    double p0 = 1.0;

    void validate() const;
};

// Codebook correlation parameters. |alpha_i| = 1 - |alpha_bar_i| and
// |beta_i| = 1 - |beta_bar_i|.
struct SplitParams
{
    std::vector<cdouble> alpha_bar;
    std::vector<cdouble> beta_bar;

    static SplitParams zeros(std::size_t tones);
    std::size_t tones() const { return alpha_bar.size(); }
    void validate(std::size_t tones) const;
};

// One tone of an instance.
struct ToneChannel
{
    cdouble g1, g2, g3;
    double n_dest = 1.0;
    double n_relay = 1.0;
};

struct ToneSplit
{
    cdouble alpha_bar{0.0, 0.0};
    cdouble beta_bar{0.0, 0.0};
};

ToneChannel tone_of(const RelayChannelInstance &inst, std::size_t i);
ToneSplit tone_of(const SplitParams &split, std::size_t i);

/// log2(1 + x); throws std::domain_error for x < 0.
double cap(double x);

/// Coefficient of X2 in X1 per unit sqrt(P1/P2): sqrt(alpha_bar) sqrt(beta_bar)
/// with principal roots taken separately, as in the superposition codebook.
cdouble cross_coefficient(ToneSplit s);

/// Multiple-access cut SNR shared by the lower and upper bound.
double gamma1(const ToneChannel &t, const PowerBudget &p, ToneSplit s);

/// Relay-decoding SNR of the partial decode-and-forward bound (product form).
double gamma2(const ToneChannel &t, const PowerBudget &p, ToneSplit s);

/// Broadcast cut SNR with correlated relay/destination noise.
/// Throws std::domain_error when |rho| >= 1 - rho_singular_margin.
double gamma3(const ToneChannel &t, const PowerBudget &p, ToneSplit s, cdouble rho);

// Mutual-information terms of the superposition codebook, in bits.
struct ToneMutualInformation
{
    double x2_y;           // I(X2; Y)
    double u_y1_given_x2;  // I(U; Y1 | X2)
    double u_y_given_x2;   // I(U; Y | X2)
    double x1_y_given_x2u; // I(X1; Y | X2, U)
};

ToneMutualInformation mi_terms(const ToneChannel &t, const PowerBudget &p, ToneSplit s);

// E det cov(Y, Y1 | X2) and det cov(Z, Z1).
struct CovarianceDeterminants
{
    double received;
    double noise;
};

CovarianceDeterminants detcov_terms(const ToneChannel &t, const PowerBudget &p, ToneSplit s, cdouble rho);

// Both tone-averaged cut terms of a max-min bound.
struct CutTerms
{
    double first = 0.0;
    double second = 0.0;

    double rate() const { return first < second ? first : second; }
};

CutTerms pdf_terms(const RelayChannelInstance &inst, const PowerBudget &p, const SplitParams &split);
double pdf_rate(const RelayChannelInstance &inst, const PowerBudget &p, const SplitParams &split);

CutTerms cutset_terms(const RelayChannelInstance &inst, const PowerBudget &p, const SplitParams &split);
double cutset_rate(const RelayChannelInstance &inst, const PowerBudget &p, const SplitParams &split);

struct CorrelationChoice
{
    cdouble value;
    bool valid;    // |value| <= 1
    bool singular; // |value| >= 1 - rho_singular_margin; gamma3 undefined
};

/// Noise correlation making the destination a degraded version of the relay.
CorrelationChoice degraded_rho(cdouble g1, cdouble g2, double n_dest, double n_relay);

/// Noise correlation making the relay a degraded version of the destination.
CorrelationChoice revdeg_rho(cdouble g1, cdouble g2, double n_dest, double n_relay);

/// Degraded-channel capacity terms: the multiple-access cut and the
/// source-relay cut, for a split whose beta_bar has unit magnitude on every
/// tone. beta_bar carries only phase; the cross term uses
/// sqrt(alpha_bar) sqrt(beta_bar) like the partial decode-and-forward terms,
/// which lets the cross term reach every phase.
CutTerms degraded_terms(const RelayChannelInstance &inst, const PowerBudget &p, const SplitParams &split);

/// degraded_terms(...).rate() with beta_bar = 1 on every tone, so the cross
/// term uses the principal root of alpha_bar alone.
double degraded_capacity_given_alpha(const RelayChannelInstance &inst, const PowerBudget &p,
                                     std::span<const cdouble> alpha_bar);

double revdeg_capacity(const RelayChannelInstance &inst, double p1);

/// Point-to-point rate over the direct link at source power p.
double direct_rate(const FrequencyResponse &g1, double p, double n_dest);

/// Per-tone SNR whose capacity is the gap between the two cut terms of the
/// reversely degraded bound (alpha_bar = 1).
double zeta(const ToneChannel &t, const PowerBudget &p, cdouble beta_bar);

// Per-tone diagnostics of one evaluated instance.
struct ToneDiagnostics
{
    double a = 0.0;
    double b = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double gamma3 = 0.0;
    ToneMutualInformation mi{};
};

struct RateReport
{
    double pdf_rate = 0.0;
    double df_rate = 0.0;
    double cutset_rate = 0.0;
    double degraded_capacity = 0.0;
    double revdeg_capacity = 0.0;
    double direct_rate = 0.0;
    bool degraded_accuracy = false; // some optimizer hit its iteration cap
    std::vector<ToneDiagnostics> per_tone;
};

// (name, value) pairs in reporting order.
std::vector<std::pair<std::string, double>> named_rates(const RateReport &r);

} // namespace uwbrelay
