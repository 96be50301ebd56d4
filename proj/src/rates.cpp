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

#include "uwbrelay/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uwbrelay
{

namespace
{

constexpr double magnitude_slack = 1e-12;

double log2_1p(double x)
{
    if (!(x > -1.0))
        throw std::domain_error("Rate argument must exceed -1.");
    return std::log1p(x) / std::numbers::ln2;
}

// |alpha| = 1 - |alpha_bar|, clipped at zero for magnitudes within slack of 1.
double complement(cdouble bar)
{
    return std::max(0.0, 1.0 - std::abs(bar));
}

void check_unit_disc(cdouble v, const char *what)
{
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > 1.0 + magnitude_slack)
        throw std::invalid_argument(std::string(what) + " must lie in the closed unit disc.");
}

void check_tone(const ToneChannel &t)
{
    if (!(t.n_dest > 0.0) || !(t.n_relay > 0.0))
        throw std::invalid_argument("Noise powers must be positive.");
}

void check_split(ToneSplit s)
{
    check_unit_disc(s.alpha_bar, "alpha_bar");
    check_unit_disc(s.beta_bar, "beta_bar");
}

void check_pair(const RelayChannelInstance &inst, const PowerBudget &p, const SplitParams &split)
{
    inst.validate();
    p.validate();
    split.validate(inst.tones());
}

} // namespace

void RelayChannelInstance::validate() const
{
    const std::size_t k = g1.size();
    if (k == 0)
        throw std::invalid_argument("Relay channel instance has no tones.");
    if (g2.size() != k || g3.size() != k || rho.size() != k)
        throw std::invalid_argument("All per-tone sequences of an instance must share the block size.");
    if (!(n_dest > 0.0) || !(n_relay > 0.0))
        throw std::invalid_argument("Noise powers must be positive.");
    for (const auto &r : rho)
        if (!(std::abs(r) <= 1.0))
            throw std::invalid_argument("Noise correlation magnitude cannot exceed 1.");
}

RelayChannelInstance RelayChannelInstance::with_rho(cdouble value) const
{
    RelayChannelInstance out = *this;
    out.rho.assign(tones(), value);
    return out;
}

void PowerBudget::validate() const
{
    if (!(p1 > 0.0) || !(p2 > 0.0) || !(p0 > 0.0))
        throw std::invalid_argument("Transmit powers must be positive.");
}

SplitParams SplitParams::zeros(std::size_t tones)
{
    return {std::vector<cdouble>(tones), std::vector<cdouble>(tones)};
}

void SplitParams::validate(std::size_t tones) const
{
    if (alpha_bar.size() != tones || beta_bar.size() != tones)
        throw std::invalid_argument("Split parameters must have one entry per tone.");
    for (std::size_t i = 0; i < tones; ++i)
    {
        check_unit_disc(alpha_bar[i], "alpha_bar");
        check_unit_disc(beta_bar[i], "beta_bar");
    }
}

ToneChannel tone_of(const RelayChannelInstance &inst, std::size_t i)
{
    return {inst.g1[i], inst.g2[i], inst.g3[i], inst.n_dest, inst.n_relay};
}

ToneSplit tone_of(const SplitParams &split, std::size_t i)
{
    return {split.alpha_bar[i], split.beta_bar[i]};
}

double cap(double x)
{
    if (!(x >= 0.0))
        throw std::domain_error("cap() requires a nonnegative argument.");
    return std::log1p(x) / std::numbers::ln2;
}

cdouble cross_coefficient(ToneSplit s)
{
    return std::sqrt(s.alpha_bar) * std::sqrt(s.beta_bar);
}

double gamma1(const ToneChannel &t, const PowerBudget &p, ToneSplit s)
{
    check_tone(t);
    check_split(s);
    // |G1|^2 P1 + |G3|^2 P2 + 2 sqrt(P1 P2) Re{c G1 G3^*}, written as a sum of
    // two nonnegative terms so that |c| <= 1 keeps it nonnegative in floating point.
    const cdouble c = cross_coefficient(s);
    const double coherent = std::norm(t.g1 * c * std::sqrt(p.p1) + t.g3 * std::sqrt(p.p2));
    const double residual = std::norm(t.g1) * p.p1 * std::max(0.0, 1.0 - std::norm(c));
    const double value = (residual + coherent) / t.n_dest;
    if (value < -1.0)
        throw std::domain_error("gamma1 below -1: invalid split parameters.");
    return value;
}

double gamma2(const ToneChannel &t, const PowerBudget &p, ToneSplit s)
{
    check_tone(t);
    check_split(s);
    const double alpha = complement(s.alpha_bar);
    const double beta = complement(s.beta_bar);
    const double g1sq = std::norm(t.g1);
    const double g2sq = std::norm(t.g2);

    const double relay = 1.0 + g2sq * alpha * std::abs(s.beta_bar) * p.p1 / (g2sq * beta * p.p1 + t.n_relay);
    const double fresh = 1.0 + g1sq * beta * p.p1 / t.n_dest;
    return relay * fresh - 1.0;
}

double gamma3(const ToneChannel &t, const PowerBudget &p, ToneSplit s, cdouble rho)
{
    check_tone(t);
    check_split(s);
    const double rho_sq = std::norm(rho);
    if (!(std::sqrt(rho_sq) < 1.0 - rho_singular_margin))
        throw std::domain_error("gamma3 is singular for |rho| >= 1.");

    // |G1|^2/N + |G2|^2/N1 - 2 Re{G1 G2^* rho}/sqrt(N N1)
    //   = |u - rho^* w|^2 + (1 - |rho|^2) |w|^2,   u = G1/sqrt(N), w = G2/sqrt(N1)
    const cdouble u = t.g1 / std::sqrt(t.n_dest);
    const cdouble w = t.g2 / std::sqrt(t.n_relay);
    const double form = std::norm(u - std::conj(rho) * w) / (1.0 - rho_sq) + std::norm(w);
    const double independent = std::max(0.0, 1.0 - std::abs(s.alpha_bar) * std::abs(s.beta_bar));
    return p.p1 * independent * form;
}

ToneMutualInformation mi_terms(const ToneChannel &t, const PowerBudget &p, ToneSplit s)
{
    check_tone(t);
    check_split(s);
    const double alpha = complement(s.alpha_bar);
    const double beta = complement(s.beta_bar);
    const double bbar = std::abs(s.beta_bar);
    const double g1sq = std::norm(t.g1);
    const double g2sq = std::norm(t.g2);
    const cdouble c = cross_coefficient(s);

    ToneMutualInformation mi{};
    mi.x2_y = log2_1p(std::norm(t.g1 * c * std::sqrt(p.p1) + t.g3 * std::sqrt(p.p2)) /
                      (g1sq * p.p1 * (alpha * bbar + beta) + t.n_dest));
    mi.u_y1_given_x2 = log2_1p(g2sq * alpha * bbar * p.p1 / (g2sq * beta * p.p1 + t.n_relay));
    mi.u_y_given_x2 = log2_1p(g1sq * alpha * bbar * p.p1 / (g1sq * beta * p.p1 + t.n_dest));
    mi.x1_y_given_x2u = log2_1p(g1sq * beta * p.p1 / t.n_dest);
    return mi;
}

CovarianceDeterminants detcov_terms(const ToneChannel &t, const PowerBudget &p, ToneSplit s, cdouble rho)
{
    check_tone(t);
    check_split(s);
    if (!(std::abs(rho) <= 1.0))
        throw std::invalid_argument("Noise correlation magnitude cannot exceed 1.");
    const double nn1 = t.n_dest * t.n_relay;
    const double noise = nn1 * (1.0 - std::norm(rho));
    const double bracket = std::norm(t.g1) / t.n_dest + std::norm(t.g2) / t.n_relay -
                           2.0 * std::real(t.g1 * std::conj(t.g2) * rho) / std::sqrt(nn1);
    const double independent = 1.0 - std::abs(s.alpha_bar) * std::abs(s.beta_bar);
    return {noise + p.p1 * nn1 * independent * bracket, noise};
}

CutTerms pdf_terms(const RelayChannelInstance &inst, const PowerBudget &p, const SplitParams &split)
{
    check_pair(inst, p, split);
    CutTerms out;
    const std::size_t k = inst.tones();
    for (std::size_t i = 0; i < k; ++i)
    {
        const ToneChannel t = tone_of(inst, i);
        const ToneSplit s = tone_of(split, i);
        out.first += cap(gamma1(t, p, s));
        out.second += cap(gamma2(t, p, s));
    }
    out.first /= static_cast<double>(k);
    out.second /= static_cast<double>(k);
    return out;
}

double pdf_rate(const RelayChannelInstance &inst, const PowerBudget &p, const SplitParams &split)
{
    return pdf_terms(inst, p, split).rate();
}

CutTerms cutset_terms(const RelayChannelInstance &inst, const PowerBudget &p, const SplitParams &split)
{
    check_pair(inst, p, split);
    CutTerms out;
    const std::size_t k = inst.tones();
    for (std::size_t i = 0; i < k; ++i)
    {
        const ToneChannel t = tone_of(inst, i);
        const ToneSplit s = tone_of(split, i);
        out.first += cap(gamma1(t, p, s));
        out.second += cap(gamma3(t, p, s, inst.rho[i]));
    }
    out.first /= static_cast<double>(k);
    out.second /= static_cast<double>(k);
    return out;
}

double cutset_rate(const RelayChannelInstance &inst, const PowerBudget &p, const SplitParams &split)
{
    return cutset_terms(inst, p, split).rate();
}

CorrelationChoice degraded_rho(cdouble g1, cdouble g2, double n_dest, double n_relay)
{
    if (g2 == cdouble(0.0, 0.0))
        throw std::invalid_argument("Degraded correlation requires a nonzero source-relay gain.");
    if (!(n_dest > 0.0) || !(n_relay > 0.0))
        throw std::invalid_argument("Noise powers must be positive.");
    const cdouble value = std::conj(g1 / g2) * std::sqrt(n_relay / n_dest);
    const double mag = std::abs(value);
    return {value, mag <= 1.0, !(mag < 1.0 - rho_singular_margin)};
}

CorrelationChoice revdeg_rho(cdouble g1, cdouble g2, double n_dest, double n_relay)
{
    if (g1 == cdouble(0.0, 0.0))
        throw std::invalid_argument("Reversely degraded correlation requires a nonzero direct gain.");
    if (!(n_dest > 0.0) || !(n_relay > 0.0))
        throw std::invalid_argument("Noise powers must be positive.");
    const cdouble value = (g2 / g1) * std::sqrt(n_dest / n_relay);
    const double mag = std::abs(value);
    return {value, mag <= 1.0, !(mag < 1.0 - rho_singular_margin)};
}

CutTerms degraded_terms(const RelayChannelInstance &inst, const PowerBudget &p, const SplitParams &split)
{
    check_pair(inst, p, split);
    const std::size_t k = inst.tones();
    CutTerms out;
    for (std::size_t i = 0; i < k; ++i)
    {
        const ToneSplit s = tone_of(split, i);
        if (std::abs(std::abs(s.beta_bar) - 1.0) > magnitude_slack)
            throw std::invalid_argument("Degraded terms need |beta_bar| = 1 on every tone.");
        const ToneChannel t = tone_of(inst, i);
        out.first += cap(gamma1(t, p, s));
        out.second += log2_1p(std::norm(t.g2) * complement(s.alpha_bar) * p.p1 / t.n_relay);
    }
    out.first /= static_cast<double>(k);
    out.second /= static_cast<double>(k);
    return out;
}

double degraded_capacity_given_alpha(const RelayChannelInstance &inst, const PowerBudget &p,
                                     std::span<const cdouble> alpha_bar)
{
    SplitParams split;
    split.alpha_bar.assign(alpha_bar.begin(), alpha_bar.end());
    split.beta_bar.assign(alpha_bar.size(), cdouble(1.0, 0.0));
    return degraded_terms(inst, p, split).rate();
}

double revdeg_capacity(const RelayChannelInstance &inst, double p1)
{
    inst.validate();
    return direct_rate(inst.g1, p1, inst.n_dest);
}

double direct_rate(const FrequencyResponse &g1, double p, double n_dest)
{
    if (g1.size() == 0)
        throw std::invalid_argument("Direct link has no tones.");
    if (!(p >= 0.0) || !(n_dest > 0.0))
        throw std::invalid_argument("Direct rate needs nonnegative power and positive noise.");
    double sum = 0.0;
    for (const auto &g : g1.gains)
        sum += cap(std::norm(g) * p / n_dest);
    return sum / static_cast<double>(g1.size());
}

double zeta(const ToneChannel &t, const PowerBudget &p, cdouble beta_bar)
{
    check_tone(t);
    check_unit_disc(beta_bar, "beta_bar");
    const double g1sq = std::norm(t.g1);
    const double numerator = g1sq * std::abs(beta_bar) * p.p1 + std::norm(t.g3) * p.p2 +
                             2.0 * std::sqrt(p.p1 * p.p2) * std::real(std::sqrt(beta_bar) * t.g1 * std::conj(t.g3));
    return numerator / (t.n_dest + g1sq * complement(beta_bar) * p.p1);
}

std::vector<std::pair<std::string, double>> named_rates(const RateReport &r)
{
    return {
        {"pdf", r.pdf_rate},
        {"df", r.df_rate},
        {"cutset", r.cutset_rate},
        {"degraded_capacity", r.degraded_capacity},
        {"revdeg_capacity", r.revdeg_capacity},
        {"direct", r.direct_rate},
    };
}

} // namespace uwbrelay
