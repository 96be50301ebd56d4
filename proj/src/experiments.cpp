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

#include "uwbrelay/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace uwbrelay
{

namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Runs job(i) for i in [0, n) on up to `threads` workers. Results are written
// by index, so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)> &job)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    if (threads <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            job(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w)
    {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    job(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next = n;
                }
            }
        });
    }
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

void summarize(SweepSeries &s)
{
    s.mean.assign(s.samples.size(), 0.0);
    s.stderr_mean.assign(s.samples.size(), 0.0);
    for (std::size_t i = 0; i < s.samples.size(); ++i)
    {
        const auto &v = s.samples[i];
        const double n = static_cast<double>(v.size());
        double sum = 0.0;
        for (double x : v)
            sum += x;
        const double mean = sum / n;
        double ss = 0.0;
        for (double x : v)
            ss += (x - mean) * (x - mean);
        s.mean[i] = mean;
        s.stderr_mean[i] = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
    }
}

SweepSeries empty_series(const std::string &name, std::size_t points, std::size_t trials)
{
    SweepSeries s;
    s.bound = name;
    s.samples.assign(points, std::vector<double>(trials, 0.0));
    return s;
}

// One job per (axis point, trial), evaluated for all rhos.
std::vector<TrialOutcome> run_grid(const ExperimentConfig &config, std::span<const double> rhos)
{
    config.validate();
    const LinkPowers powers = powers_from_config(config);
    const std::size_t points = config.d2_grid.size();
    std::vector<TrialOutcome> outcomes(points * config.trials);
    parallel_for(outcomes.size(), config.threads, [&](std::size_t job) {
        const std::size_t point = job / config.trials;
        const std::size_t trial = job % config.trials;
        const TrialChannels ch = draw_trial(config, config.geometry(config.d2_grid[point]), trial);
        const RelayChannelInstance inst = make_instance(ch, powers, 0.0);
        outcomes[job] = evaluate_bounds(inst, powers, config.optimizer, rhos);
        // Splits and diagnostics are not needed past this point.
        for (auto &r : outcomes[job].reports)
            r.per_tone = {};
        outcomes[job].pdf.split = {};
        outcomes[job].df.split = {};
        outcomes[job].cutset.clear();
    });
    return outcomes;
}

} // namespace

void Geometry::validate() const
{
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw std::invalid_argument("Node distances must be positive.");
    if (collinear && !(d2 < d1))
        throw std::invalid_argument("A collinear relay must lie strictly between source and destination.");
    if (!collinear && !(d3_override > 0.0))
        throw std::invalid_argument("Relay-destination distance must be positive.");
}

std::size_t ExperimentConfig::max_taps() const
{
    const double span = std::floor(sv.max_delay / sample_period_ns()) + 1.0;
    return std::min(block_size, static_cast<std::size_t>(span));
}

Geometry ExperimentConfig::geometry(double d2) const
{
    return {d1, d2, collinear, d3_override};
}

void ExperimentConfig::validate() const
{
    if (!std::isfinite(psd_tx_dbm_per_mhz) || !std::isfinite(psd_noise_dbm_per_mhz))
        throw std::invalid_argument("Power spectral densities must be finite.");
    if (!(bandwidth_mhz > 0.0) || !std::isfinite(bandwidth_mhz))
        throw std::invalid_argument("Bandwidth must be positive.");
    if (block_size < 1)
        throw std::invalid_argument("Block size must be at least 1.");
    if (!(coherence_time_ns > 0.0))
        throw std::invalid_argument("Coherence time must be positive.");
    if (static_cast<double>(block_size) > std::floor(coherence_time_ns / sample_period_ns()))
        throw std::invalid_argument("Block size exceeds the coherence time in samples.");
    if (trials < 1)
        throw std::invalid_argument("At least one trial is required.");
    for (double r : rho_values)
        if (!(r >= 0.0 && r < 1.0))
            throw std::invalid_argument("Swept rho values must lie in [0, 1).");
    if (d2_grid.empty())
        throw std::invalid_argument("The distance grid cannot be empty.");
    for (double d2 : d2_grid)
        geometry(d2).validate();
    geometry(single_d2).validate();
    if (!(single_rho >= 0.0 && single_rho < 1.0))
        throw std::invalid_argument("rho must lie in [0, 1).");
    if (!(oracle_resolution > 0.0 && oracle_resolution <= 0.5))
        throw std::invalid_argument("Oracle resolution must lie in (0, 0.5].");
    sv.validate();
    pl.validate();
    optimizer.validate();
}

double psd_to_watts(double dbm_per_mhz, double bandwidth_mhz)
{
    if (!(bandwidth_mhz > 0.0))
        throw std::invalid_argument("Bandwidth must be positive.");
    return std::pow(10.0, (dbm_per_mhz + 10.0 * std::log10(bandwidth_mhz) - 30.0) / 10.0);
}

LinkPowers powers_from_config(const ExperimentConfig &config)
{
    LinkPowers out;
    const double tx = psd_to_watts(config.psd_tx_dbm_per_mhz, config.bandwidth_mhz);
    out.powers = {tx, tx, tx};
    out.n_dest = psd_to_watts(config.psd_noise_dbm_per_mhz, config.bandwidth_mhz);
    out.n_relay = out.n_dest;
    return out;
}

std::uint64_t link_seed(std::uint64_t master_seed, std::uint64_t trial_index, Link link)
{
    const std::uint64_t m = splitmix64(master_seed);
    const std::uint64_t t = splitmix64(m ^ trial_index);
    return splitmix64(t ^ (static_cast<std::uint64_t>(link) + 1));
}

LinkRealization draw_link(const ExperimentConfig &config, std::uint64_t seed, double distance)
{
    Rng rng(seed);
    LinkRealization r;
    r.impulse = sample_impulse_response(config.sv, rng);
    r.taps = discretize_taps(r.impulse, config.sample_period_ns(), config.max_taps());
    r.faded = apply_pathloss(r.taps, distance, config.pl, rng);
    r.response = dft_response(r.faded, config.block_size);
    return r;
}

TrialChannels draw_trial(const ExperimentConfig &config, const Geometry &geometry, std::uint64_t trial_index)
{
    return draw_trial(config, geometry,
                      {link_seed(config.master_seed, trial_index, Link::source_destination),
                       link_seed(config.master_seed, trial_index, Link::source_relay),
                       link_seed(config.master_seed, trial_index, Link::relay_destination)});
}

TrialChannels draw_trial(const ExperimentConfig &config, const Geometry &geometry,
                         const std::array<std::uint64_t, 3> &seeds)
{
    geometry.validate();
    TrialChannels ch;
    ch.seeds = seeds;
    ch.links[0] = draw_link(config, seeds[0], geometry.d1);
    ch.links[1] = draw_link(config, seeds[1], geometry.d2);
    ch.links[2] = draw_link(config, seeds[2], geometry.d3());
    return ch;
}

RelayChannelInstance make_instance(const TrialChannels &channels, const LinkPowers &powers, double rho)
{
    RelayChannelInstance inst;
    inst.g1 = channels.links[0].response;
    inst.g2 = channels.links[1].response;
    inst.g3 = channels.links[2].response;
    inst.n_dest = powers.n_dest;
    inst.n_relay = powers.n_relay;
    inst.rho.assign(inst.tones(), cdouble(rho, 0.0));
    return inst;
}

TrialOutcome evaluate_bounds(const RelayChannelInstance &inst, const LinkPowers &powers,
                             const OptimizerSettings &settings, std::span<const double> rhos)
{
    const PowerBudget &p = powers.powers;
    TrialOutcome out;
    out.pdf = optimize_pdf(inst, p, settings);
    out.df = optimize_degraded(inst, p, settings);

    const double revdeg = revdeg_capacity(inst, p.p1);
    const double direct = direct_rate(inst.g1, 2.0 * p.p1, inst.n_dest);

    for (double rho : rhos)
    {
        const RelayChannelInstance with = inst.with_rho(cdouble(rho, 0.0));
        OptimizationResult cut = optimize_cutset(with, p, settings, &out.pdf.split);

        RateReport r;
        r.pdf_rate = pdf_rate(with, p, out.pdf.split);
        r.df_rate = pdf_rate(with, p, out.df.split);
        r.cutset_rate = cut.rate;
        r.degraded_capacity = out.df.rate;
        r.revdeg_capacity = revdeg;
        r.direct_rate = direct;
        r.degraded_accuracy = !(out.pdf.converged && out.df.converged && cut.converged);

        r.per_tone.resize(inst.tones());
        for (std::size_t i = 0; i < inst.tones(); ++i)
        {
            const ToneChannel t = tone_of(with, i);
            const ToneSplit s = tone_of(out.pdf.split, i);
            auto &d = r.per_tone[i];
            d.a = std::abs(s.alpha_bar);
            d.b = std::abs(s.beta_bar);
            d.gamma1 = gamma1(t, p, s);
            d.gamma2 = gamma2(t, p, s);
            d.gamma3 = gamma3(t, p, tone_of(cut.split, i), with.rho[i]);
            d.mi = mi_terms(t, p, s);
        }
        out.reports.push_back(std::move(r));
        out.cutset.push_back(std::move(cut));
    }
    return out;
}

RateReport run_trial(const ExperimentConfig &config, const Geometry &geometry, double rho, std::uint64_t trial_index)
{
    config.validate();
    const LinkPowers powers = powers_from_config(config);
    const TrialChannels ch = draw_trial(config, geometry, trial_index);
    const RelayChannelInstance inst = make_instance(ch, powers, rho);
    const double rhos[] = {rho};
    return evaluate_bounds(inst, powers, config.optimizer, rhos).reports.front();
}

const SweepSeries &SweepResult::get(const std::string &bound) const
{
    for (const auto &s : series)
        if (s.bound == bound)
            return s;
    throw std::out_of_range("No sweep series named '" + bound + "'.");
}

std::string rho_label(double rho)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "rho=%g", rho);
    return buf;
}

SweepResult sweep_distance(const ExperimentConfig &config)
{
    const double rhos[] = {0.0};
    const auto outcomes = run_grid(config, rhos);

    const std::size_t points = config.d2_grid.size();
    SweepResult out;
    out.axis = config.d2_grid;
    out.trials = config.trials;
    for (const char *name : {"pdf", "df", "cutset", "direct"})
        out.series.push_back(empty_series(name, points, config.trials));

    for (std::size_t job = 0; job < outcomes.size(); ++job)
    {
        const std::size_t point = job / config.trials;
        const std::size_t trial = job % config.trials;
        const RateReport &r = outcomes[job].reports.front();
        out.series[0].samples[point][trial] = r.pdf_rate;
        out.series[1].samples[point][trial] = r.df_rate;
        out.series[2].samples[point][trial] = r.cutset_rate;
        out.series[3].samples[point][trial] = r.direct_rate;
        out.degraded_accuracy = out.degraded_accuracy || r.degraded_accuracy;
    }
    for (auto &s : out.series)
        summarize(s);
    return out;
}

SweepResult sweep_rho(const ExperimentConfig &config)
{
    const auto outcomes = run_grid(config, config.rho_values);

    const std::size_t points = config.d2_grid.size();
    const std::size_t n_rho = config.rho_values.size();
    SweepResult out;
    out.axis = config.d2_grid;
    out.trials = config.trials;
    out.series.push_back(empty_series("pdf", points, config.trials));
    out.series.push_back(empty_series("df", points, config.trials));
    for (double rho : config.rho_values)
        out.series.push_back(empty_series("cutset[" + rho_label(rho) + "]", points, config.trials));
    for (double rho : config.rho_values)
        out.series.push_back(empty_series("pdf[" + rho_label(rho) + "]", points, config.trials));

    for (std::size_t job = 0; job < outcomes.size(); ++job)
    {
        const std::size_t point = job / config.trials;
        const std::size_t trial = job % config.trials;
        const auto &reports = outcomes[job].reports;
        out.series[0].samples[point][trial] = outcomes[job].pdf.rate;
        out.series[1].samples[point][trial] = reports.front().df_rate;
        for (std::size_t j = 0; j < n_rho; ++j)
        {
            out.series[2 + j].samples[point][trial] = reports[j].cutset_rate;
            out.series[2 + n_rho + j].samples[point][trial] = reports[j].pdf_rate;
            out.degraded_accuracy = out.degraded_accuracy || reports[j].degraded_accuracy;
        }
    }
    for (auto &s : out.series)
        summarize(s);
    return out;
}

OracleCheckResult oracle_check(const ExperimentConfig &config)
{
    config.validate();
    if (config.d2_grid.empty() || config.rho_values.empty())
        throw std::invalid_argument("Oracle check needs a nonempty d2 grid and rho list.");

    OracleCheckResult out;
    for (std::size_t tones : {std::size_t{1}, std::size_t{2}})
    {
        ExperimentConfig c = config;
        c.block_size = tones;
        const LinkPowers powers = powers_from_config(c);
        const std::size_t n = tones == 1 ? config.oracle_instances_k1 : config.oracle_instances_k2;
        std::vector<OracleCase> cases(2 * n);
        parallel_for(cases.size(), config.threads, [&](std::size_t job) {
            const std::size_t j = job / 2;
            OracleCase &oc = cases[job];
            oc.tones = tones;
            oc.trial = j;
            oc.d2 = c.d2_grid[j % c.d2_grid.size()];
            oc.rho = c.rho_values[j % c.rho_values.size()];
            oc.objective = job % 2 == 0 ? Objective::pdf : Objective::cutset;
            const TrialChannels ch = draw_trial(c, c.geometry(oc.d2), j);
            const RelayChannelInstance inst = make_instance(ch, powers, oc.rho);
            const OptimizationResult r = oc.objective == Objective::pdf
                                             ? optimize_pdf(inst, powers.powers, c.optimizer)
                                             : optimize_cutset(inst, powers.powers, c.optimizer);
            oc.optimizer_rate = r.rate;
            oc.oracle_rate = brute_force_oracle(inst, powers.powers, oc.objective, c.oracle_resolution);
        });
        for (const auto &oc : cases)
        {
            out.max_abs_deviation = std::max(out.max_abs_deviation, std::abs(oc.deviation()));
            out.cases.push_back(oc);
        }
    }
    return out;
}

} // namespace uwbrelay
