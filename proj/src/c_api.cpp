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

#include "uwbrelay/uwbrelay.h"

#include "uwbrelay/config.hpp"
#include "uwbrelay/experiments.hpp"
#include "uwbrelay/io.hpp"

#include <cstring>
#include <memory>
#include <new>
#include <string>

struct uwbr_config
{
    uwbrelay::ExperimentConfig config;
};

struct uwbr_report
{
    uwbrelay::RateReport report;
    uwbrelay::OptimizationResult pdf;
    double bandwidth_hz = 0.0;
};

struct uwbr_sweep
{
    uwbrelay::SweepResult sweep;
    double bandwidth_hz = 0.0;
};

struct uwbr_instance
{
    uwbrelay::RelayChannelInstance inst;
};

namespace
{

thread_local std::string last_error;

uwbr_status fail(uwbr_status status, const std::string &message)
{
    last_error = message;
    return status;
}

// Runs `body`, mapping exceptions to status codes.
template <typename Body>
uwbr_status guarded(Body &&body)
{
    try
    {
        return body();
    }
    catch (const uwbrelay::ParseError &e)
    {
        return fail(UWBR_ERR_PARSE, e.what());
    }
    catch (const uwbrelay::IoError &e)
    {
        return fail(UWBR_ERR_IO, e.what());
    }
    catch (const std::logic_error &e)
    {
        return fail(UWBR_ERR_INVALID_ARGUMENT, e.what());
    }
    catch (const std::bad_alloc &)
    {
        return fail(UWBR_ERR_INTERNAL, "Out of memory.");
    }
    catch (const std::exception &e)
    {
        return fail(UWBR_ERR_INTERNAL, e.what());
    }
    catch (...)
    {
        return fail(UWBR_ERR_INTERNAL, "Unknown error.");
    }
}

#define UWBR_REQUIRE(cond, what)                                                                                       \
    do                                                                                                                 \
    {                                                                                                                  \
        if (!(cond))                                                                                                   \
            return fail(UWBR_ERR_INVALID_ARGUMENT, what);                                                              \
    } while (0)

uwbrelay::RateUnit unit_for(int bits_per_second, double bandwidth_hz)
{
    return bits_per_second ? uwbrelay::RateUnit::per_second(bandwidth_hz) : uwbrelay::RateUnit::per_sample();
}

std::vector<uwbrelay::cdouble> complex_array(const double *interleaved, std::size_t n)
{
    std::vector<uwbrelay::cdouble> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = {interleaved[2 * i], interleaved[2 * i + 1]};
    return out;
}

template <typename Run>
uwbr_status run_sweep(const uwbr_config *config, uwbr_sweep **out, Run run)
{
    UWBR_REQUIRE(config && out, "config or out is NULL");
    return guarded([&] {
        auto s = std::make_unique<uwbr_sweep>();
        s->sweep = run(config->config);
        s->bandwidth_hz = config->config.bandwidth_mhz * 1e6;
        const bool flagged = s->sweep.degraded_accuracy;
        *out = s.release();
        if (flagged)
            return fail(UWBR_ERR_NOT_CONVERGED, "an optimizer reached its iteration limit; rates may be inaccurate");
        return UWBR_OK;
    });
}

} // namespace

extern "C" {

const char *uwbr_version(void)
{
    return "0.1.0";
}

const char *uwbr_last_error(void)
{
    return last_error.c_str();
}

const char *uwbr_status_string(uwbr_status status)
{
    switch (status)
    {
    case UWBR_OK: return "ok";
    case UWBR_ERR_INVALID_ARGUMENT: return "invalid argument";
    case UWBR_ERR_PARSE: return "parse error";
    case UWBR_ERR_IO: return "i/o error";
    case UWBR_ERR_NOT_CONVERGED: return "not converged";
    case UWBR_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

uwbr_status uwbr_config_new_default(uwbr_config **out)
{
    UWBR_REQUIRE(out, "out is NULL");
    return guarded([&] {
        *out = new uwbr_config{};
        return UWBR_OK;
    });
}

uwbr_status uwbr_config_load(const char *path, uwbr_config **out)
{
    UWBR_REQUIRE(path && out, "path or out is NULL");
    return guarded([&] {
        auto c = std::make_unique<uwbr_config>();
        c->config = uwbrelay::load_config(path);
        *out = c.release();
        return UWBR_OK;
    });
}

uwbr_status uwbr_config_set(uwbr_config *config, const char *key, const char *value)
{
    UWBR_REQUIRE(config && key && value, "config, key or value is NULL");
    return guarded([&] {
        uwbrelay::ExperimentConfig copy = config->config;
        uwbrelay::set_config_value(copy, key, value);
        config->config = std::move(copy);
        return UWBR_OK;
    });
}

uwbr_status uwbr_config_get(const uwbr_config *config, const char *key, char *buf, size_t buf_len, size_t *needed)
{
    UWBR_REQUIRE(config && key, "config or key is NULL");
    return guarded([&] {
        const std::string v = uwbrelay::get_config_value(config->config, key);
        if (needed)
            *needed = v.size() + 1;
        if (!buf)
            return UWBR_OK;
        if (buf_len < v.size() + 1)
            return fail(UWBR_ERR_INVALID_ARGUMENT, "buffer too small");
        std::memcpy(buf, v.c_str(), v.size() + 1);
        return UWBR_OK;
    });
}

uwbr_status uwbr_config_validate(const uwbr_config *config)
{
    UWBR_REQUIRE(config, "config is NULL");
    return guarded([&] {
        config->config.validate();
        return UWBR_OK;
    });
}

uint64_t uwbr_config_hash(const uwbr_config *config)
{
    return config ? uwbrelay::config_hash(config->config) : 0;
}

void uwbr_config_free(uwbr_config *config)
{
    delete config;
}

uwbr_status uwbr_channel_dump(const uwbr_config *config, const char *response_path, const char *taps_path)
{
    UWBR_REQUIRE(config && response_path, "config or response_path is NULL");
    return guarded([&] {
        const auto &c = config->config;
        c.validate();
        const auto ch = uwbrelay::draw_trial(c, c.geometry(c.single_d2), c.single_trial);
        uwbrelay::write_file_atomic(response_path, uwbrelay::channel_response_csv(ch, c.sample_period_ns()));
        if (taps_path)
            uwbrelay::write_file_atomic(taps_path, uwbrelay::channel_taps_csv(ch, c.sample_period_ns()));
        return UWBR_OK;
    });
}

uwbr_status uwbr_bounds_run(const uwbr_config *config, uwbr_report **out)
{
    UWBR_REQUIRE(config && out, "config or out is NULL");
    return guarded([&] {
        const auto &c = config->config;
        c.validate();
        const auto powers = uwbrelay::powers_from_config(c);
        const auto ch = uwbrelay::draw_trial(c, c.geometry(c.single_d2), c.single_trial);
        const auto inst = uwbrelay::make_instance(ch, powers, c.single_rho);
        const double rhos[] = {c.single_rho};
        auto outcome = uwbrelay::evaluate_bounds(inst, powers, c.optimizer, rhos);

        auto r = std::make_unique<uwbr_report>();
        r->report = std::move(outcome.reports.front());
        r->pdf = std::move(outcome.pdf);
        r->bandwidth_hz = c.bandwidth_mhz * 1e6;
        const bool flagged = r->report.degraded_accuracy;
        *out = r.release();
        if (flagged)
            return fail(UWBR_ERR_NOT_CONVERGED, "an optimizer reached its iteration limit; rates may be inaccurate");
        return UWBR_OK;
    });
}

uwbr_status uwbr_report_rate(const uwbr_report *report, uwbr_bound bound, double *rate)
{
    UWBR_REQUIRE(report && rate, "report or rate is NULL");
    const auto &r = report->report;
    switch (bound)
    {
    case UWBR_BOUND_PDF: *rate = r.pdf_rate; return UWBR_OK;
    case UWBR_BOUND_DF: *rate = r.df_rate; return UWBR_OK;
    case UWBR_BOUND_CUTSET: *rate = r.cutset_rate; return UWBR_OK;
    case UWBR_BOUND_DEGRADED_CAPACITY: *rate = r.degraded_capacity; return UWBR_OK;
    case UWBR_BOUND_REVDEG_CAPACITY: *rate = r.revdeg_capacity; return UWBR_OK;
    case UWBR_BOUND_DIRECT: *rate = r.direct_rate; return UWBR_OK;
    }
    return fail(UWBR_ERR_INVALID_ARGUMENT, "unknown bound");
}

int uwbr_report_degraded_accuracy(const uwbr_report *report)
{
    return report && report->report.degraded_accuracy ? 1 : 0;
}

uwbr_status uwbr_report_write_csv(const uwbr_report *report, const char *path, int bits_per_second)
{
    UWBR_REQUIRE(report && path, "report or path is NULL");
    return guarded([&] {
        uwbrelay::write_file_atomic(path,
                                    uwbrelay::rate_report_csv(report->report, unit_for(bits_per_second, report->bandwidth_hz)));
        return UWBR_OK;
    });
}

uwbr_status uwbr_report_write_per_tone_csv(const uwbr_report *report, const char *path)
{
    UWBR_REQUIRE(report && path, "report or path is NULL");
    return guarded([&] {
        uwbrelay::write_file_atomic(path, uwbrelay::per_tone_csv(report->report));
        return UWBR_OK;
    });
}

uwbr_status uwbr_report_write_trace_csv(const uwbr_report *report, const char *path)
{
    UWBR_REQUIRE(report && path, "report or path is NULL");
    return guarded([&] {
        uwbrelay::write_file_atomic(path, uwbrelay::lambda_trace_csv(report->pdf));
        return UWBR_OK;
    });
}

size_t uwbr_report_trace_length(const uwbr_report *report)
{
    return report ? report->pdf.trace.size() : 0;
}

uwbr_status uwbr_report_trace_step(const uwbr_report *report, size_t index, double *lambda, double *first,
                                   double *second)
{
    UWBR_REQUIRE(report, "report is NULL");
    UWBR_REQUIRE(index < report->pdf.trace.size(), "trace index out of range");
    const auto &s = report->pdf.trace[index];
    if (lambda)
        *lambda = s.lambda;
    if (first)
        *first = s.first;
    if (second)
        *second = s.second;
    return UWBR_OK;
}

const char *uwbr_report_binding_term(const uwbr_report *report)
{
    if (!report)
        return "";
    switch (report->pdf.binding_term)
    {
    case uwbrelay::BindingTerm::first: return "first";
    case uwbrelay::BindingTerm::second: return "second";
    case uwbrelay::BindingTerm::both: return "both";
    }
    return "";
}

void uwbr_report_free(uwbr_report *report)
{
    delete report;
}


uwbr_status uwbr_sweep_distance(const uwbr_config *config, uwbr_sweep **out)
{
    return run_sweep(config, out, [](const uwbrelay::ExperimentConfig &c) { return uwbrelay::sweep_distance(c); });
}

uwbr_status uwbr_sweep_rho(const uwbr_config *config, uwbr_sweep **out)
{
    return run_sweep(config, out, [](const uwbrelay::ExperimentConfig &c) { return uwbrelay::sweep_rho(c); });
}

uwbr_status uwbr_sweep_write_csv(const uwbr_sweep *sweep, const char *path, int bits_per_second)
{
    UWBR_REQUIRE(sweep && path, "sweep or path is NULL");
    return guarded([&] {
        uwbrelay::write_file_atomic(path, uwbrelay::sweep_csv(sweep->sweep, unit_for(bits_per_second, sweep->bandwidth_hz)));
        return UWBR_OK;
    });
}

size_t uwbr_sweep_points(const uwbr_sweep *sweep)
{
    return sweep ? sweep->sweep.axis.size() : 0;
}

size_t uwbr_sweep_series_count(const uwbr_sweep *sweep)
{
    return sweep ? sweep->sweep.series.size() : 0;
}

const char *uwbr_sweep_series_name(const uwbr_sweep *sweep, size_t series)
{
    if (!sweep || series >= sweep->sweep.series.size())
        return nullptr;
    return sweep->sweep.series[series].bound.c_str();
}

uwbr_status uwbr_sweep_mean(const uwbr_sweep *sweep, size_t series, size_t point, double *mean)
{
    UWBR_REQUIRE(sweep && mean, "sweep or mean is NULL");
    UWBR_REQUIRE(series < sweep->sweep.series.size(), "series index out of range");
    UWBR_REQUIRE(point < sweep->sweep.axis.size(), "point index out of range");
    *mean = sweep->sweep.series[series].mean[point];
    return UWBR_OK;
}

int uwbr_sweep_degraded_accuracy(const uwbr_sweep *sweep)
{
    return sweep && sweep->sweep.degraded_accuracy ? 1 : 0;
}

void uwbr_sweep_free(uwbr_sweep *sweep)
{
    delete sweep;
}

uwbr_status uwbr_plot_svg_from_csv(const char *csv_path, const char *svg_path, const char *title)
{
    UWBR_REQUIRE(csv_path && svg_path, "csv_path or svg_path is NULL");
    return guarded([&] {
        uwbrelay::ChartLabels labels;
        if (title)
            labels.title = title;
        const std::string csv = uwbrelay::read_file(csv_path);
        if (csv.find("mean_bits_per_second") != std::string::npos)
            labels.y_label = "rate [bits/s]";
        uwbrelay::write_file_atomic(svg_path, uwbrelay::svg_from_sweep_csv(csv, labels));
        return UWBR_OK;
    });
}

uwbr_status uwbr_oracle_check(const uwbr_config *config, double *max_deviation, size_t *cases)
{
    UWBR_REQUIRE(config && max_deviation, "config or max_deviation is NULL");
    return guarded([&] {
        const auto r = uwbrelay::oracle_check(config->config);
        *max_deviation = r.max_abs_deviation;
        if (cases)
            *cases = r.cases.size();
        return UWBR_OK;
    });
}

uwbr_status uwbr_manifest_write(const uwbr_config *config, const char *path, const char *command,
                                const char *const *files, size_t n_files, int degraded_accuracy)
{
    UWBR_REQUIRE(config && path && command, "config, path or command is NULL");
    UWBR_REQUIRE(files || n_files == 0, "files is NULL");
    return guarded([&] {
        uwbrelay::ManifestEntry m;
        m.command = command;
        m.config_hash = uwbrelay::config_hash(config->config);
        m.master_seed = config->config.master_seed;
        m.degraded_accuracy = degraded_accuracy != 0;
        for (size_t i = 0; i < n_files; ++i)
            m.files.emplace_back(files[i]);
        uwbrelay::write_file_atomic(path, uwbrelay::manifest_json(m, config->config));
        return UWBR_OK;
    });
}

uwbr_status uwbr_instance_create(size_t tones, const double *g1, const double *g2, const double *g3, double n_dest,
                                 double n_relay, const double *rho, uwbr_instance **out)
{
    UWBR_REQUIRE(g1 && g2 && g3 && out, "gain array or out is NULL");
    UWBR_REQUIRE(tones > 0, "tones must be positive");
    return guarded([&] {
        auto h = std::make_unique<uwbr_instance>();
        auto &inst = h->inst;
        inst.g1.gains = complex_array(g1, tones);
        inst.g2.gains = complex_array(g2, tones);
        inst.g3.gains = complex_array(g3, tones);
        inst.n_dest = n_dest;
        inst.n_relay = n_relay;
        inst.rho = rho ? complex_array(rho, tones) : std::vector<uwbrelay::cdouble>(tones);
        inst.validate();
        *out = h.release();
        return UWBR_OK;
    });
}

uwbr_status uwbr_instance_optimize(const uwbr_instance *inst, double p1, double p2, double p0,
                                   uwbr_objective objective, double *rate, double *split)
{
    UWBR_REQUIRE(inst && rate, "inst or rate is NULL");
    return guarded([&] {
        const uwbrelay::PowerBudget p{p1, p2, p0};
        p.validate();
        uwbrelay::OptimizationResult r;
        switch (objective)
        {
        case UWBR_OBJECTIVE_PDF: r = uwbrelay::optimize_pdf(inst->inst, p); break;
        case UWBR_OBJECTIVE_CUTSET: r = uwbrelay::optimize_cutset(inst->inst, p); break;
        case UWBR_OBJECTIVE_DEGRADED: r = uwbrelay::optimize_degraded(inst->inst, p); break;
        default: return fail(UWBR_ERR_INVALID_ARGUMENT, "unknown objective");
        }
        *rate = r.rate;
        if (split)
        {
            for (std::size_t i = 0; i < r.split.tones(); ++i)
            {
                split[4 * i + 0] = r.split.alpha_bar[i].real();
                split[4 * i + 1] = r.split.alpha_bar[i].imag();
                split[4 * i + 2] = r.split.beta_bar[i].real();
                split[4 * i + 3] = r.split.beta_bar[i].imag();
            }
        }
        if (!r.converged)
            return fail(UWBR_ERR_NOT_CONVERGED, "lambda bisection reached its iteration limit");
        return UWBR_OK;
    });
}

uwbr_status uwbr_instance_revdeg_capacity(const uwbr_instance *inst, double p1, double *rate)
{
    UWBR_REQUIRE(inst && rate, "inst or rate is NULL");
    return guarded([&] {
        *rate = uwbrelay::revdeg_capacity(inst->inst, p1);
        return UWBR_OK;
    });
}

uwbr_status uwbr_instance_direct_rate(const uwbr_instance *inst, double power, double *rate)
{
    UWBR_REQUIRE(inst && rate, "inst or rate is NULL");
    return guarded([&] {
        *rate = uwbrelay::direct_rate(inst->inst.g1, power, inst->inst.n_dest);
        return UWBR_OK;
    });
}

void uwbr_instance_free(uwbr_instance *inst)
{
    delete inst;
}

} // extern "C"
