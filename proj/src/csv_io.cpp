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

#include "uwbrelay/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace uwbrelay
{

namespace
{

void append_row(std::string &out, std::initializer_list<std::string> cells)
{
    bool first = true;
    for (const auto &c : cells)
    {
        if (!first)
            out += ',';
        out += c;
        first = false;
    }
    out += '\n';
}

const char *link_name(std::size_t i)
{
    static const char *names[] = {"source_destination", "source_relay", "relay_destination"};
    return names[i];
}

std::string hex64(std::uint64_t v)
{
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file_atomic(const std::string &path, const std::string &content)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("Cannot open '" + tmp + "' for writing.");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw IoError("Write to '" + tmp + "' failed.");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
    {
        std::filesystem::remove(tmp, ec);
        throw IoError("Cannot move '" + tmp + "' to '" + path + "'.");
    }
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("Cannot read '" + path + "'.");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string channel_response_csv(const TrialChannels &channels, double sample_period_ns)
{
    const std::size_t k = channels.links[0].response.size();
    std::string out;
    out += "# K=" + std::to_string(k) + '\n';
    out += "# Ts_ns=" + format_number(sample_period_ns) + '\n';
    for (std::size_t l = 0; l < 3; ++l)
        out += "# seed_" + std::string(link_name(l)) + "=" + std::to_string(channels.seeds[l]) + '\n';
    out += "tone,g1_re,g1_im,g2_re,g2_im,g3_re,g3_im\n";
    for (std::size_t i = 0; i < k; ++i)
    {
        const cdouble g1 = channels.links[0].response[i];
        const cdouble g2 = channels.links[1].response[i];
        const cdouble g3 = channels.links[2].response[i];
        append_row(out, {std::to_string(i), format_number(g1.real()), format_number(g1.imag()), format_number(g2.real()),
                         format_number(g2.imag()), format_number(g3.real()), format_number(g3.imag())});
    }
    return out;
}

std::string channel_taps_csv(const TrialChannels &channels, double sample_period_ns)
{
    std::string out;
    out += "# Ts_ns=" + format_number(sample_period_ns) + '\n';
    for (std::size_t l = 0; l < 3; ++l)
        out += "# seed_" + std::string(link_name(l)) + "=" + std::to_string(channels.seeds[l]) + '\n';
    out += "link,tap,h_re,h_im,faded_re,faded_im\n";
    for (std::size_t l = 0; l < 3; ++l)
    {
        const auto &link = channels.links[l];
        for (std::size_t n = 0; n < link.taps.length(); ++n)
        {
            const cdouble h = link.taps.taps[n];
            const cdouble f = link.faded.taps[n];
            append_row(out, {link_name(l), std::to_string(n), format_number(h.real()), format_number(h.imag()),
                             format_number(f.real()), format_number(f.imag())});
        }
    }
    return out;
}

std::string rate_report_csv(const RateReport &report, RateUnit unit)
{
    std::string out = "bound_name,rate_" + std::string(unit.suffix) + '\n';
    for (const auto &[name, value] : named_rates(report))
        append_row(out, {name, format_number(value * unit.scale)});
    return out;
}

std::string per_tone_csv(const RateReport &report)
{
    std::string out = "tone,a,b,gamma1,gamma2,gamma3,i_x2_y,i_u_y1_given_x2,i_u_y_given_x2,i_x1_y_given_x2u\n";
    for (std::size_t i = 0; i < report.per_tone.size(); ++i)
    {
        const auto &d = report.per_tone[i];
        append_row(out, {std::to_string(i), format_number(d.a), format_number(d.b), format_number(d.gamma1),
                         format_number(d.gamma2), format_number(d.gamma3), format_number(d.mi.x2_y),
                         format_number(d.mi.u_y1_given_x2), format_number(d.mi.u_y_given_x2),
                         format_number(d.mi.x1_y_given_x2u)});
    }
    return out;
}

std::string lambda_trace_csv(const OptimizationResult &result)
{
    std::string out = "iteration,lambda,first_term,second_term\n";
    for (std::size_t i = 0; i < result.trace.size(); ++i)
    {
        const auto &s = result.trace[i];
        append_row(out, {std::to_string(i), format_number(s.lambda), format_number(s.first), format_number(s.second)});
    }
    return out;
}

std::string sweep_csv(const SweepResult &sweep, RateUnit unit)
{
    std::string out = "axis_value,bound,mean_" + std::string(unit.suffix) + ",stderr,trials\n";
    for (std::size_t i = 0; i < sweep.axis.size(); ++i)
        for (const auto &s : sweep.series)
            append_row(out, {format_number(sweep.axis[i]), s.bound, format_number(s.mean[i] * unit.scale),
                             format_number(s.stderr_mean[i] * unit.scale), std::to_string(sweep.trials)});
    return out;
}

std::string manifest_json(const ManifestEntry &entry, const ExperimentConfig &config)
{
    nlohmann::ordered_json j;
    j["command"] = entry.command;
    j["config_hash"] = hex64(entry.config_hash);
    j["master_seed"] = entry.master_seed;
    j["degraded_accuracy"] = entry.degraded_accuracy;
    j["files"] = entry.files;
    nlohmann::ordered_json settings;
    for (const auto &key : config_keys())
        settings[key] = get_config_value(config, key);
    j["config"] = settings;
    return j.dump(2) + '\n';
}

} // namespace uwbrelay
