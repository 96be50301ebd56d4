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

#include "uwbrelay/config.hpp"
#include "uwbrelay/io.hpp"

#include <charconv>
#include <cstdio>
#include <functional>

namespace uwbrelay
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(std::string_view key, std::string_view text)
{
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError(std::string(key), 0, "expected a number, got '" + std::string(text) + "'");
    return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text)
{
    text = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError(std::string(key), 0, "expected a nonnegative integer, got '" + std::string(text) + "'");
    return v;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes")
        return true;
    if (text == "false" || text == "0" || text == "no")
        return false;
    throw ParseError(std::string(key), 0, "expected true or false, got '" + std::string(text) + "'");
}

std::vector<double> parse_list(std::string_view key, std::string_view text)
{
    std::vector<double> out;
    text = trim(text);
    if (text.empty())
        return out;
    std::size_t start = 0;
    while (true)
    {
        const auto comma = text.find(',', start);
        out.push_back(parse_double(key, text.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

std::string format_list(const std::vector<double> &v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        if (i)
            out += ", ";
        out += format_double(v[i]);
    }
    return out;
}

struct Field
{
    const char *key;
    std::function<void(ExperimentConfig &, std::string_view key, std::string_view value)> set;
    std::function<std::string(const ExperimentConfig &)> get;
};

template <typename Member>
Field real_field(const char *key, Member member)
{
    return {key,
            [member](ExperimentConfig &c, std::string_view k, std::string_view v) { member(c) = parse_double(k, v); },
            [member](const ExperimentConfig &c) { return format_double(member(const_cast<ExperimentConfig &>(c))); }};
}

template <typename Member>
Field count_field(const char *key, Member member)
{
    return {key,
            [member](ExperimentConfig &c, std::string_view k, std::string_view v) {
                member(c) = static_cast<std::remove_reference_t<decltype(member(c))>>(parse_unsigned(k, v));
            },
            [member](const ExperimentConfig &c) {
                return std::to_string(member(const_cast<ExperimentConfig &>(c)));
            }};
}

template <typename Member>
Field list_field(const char *key, Member member)
{
    return {key,
            [member](ExperimentConfig &c, std::string_view k, std::string_view v) { member(c) = parse_list(k, v); },
            [member](const ExperimentConfig &c) { return format_list(member(const_cast<ExperimentConfig &>(c))); }};
}

template <typename Member>
Field bool_field(const char *key, Member member)
{
    return {key,
            [member](ExperimentConfig &c, std::string_view k, std::string_view v) { member(c) = parse_bool(k, v); },
            [member](const ExperimentConfig &c) {
                return std::string(member(const_cast<ExperimentConfig &>(c)) ? "true" : "false");
            }};
}

#define UWBR_MEMBER(expr) [](ExperimentConfig & c) -> auto & { return c.expr; }

const std::vector<Field> &fields()
{
    static const std::vector<Field> table = {
        real_field("channel.bandwidth_mhz", UWBR_MEMBER(bandwidth_mhz)),
        count_field("channel.block_size", UWBR_MEMBER(block_size)),
        real_field("channel.coherence_time_ns", UWBR_MEMBER(coherence_time_ns)),

        real_field("sv.cluster_arrival_rate", UWBR_MEMBER(sv.cluster_arrival_rate)),
        real_field("sv.ray_arrival_rate", UWBR_MEMBER(sv.ray_arrival_rate)),
        real_field("sv.cluster_decay_ns", UWBR_MEMBER(sv.cluster_decay)),
        real_field("sv.ray_decay_ns", UWBR_MEMBER(sv.ray_decay)),
        real_field("sv.mean_cluster_count", UWBR_MEMBER(sv.mean_cluster_count)),
        real_field("sv.max_delay_ns", UWBR_MEMBER(sv.max_delay)),

        real_field("pathloss.ref_loss_db", UWBR_MEMBER(pl.ref_loss_db)),
        real_field("pathloss.ref_distance_m", UWBR_MEMBER(pl.ref_distance)),
        real_field("pathloss.exponent", UWBR_MEMBER(pl.exponent)),
        real_field("pathloss.shadowing_sigma_db", UWBR_MEMBER(pl.shadowing_sigma_db)),

        real_field("power.tx_psd_dbm_per_mhz", UWBR_MEMBER(psd_tx_dbm_per_mhz)),
        real_field("power.noise_psd_dbm_per_mhz", UWBR_MEMBER(psd_noise_dbm_per_mhz)),

        real_field("geometry.d1_m", UWBR_MEMBER(d1)),
        bool_field("geometry.collinear", UWBR_MEMBER(collinear)),
        real_field("geometry.d3_m", UWBR_MEMBER(d3_override)),
        list_field("geometry.d2_grid_m", UWBR_MEMBER(d2_grid)),

        count_field("experiment.trials", UWBR_MEMBER(trials)),
        count_field("experiment.master_seed", UWBR_MEMBER(master_seed)),
        list_field("experiment.rho_values", UWBR_MEMBER(rho_values)),
        count_field("experiment.threads", UWBR_MEMBER(threads)),
        real_field("experiment.d2_m", UWBR_MEMBER(single_d2)),
        real_field("experiment.rho", UWBR_MEMBER(single_rho)),
        count_field("experiment.trial_index", UWBR_MEMBER(single_trial)),

        count_field("optimizer.tone_grid_points", UWBR_MEMBER(optimizer.tone_grid_points)),
        real_field("optimizer.lambda_tolerance", UWBR_MEMBER(optimizer.lambda_tolerance)),
        count_field("optimizer.max_lambda_iters", UWBR_MEMBER(optimizer.max_lambda_iters)),
        count_field("optimizer.refine_steps", UWBR_MEMBER(optimizer.refine_steps)),

        count_field("oracle.instances_k1", UWBR_MEMBER(oracle_instances_k1)),
        count_field("oracle.instances_k2", UWBR_MEMBER(oracle_instances_k2)),
        real_field("oracle.resolution", UWBR_MEMBER(oracle_resolution)),
    };
    return table;
}

#undef UWBR_MEMBER

const Field &find_field(std::string_view key)
{
    for (const auto &f : fields())
        if (key == f.key)
            return f;
    throw ParseError(std::string(key), 0, "unknown configuration key");
}

} // namespace

ParseError::ParseError(const std::string &key, std::size_t line, const std::string &message)
    : std::runtime_error((line ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? message : "key '" + key + "': " + message)),
      key_(key), line_(line), message_(message)
{
}

void set_config_value(ExperimentConfig &config, std::string_view key, std::string_view value)
{
    find_field(trim(key)).set(config, trim(key), value);
}

std::string get_config_value(const ExperimentConfig &config, std::string_view key)
{
    return find_field(trim(key)).get(config);
}

std::vector<std::string> config_keys()
{
    std::vector<std::string> out;
    for (const auto &f : fields())
        out.emplace_back(f.key);
    return out;
}

ExperimentConfig parse_config(std::string_view text)
{
    ExperimentConfig config;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const auto eol = text.find('\n', pos);
        const std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(std::string(line), line_no, "expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        try
        {
            set_config_value(config, key, line.substr(eq + 1));
        }
        catch (const ParseError &e)
        {
            throw ParseError(e.key(), line_no, e.message());
        }
    }
    return config;
}

ExperimentConfig load_config(const std::string &path)
{
    ExperimentConfig config = parse_config(read_file(path));
    config.validate();
    return config;
}

std::string format_config(const ExperimentConfig &config)
{
    std::string out;
    for (const auto &f : fields())
    {
        out += f.key;
        out += " = ";
        out += f.get(config);
        out += '\n';
    }
    return out;
}

std::uint64_t config_hash(const ExperimentConfig &config)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : format_config(config))
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace uwbrelay
