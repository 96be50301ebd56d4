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

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <sstream>

using namespace uwbrelay;

namespace
{

std::string first_line(const std::string &text)
{
    return text.substr(0, text.find('\n'));
}

std::filesystem::path scratch_dir(const std::string &name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("uwbrelay_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

SweepResult tiny_sweep()
{
    SweepResult s;
    s.axis = {0.5, 1.0};
    s.trials = 2;
    for (const char *name : {"pdf", "cutset"})
    {
        SweepSeries series;
        series.bound = name;
        series.mean = {1.0, 2.0};
        series.stderr_mean = {0.1, 0.2};
        s.series.push_back(series);
    }
    s.series[1].mean = {1.5, 2.5};
    return s;
}

} // namespace

TEST_SUITE("config_io")
{

TEST_CASE("format and parse round-trip")
{
    ExperimentConfig c;
    c.block_size = 32;
    c.rho_values = {0.1, 0.25};
    c.d2_grid = {0.3, 1.0 / 3.0};
    c.master_seed = 18446744073709551615ull;
    c.collinear = false;
    c.d3_override = 2.5;
    c.sv.ray_decay = 1.25;
    const ExperimentConfig back = parse_config(format_config(c));
    CHECK(format_config(back) == format_config(c));
    CHECK(config_hash(back) == config_hash(c));
    CHECK(back.d2_grid[1] == 1.0 / 3.0);
    CHECK(back.master_seed == c.master_seed);

    ExperimentConfig other = c;
    other.master_seed = 1;
    CHECK(config_hash(other) != config_hash(c));
    CHECK(config_keys().size() > 20);
    for (const auto &key : config_keys())
        CHECK_NOTHROW(get_config_value(c, key));
}

TEST_CASE("comments, blank lines and whitespace")
{
    const ExperimentConfig c = parse_config("# header\n\n  channel.block_size =  8  \n"
                                            "\t# indented comment\nexperiment.rho_values = 0, 0.5\r\n");
    CHECK(c.block_size == 8);
    CHECK(c.rho_values == std::vector<double>{0.0, 0.5});
    CHECK(get_config_value(c, "experiment.rho_values") == "0, 0.5");
}

TEST_CASE("parse errors name the key and line")
{
    try
    {
        parse_config("channel.block_size = 8\nchannel.bogus = 1\n");
        FAIL("expected ParseError");
    }
    catch (const ParseError &e)
    {
        CHECK(e.key() == "channel.bogus");
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("channel.bogus") != std::string::npos);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("channel.block_size = eight\n"), ParseError);
    CHECK_THROWS_AS(parse_config("channel.block_size = -3\n"), ParseError);
    CHECK_THROWS_AS(parse_config("geometry.collinear = maybe\n"), ParseError);
    CHECK_THROWS_AS(parse_config("geometry.d1_m = 3 m\n"), ParseError);
    CHECK_THROWS_AS(parse_config("no equals sign\n"), ParseError);
    ExperimentConfig c;
    CHECK_THROWS_AS(set_config_value(c, "oracle.nothing", "1"), ParseError);
}

TEST_CASE("load_config validates ranges")
{
    const auto dir = scratch_dir("load");
    const auto path = (dir / "bad.conf").string();
    write_file_atomic(path, "experiment.trials = 0\n");
    CHECK_THROWS_AS(load_config(path), std::invalid_argument);
    write_file_atomic(path, "experiment.trials = 3\n");
    CHECK(load_config(path).trials == 3);
    CHECK_THROWS_AS(load_config((dir / "missing.conf").string()), IoError);
}

TEST_CASE("atomic writes leave no temporary file")
{
    const auto dir = scratch_dir("atomic");
    const auto path = (dir / "out.csv").string();
    write_file_atomic(path, "a,b\n");
    write_file_atomic(path, "c,d\n");
    CHECK(read_file(path) == "c,d\n");
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    CHECK_THROWS_AS(write_file_atomic((dir / "no" / "such" / "dir.csv").string(), "x"), IoError);
}

TEST_CASE("number formatting round-trips")
{
    for (double v : {0.0, 1.0 / 3.0, 1e-300, -2.5e17, 3.0710481234567891})
        CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("CSV schemas")
{
    ExperimentConfig c;
    c.block_size = 4;
    const TrialChannels ch = draw_trial(c, c.geometry(1.5), 0);
    const std::string response = channel_response_csv(ch, c.sample_period_ns());
    CHECK(response.rfind("# K=4\n", 0) == 0);
    CHECK(response.find("\ntone,g1_re,g1_im,g2_re,g2_im,g3_re,g3_im\n") != std::string::npos);
    CHECK(channel_taps_csv(ch, c.sample_period_ns()).find("\nlink,tap,h_re,h_im,faded_re,faded_im\n") !=
          std::string::npos);

    RateReport r;
    r.pdf_rate = 2.0;
    CHECK(first_line(rate_report_csv(r)) == "bound_name,rate_bits_per_sample");
    const std::string per_second = rate_report_csv(r, RateUnit::per_second(5e8));
    CHECK(first_line(per_second) == "bound_name,rate_bits_per_second");
    CHECK(per_second.find("pdf,1000000000\n") != std::string::npos);

    OptimizationResult opt;
    opt.trace = {{0.5, 1.0, 2.0}};
    CHECK(lambda_trace_csv(opt) == "iteration,lambda,first_term,second_term\n0,0.5,1,2\n");

    const std::string sweep = sweep_csv(tiny_sweep());
    CHECK(sweep == "axis_value,bound,mean_bits_per_sample,stderr,trials\n"
                   "0.5,pdf,1,0.10000000000000001,2\n"
                   "0.5,cutset,1.5,0.10000000000000001,2\n"
                   "1,pdf,2,0.20000000000000001,2\n"
                   "1,cutset,2.5,0.20000000000000001,2\n");
}

TEST_CASE("SVG is a pure function of the CSV")
{
    const std::string csv = sweep_csv(tiny_sweep());
    const std::string a = svg_from_sweep_csv(csv, {"Title"});
    const std::string b = svg_from_sweep_csv(csv, {"Title"});
    CHECK(a == b);
    CHECK(a.rfind("<?xml", 0) == 0);
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.find("<polyline") != std::string::npos);
    CHECK(a.find(">pdf<") != std::string::npos);
    CHECK(a.find(">cutset<") != std::string::npos);
    CHECK_THROWS_AS(svg_from_sweep_csv("bound_name,rate_bits_per_sample\npdf,1\n"), std::invalid_argument);
    CHECK_THROWS_AS(svg_from_sweep_csv(""), std::invalid_argument);
}

TEST_CASE("manifest records hash, seed and files")
{
    ExperimentConfig c;
    c.master_seed = 42;
    ManifestEntry m{"bounds", config_hash(c), c.master_seed, {"bounds.csv"}, false};
    const auto j = nlohmann::json::parse(manifest_json(m, c));
    CHECK(j["command"] == "bounds");
    CHECK(j["master_seed"] == 42);
    std::ostringstream hex;
    hex << std::hex;
    hex.width(16);
    hex.fill('0');
    hex << config_hash(c);
    CHECK(j["config_hash"] == hex.str());
    CHECK(j["files"][0] == "bounds.csv");
    CHECK(j["degraded_accuracy"] == false);
    CHECK(j["config"]["experiment.master_seed"] == "42");
    CHECK(manifest_json(m, c) == manifest_json(m, c));
}

} // TEST_SUITE
