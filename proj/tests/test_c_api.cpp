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

// Exercises the shared library through its C interface only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "uwbrelay/uwbrelay.h"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace
{

std::string slurp(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch_dir(const std::string &name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("uwbrelay_capi_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

struct Config
{
    uwbr_config *ptr = nullptr;
    Config()
    {
        REQUIRE(uwbr_config_new_default(&ptr) == UWBR_OK);
        REQUIRE(uwbr_config_set(ptr, "channel.block_size", "16") == UWBR_OK);
        REQUIRE(uwbr_config_set(ptr, "experiment.threads", "1") == UWBR_OK);
    }
    ~Config() { uwbr_config_free(ptr); }
};

} // namespace

TEST_SUITE("c_api")
{

TEST_CASE("version and status strings")
{
    CHECK(std::string(uwbr_version()).size() > 0);
    CHECK(std::string(uwbr_status_string(UWBR_OK)) != std::string(uwbr_status_string(UWBR_ERR_PARSE)));
    CHECK(uwbr_status_string(static_cast<uwbr_status>(999)) != nullptr);
}

TEST_CASE("configuration access")
{
    Config c;
    char buf[8];
    std::size_t needed = 0;
    CHECK(uwbr_config_get(c.ptr, "channel.block_size", buf, sizeof buf, &needed) == UWBR_OK);
    CHECK(std::string(buf) == "16");
    CHECK(needed == 3);

    CHECK(uwbr_config_set(c.ptr, "experiment.rho_values", "0,0.25,0.5,0.75") == UWBR_OK);
    CHECK(uwbr_config_get(c.ptr, "experiment.rho_values", buf, sizeof buf, &needed) == UWBR_ERR_INVALID_ARGUMENT);
    CHECK(needed == std::string("0, 0.25, 0.5, 0.75").size() + 1);

    CHECK(uwbr_config_set(c.ptr, "channel.nonsense", "1") == UWBR_ERR_PARSE);
    CHECK(std::string(uwbr_last_error()).find("channel.nonsense") != std::string::npos);
    CHECK(uwbr_config_set(c.ptr, "experiment.trials", "x") == UWBR_ERR_PARSE);

    const std::uint64_t before = uwbr_config_hash(c.ptr);
    CHECK(uwbr_config_set(c.ptr, "experiment.trials", "0") == UWBR_OK);
    CHECK(uwbr_config_hash(c.ptr) != before);
    CHECK(uwbr_config_validate(c.ptr) == UWBR_ERR_INVALID_ARGUMENT);

    CHECK(uwbr_config_new_default(nullptr) == UWBR_ERR_INVALID_ARGUMENT);
    uwbr_config *none = nullptr;
    CHECK(uwbr_config_load("/nonexistent/uwbrelay.conf", &none) == UWBR_ERR_IO);
    CHECK(none == nullptr);
    uwbr_config_free(nullptr);
}

TEST_CASE("configuration file loading reports the offending line")
{
    const auto dir = scratch_dir("load");
    const auto path = (dir / "bad.conf").string();
    std::ofstream(path) << "# comment\nchannel.block_size = 8\npower.bogus = 1\n";
    uwbr_config *c = nullptr;
    CHECK(uwbr_config_load(path.c_str(), &c) == UWBR_ERR_PARSE);
    CHECK(std::string(uwbr_last_error()).find("line 3") != std::string::npos);
    std::ofstream(path) << "channel.block_size = 8\n";
    REQUIRE(uwbr_config_load(path.c_str(), &c) == UWBR_OK);
    uwbr_config_free(c);
}

TEST_CASE("bounds report")
{
    Config c;
    uwbr_report *r = nullptr;
    const uwbr_status s = uwbr_bounds_run(c.ptr, &r);
    REQUIRE((s == UWBR_OK || s == UWBR_ERR_NOT_CONVERGED));
    REQUIRE(r != nullptr);
    double pdf = 0, df = 0, cut = 0, deg = 0, direct = 0;
    REQUIRE(uwbr_report_rate(r, UWBR_BOUND_PDF, &pdf) == UWBR_OK);
    REQUIRE(uwbr_report_rate(r, UWBR_BOUND_DF, &df) == UWBR_OK);
    REQUIRE(uwbr_report_rate(r, UWBR_BOUND_CUTSET, &cut) == UWBR_OK);
    REQUIRE(uwbr_report_rate(r, UWBR_BOUND_DEGRADED_CAPACITY, &deg) == UWBR_OK);
    REQUIRE(uwbr_report_rate(r, UWBR_BOUND_DIRECT, &direct) == UWBR_OK);
    CHECK(cut >= pdf - 1e-9);
    CHECK(pdf >= df - 1e-12);
    CHECK(df == doctest::Approx(deg).epsilon(1e-12));
    CHECK(direct > 0.0);
    CHECK(uwbr_report_rate(r, static_cast<uwbr_bound>(42), &pdf) == UWBR_ERR_INVALID_ARGUMENT);

    REQUIRE(uwbr_report_trace_length(r) > 0);
    double lambda = -1, first = 0, second = 0;
    CHECK(uwbr_report_trace_step(r, 0, &lambda, &first, &second) == UWBR_OK);
    CHECK(lambda >= 0.0);
    CHECK(uwbr_report_trace_step(r, uwbr_report_trace_length(r), &lambda, &first, &second) ==
          UWBR_ERR_INVALID_ARGUMENT);
    const std::string binding = uwbr_report_binding_term(r);
    CHECK((binding == "first" || binding == "second" || binding == "both"));

    const auto dir = scratch_dir("bounds");
    const auto a = (dir / "a.csv").string(), b = (dir / "b.csv").string(), bps = (dir / "bps.csv").string();
    REQUIRE(uwbr_report_write_csv(r, a.c_str(), 0) == UWBR_OK);
    REQUIRE(uwbr_report_write_csv(r, bps.c_str(), 1) == UWBR_OK);
    CHECK(slurp(a).rfind("bound_name,rate_bits_per_sample\n", 0) == 0);
    CHECK(slurp(bps).rfind("bound_name,rate_bits_per_second\n", 0) == 0);
    CHECK(uwbr_report_write_csv(r, "/nonexistent/dir/x.csv", 0) == UWBR_ERR_IO);
    uwbr_report_free(r);

    uwbr_report *again = nullptr;
    uwbr_bounds_run(c.ptr, &again);
    REQUIRE(again != nullptr);
    REQUIRE(uwbr_report_write_csv(again, b.c_str(), 0) == UWBR_OK);
    CHECK(slurp(a) == slurp(b));
    uwbr_report_free(again);
}

TEST_CASE("sweep, CSV and plot")
{
    Config c;
    REQUIRE(uwbr_config_set(c.ptr, "experiment.trials", "2") == UWBR_OK);
    REQUIRE(uwbr_config_set(c.ptr, "geometry.d2_grid_m", "0.5,2") == UWBR_OK);
    REQUIRE(uwbr_config_set(c.ptr, "experiment.rho_values", "0,0.9") == UWBR_OK);
    uwbr_sweep *s = nullptr;
    const uwbr_status st = uwbr_sweep_rho(c.ptr, &s);
    REQUIRE((st == UWBR_OK || st == UWBR_ERR_NOT_CONVERGED));
    CHECK(uwbr_sweep_points(s) == 2);
    REQUIRE(uwbr_sweep_series_count(s) == 6);
    CHECK(std::string(uwbr_sweep_series_name(s, 0)) == "pdf");
    CHECK(std::string(uwbr_sweep_series_name(s, 3)) == "cutset[rho=0.9]");
    CHECK(uwbr_sweep_series_name(s, 6) == nullptr);
    for (std::size_t p = 0; p < 2; ++p)
    {
        double pdf = 0, cut0 = 0, cut9 = 0;
        REQUIRE(uwbr_sweep_mean(s, 0, p, &pdf) == UWBR_OK);
        REQUIRE(uwbr_sweep_mean(s, 2, p, &cut0) == UWBR_OK);
        REQUIRE(uwbr_sweep_mean(s, 3, p, &cut9) == UWBR_OK);
        CHECK(cut0 >= pdf - 1e-9);
        CHECK(cut9 >= pdf - 1e-9);
    }
    double dummy = 0;
    CHECK(uwbr_sweep_mean(s, 0, 2, &dummy) == UWBR_ERR_INVALID_ARGUMENT);

    const auto dir = scratch_dir("sweep");
    const auto csv = (dir / "sweep.csv").string(), svg = (dir / "sweep.svg").string();
    REQUIRE(uwbr_sweep_write_csv(s, csv.c_str(), 0) == UWBR_OK);
    REQUIRE(uwbr_plot_svg_from_csv(csv.c_str(), svg.c_str(), "t") == UWBR_OK);
    const std::string first = slurp(svg);
    std::filesystem::remove(svg);
    REQUIRE(uwbr_plot_svg_from_csv(csv.c_str(), svg.c_str(), "t") == UWBR_OK);
    CHECK(slurp(svg) == first);
    CHECK(uwbr_plot_svg_from_csv("/nonexistent.csv", svg.c_str(), nullptr) == UWBR_ERR_IO);

    const char *files[] = {"sweep.csv", "sweep.svg"};
    const auto manifest = (dir / "manifest.json").string();
    REQUIRE(uwbr_manifest_write(c.ptr, manifest.c_str(), "sweep-rho", files, 2, 0) == UWBR_OK);
    CHECK(slurp(manifest).find("\"master_seed\"") != std::string::npos);
    uwbr_sweep_free(s);
}

TEST_CASE("channel dump")
{
    Config c;
    const auto dir = scratch_dir("channel");
    const auto response = (dir / "r.csv").string(), taps = (dir / "t.csv").string();
    REQUIRE(uwbr_channel_dump(c.ptr, response.c_str(), taps.c_str()) == UWBR_OK);
    CHECK(slurp(response).rfind("# K=16\n", 0) == 0);
    CHECK(std::filesystem::exists(taps));
    REQUIRE(uwbr_channel_dump(c.ptr, response.c_str(), nullptr) == UWBR_OK);
}

TEST_CASE("oracle check")
{
    Config c;
    REQUIRE(uwbr_config_set(c.ptr, "oracle.instances_k1", "2") == UWBR_OK);
    REQUIRE(uwbr_config_set(c.ptr, "oracle.instances_k2", "1") == UWBR_OK);
    REQUIRE(uwbr_config_set(c.ptr, "oracle.resolution", "0.01") == UWBR_OK);
    double dev = -1;
    std::size_t cases = 0;
    REQUIRE(uwbr_oracle_check(c.ptr, &dev, &cases) == UWBR_OK);
    CHECK(cases == 6);
    CHECK(dev >= 0.0);
    CHECK(dev < 0.05);
}

TEST_CASE("direct instance access")
{
    // One tone: G1 = 1, G2 = 3, G3 = 2, unit noise and powers.
    const double g1[] = {1, 0}, g2[] = {3, 0}, g3[] = {2, 0};
    uwbr_instance *inst = nullptr;
    REQUIRE(uwbr_instance_create(1, g1, g2, g3, 1.0, 1.0, nullptr, &inst) == UWBR_OK);
    double pdf = 0, cut = 0, deg = 0, direct = 0, split[4];
    REQUIRE(uwbr_instance_optimize(inst, 1, 1, 1, UWBR_OBJECTIVE_PDF, &pdf, split) == UWBR_OK);
    REQUIRE(uwbr_instance_optimize(inst, 1, 1, 1, UWBR_OBJECTIVE_CUTSET, &cut, nullptr) == UWBR_OK);
    REQUIRE(uwbr_instance_optimize(inst, 1, 1, 1, UWBR_OBJECTIVE_DEGRADED, &deg, nullptr) == UWBR_OK);
    REQUIRE(uwbr_instance_direct_rate(inst, 1.0, &direct) == UWBR_OK);
    CHECK(direct == doctest::Approx(1.0));
    CHECK(pdf > direct);
    CHECK(cut >= pdf - 1e-9);
    CHECK(pdf >= deg - 1e-12);
    CHECK(std::hypot(split[0], split[1]) <= 1.0);
    CHECK(std::hypot(split[2], split[3]) <= 1.0);
    CHECK(uwbr_instance_optimize(inst, -1, 1, 1, UWBR_OBJECTIVE_PDF, &pdf, nullptr) == UWBR_ERR_INVALID_ARGUMENT);
    CHECK(uwbr_instance_optimize(inst, 1, 1, 1, static_cast<uwbr_objective>(9), &pdf, nullptr) ==
          UWBR_ERR_INVALID_ARGUMENT);
    uwbr_instance_free(inst);

    const double bad_rho[] = {1.5, 0};
    uwbr_instance *bad = nullptr;
    CHECK(uwbr_instance_create(1, g1, g2, g3, 1.0, 1.0, bad_rho, &bad) == UWBR_ERR_INVALID_ARGUMENT);
    CHECK(uwbr_instance_create(0, g1, g2, g3, 1.0, 1.0, nullptr, &bad) == UWBR_ERR_INVALID_ARGUMENT);
    CHECK(uwbr_instance_create(1, g1, g2, g3, -1.0, 1.0, nullptr, &bad) == UWBR_ERR_INVALID_ARGUMENT);
}

} // TEST_SUITE
