// Copyright 2026 limnet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "limnet/config.hpp"
#include "limnet/harness.hpp"

using namespace limnet;

namespace {

// Short schedules keep the statistical machinery cheap enough for unit tests.
RunConfig tiny_config() {
    RunConfig c;
    c.m = 4;
    c.t_mid_ns = 5.0;
    c.t_p_ns = 40.0;
    c.t_settle_min_ns = 40.0;
    c.sample_interval_ns = 0.5;
    return c;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

bool trials_identical(const HarnessOutput& a, const HarnessOutput& b) {
    if (a.trials.size() != b.trials.size()) return false;
    for (size_t p = 0; p < a.trials.size(); ++p) {
        if (a.trials[p].size() != b.trials[p].size()) return false;
        for (size_t t = 0; t < a.trials[p].size(); ++t) {
            const TrialRecord& x = a.trials[p][t];
            const TrialRecord& y = b.trials[p][t];
            if (x.seed != y.seed || x.target != y.target ||
                x.target_index != y.target_index || x.trial_index != y.trial_index)
                return false;
            if (x.result.success != y.result.success ||
                x.result.comp_time != y.result.comp_time ||
                x.result.final_sigma_circ != y.result.final_sigma_circ ||
                x.result.final_sigma_diag != y.result.final_sigma_diag)
                return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("empty json config yields the documented defaults") {
    const RunConfig c = config_from_json("{}");
    CHECK(c.loss_rate == 1e11);
    CHECK(c.tau_sp_ns == 1.0);
    CHECK(c.beta_sp == 1e-6);
    CHECK(c.dt_ps == 1.0);
    CHECK(c.scheme == "gp");
    CHECK(c.t_p_ns == 1000.0);
    CHECK(c.pump_final_over_threshold == 3.0);
    CHECK(c.alpha_final == 0.02);
    CHECK(c.master_amp == 2.4e3);
    CHECK(c.sigma_threshold == 0.071);
    CHECK(c.m == 8);
    CHECK(c.noise);
    CHECK(!c.zeta.has_value());
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("config json round trip preserves every field") {
    RunConfig c = tiny_config();
    c.scheme = "gc";
    c.alpha_final = 0.017;
    c.zeta = 0.05;
    c.noise_factor = 0.5;
    c.flip_random_edge = true;
    c.kernel = "scalar";
    const RunConfig d = config_from_json(config_to_json(c));
    CHECK(d.scheme == c.scheme);
    CHECK(d.m == c.m);
    CHECK(d.t_mid_ns == c.t_mid_ns);
    CHECK(d.t_p_ns == c.t_p_ns);
    CHECK(d.alpha_final == c.alpha_final);
    REQUIRE(d.zeta.has_value());
    CHECK(*d.zeta == 0.05);
    CHECK(d.noise_factor == c.noise_factor);
    CHECK(d.flip_random_edge == c.flip_random_edge);
    CHECK(d.kernel == c.kernel);
    CHECK(d.t_settle_min_ns == c.t_settle_min_ns);
    CHECK(d.sample_interval_ns == c.sample_interval_ns);
}

TEST_CASE("config validation rejects bad values with the field path") {
    CHECK_THROWS_AS((void)config_from_json(R"({"physics": {"dt_ps": 50}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)config_from_json(R"({"run": {"m": 7}})"), std::invalid_argument);
    CHECK_THROWS_AS((void)config_from_json(R"({"schedule": {"alpha_ratio_mid": 2.0}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)config_from_json(R"({"run": {"kernel": "gpu"}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)config_from_json(R"({"physics": {"dt_ps": "fast"}})"),
                    std::invalid_argument);

    try {
        (void)config_from_json(R"({"physics": {"dt_ps": 50}})");
        FAIL("expected a throw");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("dt") != std::string::npos);
    }
}

TEST_CASE("unknown config keys are rejected at any level") {
    CHECK_THROWS_AS((void)config_from_json(R"({"bogus": 1})"), std::invalid_argument);
    CHECK_THROWS_AS((void)config_from_json(R"({"physics": {"loss": 1e11}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)config_from_json(R"({"run": {"trials": 10}})"),
                    std::invalid_argument);
}

TEST_CASE("derived schedule honors the zeta override") {
    RunConfig c;
    c.alpha_final = 0.0;
    c.zeta = 0.02;
    const ScheduleSpec s = c.schedule();
    CHECK(s.alpha_final == 0.0);
    CHECK(s.zeta == 0.02);

    RunConfig d;
    d.alpha_final = 0.015;
    CHECK(d.schedule().zeta == 0.015);  // default couples zeta to alpha
    d.zeta_over_alpha = 0.5;
    CHECK(d.schedule().zeta == doctest::Approx(0.0075));
}

TEST_CASE("sweep spec parses and validates") {
    const auto s = sweep_from_json(
        R"({"variable": "alpha", "values": [0.01, 0.02], "trials_per_point": 8,
            "targets_per_point": 2})");
    CHECK(s.variable == "alpha");
    CHECK(s.values == std::vector<double>{0.01, 0.02});
    CHECK(s.trials_per_point == 8);
    CHECK(s.targets_per_point == 2);

    CHECK(sweep_from_json(R"({"variable": "problem_size", "values": [8]})").variable == "m");
    CHECK(sweep_from_json(R"({"variable": "pump_final", "values": [3]})").variable ==
          "pump_final_over_threshold");
    CHECK(sweep_from_json(R"({"variable": "ramp_rate", "values": [8e-6]})").variable ==
          "ramp_rate");

    CHECK_THROWS_AS((void)sweep_from_json(R"({"variable": "gain", "values": [1]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)sweep_from_json(R"({"variable": "alpha", "values": []})"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)sweep_from_json(R"({"variable": "ramp_rate", "values": [0]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        (void)sweep_from_json(
            R"({"variable": "alpha", "values": [1], "trials_per_point": 2,
                "targets_per_point": 4})"),
        std::invalid_argument);
}

TEST_CASE("ramp_rate sweep values map onto the main ramp length") {
    RunConfig base;  // alpha_final 0.02, alpha_ratio_mid 0.6 -> ramp spans 0.008
    base.scheme = "gc";
    base.m = 4;
    base.t_settle_min_ns = 40.0;
    SweepSpec s;
    s.variable = "ramp_rate";
    s.values = {8e-6, 4e-5};
    s.trials_per_point = 1;
    s.targets_per_point = 1;
    const auto out = run_sweep(base, s, 11);
    REQUIRE(out.points.size() == 2);
    CHECK(out.points[0].t_p_ns == doctest::Approx(1000.0));
    CHECK(out.points[1].t_p_ns == doctest::Approx(200.0));
}

TEST_CASE("planted targets and trial seeds are stable and distinct") {
    CHECK(planted_target(8, 99, 0, 0) == planted_target(8, 99, 0, 0));
    CHECK(trial_seed(99, 0, 0, 0) == trial_seed(99, 0, 0, 0));

    std::set<std::uint64_t> seeds;
    for (int p = 0; p < 4; ++p)
        for (int tg = 0; tg < 4; ++tg)
            for (int tr = 0; tr < 4; ++tr) seeds.insert(trial_seed(99, p, tg, tr));
    CHECK(seeds.size() == 64);

    bool differs = false;
    const auto t0 = planted_target(16, 99, 0, 0);
    for (int tg = 1; tg < 8; ++tg)
        if (planted_target(16, 99, 0, tg) != t0) differs = true;
    CHECK(differs);

    for (int tg = 0; tg < 32; ++tg) {
        const int k = planted_flip_edge(12, 99, 0, tg);
        CHECK(k >= 0);
        CHECK(k < 12);
    }
}

TEST_CASE("csv header matches the published column order") {
    HarnessOutput out;
    CHECK(results_to_csv(out) ==
          "scheme,m,alpha_f,t_p_ns,pump_over_th,n_trials,n_success,success_prob,"
          "worst_time_ns,net_time_ns,master_seed\n");
}

TEST_CASE("sweep results do not depend on the worker count") {
    RunConfig base = tiny_config();
    const auto sweep = sweep_from_json(
        R"({"variable": "alpha", "values": [0.012, 0.02], "trials_per_point": 4,
            "targets_per_point": 2})");

    base.threads = 1;
    const auto a = run_sweep(base, sweep, 31337);
    base.threads = 3;
    const auto b = run_sweep(base, sweep, 31337);

    CHECK(trials_identical(a, b));
    CHECK(results_to_csv(a) == results_to_csv(b));
}

TEST_CASE("aggregates fold trials into the documented statistics") {
    RunConfig base = tiny_config();
    base.threads = 1;
    const auto sweep = sweep_from_json(
        R"({"variable": "alpha", "values": [0.02], "trials_per_point": 6,
            "targets_per_point": 3})");
    const auto out = run_sweep(base, sweep, 4242);
    REQUIRE(out.points.size() == 1);
    const auto& ag = out.points[0];
    CHECK(ag.scheme == "gp");
    CHECK(ag.m == 4);
    CHECK(ag.n_trials == 6);
    CHECK(ag.master_seed == 4242);
    CHECK(ag.success_prob == doctest::Approx(ag.n_success / 6.0));

    int succ = 0;
    double worst = 0.0;
    for (const auto& rec : out.trials[0]) {
        CHECK(rec.seed == trial_seed(4242, 0, rec.target_index, rec.trial_index));
        if (rec.result.success) {
            ++succ;
            worst = std::max(worst, *rec.result.comp_time);
        }
    }
    CHECK(succ == ag.n_success);
    if (ag.n_success > 0) {
        CHECK(*ag.worst_time_ns == doctest::Approx(worst * 1e9).epsilon(1e-12));
        CHECK(*ag.net_time_ns == *ag.worst_time_ns / ag.success_prob);
    }
    // targets rotate across trials: three distinct targets for six trials
    std::set<int> tg;
    for (const auto& rec : out.trials[0]) tg.insert(rec.target_index);
    CHECK(tg.size() == 3);
}

TEST_CASE("failed points leave the time columns empty") {
    RunConfig base = tiny_config();
    base.threads = 1;
    base.pump_final_over_threshold = 0.8;  // below threshold: lasers never fire
    base.pump_ratio_mid = 1.0;
    base.noise = false;  // deterministic sub-threshold lock, sigma stays at zero
    const auto sweep = sweep_from_json(
        R"({"variable": "alpha", "values": [0.012], "trials_per_point": 3,
            "targets_per_point": 1})");
    const auto out = run_sweep(base, sweep, 5);
    REQUIRE(out.points.size() == 1);
    CHECK(out.points[0].n_success == 0);
    CHECK(out.points[0].success_prob == 0.0);
    CHECK(!out.points[0].worst_time_ns.has_value());
    CHECK(!out.points[0].net_time_ns.has_value());

    const auto csv = results_to_csv(out);
    std::istringstream in(csv);
    std::string header, line;
    std::getline(in, header);
    std::getline(in, line);
    const auto fields = split_csv_line(line);
    REQUIRE(fields.size() == 11);
    CHECK(fields[0] == "gp");
    CHECK(fields[6] == "0");
    CHECK(fields[7] == "0.000000");
    CHECK(fields[8] == "");
    CHECK(fields[9] == "");
    CHECK(fields[10] == "5");
}

TEST_CASE("size scaling labels the flip variant separately") {
    RunConfig base = tiny_config();
    base.threads = 1;
    const auto out = run_size_scaling(base, {4}, {"gp"}, true, 2, 1, 77);
    REQUIRE(out.points.size() == 2);
    CHECK(out.points[0].scheme == "gp");
    CHECK(out.points[1].scheme == "gc-flip");
    for (const auto& rec : out.trials[0]) CHECK(!rec.flipped_edge.has_value());
    for (const auto& rec : out.trials[1]) {
        REQUIRE(rec.flipped_edge.has_value());
        CHECK(*rec.flipped_edge >= 0);
        CHECK(*rec.flipped_edge < 6);
    }
    const auto csv = results_to_csv(out);
    CHECK(csv.find("\ngc-flip,") != std::string::npos);
}

TEST_CASE("results json mirrors the aggregates and trial records") {
    RunConfig base = tiny_config();
    base.threads = 1;
    std::vector<PointSpec> points = {{base, "gp"}};
    const auto out = run_points(points, 2, 1, 11, base.threads);
    const auto text = results_to_json(out, points, 11);
    CHECK(text.find("\"master_seed\": 11") != std::string::npos);
    CHECK(text.find("\"effective_config\"") != std::string::npos);
    CHECK(text.find("\"trials\"") != std::string::npos);
    CHECK(text.find("\"threads\"") == std::string::npos);
}
