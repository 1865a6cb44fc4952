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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "limnet/config.hpp"
#include "limnet/harness.hpp"
#include "limnet/spectrum.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string json_sibling(const std::string& csv_path) {
    const auto dot = csv_path.rfind('.');
    const std::string stem =
        dot == std::string::npos ? csv_path : csv_path.substr(0, dot);
    return stem + ".json";
}

limnet::RunConfig load_config(const std::string& path) {
    return limnet::config_from_json(path.empty() ? "{}" : read_file(path));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"laser-network Ising machine simulator"};
    app.require_subcommand(1);

    std::string config_path, sweep_path, out_path, traj_path, problem_path;
    std::uint64_t seed = 1;

    // --- run: single trial ---
    auto* run = app.add_subcommand("run", "run one trial and print its JSON record");
    run->add_option("--config", config_path, "config JSON ({} defaults if omitted)");
    run->add_option("--seed", seed, "trial seed")->required();
    run->add_option("--traj", traj_path, "write a trajectory CSV to this path");
    run->add_option("--problem", problem_path,
                    "explicit problem JSON (otherwise planted from the seed)");

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "sweep one variable, aggregate per point");
    sweep->add_option("--config", config_path, "base config JSON");
    sweep->add_option("--sweep", sweep_path, "sweep spec JSON")->required();
    sweep->add_option("--out", out_path, "output CSV path (JSON mirror alongside)")
        ->required();
    sweep->add_option("--seed", seed, "master seed");

    // --- scaling ---
    std::vector<int> sizes{4, 8, 16};
    std::vector<std::string> schemes{"gp", "gc", "abrupt"};
    bool flip_variant = false;
    int trials = 20, targets = 4;
    auto* scaling = app.add_subcommand("scaling", "success scaling over sizes x schemes");
    scaling->add_option("--sizes", sizes, "problem sizes")->delimiter(',');
    scaling->add_option("--schemes", schemes, "schedule schemes")->delimiter(',');
    scaling->add_option("--config", config_path, "base config JSON");
    scaling->add_option("--out", out_path, "output CSV path")->required();
    scaling->add_option("--trials", trials, "trials per point");
    scaling->add_option("--targets", targets, "planted targets per point");
    scaling->add_flag("--flip-variant", flip_variant,
                      "add a gc row per size with one flipped coupling");
    scaling->add_option("--seed", seed, "master seed");

    // --- oracle ---
    int oracle_m = 8;
    int flip_edge = -1;
    int cap = limnet::kDefaultEnumerationCap;
    std::uint64_t oracle_seed = 1;
    auto* oracle = app.add_subcommand("oracle", "exact spectrum of one planted instance");
    oracle->add_option("--m", oracle_m, "problem size")->required();
    oracle->add_option("--flip-edge", flip_edge, "flip this edge index before enumerating");
    oracle->add_option("--seed", oracle_seed, "seed for the planted target");
    oracle->add_option("--cap", cap, "enumeration size cap override");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            limnet::RunConfig cfg = load_config(config_path);
            limnet::IsingProblem problem;
            if (!problem_path.empty()) {
                problem = limnet::problem_from_json(read_file(problem_path));
                cfg.m = problem.m;
            } else {
                problem = limnet::build_cubic_problem(
                    cfg.m, limnet::planted_target(cfg.m, seed, 0, 0));
                if (cfg.flip_random_edge)
                    problem = limnet::flip_one_coupling(
                        problem, limnet::planted_flip_edge(
                                     static_cast<int>(problem.edges.size()), seed, 0, 0));
            }
            limnet::TrialSetup setup;
            setup.problem = problem;
            setup.phys = cfg.physics();
            setup.sched = cfg.schedule();
            setup.readout = cfg.readout();
            setup.t_end = cfg.t_end();
            setup.noise = cfg.noise;
            setup.kernel = cfg.kernel_kind();

            limnet::TrialRunner runner(setup, seed);
            limnet::TrialResult res;
            if (!traj_path.empty()) {
                std::ofstream traj(traj_path, std::ios::binary);
                if (!traj) throw std::runtime_error("cannot write " + traj_path);
                res = runner.run(&traj);
            } else {
                res = runner.run();
            }
            std::cout << limnet::trial_to_json(res, cfg, 2) << "\n";
            return res.numeric_fault ? 2 : 0;
        }

        if (*sweep) {
            limnet::RunConfig cfg = load_config(config_path);
            limnet::SweepSpec spec = limnet::sweep_from_json(read_file(sweep_path));
            limnet::HarnessOutput out = limnet::run_sweep(cfg, spec, seed);

            std::vector<limnet::PointSpec> points;  // rebuild for the JSON echo
            for (double v : spec.values) {
                limnet::RunConfig c = cfg;
                if (spec.variable == "alpha") c.alpha_final = v;
                else if (spec.variable == "t_p_ns") c.t_p_ns = v;
                else if (spec.variable == "pump_final_over_threshold")
                    c.pump_final_over_threshold = v;
                else c.m = static_cast<int>(v);
                points.push_back({c, c.scheme});
            }
            write_file(out_path, limnet::results_to_csv(out));
            write_file(json_sibling(out_path), limnet::results_to_json(out, points, seed));
            std::cout << limnet::results_to_csv(out);
            return 0;
        }

        if (*scaling) {
            limnet::RunConfig cfg = load_config(config_path);
            limnet::HarnessOutput out = limnet::run_size_scaling(
                cfg, sizes, schemes, flip_variant, trials, targets, seed);

            std::vector<limnet::PointSpec> points;
            for (const auto& sc : schemes)
                for (int m : sizes) {
                    limnet::RunConfig c = cfg;
                    c.scheme = sc;
                    c.m = m;
                    points.push_back({c, sc});
                }
            if (flip_variant)
                for (int m : sizes) {
                    limnet::RunConfig c = cfg;
                    c.scheme = "gc";
                    c.m = m;
                    c.flip_random_edge = true;
                    points.push_back({c, "gc-flip"});
                }
            write_file(out_path, limnet::results_to_csv(out));
            write_file(json_sibling(out_path), limnet::results_to_json(out, points, seed));
            std::cout << limnet::results_to_csv(out);
            return 0;
        }

        if (*oracle) {
            limnet::IsingProblem problem = limnet::build_cubic_problem(
                oracle_m, limnet::planted_target(oracle_m, oracle_seed, 0, 0));
            if (flip_edge >= 0) problem = limnet::flip_one_coupling(problem, flip_edge);
            limnet::SpectrumStats st = limnet::enumerate_spectrum(problem, cap);
            std::cout << limnet::spectrum_to_json(st) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
