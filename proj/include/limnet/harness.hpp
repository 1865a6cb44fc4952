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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "limnet/config.hpp"
#include "limnet/dynamics.hpp"

namespace limnet {

// One sweep/scaling point: a full config plus a label for the CSV scheme
// column ("gc-flip" distinguishes the flipped-coupling GC variant).
struct PointSpec {
    RunConfig cfg;
    std::string label;
};

struct SweepSpec {
    // alpha | t_p_ns | ramp_rate | pump_final_over_threshold | m, with
    // problem_size / pump_final accepted as aliases of the last two
    std::string variable;
    std::vector<double> values;
    int trials_per_point = 20;
    int targets_per_point = 4;    // trials are split across this many planted patterns
};
SweepSpec sweep_from_json(const std::string& text);

// Per-trial record with its provenance.
struct TrialRecord {
    int point = 0;
    int target_index = 0;
    int trial_index = 0;
    std::uint64_t seed = 0;
    SpinVector target;
    std::optional<int> flipped_edge;
    TrialResult result;
};

// Aggregate of one point, in CSV column order.
struct AggregateResult {
    std::string scheme;
    int m = 0;
    double alpha_f = 0.0;
    double t_p_ns = 0.0;
    double pump_over_th = 0.0;
    int n_trials = 0;
    int n_success = 0;
    double success_prob = 0.0;
    // max comp_time over successful trials; empty when n_success == 0
    std::optional<double> worst_time_ns;
    // worst_time / success_prob; empty (infinite) when n_success == 0
    std::optional<double> net_time_ns;
    std::uint64_t master_seed = 0;
};

struct HarnessOutput {
    std::vector<AggregateResult> points;
    std::vector<std::vector<TrialRecord>> trials;  // per point
};

// Runs trials_per_point trials for every point, distributed over a worker
// pool.  Seeds are pre-assigned per (point, target, trial), so the output is
// byte-identical for any worker count.
HarnessOutput run_points(const std::vector<PointSpec>& points, int trials_per_point,
                         int targets_per_point, std::uint64_t master_seed, int threads);

HarnessOutput run_sweep(const RunConfig& base, const SweepSpec& sweep,
                        std::uint64_t master_seed);

// Grid of problem sizes x schedule schemes; when flip_variant is set, an
// extra "gc-flip" row per size runs GC with one randomly chosen coupling
// flipped per planted target.
HarnessOutput run_size_scaling(const RunConfig& base, const std::vector<int>& sizes,
                               const std::vector<std::string>& schemes, bool flip_variant,
                               int trials_per_point, int targets_per_point,
                               std::uint64_t master_seed);

// CSV with the fixed header
// scheme,m,alpha_f,t_p_ns,pump_over_th,n_trials,n_success,success_prob,
// worst_time_ns,net_time_ns,master_seed; null aggregates are empty fields.
std::string results_to_csv(const HarnessOutput& out);

// JSON mirror carrying the effective config and every trial record.
std::string results_to_json(const HarnessOutput& out, const std::vector<PointSpec>& points,
                            std::uint64_t master_seed);

std::string trial_to_json(const TrialResult& r, const RunConfig& cfg, int indent = -1);

// Deterministic helpers shared by the harness and the CLI.
SpinVector planted_target(int m, std::uint64_t master_seed, int point, int target_index);
int planted_flip_edge(int n_edges, std::uint64_t master_seed, int point, int target_index);
std::uint64_t trial_seed(std::uint64_t master_seed, int point, int target_index,
                         int trial_index);

}  // namespace limnet
