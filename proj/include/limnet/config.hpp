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

#include <optional>
#include <string>

#include "limnet/dynamics.hpp"
#include "limnet/readout.hpp"
#include "limnet/schedule.hpp"

namespace limnet {

// User-facing configuration.  Times are given in ns (dt in ps) and pump
// rates relative to threshold; resolve() converts to the SI structs the
// dynamics layer uses.  Unknown keys are rejected so typos don't silently
// fall back to defaults.
struct RunConfig {
    // [physics]
    double loss_rate = 1e11;      // omega/Q, s^-1
    double tau_sp_ns = 1.0;
    double beta_sp = 1e-6;
    double dt_ps = 1.0;
    double amp_floor = 1e-3;
    double noise_factor = 1.0;

    // [schedule]
    std::string scheme = "gp";
    double t_mid_ns = 10.0;
    double t_p_ns = 1000.0;
    double pump_final_over_threshold = 3.0;
    double pump_ratio_mid = 0.5;
    double alpha_final = 0.02;
    double alpha_ratio_mid = 0.6;
    double zeta_over_alpha = 1.0;
    std::optional<double> zeta;   // absolute override (used e.g. for alpha = 0)
    double master_amp = 2.4e3;

    // [readout]
    double sigma_threshold = 0.071;
    double sample_interval_ns = 1.0;

    // [run]
    int m = 8;
    std::string kernel = "auto";
    int threads = 0;              // 0 = hardware concurrency
    bool noise = true;
    bool flip_random_edge = false;
    double t_settle_factor = 0.2;   // extra time after t_f, as a fraction of t_p
    double t_settle_min_ns = 200.0; // and at least this much

    PhysicsConfig physics() const;
    ScheduleSpec schedule() const;
    ReadoutConfig readout() const;
    double t_end() const;
    KernelKind kernel_kind() const { return kernel_from_name(kernel); }

    void validate() const;  // throws std::invalid_argument with the field path
};

// Parses a config JSON document; absent fields keep defaults, "{}" is the
// full default configuration.  Throws on unknown keys or invalid values.
RunConfig config_from_json(const std::string& text);

// Effective configuration echo (every field, normalized), embedded in all
// result files so a record is reproducible from itself.
std::string config_to_json(const RunConfig& c, int indent = -1);

}  // namespace limnet
