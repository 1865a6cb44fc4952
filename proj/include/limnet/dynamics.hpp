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
#include <ostream>
#include <string>

#include "limnet/ising.hpp"
#include "limnet/kernels.hpp"
#include "limnet/readout.hpp"
#include "limnet/rng.hpp"
#include "limnet/schedule.hpp"
#include "limnet/state.hpp"

namespace limnet {

// Everything one trial needs besides its seed.
struct TrialSetup {
    IsingProblem problem;
    PhysicsConfig phys;
    ScheduleSpec sched;
    ReadoutConfig readout;
    double t_end = 0.0;   // seconds; must be >= sched.t_final()
    bool noise = true;
    KernelKind kernel = KernelKind::Auto;
};

struct TrialResult {
    std::uint64_t seed = 0;
    int m = 0;
    bool success = false;        // success_circ || success_diag at the final frame
    bool success_circ = false;
    bool success_diag = false;
    // First sample time at which either basis shows the planted pattern with
    // every |sigma| above threshold.
    std::optional<double> comp_time;
    // First sample time at which either basis has every |sigma| above
    // threshold, regardless of pattern (spin formation, right or wrong).
    std::optional<double> bifurcation_time;
    std::vector<double> final_sigma_circ, final_sigma_diag;
    bool numeric_fault = false;
    std::string fault_message;
};

// Integrates one trial: RK4 drift step, then Poisson spontaneous-emission
// noise per polarization mode, then clamps.  Exposes stepping and state
// access so tests can run controlled experiments (seeded perturbations,
// drift-only probes); run() executes the full readout protocol.
class TrialRunner {
  public:
    TrialRunner(const TrialSetup& setup, std::uint64_t seed);

    // Full protocol from t=0 to t_end.  If traj is non-null, writes one CSV
    // row per sample: t_ns, sigma_1..sigma_M (circular basis), mean_nc.
    TrialResult run(std::ostream* traj = nullptr);

    // Stepping API for controlled experiments.
    void step_one();                  // one dt: drift + (optional) noise + clamps
    void advance_to(double t_target); // steps until state.t >= t_target - dt/2
    const LaserNetworkState& state() const { return state_; }
    LaserNetworkState& mutable_state() { return state_; }
    SpinReadout spins() const { return collective_spins(state_); }
    double mean_carriers() const;
    double gain_at(int laser) const { return setup_.phys.gain_coefficient(state_.carriers[laser]); }
    const std::string& kernel_name() const { return kernel_name_; }

  private:
    void apply_noise();
    bool check_finite(std::string* msg) const;

    TrialSetup setup_;
    LaserNetworkState state_;
    CouplingTable table_;
    StepParams params_;
    KernelWorkspace ws_;
    StepFn step_fn_;
    std::string kernel_name_;
    Xoshiro256pp rng_;
    std::uint64_t seed_;
    std::int64_t step_index_ = 0;
};

}  // namespace limnet
