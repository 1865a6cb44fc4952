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

#include <string>
#include <vector>

#include "limnet/ising.hpp"
#include "limnet/state.hpp"

namespace limnet {

// Per-vertex view of the ring-plus-chords couplings: neighbor j values for
// (i-1), (i+1) and the chord partner (i + m/2), all mod m.  Stored as doubles
// (+-1) so the kernels multiply instead of branching.
struct CouplingTable {
    int m = 0;
    std::vector<double> j_prev, j_next, j_chord;

    // Throws std::invalid_argument if the edge set is not exactly the
    // ring-plus-chords topology the kernels are laid out for.
    static CouplingTable from_problem(const IsingProblem& p);
};

// Fixed per-run integrator constants (SI units as in PhysicsConfig).
struct StepParams {
    double dt = 0.0;
    double loss = 0.0;              // cavity decay rate omega/Q
    double gain_per_carrier = 0.0;  // beta_sp / tau_sp
    double inv_tau = 0.0;           // 1 / tau_sp
    double zeta_master = 0.0;       // zeta * master amplitude
    double amp_floor = 0.0;
};

// Drive values sampled at the three RK4 substage times t, t+dt/2, t+dt.
struct DrivePair {
    double pump = 0.0;
    double alpha = 0.0;
};

// Scratch buffers reused across steps; resize(m) before first use.
struct KernelWorkspace {
    int m = 0;
    // per-mode trig of the current stage state
    std::vector<double> cos_p, sin_p, cos_m, sin_m;
    // signed mode differences u = Re(E_p - E_m), v = Im(E_p - E_m),
    // duplicated [u, u] so neighbor loads are plain contiguous loads
    std::vector<double> u_ext, v_ext;
    // RK4 stage state and the four derivative sets, 5 arrays each
    std::vector<double> y[5];
    std::vector<double> k[4][5];

    void resize(int new_m);
};

// One RK4 step of the full network ODE followed by amplitude/carrier clamps
// and phase wrapping.  drives[0..2] hold pump/coupling at t, t+dt/2, t+dt.
// Advances every state array; the caller advances state.t.
using StepFn = void (*)(LaserNetworkState&, const CouplingTable&, const StepParams&,
                        const DrivePair drives[3], KernelWorkspace&);

// Reference drift evaluation (time derivatives of all five blocks) used by
// the scalar kernel and directly by tests.  Arrays are length m.
void drift_scalar(int m, const double* ap, const double* pp, const double* am,
                  const double* pm, const double* nc, const CouplingTable& tab,
                  const StepParams& par, DrivePair drive, double* d_ap, double* d_pp,
                  double* d_am, double* d_pm, double* d_nc, KernelWorkspace& ws);

void step_rk4_scalar(LaserNetworkState&, const CouplingTable&, const StepParams&,
                     const DrivePair drives[3], KernelWorkspace&);
#if defined(LIMNET_BUILD_AVX2)
void step_rk4_avx2(LaserNetworkState&, const CouplingTable&, const StepParams&,
                   const DrivePair drives[3], KernelWorkspace&);
#endif

enum class KernelKind { Auto, Scalar, Avx2 };

KernelKind kernel_from_name(const std::string& name);  // "auto" | "scalar" | "avx2"
bool avx2_available();

// Resolves Auto to the fastest kernel this CPU supports.  Throws if an
// explicitly requested kernel is unavailable.  chosen (optional) receives
// the name of the kernel actually selected.
StepFn select_kernel(KernelKind kind, std::string* chosen = nullptr);

}  // namespace limnet
