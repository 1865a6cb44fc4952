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

#include <vector>

#include "limnet/ising.hpp"
#include "limnet/schedule.hpp"
#include "limnet/state.hpp"

namespace limnet {

struct ReadoutConfig {
    double sigma_threshold = 0.071;  // minimum |sigma| for a spin to count as formed
    double sample_interval = 1e-9;   // seconds between readout frames

    void validate() const;
};

// Right/left circular amplitudes of one laser from its +/-45-degree linear
// modes: E_R = (E_p + i E_m)/sqrt(2), E_L = (E_p - i E_m)/sqrt(2).
struct CircularAmps {
    double amp_r = 0.0;
    double amp_l = 0.0;
};
CircularAmps to_circular(double amp_p, double phase_p, double amp_m, double phase_m);

// Collective spin of every laser in both readout bases:
//   circular:  (A_R - A_L)/sqrt(A_R^2 + A_L^2)
//   diagonal:  (A_p - A_m)/sqrt(A_p^2 + A_m^2)
// The physical spin may bifurcate in either basis depending on the free
// global phase of the pattern mode, so both are always computed.
struct SpinReadout {
    std::vector<double> circ;
    std::vector<double> diag;
};
SpinReadout collective_spins(const LaserNetworkState& st);

// Threshold decision for one basis against the planted pattern (or its
// global flip; the two are the same ground state).
struct BasisDecision {
    bool matched = false;    // sign pattern equals target or -target
    bool all_above = false;  // every |sigma_i| >= threshold
    bool formed() const { return matched && all_above; }
};
BasisDecision decide(const std::vector<double>& sigma, const SpinVector& target,
                     double threshold);

// Diagnostic: deviation of the summed stimulated gain from the value implied
// by per-laser photon balance,
//   sum_i E_i - [ m*loss - master_sum + coupling_sum ],
// which is zero in any drift steady state.  master_sum collects the injected
// master contribution per laser and coupling_sum the mutual-injection
// exchange Re(h_i* h_j) over edges, both normalized by the laser's photon
// number.  Away from steady state the value is meaningful only as a residual.
double gain_sum_residual(const LaserNetworkState& st, const IsingProblem& p,
                         const PhysicsConfig& phys, double alpha, double zeta,
                         double master_amp);

// Linearized growth rate of the pattern mode seeded on a ground state of the
// unflipped instance (3 satisfied edges per laser):
//   (gain - loss)/2 + 3*alpha*loss.
double predicted_growth_rate(double e_cv, double alpha, const PhysicsConfig& phys);

}  // namespace limnet
