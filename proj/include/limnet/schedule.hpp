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

namespace limnet {

// Device constants shared by every run.  All rates are s^-1, times seconds.
struct PhysicsConfig {
    double loss_rate = 1e11;    // cavity photon decay rate (omega/Q)
    double tau_sp = 1e-9;       // carrier spontaneous lifetime
    double beta_sp = 1e-6;      // spontaneous emission coupling into the mode
    double dt = 1e-12;          // integrator step
    double amp_floor = 1e-3;    // lower clamp on field amplitudes
    double noise_factor = 1.0;  // scales the spontaneous-emission event rate

    // Pump rate (carriers/s) at which modal gain balances cavity loss when
    // the field is empty: beta * P_th * tau / tau = loss, so P_th = loss/beta.
    double threshold_pump() const { return loss_rate / beta_sp; }

    // Stimulated gain rate for a given carrier number.
    double gain_coefficient(double carriers) const {
        return beta_sp * carriers / tau_sp;
    }

    void validate() const;  // throws std::invalid_argument
};

// Electron charge, used only to express pump rates as injection currents.
inline constexpr double kElectronCharge = 1.602176634e-19;

enum class Scheme { GradualPump, GradualCoupling, AbruptCoupling };

Scheme scheme_from_name(const std::string& name);  // "gp" | "gc" | "abrupt"
const char* scheme_name(Scheme s);

// Piecewise-linear drive schedules.  Time axis:
//   [0, t_mid)        slow preparation segment
//   [t_mid, t_f)      main ramp segment of length t_p  (t_f = t_mid + t_p)
//   [t_f, ...)        hold at final values
//
// GradualPump:      coupling fixed at alpha_f; pump 0 -> p_mid over the first
//                   segment, p_mid -> p_f over the second.
// GradualCoupling:  pump fixed at p_f; coupling 0 -> alpha_mid, then
//                   alpha_mid -> alpha_f.
// AbruptCoupling:   pump fixed at p_f; coupling 0 until t_mid, then alpha_f.
struct ScheduleSpec {
    Scheme scheme = Scheme::GradualPump;
    double t_mid = 10e-9;
    double t_p = 1e-6;        // >= 0; 0 collapses GC onto the abrupt profile
    double pump_final = 3e17;
    double pump_mid = 1.5e17;
    double alpha_final = 0.02;
    double alpha_mid = 0.012;
    double zeta = 0.02;       // master injection coupling (fixed in time)
    double master_amp = 2.4e3;

    double t_final() const { return t_mid + t_p; }
    void validate() const;  // throws std::invalid_argument
};

// Drive values at absolute time t (clamped to the hold value beyond t_f and
// to the t=0 value for negative t).
double pump_at(const ScheduleSpec& s, double t);
double coupling_at(const ScheduleSpec& s, double t);

}  // namespace limnet
