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

#include "limnet/schedule.hpp"

#include <stdexcept>

namespace limnet {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Linear interpolation from (t0,v0) to (t1,v1), callers guarantee t in range.
double lerp_seg(double t, double t0, double t1, double v0, double v1) {
    return v0 + (v1 - v0) * ((t - t0) / (t1 - t0));
}

}  // namespace

void PhysicsConfig::validate() const {
    require(loss_rate > 0.0, "loss_rate must be positive");
    require(tau_sp > 0.0, "tau_sp must be positive");
    require(beta_sp > 0.0 && beta_sp <= 1.0, "beta_sp must be in (0, 1]");
    require(dt > 0.0, "dt must be positive");
    // Explicit stability guard: the fastest linear rate in the field
    // equations is ~loss_rate, and RK4 holds 4th-order accuracy comfortably
    // for loss_rate*dt up to ~0.2.
    require(loss_rate * dt <= 0.2, "dt too coarse: loss_rate * dt must be <= 0.2");
    require(amp_floor > 0.0, "amp_floor must be positive");
    require(noise_factor >= 0.0, "noise_factor must be >= 0");
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "gp") return Scheme::GradualPump;
    if (name == "gc") return Scheme::GradualCoupling;
    if (name == "abrupt") return Scheme::AbruptCoupling;
    throw std::invalid_argument("unknown scheme '" + name + "' (expected gp|gc|abrupt)");
}

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::GradualPump: return "gp";
        case Scheme::GradualCoupling: return "gc";
        case Scheme::AbruptCoupling: return "abrupt";
    }
    return "?";
}

void ScheduleSpec::validate() const {
    require(t_mid > 0.0, "t_mid must be positive");
    require(t_p >= 0.0, "t_p must be >= 0");
    require(pump_final >= 0.0, "pump_final must be >= 0");
    require(pump_mid >= 0.0 && pump_mid <= pump_final, "pump_mid must be in [0, pump_final]");
    require(alpha_final >= 0.0, "alpha_final must be >= 0");
    require(alpha_mid >= 0.0 && alpha_mid <= alpha_final,
            "alpha_mid must be in [0, alpha_final]");
    require(zeta >= 0.0, "zeta must be >= 0");
    require(master_amp >= 0.0, "master_amp must be >= 0");
}

double pump_at(const ScheduleSpec& s, double t) {
    if (s.scheme != Scheme::GradualPump) return s.pump_final;
    if (t <= 0.0) return 0.0;
    if (t < s.t_mid) return lerp_seg(t, 0.0, s.t_mid, 0.0, s.pump_mid);
    if (t < s.t_final()) return lerp_seg(t, s.t_mid, s.t_final(), s.pump_mid, s.pump_final);
    return s.pump_final;
}

double coupling_at(const ScheduleSpec& s, double t) {
    switch (s.scheme) {
        case Scheme::GradualPump:
            return s.alpha_final;
        case Scheme::GradualCoupling:
            if (t <= 0.0) return 0.0;
            if (t < s.t_mid) return lerp_seg(t, 0.0, s.t_mid, 0.0, s.alpha_mid);
            if (t < s.t_final())
                return lerp_seg(t, s.t_mid, s.t_final(), s.alpha_mid, s.alpha_final);
            return s.alpha_final;
        case Scheme::AbruptCoupling:
            return t < s.t_mid ? 0.0 : s.alpha_final;
    }
    return 0.0;
}

}  // namespace limnet
