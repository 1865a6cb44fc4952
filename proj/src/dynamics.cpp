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

#include "limnet/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "limnet/detail/kernel_ops.hpp"
#include "limnet/fastmath.hpp"

namespace limnet {

TrialRunner::TrialRunner(const TrialSetup& setup, std::uint64_t seed)
    : setup_(setup),
      table_(CouplingTable::from_problem(setup.problem)),
      rng_(seed),
      seed_(seed) {
    setup_.phys.validate();
    setup_.sched.validate();
    setup_.readout.validate();
    if (setup_.t_end < setup_.sched.t_final())
        throw std::invalid_argument("t_end must be >= the schedule end t_mid + t_p");
    if (setup_.readout.sample_interval < setup_.phys.dt)
        throw std::invalid_argument("sample_interval must be >= dt");

    params_.dt = setup_.phys.dt;
    params_.loss = setup_.phys.loss_rate;
    params_.gain_per_carrier = setup_.phys.beta_sp / setup_.phys.tau_sp;
    params_.inv_tau = 1.0 / setup_.phys.tau_sp;
    params_.zeta_master = setup_.sched.zeta * setup_.sched.master_amp;
    params_.amp_floor = setup_.phys.amp_floor;

    step_fn_ = select_kernel(setup_.kernel, &kernel_name_);
    ws_.resize(setup_.problem.m);

    // Below-threshold start: both modes at the amplitude floor with phases
    // drawn uniformly, carriers empty.
    state_ = LaserNetworkState::floor_state(setup_.problem.m, setup_.phys.amp_floor);
    for (int i = 0; i < state_.m; ++i) {
        state_.phase_p[i] = fastmath::wrap_phase(rng_.uniform_angle());
        state_.phase_m[i] = fastmath::wrap_phase(rng_.uniform_angle());
    }
}

double TrialRunner::mean_carriers() const {
    double s = 0.0;
    for (double n : state_.carriers) s += n;
    return s / state_.m;
}

void TrialRunner::apply_noise() {
    const double dt = setup_.phys.dt;
    const double scale = dt * setup_.phys.noise_factor;
    for (int i = 0; i < state_.m; ++i) {
        const double lambda = setup_.phys.gain_coefficient(state_.carriers[i]) * scale;
        if (lambda <= 0.0) continue;
        const double enl = exp_neg(lambda);
        // Both polarization modes see the same spontaneous rate; each event
        // adds one unit-amplitude photon with a uniformly random phase.
        for (int mode = 0; mode < 2; ++mode) {
            const int k = poisson_knuth_precomp(rng_, lambda, enl);
            if (k == 0) continue;
            double& amp = mode == 0 ? state_.amp_p[i] : state_.amp_m[i];
            double& phase = mode == 0 ? state_.phase_p[i] : state_.phase_m[i];
            double s, c;
            fastmath::sincos_pair(phase, &s, &c);
            double re = amp * c;
            double im = amp * s;
            for (int ev = 0; ev < k; ++ev) {
                const double theta = rng_.uniform_angle();
                fastmath::sincos_pair(theta, &s, &c);
                re += c;
                im += s;
            }
            amp = detail::clamp_floor(std::sqrt(re * re + im * im), params_.amp_floor);
            phase = std::atan2(im, re);
        }
    }
}

void TrialRunner::step_one() {
    const double dt = params_.dt;
    const double t0 = static_cast<double>(step_index_) * dt;
    DrivePair drives[3];
    const double ts[3] = {t0, t0 + 0.5 * dt, t0 + dt};
    for (int s = 0; s < 3; ++s)
        drives[s] = {pump_at(setup_.sched, ts[s]), coupling_at(setup_.sched, ts[s])};
    step_fn_(state_, table_, params_, drives, ws_);
    ++step_index_;
    state_.t = static_cast<double>(step_index_) * dt;
    if (setup_.noise) apply_noise();
}

void TrialRunner::advance_to(double t_target) {
    const double dt = params_.dt;
    while (state_.t < t_target - 0.5 * dt) step_one();
}

bool TrialRunner::check_finite(std::string* msg) const {
    auto scan = [&](const std::vector<double>& v, const char* name) {
        for (int i = 0; i < state_.m; ++i) {
            if (!std::isfinite(v[i])) {
                if (msg)
                    *msg = std::string("non-finite ") + name + " at laser " +
                           std::to_string(i) + ", t = " + std::to_string(state_.t * 1e9) +
                           " ns";
                return false;
            }
        }
        return true;
    };
    return scan(state_.amp_p, "amp_p") && scan(state_.phase_p, "phase_p") &&
           scan(state_.amp_m, "amp_m") && scan(state_.phase_m, "phase_m") &&
           scan(state_.carriers, "carriers");
}

TrialResult TrialRunner::run(std::ostream* traj) {
    TrialResult res;
    res.seed = seed_;
    res.m = state_.m;

    const double dt = params_.dt;
    const auto total_steps = static_cast<std::int64_t>(std::llround(setup_.t_end / dt));
    const auto sample_every =
        static_cast<std::int64_t>(std::llround(setup_.readout.sample_interval / dt));

    if (traj) {
        *traj << "t_ns";
        for (int i = 1; i <= state_.m; ++i) *traj << ",sigma_" << i;
        *traj << ",mean_nc\n";
    }

    const SpinVector& target = setup_.problem.target;
    SpinReadout last;
    BasisDecision dc, dd;
    for (std::int64_t s = 0; s < total_steps; ++s) {
        step_one();
        if ((s + 1) % sample_every != 0 && s + 1 != total_steps) continue;

        std::string msg;
        if (!check_finite(&msg)) {
            res.numeric_fault = true;
            res.fault_message = msg;
            res.success = res.success_circ = res.success_diag = false;
            return res;
        }

        last = collective_spins(state_);
        dc = decide(last.circ, target, setup_.readout.sigma_threshold);
        dd = decide(last.diag, target, setup_.readout.sigma_threshold);
        if (!res.bifurcation_time && (dc.all_above || dd.all_above))
            res.bifurcation_time = state_.t;
        if (!res.comp_time && (dc.formed() || dd.formed())) res.comp_time = state_.t;

        if (traj) {
            *traj << state_.t * 1e9;
            for (int i = 0; i < state_.m; ++i) *traj << ',' << last.circ[i];
            *traj << ',' << mean_carriers() << '\n';
        }
    }

    res.success_circ = dc.formed();
    res.success_diag = dd.formed();
    res.success = res.success_circ || res.success_diag;
    res.final_sigma_circ = std::move(last.circ);
    res.final_sigma_diag = std::move(last.diag);
    return res;
}

}  // namespace limnet
