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

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "limnet/dynamics.hpp"
#include "limnet/rng.hpp"

using namespace limnet;

namespace {

SpinVector random_target(int m, std::uint64_t seed) {
    Xoshiro256pp g(seed);
    SpinVector t(m);
    for (auto& v : t) v = g.sign();
    return t;
}

// Constant-drive setup: pump and coupling pinned from t = 0 on.
TrialSetup flat_setup(int m, double pump, double alpha, double zeta, double master_amp) {
    TrialSetup s;
    s.problem = build_cubic_problem(m, SpinVector(m, 1));
    s.sched.scheme = Scheme::GradualCoupling;
    s.sched.t_mid = 1e-9;
    s.sched.t_p = 0.0;
    s.sched.pump_final = pump;
    s.sched.pump_mid = pump;
    s.sched.alpha_final = alpha;
    s.sched.alpha_mid = alpha;
    s.sched.zeta = zeta;
    s.sched.master_amp = master_amp;
    s.t_end = 10e-9;
    return s;
}

}  // namespace

TEST_CASE("carriers relax to pump * tau below threshold") {
    // Sub-threshold pump with no master: fields stay clamped at the floor and
    // the carrier equation is linear, n(t) = P*tau*(1 - exp(-t/tau)).
    const double pump = 0.5e17;
    auto setup = flat_setup(4, pump, 0.0, 0.0, 0.0);
    setup.noise = false;
    setup.t_end = 5e-9;
    TrialRunner r(setup, 1);
    r.advance_to(5e-9);
    const double tau = setup.phys.tau_sp;
    const double want = pump * tau * (1.0 - std::exp(-5e-9 / tau));
    CHECK(r.mean_carriers() == doctest::Approx(want).epsilon(1e-6));
    // every laser individually, and fields still at the floor
    for (int i = 0; i < 4; ++i) {
        CHECK(r.state().carriers[i] == doctest::Approx(want).epsilon(1e-6));
        CHECK(r.state().amp_p[i] == setup.phys.amp_floor);
        CHECK(r.state().amp_m[i] == setup.phys.amp_floor);
    }
}

TEST_CASE("same seed reproduces a trial bit for bit") {
    TrialSetup setup;
    setup.problem = build_cubic_problem(8, random_target(8, 5));
    setup.sched.t_mid = 5e-9;
    setup.sched.t_p = 50e-9;
    setup.t_end = 70e-9;
    TrialRunner a(setup, 424242), b(setup, 424242);
    const auto ra = a.run();
    const auto rb = b.run();
    CHECK(ra.success == rb.success);
    CHECK(ra.comp_time == rb.comp_time);
    CHECK(ra.bifurcation_time == rb.bifurcation_time);
    CHECK(ra.final_sigma_circ == rb.final_sigma_circ);
    CHECK(ra.final_sigma_diag == rb.final_sigma_diag);

    TrialRunner c(setup, 424243);
    const auto rc = c.run();
    CHECK(ra.final_sigma_circ != rc.final_sigma_circ);
}

TEST_CASE("symmetric initial phases never bifurcate without noise") {
    // The polarization-symmetric state is an exact equilibrium of the drift;
    // only spontaneous emission breaks it.
    auto setup = flat_setup(8, 3e17, 0.02, 0.02, 2.4e3);
    setup.problem = build_cubic_problem(8, random_target(8, 7));
    setup.noise = false;
    setup.t_end = 60e-9;
    TrialRunner r(setup, 11);
    auto& st = r.mutable_state();
    std::fill(st.phase_p.begin(), st.phase_p.end(), 0.0);
    std::fill(st.phase_m.begin(), st.phase_m.end(), 0.0);
    r.advance_to(60e-9);
    const auto spins = r.spins();
    for (int i = 0; i < 8; ++i) {
        CHECK(std::fabs(spins.circ[i]) < 1e-12);
        CHECK(std::fabs(spins.diag[i]) < 1e-12);
    }
}

TEST_CASE("noise factor zero equals noise disabled, bit for bit") {
    auto setup = flat_setup(8, 2e17, 0.01, 0.02, 2.4e3);
    setup.problem = build_cubic_problem(8, random_target(8, 9));
    setup.t_end = 20e-9;

    auto on = setup;
    on.noise = true;
    on.phys.noise_factor = 0.0;
    TrialRunner a(on, 77);

    auto off = setup;
    off.noise = false;
    TrialRunner b(off, 77);

    a.advance_to(20e-9);
    b.advance_to(20e-9);
    CHECK(a.state().amp_p == b.state().amp_p);
    CHECK(a.state().phase_p == b.state().phase_p);
    CHECK(a.state().amp_m == b.state().amp_m);
    CHECK(a.state().phase_m == b.state().phase_m);
    CHECK(a.state().carriers == b.state().carriers);
}

TEST_CASE("spontaneous noise sustains the below-threshold photon field") {
    // Below threshold the mean photon number per mode settles at
    // E/(loss - E): emission events add one photon each at rate E while the
    // net field decay removes them at rate (loss - E).  This pins both the
    // Poisson event rate and the unit-phasor addition.
    const double pump = 0.5e17;  // E = 0.5 * loss
    auto setup = flat_setup(16, pump, 0.0, 0.0, 0.0);
    setup.noise = true;
    setup.t_end = 40e-9;
    TrialRunner r(setup, 13);
    r.advance_to(10e-9);  // settle carriers and the photon statistics

    const double e_cv = setup.phys.beta_sp * pump * setup.phys.tau_sp / setup.phys.tau_sp;
    const double want = e_cv / (setup.phys.loss_rate - e_cv);  // = 1.0 here

    double acc = 0.0;
    int n_samples = 0;
    while (r.state().t < 40e-9 - 1e-12) {
        r.advance_to(r.state().t + 0.1e-9);
        for (int i = 0; i < 16; ++i) {
            acc += r.state().amp_p[i] * r.state().amp_p[i];
            acc += r.state().amp_m[i] * r.state().amp_m[i];
            n_samples += 2;
        }
    }
    const double mean_n = acc / n_samples;
    // ~10^4 correlation times of data; the mean has a few-percent spread
    CHECK(mean_n == doctest::Approx(want).epsilon(0.10));
}

TEST_CASE("rk4 self-convergence is fourth order") {
    // Smooth noise-free segment measured mid-transient.  The endpoint must
    // be taken before the trajectory settles onto the locked fixed point:
    // the attractor contracts integration error away and all step sizes
    // would then agree to rounding.  Halving dt must shrink the endpoint
    // error ~16x.
    auto make = [](double dt_ps) {
        auto setup = flat_setup(4, 2e17, 0.015, 0.02, 2.4e3);
        setup.noise = false;
        setup.phys.dt = dt_ps * 1e-12;
        setup.t_end = 2e-9;
        return setup;
    };
    auto endpoint = [](const TrialSetup& setup) {
        TrialRunner r(setup, 3);
        auto& st = r.mutable_state();
        for (int i = 0; i < 4; ++i) {
            st.amp_p[i] = 600.0 + 20.0 * i;
            st.amp_m[i] = 580.0 - 10.0 * i;
            st.phase_p[i] = 0.05 * (i + 1);
            st.phase_m[i] = -0.04 * (i + 1);
            st.carriers[i] = 0.9e8;
        }
        r.advance_to(0.3e-9);
        return r.state();
    };

    const auto ref = endpoint(make(0.125));  // dt/16 reference
    auto err = [&](const LaserNetworkState& st) {
        double e = 0.0;
        for (int i = 0; i < 4; ++i) {
            e = std::max(e, std::fabs(st.amp_p[i] - ref.amp_p[i]) / ref.amp_p[i]);
            e = std::max(e, std::fabs(st.amp_m[i] - ref.amp_m[i]) / ref.amp_m[i]);
            e = std::max(e, std::fabs(st.carriers[i] - ref.carriers[i]) / ref.carriers[i]);
        }
        return e;
    };

    const double e1 = err(endpoint(make(2.0)));
    const double e2 = err(endpoint(make(1.0)));
    const double e3 = err(endpoint(make(0.5)));
    CHECK(e1 / e2 > 10.0);
    CHECK(e1 / e2 < 24.0);
    CHECK(e2 / e3 > 10.0);
    CHECK(e2 / e3 < 24.0);
}

TEST_CASE("gc with t_p = 0 and abrupt give identical trials at equal seeds") {
    TrialSetup gc;
    gc.problem = build_cubic_problem(8, random_target(8, 15));
    gc.sched.scheme = Scheme::GradualCoupling;
    gc.sched.t_mid = 5e-9;
    gc.sched.t_p = 0.0;
    gc.sched.alpha_mid = 0.0;
    gc.t_end = 40e-9;

    TrialSetup ab = gc;
    ab.sched.scheme = Scheme::AbruptCoupling;

    TrialRunner a(gc, 21), b(ab, 21);
    const auto ra = a.run();
    const auto rb = b.run();
    CHECK(ra.success == rb.success);
    CHECK(ra.comp_time == rb.comp_time);
    CHECK(ra.final_sigma_circ == rb.final_sigma_circ);
    CHECK(ra.final_sigma_diag == rb.final_sigma_diag);
    CHECK(a.state().amp_p == b.state().amp_p);
    CHECK(a.state().phase_p == b.state().phase_p);
}

TEST_CASE("amplitude floor and carrier positivity hold along a noisy run") {
    auto setup = flat_setup(8, 3e17, 0.02, 0.02, 2.4e3);
    setup.problem = build_cubic_problem(8, random_target(8, 19));
    setup.t_end = 30e-9;
    TrialRunner r(setup, 23);
    for (int step = 0; step < 30000; ++step) {
        r.step_one();
        if (step % 500 != 0) continue;
        for (int i = 0; i < 8; ++i) {
            CHECK(r.state().amp_p[i] >= setup.phys.amp_floor);
            CHECK(r.state().amp_m[i] >= setup.phys.amp_floor);
            CHECK(r.state().carriers[i] >= 0.0);
            CHECK(r.state().phase_p[i] >= -3.1415926535897932);
            CHECK(r.state().phase_p[i] <= 3.1415926535897932);
        }
    }
}

TEST_CASE("a default-style gp trial on m=4 solves the instance") {
    TrialSetup setup;
    setup.problem = build_cubic_problem(4, random_target(4, 25));
    setup.sched.scheme = Scheme::GradualPump;
    setup.sched.t_mid = 10e-9;
    setup.sched.t_p = 200e-9;  // shortened ramp keeps the unit suite fast
    setup.t_end = 260e-9;
    TrialRunner r(setup, 29);
    const auto res = r.run();
    CHECK(!res.numeric_fault);
    CHECK(res.success);
    REQUIRE(res.comp_time.has_value());
    CHECK(*res.comp_time > setup.sched.t_mid);
    CHECK(*res.comp_time <= setup.t_end);
    REQUIRE(res.bifurcation_time.has_value());
    CHECK(*res.bifurcation_time <= *res.comp_time);
}

TEST_CASE("trajectory stream has the documented shape") {
    TrialSetup setup;
    setup.problem = build_cubic_problem(4, SpinVector(4, 1));
    setup.sched.t_mid = 2e-9;
    setup.sched.t_p = 10e-9;
    setup.t_end = 20e-9;
    setup.readout.sample_interval = 1e-9;
    TrialRunner r(setup, 31);
    std::ostringstream out;
    (void)r.run(&out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "t_ns,sigma_1,sigma_2,sigma_3,sigma_4,mean_nc");
    int rows = 0;
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        CHECK(std::count(line.begin(), line.end(), ',') == 5);
        ++rows;
    }
    CHECK(rows == 20);  // one per nanosecond sample
}

TEST_CASE("setup validation rejects inconsistent trials") {
    TrialSetup setup;
    setup.problem = build_cubic_problem(4, SpinVector(4, 1));
    setup.sched.t_mid = 10e-9;
    setup.sched.t_p = 100e-9;
    setup.t_end = 50e-9;  // shorter than the schedule
    CHECK_THROWS_AS(TrialRunner(setup, 1), std::invalid_argument);

    setup.t_end = 200e-9;
    setup.readout.sample_interval = 0.5e-12;  // finer than dt
    CHECK_THROWS_AS(TrialRunner(setup, 1), std::invalid_argument);
}
