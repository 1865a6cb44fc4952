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

#include "limnet/detail/kernel_ops.hpp"
#include "limnet/kernels.hpp"

namespace limnet {

void drift_scalar(int m, const double* ap, const double* pp, const double* am,
                  const double* pm, const double* nc, const CouplingTable& tab,
                  const StepParams& par, DrivePair drive, double* d_ap, double* d_pp,
                  double* d_am, double* d_pm, double* d_nc, KernelWorkspace& ws) {
    double* cp = ws.cos_p.data();
    double* sp = ws.sin_p.data();
    double* cm = ws.cos_m.data();
    double* sm = ws.sin_m.data();
    double* u = ws.u_ext.data();
    double* v = ws.v_ext.data();

    for (int i = 0; i < m; ++i) {
        fastmath::sincos_pair(pp[i], &sp[i], &cp[i]);
        fastmath::sincos_pair(pm[i], &sm[i], &cm[i]);
    }
    for (int i = 0; i < m; ++i) {
        detail::elem_uv(ap[i], cp[i], sp[i], am[i], cm[i], sm[i], &u[i], &v[i]);
        u[i + m] = u[i];
        v[i + m] = v[i];
    }
    for (int i = 0; i < m; ++i) {
        const double su_raw =
            detail::elem_neighbor_sum(u, i, m, tab.j_prev[i], tab.j_next[i], tab.j_chord[i]);
        const double sv_raw =
            detail::elem_neighbor_sum(v, i, m, tab.j_prev[i], tab.j_next[i], tab.j_chord[i]);
        detail::elem_drift(ap[i], cp[i], sp[i], am[i], cm[i], sm[i], nc[i], su_raw, sv_raw,
                           drive.alpha, drive.pump, par, &d_ap[i], &d_pp[i], &d_am[i],
                           &d_pm[i], &d_nc[i]);
    }
}

namespace {

// Gathers the five state blocks as raw pointers in a fixed order.
struct Blocks {
    double* b[5];
};

Blocks state_blocks(LaserNetworkState& st) {
    return {{st.amp_p.data(), st.phase_p.data(), st.amp_m.data(), st.phase_m.data(),
             st.carriers.data()}};
}

Blocks ws_blocks(std::vector<double> (&arr)[5]) {
    return {{arr[0].data(), arr[1].data(), arr[2].data(), arr[3].data(), arr[4].data()}};
}

}  // namespace

void step_rk4_scalar(LaserNetworkState& st, const CouplingTable& tab, const StepParams& par,
                     const DrivePair drives[3], KernelWorkspace& ws) {
    const int m = st.m;
    Blocks y0 = state_blocks(st);
    Blocks ys = ws_blocks(ws.y);
    Blocks k1 = ws_blocks(ws.k[0]);
    Blocks k2 = ws_blocks(ws.k[1]);
    Blocks k3 = ws_blocks(ws.k[2]);
    Blocks k4 = ws_blocks(ws.k[3]);

    auto drift = [&](const Blocks& in, const Blocks& out, DrivePair d) {
        drift_scalar(m, in.b[0], in.b[1], in.b[2], in.b[3], in.b[4], tab, par, d, out.b[0],
                     out.b[1], out.b[2], out.b[3], out.b[4], ws);
    };
    auto stage = [&](const Blocks& k, double c) {
        for (int blk = 0; blk < 5; ++blk)
            for (int i = 0; i < m; ++i)
                ys.b[blk][i] = detail::elem_stage(y0.b[blk][i], c, k.b[blk][i]);
    };

    const double half_dt = 0.5 * par.dt;
    drift(y0, k1, drives[0]);
    stage(k1, half_dt);
    drift(ys, k2, drives[1]);
    stage(k2, half_dt);
    drift(ys, k3, drives[1]);
    stage(k3, par.dt);
    drift(ys, k4, drives[2]);

    const double dt6 = par.dt / 6.0;
    for (int blk = 0; blk < 5; ++blk)
        for (int i = 0; i < m; ++i)
            y0.b[blk][i] = detail::elem_combine(y0.b[blk][i], dt6, k1.b[blk][i],
                                                k2.b[blk][i], k3.b[blk][i], k4.b[blk][i]);

    for (int i = 0; i < m; ++i) {
        st.amp_p[i] = detail::clamp_floor(st.amp_p[i], par.amp_floor);
        st.amp_m[i] = detail::clamp_floor(st.amp_m[i], par.amp_floor);
        st.carriers[i] = detail::clamp_floor(st.carriers[i], 0.0);
        st.phase_p[i] = detail::elem_wrap_phase(st.phase_p[i]);
        st.phase_m[i] = detail::elem_wrap_phase(st.phase_m[i]);
    }
}

}  // namespace limnet
