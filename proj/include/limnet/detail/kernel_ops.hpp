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

#include <cmath>

#include "limnet/fastmath.hpp"
#include "limnet/kernels.hpp"

// Per-element integrator arithmetic, written as one explicit rounding
// sequence per quantity.  The scalar kernel runs these for every lane; the
// AVX2 kernel mirrors each std::fma / multiply / max with the corresponding
// packed instruction and uses these same functions for the ragged tail when
// m is not a multiple of 4.  Keep the two in lockstep: the kernel
// equivalence tests require bit-identical trajectories.

namespace limnet {
namespace detail {

inline double clamp_floor(double x, double floor_v) {
    // max with NaN propagation matching _mm256_max_pd(x, floor): NaN -> floor
    return x > floor_v ? x : floor_v;
}

// Signed mode differences for one laser: u + i*v = E_p - E_m.
inline void elem_uv(double ap, double cp, double sp, double am, double cm, double sm,
                    double* u, double* v) {
    *u = std::fma(ap, cp, -(am * cm));
    *v = std::fma(ap, sp, -(am * sm));
}

// Drift of one laser given its trig values and the coupling sums of the
// u/v arrays (su_raw/sv_raw are the raw +-1-weighted neighbor sums).
//
// Field equations per mode X in {p, m} with phase psi_X relative to the
// injected master field (photon-amplitude units):
//   dA_X  = -((loss - gain)/2) A_X + loss*zeta*A_master*cos(psi_X)
//           -(loss/2) * [coupling bracket]
//   dpsi_X = (loss / max(A_X, floor)) *
//            ( -zeta*A_master*sin(psi_X) - (1/2)*[phase bracket] )
// where the brackets decompose over cos/sin of psi_X against the coupled
// sums SU = alpha*su_raw, SV = alpha*sv_raw, with opposite sign for the two
// modes (the mutual injection couples the p-m difference only).
// Carriers: dn = pump - n/tau - gain * (A_p^2 + A_m^2), gain = beta*n/tau.
inline void elem_drift(double ap, double cp, double sp, double am, double cm, double sm,
                       double nc, double su_raw, double sv_raw, double alpha, double pump,
                       const StepParams& par, double* d_ap, double* d_pp, double* d_am,
                       double* d_pm, double* d_nc) {
    const double half_loss = 0.5 * par.loss;
    const double master = par.loss * par.zeta_master;

    const double su = alpha * su_raw;
    const double sv = alpha * sv_raw;
    const double e = par.gain_per_carrier * nc;
    const double diff = par.loss - e;
    const double g = -0.5 * diff;

    // mode p
    {
        const double bra = std::fma(cp, su, sp * sv);
        const double tmp = std::fma(-half_loss, bra, master * cp);
        *d_ap = std::fma(g, ap, tmp);
        const double afl = clamp_floor(ap, par.amp_floor);
        const double pbra = std::fma(cp, sv, -(sp * su));
        const double tph = std::fma(-0.5, pbra, -(par.zeta_master * sp));
        *d_pp = par.loss * (tph / afl);
    }
    // mode m: mutual-injection bracket enters with opposite sign
    {
        const double bra = std::fma(cm, su, sm * sv);
        const double tmp = std::fma(half_loss, bra, master * cm);
        *d_am = std::fma(g, am, tmp);
        const double afl = clamp_floor(am, par.amp_floor);
        const double pbra = std::fma(cm, sv, -(sm * su));
        const double tph = std::fma(0.5, pbra, -(par.zeta_master * sm));
        *d_pm = par.loss * (tph / afl);
    }
    // carriers
    {
        const double nt = std::fma(ap, ap, am * am);
        const double dep = std::fma(e, nt, par.inv_tau * nc);
        *d_nc = pump - dep;
    }
}

// Raw neighbor sum over the ring-plus-chords table; ext points at the
// duplicated array so indices i+m-1, i+1, i+m/2 never wrap.
inline double elem_neighbor_sum(const double* ext, int i, int m, double jp, double jn,
                                double jc) {
    const int half = m / 2;
    return std::fma(jp, ext[i + m - 1], std::fma(jn, ext[i + 1], jc * ext[i + half]));
}

// RK4 stage state y = y0 + c*k.
inline double elem_stage(double y0, double c, double k) { return std::fma(c, k, y0); }

// RK4 combine y = y0 + (dt/6)*(k1 + 2*(k2 + k3) + k4).
inline double elem_combine(double y0, double dt6, double k1, double k2, double k3,
                           double k4) {
    const double t = k2 + k3;
    const double u = std::fma(2.0, t, k1);
    const double w = u + k4;
    return std::fma(dt6, w, y0);
}

inline double elem_wrap_phase(double phi) { return fastmath::wrap_phase(phi); }

}  // namespace detail
}  // namespace limnet
