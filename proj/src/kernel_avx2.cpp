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

// AVX2+FMA variant of the RK4 step.  Every packed operation corresponds 1:1
// to a rounding step in detail::elem_* (see kernel_ops.hpp); lanes past the
// last full vector fall through to those scalar helpers.  This file is the
// only one compiled with -mavx2 -mfma.

#include <immintrin.h>

#include "limnet/detail/kernel_ops.hpp"
#include "limnet/kernels.hpp"

namespace limnet {

namespace {

using fastmath::kC1;
using fastmath::kC2;
using fastmath::kC3;
using fastmath::kC4;
using fastmath::kC5;
using fastmath::kC6;
using fastmath::kS1;
using fastmath::kS2;
using fastmath::kS3;
using fastmath::kS4;
using fastmath::kS5;
using fastmath::kS6;

inline __m256d vset(double x) { return _mm256_set1_pd(x); }

// Mirrors fastmath::sincos_pair lane-wise.
inline void sincos4(__m256d x, __m256d* s_out, __m256d* c_out) {
    const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, vset(fastmath::kTwoOverPi)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(q, vset(fastmath::kPio2Hi), x);
    r = _mm256_fnmadd_pd(q, vset(fastmath::kPio2Mid), r);
    r = _mm256_fnmadd_pd(q, vset(fastmath::kPio2Lo), r);
    const __m256d z = _mm256_mul_pd(r, r);

    __m256d ps = vset(kS6);
    ps = _mm256_fmadd_pd(ps, z, vset(kS5));
    ps = _mm256_fmadd_pd(ps, z, vset(kS4));
    ps = _mm256_fmadd_pd(ps, z, vset(kS3));
    ps = _mm256_fmadd_pd(ps, z, vset(kS2));
    ps = _mm256_fmadd_pd(ps, z, vset(kS1));
    const __m256d s = _mm256_fmadd_pd(_mm256_mul_pd(r, z), ps, r);

    __m256d pc = vset(kC6);
    pc = _mm256_fmadd_pd(pc, z, vset(kC5));
    pc = _mm256_fmadd_pd(pc, z, vset(kC4));
    pc = _mm256_fmadd_pd(pc, z, vset(kC3));
    pc = _mm256_fmadd_pd(pc, z, vset(kC2));
    pc = _mm256_fmadd_pd(pc, z, vset(kC1));
    const __m256d zz = _mm256_mul_pd(z, z);
    const __m256d c =
        _mm256_fmadd_pd(zz, pc, _mm256_fmadd_pd(vset(-0.5), z, vset(1.0)));

    // Quadrant logic on n = (int)q: bit0 swaps sin/cos, bit1 negates sin,
    // bit1 of n+1 negates cos.  blendv keys off the sign bit, so shifting
    // the relevant bit up to position 63 builds the masks directly.
    const __m128i n32 = _mm256_cvtpd_epi32(q);
    const __m256i n = _mm256_cvtepi32_epi64(n32);
    const __m256d signb = vset(-0.0);
    const __m256d swap_m = _mm256_castsi256_pd(_mm256_slli_epi64(n, 63));
    const __m256d negs_m =
        _mm256_and_pd(_mm256_castsi256_pd(_mm256_slli_epi64(n, 62)), signb);
    const __m256d negc_m = _mm256_and_pd(
        _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(n, _mm256_set1_epi64x(1)), 62)),
        signb);

    const __m256d sv = _mm256_blendv_pd(s, c, swap_m);
    const __m256d cv = _mm256_blendv_pd(c, s, swap_m);
    *s_out = _mm256_xor_pd(sv, negs_m);
    *c_out = _mm256_xor_pd(cv, negc_m);
}

inline __m256d wrap4(__m256d phi) {
    const __m256d q = _mm256_round_pd(_mm256_mul_pd(phi, vset(fastmath::kInvTwoPi)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(q, vset(fastmath::kTwoPiHi), phi);
    r = _mm256_fnmadd_pd(q, vset(fastmath::kTwoPiMid), r);
    return _mm256_fnmadd_pd(q, vset(fastmath::kTwoPiLo), r);
}

void drift_avx2(int m, const double* ap, const double* pp, const double* am,
                const double* pm, const double* nc, const CouplingTable& tab,
                const StepParams& par, DrivePair drive, double* d_ap, double* d_pp,
                double* d_am, double* d_pm, double* d_nc, KernelWorkspace& ws) {
    double* cp = ws.cos_p.data();
    double* sp = ws.sin_p.data();
    double* cm = ws.cos_m.data();
    double* sm = ws.sin_m.data();
    double* u = ws.u_ext.data();
    double* v = ws.v_ext.data();

    const int m4 = m & ~3;
    const int half = m / 2;

    for (int i = 0; i < m4; i += 4) {
        __m256d s, c;
        sincos4(_mm256_loadu_pd(pp + i), &s, &c);
        _mm256_storeu_pd(sp + i, s);
        _mm256_storeu_pd(cp + i, c);
        sincos4(_mm256_loadu_pd(pm + i), &s, &c);
        _mm256_storeu_pd(sm + i, s);
        _mm256_storeu_pd(cm + i, c);
    }
    for (int i = m4; i < m; ++i) {
        fastmath::sincos_pair(pp[i], &sp[i], &cp[i]);
        fastmath::sincos_pair(pm[i], &sm[i], &cm[i]);
    }

    for (int i = 0; i < m4; i += 4) {
        const __m256d vap = _mm256_loadu_pd(ap + i);
        const __m256d vam = _mm256_loadu_pd(am + i);
        const __m256d uu = _mm256_fmsub_pd(vap, _mm256_loadu_pd(cp + i),
                                           _mm256_mul_pd(vam, _mm256_loadu_pd(cm + i)));
        const __m256d vv = _mm256_fmsub_pd(vap, _mm256_loadu_pd(sp + i),
                                           _mm256_mul_pd(vam, _mm256_loadu_pd(sm + i)));
        _mm256_storeu_pd(u + i, uu);
        _mm256_storeu_pd(u + i + m, uu);
        _mm256_storeu_pd(v + i, vv);
        _mm256_storeu_pd(v + i + m, vv);
    }
    for (int i = m4; i < m; ++i) {
        detail::elem_uv(ap[i], cp[i], sp[i], am[i], cm[i], sm[i], &u[i], &v[i]);
        u[i + m] = u[i];
        v[i + m] = v[i];
    }

    const __m256d vloss = vset(par.loss);
    const __m256d vhalf_loss = vset(0.5 * par.loss);
    const __m256d vneg_half_loss = vset(-(0.5 * par.loss));
    const __m256d vmaster = vset(par.loss * par.zeta_master);
    const __m256d vzeta = vset(par.zeta_master);
    const __m256d valpha = vset(drive.alpha);
    const __m256d vpump = vset(drive.pump);
    const __m256d vgainc = vset(par.gain_per_carrier);
    const __m256d vinv_tau = vset(par.inv_tau);
    const __m256d vfloor = vset(par.amp_floor);
    const __m256d vneg_half = vset(-0.5);
    const __m256d vposhalf = vset(0.5);
    const __m256d vsignb = vset(-0.0);

    for (int i = 0; i < m4; i += 4) {
        const __m256d jp = _mm256_loadu_pd(tab.j_prev.data() + i);
        const __m256d jn = _mm256_loadu_pd(tab.j_next.data() + i);
        const __m256d jc = _mm256_loadu_pd(tab.j_chord.data() + i);

        const __m256d su_raw = _mm256_fmadd_pd(
            jp, _mm256_loadu_pd(u + i + m - 1),
            _mm256_fmadd_pd(jn, _mm256_loadu_pd(u + i + 1),
                            _mm256_mul_pd(jc, _mm256_loadu_pd(u + i + half))));
        const __m256d sv_raw = _mm256_fmadd_pd(
            jp, _mm256_loadu_pd(v + i + m - 1),
            _mm256_fmadd_pd(jn, _mm256_loadu_pd(v + i + 1),
                            _mm256_mul_pd(jc, _mm256_loadu_pd(v + i + half))));

        const __m256d su = _mm256_mul_pd(valpha, su_raw);
        const __m256d sv = _mm256_mul_pd(valpha, sv_raw);
        const __m256d vnc = _mm256_loadu_pd(nc + i);
        const __m256d e = _mm256_mul_pd(vgainc, vnc);
        const __m256d diff = _mm256_sub_pd(vloss, e);
        const __m256d g = _mm256_mul_pd(vneg_half, diff);

        const __m256d vap = _mm256_loadu_pd(ap + i);
        const __m256d vcp = _mm256_loadu_pd(cp + i);
        const __m256d vsp = _mm256_loadu_pd(sp + i);
        {
            const __m256d bra = _mm256_fmadd_pd(vcp, su, _mm256_mul_pd(vsp, sv));
            const __m256d tmp =
                _mm256_fmadd_pd(vneg_half_loss, bra, _mm256_mul_pd(vmaster, vcp));
            _mm256_storeu_pd(d_ap + i, _mm256_fmadd_pd(g, vap, tmp));
            const __m256d afl = _mm256_max_pd(vap, vfloor);
            const __m256d pbra = _mm256_fmsub_pd(vcp, sv, _mm256_mul_pd(vsp, su));
            // xor with the sign bit is bitwise negation, matching scalar -(x)
            const __m256d tph = _mm256_fnmadd_pd(
                vposhalf, pbra, _mm256_xor_pd(_mm256_mul_pd(vzeta, vsp), vsignb));
            _mm256_storeu_pd(d_pp + i, _mm256_mul_pd(vloss, _mm256_div_pd(tph, afl)));
        }
        const __m256d vam = _mm256_loadu_pd(am + i);
        const __m256d vcm = _mm256_loadu_pd(cm + i);
        const __m256d vsm = _mm256_loadu_pd(sm + i);
        {
            const __m256d bra = _mm256_fmadd_pd(vcm, su, _mm256_mul_pd(vsm, sv));
            const __m256d tmp =
                _mm256_fmadd_pd(vhalf_loss, bra, _mm256_mul_pd(vmaster, vcm));
            _mm256_storeu_pd(d_am + i, _mm256_fmadd_pd(g, vam, tmp));
            const __m256d afl = _mm256_max_pd(vam, vfloor);
            const __m256d pbra = _mm256_fmsub_pd(vcm, sv, _mm256_mul_pd(vsm, su));
            const __m256d tph = _mm256_fmadd_pd(
                vposhalf, pbra, _mm256_xor_pd(_mm256_mul_pd(vzeta, vsm), vsignb));
            _mm256_storeu_pd(d_pm + i, _mm256_mul_pd(vloss, _mm256_div_pd(tph, afl)));
        }
        {
            const __m256d nt = _mm256_fmadd_pd(vap, vap, _mm256_mul_pd(vam, vam));
            const __m256d dep = _mm256_fmadd_pd(e, nt, _mm256_mul_pd(vinv_tau, vnc));
            _mm256_storeu_pd(d_nc + i, _mm256_sub_pd(vpump, dep));
        }
    }

    for (int i = m4; i < m; ++i) {
        const double su_raw =
            detail::elem_neighbor_sum(u, i, m, tab.j_prev[i], tab.j_next[i], tab.j_chord[i]);
        const double sv_raw =
            detail::elem_neighbor_sum(v, i, m, tab.j_prev[i], tab.j_next[i], tab.j_chord[i]);
        detail::elem_drift(ap[i], cp[i], sp[i], am[i], cm[i], sm[i], nc[i], su_raw, sv_raw,
                           drive.alpha, drive.pump, par, &d_ap[i], &d_pp[i], &d_am[i],
                           &d_pm[i], &d_nc[i]);
    }
}

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

void step_rk4_avx2(LaserNetworkState& st, const CouplingTable& tab, const StepParams& par,
                   const DrivePair drives[3], KernelWorkspace& ws) {
    const int m = st.m;
    const int m4 = m & ~3;
    Blocks y0 = state_blocks(st);
    Blocks ys = ws_blocks(ws.y);
    Blocks k1 = ws_blocks(ws.k[0]);
    Blocks k2 = ws_blocks(ws.k[1]);
    Blocks k3 = ws_blocks(ws.k[2]);
    Blocks k4 = ws_blocks(ws.k[3]);

    auto drift = [&](const Blocks& in, const Blocks& out, DrivePair d) {
        drift_avx2(m, in.b[0], in.b[1], in.b[2], in.b[3], in.b[4], tab, par, d, out.b[0],
                   out.b[1], out.b[2], out.b[3], out.b[4], ws);
    };
    auto stage = [&](const Blocks& k, double c) {
        const __m256d vc = vset(c);
        for (int blk = 0; blk < 5; ++blk) {
            const double* src = y0.b[blk];
            const double* kk = k.b[blk];
            double* dst = ys.b[blk];
            for (int i = 0; i < m4; i += 4)
                _mm256_storeu_pd(dst + i,
                                 _mm256_fmadd_pd(vc, _mm256_loadu_pd(kk + i),
                                                 _mm256_loadu_pd(src + i)));
            for (int i = m4; i < m; ++i) dst[i] = detail::elem_stage(src[i], c, kk[i]);
        }
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
    const __m256d vdt6 = vset(dt6);
    const __m256d vtwo = vset(2.0);
    for (int blk = 0; blk < 5; ++blk) {
        double* y = y0.b[blk];
        const double* a = k1.b[blk];
        const double* b = k2.b[blk];
        const double* c = k3.b[blk];
        const double* d = k4.b[blk];
        for (int i = 0; i < m4; i += 4) {
            const __m256d t = _mm256_add_pd(_mm256_loadu_pd(b + i), _mm256_loadu_pd(c + i));
            const __m256d u = _mm256_fmadd_pd(vtwo, t, _mm256_loadu_pd(a + i));
            const __m256d w = _mm256_add_pd(u, _mm256_loadu_pd(d + i));
            _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vdt6, w, _mm256_loadu_pd(y + i)));
        }
        for (int i = m4; i < m; ++i)
            y[i] = detail::elem_combine(y[i], dt6, a[i], b[i], c[i], d[i]);
    }

    const __m256d vfloor = vset(par.amp_floor);
    const __m256d vzero = _mm256_setzero_pd();
    for (int i = 0; i < m4; i += 4) {
        _mm256_storeu_pd(st.amp_p.data() + i,
                         _mm256_max_pd(_mm256_loadu_pd(st.amp_p.data() + i), vfloor));
        _mm256_storeu_pd(st.amp_m.data() + i,
                         _mm256_max_pd(_mm256_loadu_pd(st.amp_m.data() + i), vfloor));
        _mm256_storeu_pd(st.carriers.data() + i,
                         _mm256_max_pd(_mm256_loadu_pd(st.carriers.data() + i), vzero));
        _mm256_storeu_pd(st.phase_p.data() + i,
                         wrap4(_mm256_loadu_pd(st.phase_p.data() + i)));
        _mm256_storeu_pd(st.phase_m.data() + i,
                         wrap4(_mm256_loadu_pd(st.phase_m.data() + i)));
    }
    for (int i = m4; i < m; ++i) {
        st.amp_p[i] = detail::clamp_floor(st.amp_p[i], par.amp_floor);
        st.amp_m[i] = detail::clamp_floor(st.amp_m[i], par.amp_floor);
        st.carriers[i] = detail::clamp_floor(st.carriers[i], 0.0);
        st.phase_p[i] = detail::elem_wrap_phase(st.phase_p[i]);
        st.phase_m[i] = detail::elem_wrap_phase(st.phase_m[i]);
    }
}

}  // namespace limnet
