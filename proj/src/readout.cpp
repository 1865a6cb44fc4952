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

#include "limnet/readout.hpp"

#include <cmath>
#include <stdexcept>

namespace limnet {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

void ReadoutConfig::validate() const {
    if (!(sigma_threshold > 0.0 && sigma_threshold < 1.0))
        throw std::invalid_argument("sigma_threshold must be in (0, 1)");
    if (!(sample_interval > 0.0))
        throw std::invalid_argument("sample_interval must be positive");
}

CircularAmps to_circular(double amp_p, double phase_p, double amp_m, double phase_m) {
    const double re_p = amp_p * std::cos(phase_p);
    const double im_p = amp_p * std::sin(phase_p);
    const double re_m = amp_m * std::cos(phase_m);
    const double im_m = amp_m * std::sin(phase_m);
    // i*E_m rotates (re_m, im_m) to (-im_m, re_m)
    const double rr = (re_p - im_m) * kInvSqrt2;
    const double ri = (im_p + re_m) * kInvSqrt2;
    const double lr = (re_p + im_m) * kInvSqrt2;
    const double li = (im_p - re_m) * kInvSqrt2;
    CircularAmps out;
    out.amp_r = std::sqrt(rr * rr + ri * ri);
    out.amp_l = std::sqrt(lr * lr + li * li);
    return out;
}

SpinReadout collective_spins(const LaserNetworkState& st) {
    SpinReadout out;
    out.circ.resize(st.m);
    out.diag.resize(st.m);
    for (int i = 0; i < st.m; ++i) {
        const double ap = st.amp_p[i];
        const double am = st.amp_m[i];
        const double nt = ap * ap + am * am;
        if (!(nt > 0.0))
            throw std::runtime_error("collective spin undefined: laser " + std::to_string(i) +
                                     " has zero photon number");
        const CircularAmps ca = to_circular(ap, st.phase_p[i], am, st.phase_m[i]);
        out.circ[i] = (ca.amp_r - ca.amp_l) /
                      std::sqrt(ca.amp_r * ca.amp_r + ca.amp_l * ca.amp_l);
        out.diag[i] = (ap - am) / std::sqrt(nt);
    }
    return out;
}

BasisDecision decide(const std::vector<double>& sigma, const SpinVector& target,
                     double threshold) {
    if (sigma.size() != target.size())
        throw std::invalid_argument("sigma/target length mismatch");
    BasisDecision d;
    bool all_pos = true;   // sign(sigma_i) == target_i everywhere
    bool all_neg = true;   // sign(sigma_i) == -target_i everywhere
    bool above = true;
    for (size_t i = 0; i < sigma.size(); ++i) {
        const int s = sigma[i] >= 0.0 ? 1 : -1;
        if (s != target[i]) all_pos = false;
        if (s != -target[i]) all_neg = false;
        if (std::fabs(sigma[i]) < threshold) above = false;
    }
    d.matched = all_pos || all_neg;
    d.all_above = above;
    return d;
}

double gain_sum_residual(const LaserNetworkState& st, const IsingProblem& p,
                         const PhysicsConfig& phys, double alpha, double zeta,
                         double master_amp) {
    const int m = st.m;
    const double w = phys.loss_rate;

    // Per-laser complex mode difference h = E_p - E_m and photon number.
    std::vector<double> hu(m), hv(m), nt(m), cos_p(m), cos_m(m);
    for (int i = 0; i < m; ++i) {
        cos_p[i] = std::cos(st.phase_p[i]);
        cos_m[i] = std::cos(st.phase_m[i]);
        const double sp = std::sin(st.phase_p[i]);
        const double sm = std::sin(st.phase_m[i]);
        hu[i] = st.amp_p[i] * cos_p[i] - st.amp_m[i] * cos_m[i];
        hv[i] = st.amp_p[i] * sp - st.amp_m[i] * sm;
        nt[i] = st.amp_p[i] * st.amp_p[i] + st.amp_m[i] * st.amp_m[i];
    }

    double sum_e = 0.0, master_sum = 0.0, coupling_sum = 0.0;
    for (int i = 0; i < m; ++i) {
        sum_e += phys.gain_coefficient(st.carriers[i]);
        master_sum += 2.0 * w * zeta * master_amp *
                      (st.amp_p[i] * cos_p[i] + st.amp_m[i] * cos_m[i]) / nt[i];
    }
    for (const auto& ed : p.edges) {
        const double re_hh = hu[ed.a] * hu[ed.b] + hv[ed.a] * hv[ed.b];
        // each edge contributes to the balance of both endpoints
        coupling_sum += w * alpha * ed.j * re_hh * (1.0 / nt[ed.a] + 1.0 / nt[ed.b]);
    }
    return sum_e - (m * w - master_sum + coupling_sum);
}

double predicted_growth_rate(double e_cv, double alpha, const PhysicsConfig& phys) {
    return 0.5 * (e_cv - phys.loss_rate) + 3.0 * alpha * phys.loss_rate;
}

}  // namespace limnet
