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
#include <cstdint>

// Branch-free sin/cos evaluated with one fixed rounding sequence.  libm's
// sin/cos are correctly rounded on one platform but not reproducible across
// libms, and the vector kernel needs the exact same bit pattern as the scalar
// kernel.  Scheme: round x/(pi/2) to nearest even, reduce with a three-part
// Cody-Waite pi/2 (argument magnitudes here stay below ~1e4, far inside the
// range where q*pio2 parts are exact), evaluate the fdlibm minimax
// polynomials on |r| <= pi/4 + eps, then swap/negate by quadrant.

namespace limnet {
namespace fastmath {

// pi/2 split into three parts; leading parts carry 33 significant bits each
// so products with the integer quotient round exactly for |q| < 2^20.
inline constexpr double kPio2Hi = 1.57079632673412561417e+00;
inline constexpr double kPio2Mid = 6.07710050630396597660e-11;
inline constexpr double kPio2Lo = 2.02226624879595063154e-21;
inline constexpr double kTwoOverPi = 6.36619772367581382433e-01;

// sin(r) ~ r + r^3 * S(r^2) on |r| <= pi/4 (fdlibm kernel coefficients).
inline constexpr double kS1 = -1.66666666666666324348e-01;
inline constexpr double kS2 = 8.33333333332248946124e-03;
inline constexpr double kS3 = -1.98412698298579493134e-04;
inline constexpr double kS4 = 2.75573137070700676789e-06;
inline constexpr double kS5 = -2.50507602534068634195e-08;
inline constexpr double kS6 = 1.58969099521155010221e-10;

// cos(r) ~ 1 - r^2/2 + r^4 * C(r^2) on |r| <= pi/4.
inline constexpr double kC1 = 4.16666666666666019037e-02;
inline constexpr double kC2 = -1.38888888888741095749e-03;
inline constexpr double kC3 = 2.48015872894767294178e-05;
inline constexpr double kC4 = -2.75573143513906633035e-07;
inline constexpr double kC5 = 2.08757232129817482790e-09;
inline constexpr double kC6 = -1.13596475577881948265e-11;

// 2*pi split for phase wrapping, same 33-bit leading-part convention.
inline constexpr double kTwoPiHi = 6.28318530693650245667e+00;
inline constexpr double kTwoPiMid = 2.43084020252158639064e-10;
inline constexpr double kTwoPiLo = 8.08906499518380252616e-21;
inline constexpr double kInvTwoPi = 1.59154943091895335769e-01;

inline double poly_sin(double r, double z) {
    double p = kS6;
    p = std::fma(p, z, kS5);
    p = std::fma(p, z, kS4);
    p = std::fma(p, z, kS3);
    p = std::fma(p, z, kS2);
    p = std::fma(p, z, kS1);
    return std::fma(r * z, p, r);
}

inline double poly_cos(double z) {
    double p = kC6;
    p = std::fma(p, z, kC5);
    p = std::fma(p, z, kC4);
    p = std::fma(p, z, kC3);
    p = std::fma(p, z, kC2);
    p = std::fma(p, z, kC1);
    double zz = z * z;
    return std::fma(zz, p, std::fma(-0.5, z, 1.0));
}

// Simultaneous sin/cos.  The AVX2 kernel mirrors this sequence operation for
// operation (vroundpd / vfmadd / lane selects); any edit here must be made
// there as well or the kernel equivalence tests will fail.
inline void sincos_pair(double x, double* s_out, double* c_out) {
    double q = std::nearbyint(x * kTwoOverPi);
    double r = std::fma(q, -kPio2Hi, x);
    r = std::fma(q, -kPio2Mid, r);
    r = std::fma(q, -kPio2Lo, r);
    double z = r * r;
    double s = poly_sin(r, z);
    double c = poly_cos(z);
    std::int64_t n = static_cast<std::int64_t>(q);
    double sv = (n & 1) ? c : s;
    double cv = (n & 1) ? s : c;
    *s_out = (n & 2) ? -sv : sv;
    // cos sign flips on quadrants 1 and 2.
    *c_out = ((n + 1) & 2) ? -cv : cv;
}

// Wraps a phase to [-pi, pi] using the same split-constant reduction in both
// kernels.  Exact wrap of multiples of 2*pi is not required, reproducibility is.
inline double wrap_phase(double phi) {
    double q = std::nearbyint(phi * kInvTwoPi);
    double r = std::fma(q, -kTwoPiHi, phi);
    r = std::fma(q, -kTwoPiMid, r);
    return std::fma(q, -kTwoPiLo, r);
}

}  // namespace fastmath
}  // namespace limnet
