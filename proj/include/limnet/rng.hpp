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

// Self-contained RNG stack.  The standard <random> engines are portable but
// the distributions are not (libstdc++ and libc++ produce different streams),
// and sweep results here must be byte-reproducible from a seed alone.  So the
// generator, the uniform mapping and the Poisson sampler are all pinned down
// in this header.

namespace limnet {

// SplitMix64 (Steele/Lea/Flood).  Used for seed expansion and hashing only.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// Mixes an ordered tuple of integers into one 64-bit seed.  Feeding each
// word through the SplitMix64 transition keeps distinct tuples on distinct
// streams (trial seeds are hash(master, point, target, trial)).
inline std::uint64_t hash_seed(std::uint64_t a, std::uint64_t b = 0x243f6a8885a308d3ULL,
                               std::uint64_t c = 0x13198a2e03707344ULL,
                               std::uint64_t d = 0xa4093822299f31d0ULL) {
    SplitMix64 sm(a);
    std::uint64_t h = sm.next();
    sm.state = h ^ b;
    h = sm.next();
    sm.state = h ^ c;
    h = sm.next();
    sm.state = h ^ d;
    return sm.next();
}

// xoshiro256++ 1.0 (Blackman/Vigna), public-domain reference algorithm.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0,1) with 53 random bits: (x >> 11) * 2^-53.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform angle in [0, 2*pi).
    double uniform_angle() { return uniform01() * 6.283185307179586477; }

    // Random sign, +1 or -1.
    int sign() { return (next() >> 63) ? -1 : 1; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

// exp(-x) for x >= 0.  On [0,1) a truncated series (absolute error < 8e-13,
// plenty for sampling decisions) avoids the libm call that would otherwise
// dominate the per-step noise cost; larger arguments fall back to std::exp.
inline double exp_neg(double x) {
    if (x < 1.0) {
        // Horner form of sum_{k=0..14} (-x)^k / k!
        double y = -x;
        double p = 1.0 / 87178291200.0;              // 1/14!
        p = p * y + 1.0 / 6227020800.0;              // 1/13!
        p = p * y + 1.0 / 479001600.0;               // 1/12!
        p = p * y + 1.0 / 39916800.0;
        p = p * y + 1.0 / 3628800.0;
        p = p * y + 1.0 / 362880.0;
        p = p * y + 1.0 / 40320.0;
        p = p * y + 1.0 / 5040.0;
        p = p * y + 1.0 / 720.0;
        p = p * y + 1.0 / 120.0;
        p = p * y + 1.0 / 24.0;
        p = p * y + 1.0 / 6.0;
        p = p * y + 0.5;
        p = p * y + 1.0;
        p = p * y + 1.0;
        return p;
    }
    return std::exp(-x);
}

// Knuth's product-of-uniforms Poisson sampler.  Exact for any lambda; cost
// grows linearly with lambda, which is fine here because per-step emission
// rates stay well below one event per mode.  For large lambda the recursion
// splits off chunks of 16 so the running product cannot underflow.
inline int poisson_knuth(Xoshiro256pp& rng, double lambda) {
    if (lambda <= 0.0) return 0;
    int k = 0;
    while (lambda > 16.0) {
        // Draw a Poisson(16) chunk and carry the remainder.
        double l16 = 1.1253517471925912e-07;  // exp(-16)
        double prod = rng.uniform01();
        int kk = 0;
        while (prod > l16) {
            ++kk;
            prod *= rng.uniform01();
        }
        k += kk;
        lambda -= 16.0;
    }
    const double limit = exp_neg(lambda);
    double prod = rng.uniform01();
    while (prod > limit) {
        ++k;
        prod *= rng.uniform01();
    }
    return k;
}

// Variant for callers that precomputed exp(-lambda); used in the integrator
// noise path where both polarization modes of a laser share one rate.
inline int poisson_knuth_precomp(Xoshiro256pp& rng, double lambda, double exp_neg_lambda) {
    if (lambda <= 0.0) return 0;
    if (lambda > 16.0) return poisson_knuth(rng, lambda);
    int k = 0;
    double prod = rng.uniform01();
    while (prod > exp_neg_lambda) {
        ++k;
        prod *= rng.uniform01();
    }
    return k;
}

}  // namespace limnet
