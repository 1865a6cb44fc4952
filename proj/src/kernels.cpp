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

#include "limnet/kernels.hpp"

#include <map>
#include <stdexcept>

namespace limnet {

CouplingTable CouplingTable::from_problem(const IsingProblem& p) {
    validate_problem(p);
    const int m = p.m;
    std::map<std::pair<int, int>, int> j;
    for (const auto& ed : p.edges) j[{ed.a, ed.b}] = ed.j;
    auto lookup = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        auto it = j.find({a, b});
        if (it == j.end())
            throw std::invalid_argument(
                "problem graph is not the ring-plus-chords layout the kernels expect");
        return static_cast<double>(it->second);
    };

    CouplingTable tab;
    tab.m = m;
    tab.j_prev.resize(m);
    tab.j_next.resize(m);
    tab.j_chord.resize(m);
    for (int i = 0; i < m; ++i) {
        tab.j_prev[i] = lookup(i, (i + m - 1) % m);
        tab.j_next[i] = lookup(i, (i + 1) % m);
        tab.j_chord[i] = lookup(i, (i + m / 2) % m);
    }
    return tab;
}

void KernelWorkspace::resize(int new_m) {
    m = new_m;
    cos_p.resize(m);
    sin_p.resize(m);
    cos_m.resize(m);
    sin_m.resize(m);
    u_ext.resize(2 * m);
    v_ext.resize(2 * m);
    for (auto& blk : y) blk.resize(m);
    for (auto& ks : k)
        for (auto& blk : ks) blk.resize(m);
}

KernelKind kernel_from_name(const std::string& name) {
    if (name == "auto") return KernelKind::Auto;
    if (name == "scalar") return KernelKind::Scalar;
    if (name == "avx2") return KernelKind::Avx2;
    throw std::invalid_argument("unknown kernel '" + name + "' (expected auto|scalar|avx2)");
}

bool avx2_available() {
#if defined(LIMNET_BUILD_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

StepFn select_kernel(KernelKind kind, std::string* chosen) {
    if (kind == KernelKind::Auto) kind = avx2_available() ? KernelKind::Avx2 : KernelKind::Scalar;
    switch (kind) {
        case KernelKind::Scalar:
            if (chosen) *chosen = "scalar";
            return &step_rk4_scalar;
        case KernelKind::Avx2:
#if defined(LIMNET_BUILD_AVX2)
            if (avx2_available()) {
                if (chosen) *chosen = "avx2";
                return &step_rk4_avx2;
            }
#endif
            throw std::runtime_error("avx2 kernel requested but not available on this CPU");
        default:
            throw std::runtime_error("unresolved kernel kind");
    }
}

}  // namespace limnet
