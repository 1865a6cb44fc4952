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

#include "limnet/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace limnet {

namespace {

SpinVector mask_to_spins(std::uint32_t mask, int m) {
    SpinVector s(m);
    for (int i = 0; i < m; ++i) s[i] = (mask >> i) & 1u ? -1 : 1;
    return s;
}

}  // namespace

SpectrumStats enumerate_spectrum(const IsingProblem& p, int m_cap) {
    validate_problem(p);
    if (p.m > m_cap)
        throw std::invalid_argument("spectrum enumeration capped at m = " +
                                    std::to_string(m_cap) + " (2^m states); "
                                    "pass a larger cap to force");

    const int m = p.m;
    // Adjacency as flat arrays: three neighbors and couplings per vertex.
    std::vector<int> nbr(3 * m), cpl(3 * m), deg(m, 0);
    for (const auto& ed : p.edges) {
        nbr[3 * ed.a + deg[ed.a]] = ed.b;
        cpl[3 * ed.a + deg[ed.a]++] = ed.j;
        nbr[3 * ed.b + deg[ed.b]] = ed.a;
        cpl[3 * ed.b + deg[ed.b]++] = ed.j;
    }

    std::vector<int> s(m, 1);  // state 0: all spins +1
    std::int64_t e = ising_energy(p, SpinVector(s.begin(), s.end()));

    std::map<std::int64_t, std::uint64_t> hist;
    std::int64_t best = e;
    std::vector<std::uint32_t> best_masks{0};
    hist[e] = 1;

    const std::uint64_t total = 1ULL << m;
    std::uint32_t gray = 0;
    for (std::uint64_t i = 1; i < total; ++i) {
        // Gray code of i differs from that of i-1 in bit ctz(i).
        const int b = std::countr_zero(i);
        gray ^= 1u << b;
        // Flipping spin b changes energy by -2 * s_b * sum_j J_bj s_j.
        std::int64_t local = 0;
        const int* nb = &nbr[3 * b];
        const int* cp = &cpl[3 * b];
        local += static_cast<std::int64_t>(cp[0]) * s[nb[0]];
        local += static_cast<std::int64_t>(cp[1]) * s[nb[1]];
        local += static_cast<std::int64_t>(cp[2]) * s[nb[2]];
        e -= 2 * static_cast<std::int64_t>(s[b]) * local;
        s[b] = -s[b];

        ++hist[e];
        if (e < best) {
            best = e;
            best_masks.clear();
        }
        if (e == best) best_masks.push_back(gray);
    }

    SpectrumStats st;
    st.m = m;
    st.levels.assign(hist.begin(), hist.end());
    st.ground_energy = st.levels[0].first;
    st.ground_count = st.levels[0].second;
    if (st.levels.size() > 1) {
        st.gap = st.levels[1].first - st.levels[0].first;
        st.first_excited_count = st.levels[1].second;
    }
    if (st.levels.size() > 2) st.second_excited_count = st.levels[2].second;
    std::sort(best_masks.begin(), best_masks.end());
    for (std::uint32_t mask : best_masks) st.ground_states.push_back(mask_to_spins(mask, m));
    return st;
}

PredictedCounts predicted_counts(int m) {
    if (m < 6 || m % 2 != 0)
        throw std::invalid_argument("closed-form counts hold for even m >= 6");
    PredictedCounts c;
    c.first_excited = 2ULL * static_cast<std::uint64_t>(m);
    c.second_excited = static_cast<std::uint64_t>(m) * (m + 6) / 4;
    return c;
}

bool verify_gap(const SpectrumStats& st, const IsingProblem& p) {
    if (p.target.empty() || st.m != p.m) return false;
    if (st.ground_energy != -3 * static_cast<std::int64_t>(p.m) / 2) return false;
    if (st.ground_count != 2 || st.gap != 6) return false;
    SpinVector neg(p.target.size());
    for (size_t i = 0; i < neg.size(); ++i) neg[i] = -p.target[i];
    auto match = [&](const SpinVector& g) { return g == p.target || g == neg; };
    return st.ground_states.size() == 2 && match(st.ground_states[0]) &&
           match(st.ground_states[1]);
}

std::string spectrum_to_json(const SpectrumStats& st) {
    nlohmann::json j;
    j["m"] = st.m;
    auto levels = nlohmann::json::array();
    for (const auto& [e, n] : st.levels) levels.push_back({e, n});
    j["levels"] = levels;
    j["ground_energy"] = st.ground_energy;
    j["ground_count"] = st.ground_count;
    j["gap"] = st.gap;
    j["first_excited_count"] = st.first_excited_count;
    j["second_excited_count"] = st.second_excited_count;
    j["ground_states"] = st.ground_states;
    return j.dump(2);
}

}  // namespace limnet
