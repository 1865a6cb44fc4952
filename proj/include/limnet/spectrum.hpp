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

#include <cstdint>
#include <string>
#include <vector>

#include "limnet/ising.hpp"

namespace limnet {

// Exact exhaustive spectrum of a (small) Ising instance.  Serves as the
// ground-truth oracle the dynamical solver is checked against.
struct SpectrumStats {
    int m = 0;
    // Distinct energies ascending with exact state counts; counts sum to 2^m.
    std::vector<std::pair<std::int64_t, std::uint64_t>> levels;
    std::int64_t ground_energy = 0;
    std::uint64_t ground_count = 0;
    std::int64_t gap = 0;              // first excited minus ground energy
    std::uint64_t first_excited_count = 0;
    std::uint64_t second_excited_count = 0;  // 0 when fewer than 3 levels
    // Every ground state as a full spin vector, sorted by bit pattern
    // (bit i set <=> spin i == -1).
    std::vector<SpinVector> ground_states;
};

inline constexpr int kDefaultEnumerationCap = 26;

// Walks all 2^m states in Gray-code order so each step is a single spin flip
// with an O(degree) energy delta.  Runtime ~O(2^m * 3), memory O(levels).
// Throws std::invalid_argument if m exceeds m_cap (raise the cap to force).
SpectrumStats enumerate_spectrum(const IsingProblem& p, int m_cap = kDefaultEnumerationCap);

// Closed-form level counts for the unflipped ring-plus-chords family with
// m >= 6: ground pair, first excited 2m states at gap 6, second excited
// m(m+6)/4 states.  Throws for m < 6 (K4 follows a different pattern).
struct PredictedCounts {
    std::uint64_t ground = 2;
    std::uint64_t first_excited = 0;
    std::uint64_t second_excited = 0;
};
PredictedCounts predicted_counts(int m);

// True iff the spectrum has exactly the planted pair {t, -t} as ground states
// at energy -3m/2 with gap 6.
bool verify_gap(const SpectrumStats& st, const IsingProblem& p);

std::string spectrum_to_json(const SpectrumStats& st);

}  // namespace limnet
