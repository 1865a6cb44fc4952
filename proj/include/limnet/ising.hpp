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

namespace limnet {

using SpinVector = std::vector<int>;  // entries are +1 or -1

// Antiferromagnetic-style instance on a cubic (3-regular) graph: a ring
// 0-1-...-(m-1)-0 plus the m/2 diameter chords (i, i+m/2).  Couplings are
// J_ij = -t_i * t_j for a planted target pattern t, so t and -t are the two
// ground states and every edge is satisfied there (energy -3m/2).
struct IsingProblem {
    int m = 0;

    struct Edge {
        int a = 0;  // a < b always
        int b = 0;
        int j = 0;  // +1 or -1
    };
    std::vector<Edge> edges;  // sorted by (a, b), no duplicates

    SpinVector target;  // the planted pattern (kept for bookkeeping/readout)
};

// Builds the ring-plus-chords instance for even m >= 4.  For m == 4 the
// graph is K4 (chords coincide with the two diagonals).
IsingProblem build_cubic_problem(int m, const SpinVector& target);

// H(s) = sum_{(i,j) in E} J_ij s_i s_j.  Integer-exact.
std::int64_t ising_energy(const IsingProblem& p, const SpinVector& s);

// Returns a copy with the sign of edge k (index into p.edges) negated.
// Applying it twice restores the original instance.
IsingProblem flip_one_coupling(const IsingProblem& p, int edge_index);

// Structural checks: m even and >= 4, every vertex degree 3, all |J| = 1,
// indices in range, canonical edge order.  Throws std::invalid_argument.
void validate_problem(const IsingProblem& p);

// JSON round-trip:
//   {"m": 8, "edges": [[0,1,-1], ...], "target": [1,-1,...]}
std::string problem_to_json(const IsingProblem& p);
IsingProblem problem_from_json(const std::string& text);

}  // namespace limnet
