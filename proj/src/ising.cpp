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

#include "limnet/ising.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace limnet {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

IsingProblem::Edge make_edge(int a, int b, int j) {
    if (a > b) std::swap(a, b);
    return {a, b, j};
}

}  // namespace

IsingProblem build_cubic_problem(int m, const SpinVector& target) {
    require(m >= 4 && m % 2 == 0, "problem size must be even and >= 4");
    require(static_cast<int>(target.size()) == m, "target length must equal m");
    for (int t : target) require(t == 1 || t == -1, "target entries must be +1/-1");

    IsingProblem p;
    p.m = m;
    p.target = target;
    for (int i = 0; i < m; ++i) {
        int r = (i + 1) % m;
        p.edges.push_back(make_edge(i, r, -target[i] * target[r]));
    }
    for (int i = 0; i < m / 2; ++i) {
        int c = i + m / 2;
        // For m == 4 the chord (i, i+2) is distinct from both ring edges of i.
        p.edges.push_back(make_edge(i, c, -target[i] * target[c]));
    }
    std::sort(p.edges.begin(), p.edges.end(), [](const auto& x, const auto& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    validate_problem(p);
    return p;
}

std::int64_t ising_energy(const IsingProblem& p, const SpinVector& s) {
    require(static_cast<int>(s.size()) == p.m, "spin vector length must equal m");
    std::int64_t e = 0;
    for (const auto& ed : p.edges) e += static_cast<std::int64_t>(ed.j) * s[ed.a] * s[ed.b];
    return e;
}

IsingProblem flip_one_coupling(const IsingProblem& p, int edge_index) {
    require(edge_index >= 0 && edge_index < static_cast<int>(p.edges.size()),
            "edge index out of range");
    IsingProblem q = p;
    q.edges[edge_index].j = -q.edges[edge_index].j;
    return q;
}

void validate_problem(const IsingProblem& p) {
    require(p.m >= 4 && p.m % 2 == 0, "problem size must be even and >= 4");
    require(static_cast<int>(p.edges.size()) == 3 * p.m / 2,
            "cubic graph on m vertices needs 3m/2 edges");
    std::vector<int> degree(p.m, 0);
    std::set<std::pair<int, int>> seen;
    for (const auto& ed : p.edges) {
        require(ed.a >= 0 && ed.a < ed.b && ed.b < p.m, "edge endpoints out of range");
        require(ed.j == 1 || ed.j == -1, "couplings must be +1/-1");
        require(seen.insert({ed.a, ed.b}).second, "duplicate edge");
        ++degree[ed.a];
        ++degree[ed.b];
    }
    for (int d : degree) require(d == 3, "every vertex must have degree 3");
    require(std::is_sorted(p.edges.begin(), p.edges.end(),
                           [](const auto& x, const auto& y) {
                               return x.a != y.a ? x.a < y.a : x.b < y.b;
                           }),
            "edges must be in canonical order");
    if (!p.target.empty()) {
        require(static_cast<int>(p.target.size()) == p.m, "target length must equal m");
        for (int t : p.target) require(t == 1 || t == -1, "target entries must be +1/-1");
    }
}

std::string problem_to_json(const IsingProblem& p) {
    nlohmann::json j;
    j["m"] = p.m;
    auto edges = nlohmann::json::array();
    for (const auto& ed : p.edges) edges.push_back({ed.a, ed.b, ed.j});
    j["edges"] = edges;
    j["target"] = p.target;
    return j.dump();
}

IsingProblem problem_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    IsingProblem p;
    p.m = j.at("m").get<int>();
    for (const auto& e : j.at("edges")) {
        require(e.is_array() && e.size() == 3, "edge must be [i, j, J]");
        p.edges.push_back(make_edge(e[0].get<int>(), e[1].get<int>(), e[2].get<int>()));
    }
    std::sort(p.edges.begin(), p.edges.end(), [](const auto& x, const auto& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    if (j.contains("target")) p.target = j.at("target").get<SpinVector>();
    validate_problem(p);
    return p;
}

}  // namespace limnet
