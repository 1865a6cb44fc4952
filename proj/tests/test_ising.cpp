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

#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "limnet/ising.hpp"
#include "limnet/rng.hpp"

using namespace limnet;

namespace {

SpinVector all_ones(int m) { return SpinVector(m, 1); }

SpinVector random_spins(int m, Xoshiro256pp& g) {
    SpinVector s(m);
    for (auto& v : s) v = g.sign();
    return s;
}

}  // namespace

TEST_CASE("m=4 instance is the complete graph on four vertices") {
    const auto p = build_cubic_problem(4, all_ones(4));
    REQUIRE(p.edges.size() == 6);
    const std::vector<std::pair<int, int>> want = {{0, 1}, {0, 2}, {0, 3},
                                                   {1, 2}, {1, 3}, {2, 3}};
    for (size_t i = 0; i < want.size(); ++i) {
        CHECK(p.edges[i].a == want[i].first);
        CHECK(p.edges[i].b == want[i].second);
        CHECK(p.edges[i].j == -1);  // all-ones target makes every coupling -1
    }
}

TEST_CASE("ring plus cross chords, every vertex degree 3") {
    for (int m : {6, 8, 10, 16}) {
        const auto p = build_cubic_problem(m, all_ones(m));
        CHECK(static_cast<int>(p.edges.size()) == 3 * m / 2);
        std::vector<int> deg(m, 0);
        bool has_chord = false;
        for (const auto& e : p.edges) {
            ++deg[e.a];
            ++deg[e.b];
            if (e.b - e.a == m / 2) has_chord = true;
        }
        for (int d : deg) CHECK(d == 3);
        CHECK(has_chord);
    }
}

TEST_CASE("planted pattern and its flip sit at energy -3m/2") {
    Xoshiro256pp g(11);
    for (int m : {4, 6, 8, 12, 20}) {
        const auto target = random_spins(m, g);
        const auto p = build_cubic_problem(m, target);
        CHECK(ising_energy(p, target) == -3 * m / 2);
        SpinVector flipped = target;
        for (auto& v : flipped) v = -v;
        CHECK(ising_energy(p, flipped) == -3 * m / 2);
    }
}

TEST_CASE("single spin flip from the planted pattern costs +6") {
    const int m = 10;
    const auto p = build_cubic_problem(m, all_ones(m));
    for (int i = 0; i < m; ++i) {
        SpinVector s = all_ones(m);
        s[i] = -1;
        CHECK(ising_energy(p, s) == -3 * m / 2 + 6);
    }
}

TEST_CASE("k4 energy spot check") {
    const auto p = build_cubic_problem(4, all_ones(4));
    CHECK(ising_energy(p, {1, 1, -1, -1}) == 2);
    CHECK(ising_energy(p, {1, -1, 1, -1}) == 2);
    CHECK(ising_energy(p, {1, 1, 1, -1}) == 0);
}

TEST_CASE("energy parity: E + 3m/2 is even and non-negative") {
    Xoshiro256pp g(12);
    for (int m : {4, 8, 14}) {
        const auto p = build_cubic_problem(m, random_spins(m, g));
        for (int k = 0; k < 200; ++k) {
            const auto e = ising_energy(p, random_spins(m, g));
            const auto shifted = e + 3 * m / 2;
            CHECK(shifted >= 0);
            CHECK(shifted % 2 == 0);
        }
    }
}

TEST_CASE("flipping one coupling is an involution and costs 2 on the target") {
    const int m = 8;
    const auto target = SpinVector{1, -1, -1, 1, 1, 1, -1, 1};
    const auto p = build_cubic_problem(m, target);
    for (int k = 0; k < static_cast<int>(p.edges.size()); ++k) {
        const auto q = flip_one_coupling(p, k);
        CHECK(ising_energy(q, target) == -3 * m / 2 + 2);
        const auto r = flip_one_coupling(q, k);
        CHECK(ising_energy(r, target) == ising_energy(p, target));
        for (size_t i = 0; i < p.edges.size(); ++i) CHECK(r.edges[i].j == p.edges[i].j);
    }
    CHECK_THROWS_AS((void)flip_one_coupling(p, -1), std::invalid_argument);
    CHECK_THROWS_AS((void)flip_one_coupling(p, 12), std::invalid_argument);
}

TEST_CASE("builder rejects bad sizes and targets") {
    CHECK_THROWS_AS((void)build_cubic_problem(3, all_ones(3)), std::invalid_argument);
    CHECK_THROWS_AS((void)build_cubic_problem(2, all_ones(2)), std::invalid_argument);
    CHECK_THROWS_AS((void)build_cubic_problem(7, all_ones(7)), std::invalid_argument);
    CHECK_THROWS_AS((void)build_cubic_problem(8, all_ones(6)), std::invalid_argument);
    SpinVector bad = all_ones(8);
    bad[3] = 0;
    CHECK_THROWS_AS((void)build_cubic_problem(8, bad), std::invalid_argument);
}

TEST_CASE("validate_problem catches structural damage") {
    auto p = build_cubic_problem(8, all_ones(8));
    validate_problem(p);  // baseline must pass

    auto dup = p;
    dup.edges[1] = dup.edges[0];
    CHECK_THROWS_AS(validate_problem(dup), std::invalid_argument);

    auto zero = p;
    zero.edges[0].j = 0;
    CHECK_THROWS_AS(validate_problem(zero), std::invalid_argument);

    auto oob = p;
    oob.edges[0].b = 8;
    CHECK_THROWS_AS(validate_problem(oob), std::invalid_argument);

    auto missing = p;
    missing.edges.pop_back();
    CHECK_THROWS_AS(validate_problem(missing), std::invalid_argument);
}

TEST_CASE("json round trip preserves the instance") {
    Xoshiro256pp g(13);
    const auto p = build_cubic_problem(12, random_spins(12, g));
    const auto q = problem_from_json(problem_to_json(p));
    CHECK(q.m == p.m);
    CHECK(q.target == p.target);
    REQUIRE(q.edges.size() == p.edges.size());
    for (size_t i = 0; i < p.edges.size(); ++i) {
        CHECK(q.edges[i].a == p.edges[i].a);
        CHECK(q.edges[i].b == p.edges[i].b);
        CHECK(q.edges[i].j == p.edges[i].j);
    }
}

TEST_CASE("json loader canonicalizes edge order and endpoint order") {
    // same K4 instance with edges shuffled and some endpoints swapped
    const std::string text = R"({"m": 4,
        "edges": [[3,2,-1],[0,1,-1],[1,3,-1],[2,0,-1],[0,3,-1],[2,1,-1]],
        "target": [1,1,1,1]})";
    const auto p = problem_from_json(text);
    const auto want = build_cubic_problem(4, all_ones(4));
    REQUIRE(p.edges.size() == want.edges.size());
    for (size_t i = 0; i < want.edges.size(); ++i) {
        CHECK(p.edges[i].a == want.edges[i].a);
        CHECK(p.edges[i].b == want.edges[i].b);
        CHECK(p.edges[i].j == want.edges[i].j);
    }
}

TEST_CASE("json loader rejects malformed edges") {
    CHECK_THROWS((void)problem_from_json(R"({"m": 4, "edges": [[0,1]], "target": [1,1,1,1]})"));
    CHECK_THROWS((void)problem_from_json(R"({"edges": []})"));
    CHECK_THROWS((void)problem_from_json("not json"));
}
