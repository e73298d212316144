// Copyright 2026 The quditcost Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "catch_amalgamated.hpp"

#include "qudit/circuit.hpp"

using namespace qudit;

TEST_CASE("builder validation") {
    Circuit c(3, 2);
    CHECK_THROWS_AS(c.apply(hadamard(2), {0}), std::invalid_argument);
    CHECK_THROWS_AS(c.apply(cnot(3), {0}), std::invalid_argument);
    CHECK_THROWS_AS(c.apply(cnot(3), {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(c.apply(hadamard(3), {2}), std::out_of_range);
    c.measure({0, 1});
    CHECK_THROWS_AS(c.apply(hadamard(3), {0}), std::logic_error);
    CHECK_THROWS_AS(c.measure({0}), std::logic_error);
    CHECK_THROWS(Circuit(1, 2));
    CHECK_THROWS(Circuit(2, 0));
}

TEST_CASE("Bell preparation: state, outcomes and cost") {
    for (int d = 2; d <= 5; ++d) {
        Circuit c(d, 2);
        c.apply(hadamard(d), {0}).apply(cnot(d), {0, 1}).measure({0, 1});
        const auto sim = simulate(c, PureState::basis(d, {0, 0}));
        for (int x = 0; x < d; ++x)
            CHECK(std::abs(sim.final_state.amplitude({x, x}) - 1.0 / std::sqrt(double(d))) <
                  1e-12);
        CHECK(sim.outcomes.size() == static_cast<std::size_t>(d * d));
        for (const auto &[o, br] : sim.outcomes) {
            const double want = o[0] == o[1] ? 1.0 / d : 0.0;
            CHECK(std::abs(br.probability - want) < 1e-12);
            CHECK(br.state.has_value() == (o[0] == o[1]));
        }
        const auto cost = total_cost(c);
        CHECK(cost.total_cost == 3);
        CHECK(cost.measurement_cost == 1);
        CHECK(cost.basic_kinds == 2);
    }
}

TEST_CASE("measurement costs one per event") {
    Circuit one(3, 3);
    one.measure({0});
    Circuit all(3, 3);
    all.measure({0, 1, 2});
    CHECK(total_cost(one).total_cost == 1);
    CHECK(total_cost(all).total_cost == 1);
    CHECK(total_cost(Circuit(3, 3)).total_cost == 0);
}

TEST_CASE("cost report tallies composites and identities") {
    const int d = 4;
    Circuit c(d, 2);
    c.apply(cnot_dagger(d), {0, 1})
        .apply(control_z(d), {1, 0})
        .apply(identity_gate(d), {0})
        .apply(hadamard(d), {1})
        .apply(hadamard(d), {0});
    const auto r = total_cost(c);
    CHECK(r.total_cost == (d - 1) + 3 + 0 + 2);
    REQUIRE(r.per_gate.size() == 4);
    CHECK(r.per_gate[0].label == "CNOTdag(d=4)");
    CHECK(r.per_gate[0].subtotal == 3);
    CHECK(r.per_gate[3].label == "H(d=4)");
    CHECK(r.per_gate[3].count == 2);
    CHECK(r.basic_kinds == 2); // CNOT and H
    const nlohmann::json j = r;
    CHECK(j["total_cost"] == 8);
    CHECK(j["per_gate"][1]["unit_cost"] == 3);
}

TEST_CASE("qubit H and Hdag are one kind") {
    Circuit c(2, 1);
    c.apply(hadamard(2), {0}).apply(hadamard_dagger(2), {0});
    CHECK(total_cost(c).basic_kinds == 1);
    Circuit c3(3, 1);
    c3.apply(hadamard(3), {0}).apply(hadamard_dagger(3), {0});
    CHECK(total_cost(c3).basic_kinds == 2);
}

TEST_CASE("decomposed circuit simulates identically") {
    const int d = 3;
    Circuit c(d, 3);
    c.apply(hadamard(d), {2})
        .apply(control_z(d), {2, 0})
        .apply(cnot_dagger(d), {0, 1})
        .apply(p_gate(1, d), {1});
    const auto in = PureState::basis(d, {1, 2, 0});
    const auto a = simulate(c, in).final_state;
    const auto b = simulate(decompose_circuit(c), in).final_state;
    CHECK(max_abs_diff(a, b) < 1e-12);
    CHECK(total_cost(decompose_circuit(c)).total_cost == total_cost(c).total_cost);
}
