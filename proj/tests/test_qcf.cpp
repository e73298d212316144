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

#include <string>

#include "catch_amalgamated.hpp"

#include "qudit/qcf.hpp"

using namespace qudit;

namespace {

// Line and column of the error raised for `text`.
std::pair<std::size_t, std::size_t> error_at(const std::string &text) {
    try {
        parse_qcf(text);
    } catch (const QcfError &e) {
        return {e.line(), e.column()};
    }
    FAIL("expected a QcfError");
    return {0, 0};
}

} // namespace

TEST_CASE("parses a full program") {
    const auto c = parse_qcf("# header\n"
                             "dim 3\n"
                             "wires 2   # two qutrits\n"
                             "\n"
                             "apply H 1\n"
                             "apply CNOT 1 2\n"
                             "apply P 2 : k=2\n"
                             "apply U 1 : m=1, n=2\n"
                             "measure 1 2\n");
    CHECK(c.dim() == 3);
    CHECK(c.num_wires() == 2);
    REQUIRE(c.steps().size() == 4);
    CHECK(c.steps()[1].wires == Wires{0, 1});
    CHECK(c.steps()[2].gate.label() == "P(k=2,d=3)");
    CHECK(c.steps()[3].gate.label() == "U(m=1,n=2,d=3)");
    CHECK(c.measurement() == Wires{0, 1});
}

TEST_CASE("round trip through the serializer") {
    Circuit c(4, 3);
    c.apply(hadamard(4), {2})
        .apply(control_z(4), {2, 0})
        .apply(weyl(3, 1, 4), {1})
        .apply(x_shift(2, 4), {0})
        .measure({0, 2});
    const auto text = to_qcf(c);
    const auto back = parse_qcf(text);
    CHECK(to_qcf(back) == text);
    CHECK(total_cost(back).total_cost == total_cost(c).total_cost);
}

TEST_CASE("sample file costs") {
    CHECK(total_cost(parse_qcf("dim 3\nwires 2\napply H 1\napply CNOT 1 2\nmeasure 1 2\n"))
              .total_cost == 3);
    CHECK(total_cost(parse_qcf("dim 2\nwires 2\napply H 1\napply CNOT 1 2\n"
                               "apply U 1 : m=0,n=1\napply CNOTdag 1 2\napply Hdag 1\n"
                               "measure 1 2\n"))
              .total_cost == 6);
}

TEST_CASE("errors carry line and column") {
    CHECK(error_at("") == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(error_at("wires 2\n") == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(error_at("dim 1\n").first == 1);
    CHECK(error_at("dim 65\n").first == 1);
    CHECK(error_at("dim 3\n") == std::pair<std::size_t, std::size_t>{2, 1});
    CHECK(error_at("dim 3\nwires 2\napply Q 1\n") == std::pair<std::size_t, std::size_t>{3, 7});
    CHECK(error_at("dim 3\nwires 2\napply H 3\n") == std::pair<std::size_t, std::size_t>{3, 9});
    CHECK(error_at("dim 3\nwires 2\napply CNOT 1 1\n").first == 3);
    CHECK(error_at("dim 3\nwires 2\napply CNOT 1\n").first == 3);
    CHECK(error_at("dim 3\nwires 2\napply P 1 : k=3\n") ==
          std::pair<std::size_t, std::size_t>{3, 15});
    CHECK(error_at("dim 3\nwires 2\napply P 1 : j=1\n").first == 3);
    CHECK(error_at("dim 3\nwires 2\napply P 1\n").first == 3);
    CHECK(error_at("dim 3\nwires 2\napply H 1 : k=1\n").first == 3);
    CHECK(error_at("dim 3\nwires 2\napply U 1 : n=1,m=1\n").first == 3);
    CHECK(error_at("dim 3\nwires 2\nmeasure 1\napply H 1\n").first == 4);
    CHECK(error_at("dim 3\nwires 2\napply PX 1\n").first == 3);
    CHECK(error_at("dim 3\nwires x\n") == std::pair<std::size_t, std::size_t>{2, 7});
    CHECK(error_at("dim 2\nwires 25\n").first == 2);
    CHECK(error_at("dim 3\nwires 2\nfrobnicate\n").first == 3);
}

TEST_CASE("CRLF input is accepted") {
    const auto c = parse_qcf("dim 2\r\nwires 1\r\napply H 1\r\n");
    CHECK(c.steps().size() == 1);
}
