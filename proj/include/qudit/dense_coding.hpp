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
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "gates.hpp"
#include "linalg.hpp"

namespace qudit {

/// Two-dit classical message (m, n), both in [0, d).
struct ClassicalMessage {
    int m = 0;
    int n = 0;

    void validate(int d) const {
        detail::check_dim(d);
        if (m < 0 || m >= d || n < 0 || n >= d) {
            throw std::out_of_range("message (" + std::to_string(m) + "," +
                                    std::to_string(n) + ") out of range for d=" +
                                    std::to_string(d));
        }
    }

    friend bool operator==(const ClassicalMessage &, const ClassicalMessage &) = default;
};

/// Bell index u = m d + n + 1 in [1, d^2].
inline int bell_index(int d, ClassicalMessage msg) {
    msg.validate(d);
    return msg.m * d + msg.n + 1;
}

inline ClassicalMessage message_from_bell_index(int d, int u) {
    detail::check_dim(d);
    if (u < 1 || u > d * d) {
        throw std::out_of_range("Bell index " + std::to_string(u) + " outside [1, " +
                                std::to_string(d * d) + "]");
    }
    return {(u - 1) / d, (u - 1) % d};
}

/// |phi_u> = (1/sqrt d) sum_x omega^{xm} |x, n + x mod d>, u = m d + n + 1.
inline PureState bell_state(int d, int u) {
    const auto [m, n] = message_from_bell_index(d, u);
    const auto dd = static_cast<std::size_t>(d);
    std::vector<Complex> amps(dd * dd);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int x = 0; x < d; ++x) {
        amps[static_cast<std::size_t>(x) * dd + static_cast<std::size_t>((n + x) % d)] =
            scale * root_of_unity(d, 1LL * x * m);
    }
    return PureState(d, 2, std::move(amps));
}

/// Full protocol on input |0,0>: Bell preparation, Alice's encoding, Bob's
/// decoding and a joint measurement of both qudits.
inline Circuit build_dense_coding_circuit(int d, ClassicalMessage msg) {
    msg.validate(d);
    Circuit c(d, 2);
    c.apply(hadamard(d), {0})
        .apply(cnot(d), {0, 1})
        .apply(u_mn(msg.m, msg.n, d), {0})
        .apply(cnot_dagger(d), {0, 1})
        .apply(hadamard_dagger(d), {0})
        .measure({0, 1});
    return c;
}

/// d + 3 for the message (0,0), d + 4 otherwise.
inline int cost_formula_dense(int d, ClassicalMessage msg) {
    msg.validate(d);
    return (msg.m == 0 && msg.n == 0) ? d + 3 : d + 4;
}

/// Kinds of basic gates in the generic (non-(0,0)) circuit: H, CNOT, U, and
/// H^dagger unless it coincides with H at d = 2.
inline int generic_dense_basic_kinds(int d) {
    detail::check_dim(d);
    return d == 2 ? 3 : 4;
}

struct DenseCodingResult {
    ClassicalMessage decoded;
    double probability;
    CostReport cost;
};

/// Simulates the protocol and reports the most likely decoded message.
inline DenseCodingResult run_dense_coding(int d, ClassicalMessage msg) {
    const Circuit c = build_dense_coding_circuit(d, msg);
    const auto sim = simulate(c, PureState::basis(d, {0, 0}));
    DenseCodingResult out{{0, 0}, -1.0, total_cost(c)};
    for (const auto &[outcome, branch] : sim.outcomes) {
        if (branch.probability > out.probability) {
            out.decoded = {outcome[0], outcome[1]};
            out.probability = branch.probability;
        }
    }
    return out;
}

struct DenseTableRow {
    ClassicalMessage message;
    std::string state_label; // "phi_u"
    int quantum_cost;
    int basic_kinds;
    bool decoded_ok;
};

/// One row per message in lexicographic order.
inline std::vector<DenseTableRow> dense_coding_table(int d) {
    std::vector<DenseTableRow> rows;
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            const ClassicalMessage msg{m, n};
            const auto run = run_dense_coding(d, msg);
            rows.push_back({msg, "phi_" + std::to_string(bell_index(d, msg)),
                            run.cost.total_cost, run.cost.basic_kinds,
                            run.decoded == msg &&
                                std::abs(run.probability - 1.0) <= kIdentityTolerance});
        }
    }
    return rows;
}

} // namespace qudit
