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

/**
 * @file teleportation.hpp
 * Qudit teleportation over the d^2 Bell channels |phi_{ad+b+1}>.
 *
 * Wires: 0 holds the message, 1 is Alice's half of the channel, 2 is Bob's.
 * The channel is prepared by H on wire 1 and CNOT(1->2) acting on the basis
 * input |a, b> of wires 1 and 2, so every channel uses the same gate list and
 * only the P gates that steer Bob's controlled corrections depend on (a, b).
 */

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "dense_coding.hpp"
#include "gates.hpp"
#include "linalg.hpp"

namespace qudit {

/// Bell channel selector; the channel is |phi_{a d + b + 1}>.
struct ChannelLabel {
    int a = 0;
    int b = 0;

    void validate(int d) const {
        detail::check_dim(d);
        if (a < 0 || a >= d || b < 0 || b >= d) {
            throw std::out_of_range("channel (" + std::to_string(a) + "," +
                                    std::to_string(b) + ") out of range for d=" +
                                    std::to_string(d));
        }
    }

    [[nodiscard]] int index(int d) const { return bell_index(d, {a, b}); }
};

/// Normalized single-qudit message sum_j alpha_j |j>.
class MessageState {
  public:
    explicit MessageState(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
        detail::check_dim(static_cast<int>(amps_.size()));
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        if (std::abs(s - 1.0) > kIdentityTolerance) {
            throw std::invalid_argument("MessageState: amplitudes not normalized");
        }
    }

    static MessageState basis(int d, int j) {
        detail::check_dim(d);
        std::vector<Complex> amps(static_cast<std::size_t>(d));
        amps.at(static_cast<std::size_t>(j)) = 1.0;
        return MessageState(std::move(amps));
    }

    /// Haar-distributed pure state: normalized complex Gaussian vector.
    template <class Rng> static MessageState haar_random(int d, Rng &rng) {
        detail::check_dim(d);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<Complex> amps(static_cast<std::size_t>(d));
        double s = 0.0;
        for (auto &a : amps) {
            a = {gauss(rng), gauss(rng)};
            s += std::norm(a);
        }
        const double scale = 1.0 / std::sqrt(s);
        for (auto &a : amps) {
            a *= scale;
        }
        return MessageState(std::move(amps));
    }

    [[nodiscard]] int dim() const { return static_cast<int>(amps_.size()); }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amps_; }
    [[nodiscard]] PureState state() const { return PureState(dim(), 1, amps_); }

  private:
    std::vector<Complex> amps_;
};

/// Bob's correction Z_{z} X_{x} (X applied first).
struct CorrectionOperator {
    int z_index;
    int x_index;
    ComplexMatrix matrix;

    [[nodiscard]] std::string label() const {
        return "Z" + std::to_string(z_index) + "X" + std::to_string(x_index);
    }
};

/// U^{(a,b)}_{m,n} = Z_{a + (d - m)} X_{(d - b) + (d - n)}, indices mod d.
inline CorrectionOperator correction(int d, ChannelLabel ch, int m, int n) {
    ch.validate(d);
    ClassicalMessage{m, n}.validate(d);
    const int z = (ch.a + d - m) % d;
    const int x = (2 * d - ch.b - n) % d;
    return {z, x, z_phase(z, d).matrix() * x_shift(x, d).matrix()};
}

/// |msg> (x) |a> (x) |b>.
inline PureState teleport_input(int d, ChannelLabel ch, const MessageState &msg) {
    ch.validate(d);
    if (msg.dim() != d) {
        throw std::invalid_argument("teleport_input: message dimension mismatch");
    }
    return tensor(msg.state(), PureState::basis(d, {ch.a, ch.b}));
}

/**
 * Channel preparation, Alice's basis change, Bob's coherent corrections and
 * the measurement of Alice's two qudits.
 *
 * The corrections are the CNOT(1->2) and CZ(0->2) whose controls are
 * bracketed by P gates: P_k maps a control value c to k - c and undoes itself
 * afterwards, so the target receives X_{(d-b)-n} and Z_{a-m}.
 */
inline Circuit build_teleport_circuit(int d, ChannelLabel ch) {
    ch.validate(d);
    const int steer_x = (d - ch.b) % d;
    Circuit c(d, 3);
    c.apply(hadamard(d), {1})
        .apply(cnot(d), {1, 2})
        .apply(cnot(d), {0, 1})
        .apply(hadamard(d), {0})
        .apply(p_gate(steer_x, d), {1})
        .apply(cnot(d), {1, 2})
        .apply(p_gate(steer_x, d), {1})
        .apply(p_gate(ch.a, d), {0})
        .apply(control_z(d), {0, 2})
        .apply(p_gate(ch.a, d), {0})
        .measure({0, 1});
    return c;
}

/// Preparation and Alice's operations only, ending in her measurement.
inline Circuit build_teleport_bell_measurement(int d, ChannelLabel ch) {
    ch.validate(d);
    Circuit c(d, 3);
    c.apply(hadamard(d), {1})
        .apply(cnot(d), {1, 2})
        .apply(cnot(d), {0, 1})
        .apply(hadamard(d), {0})
        .measure({0, 1});
    return c;
}

/// 13 for d >= 3. At d = 2 the P_0 gates are identities, giving 9, 11 or 13.
inline int cost_formula_teleport(int d, ChannelLabel ch) {
    ch.validate(d);
    if (d >= 3) {
        return 13;
    }
    return 9 + 2 * ((ch.a != 0) ? 1 : 0) + 2 * ((ch.b != 0) ? 1 : 0);
}

struct TeleportBranch {
    int m;
    int n;
    double probability;
    std::vector<Complex> bob_state;
    double overlap; // |<msg|bob>|
};

namespace detail {

inline std::vector<Complex> bob_amplitudes(const PureState &conditioned, int m, int n) {
    const auto d = static_cast<std::size_t>(conditioned.dim());
    std::vector<Complex> out(d);
    const std::size_t base = (static_cast<std::size_t>(m) * d + static_cast<std::size_t>(n)) * d;
    for (std::size_t j = 0; j < d; ++j) {
        out[j] = conditioned.amplitudes()[base + j];
    }
    return out;
}

inline double overlap(std::span<const Complex> a, std::span<const Complex> b) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return std::abs(s);
}

} // namespace detail

/// Runs the coherent-correction circuit and reports every outcome (m, n) of
/// Alice's measurement with Bob's conditioned qudit.
inline std::vector<TeleportBranch> run_teleport(int d, ChannelLabel ch,
                                                const MessageState &msg) {
    const auto sim = simulate(build_teleport_circuit(d, ch), teleport_input(d, ch, msg));
    std::vector<TeleportBranch> out;
    for (const auto &[outcome, branch] : sim.outcomes) {
        TeleportBranch tb{outcome[0], outcome[1], branch.probability, {}, 0.0};
        if (branch.state) {
            tb.bob_state = detail::bob_amplitudes(*branch.state, tb.m, tb.n);
            tb.overlap = detail::overlap(msg.amplitudes(), tb.bob_state);
        }
        out.push_back(std::move(tb));
    }
    return out;
}

/// Same protocol with Alice measuring first and Bob applying correction()
/// to his conditioned qudit.
inline std::vector<TeleportBranch> run_teleport_measure_then_correct(int d, ChannelLabel ch,
                                                                     const MessageState &msg) {
    const auto sim =
        simulate(build_teleport_bell_measurement(d, ch), teleport_input(d, ch, msg));
    std::vector<TeleportBranch> out;
    for (const auto &[outcome, branch] : sim.outcomes) {
        TeleportBranch tb{outcome[0], outcome[1], branch.probability, {}, 0.0};
        if (branch.state) {
            const auto raw = detail::bob_amplitudes(*branch.state, tb.m, tb.n);
            const auto fix = correction(d, ch, tb.m, tb.n).matrix;
            tb.bob_state.assign(raw.size(), Complex{});
            for (std::size_t r = 0; r < raw.size(); ++r) {
                for (std::size_t c = 0; c < raw.size(); ++c) {
                    tb.bob_state[r] += fix(r, c) * raw[c];
                }
            }
            tb.overlap = detail::overlap(msg.amplitudes(), tb.bob_state);
        }
        out.push_back(std::move(tb));
    }
    return out;
}

struct TeleportTableRow {
    ChannelLabel channel;
    std::string state_label;
    int quantum_cost;
    int basic_kinds;
    bool roundtrip_ok;
};

/// Cost row for one channel; the round trip is checked on a Haar-random
/// message drawn from `rng`.
template <class Rng>
TeleportTableRow teleport_table_row(int d, ChannelLabel ch, Rng &rng) {
    const auto report = total_cost(build_teleport_circuit(d, ch));
    const auto msg = MessageState::haar_random(d, rng);
    bool ok = true;
    const double uniform = 1.0 / (d * d);
    for (const auto &branch : run_teleport(d, ch, msg)) {
        ok = ok && std::abs(branch.probability - uniform) <= kAggregateTolerance &&
             branch.overlap >= 1.0 - kAggregateTolerance;
    }
    return {ch, "phi_" + std::to_string(ch.index(d)), report.total_cost,
            report.basic_kinds, ok};
}

/// Correction labels for every channel (columns) and outcome (rows).
struct CorrectionGrid {
    int dim;
    std::vector<ChannelLabel> channels;
    std::vector<ClassicalMessage> outcomes;
    std::vector<std::vector<std::string>> labels; // [outcome][channel]
};

inline CorrectionGrid correction_grid(int d) {
    CorrectionGrid grid{d, {}, {}, {}};
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            grid.channels.push_back({a, b});
            grid.outcomes.push_back({a, b});
        }
    }
    for (const auto &o : grid.outcomes) {
        std::vector<std::string> row;
        for (const auto &ch : grid.channels) {
            row.push_back(correction(d, ch, o.m, o.n).label());
        }
        grid.labels.push_back(std::move(row));
    }
    return grid;
}

/// Qubit names for Z_z X_x: I2, sX, sZ, sZsX.
inline std::string qubit_correction_name(int z, int x) {
    if (z == 0 && x == 0) {
        return "I2";
    }
    if (z == 0) {
        return "sX";
    }
    if (x == 0) {
        return "sZ";
    }
    return "sZsX";
}

} // namespace qudit
