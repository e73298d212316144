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

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gates.hpp"
#include "linalg.hpp"

namespace qudit {

struct CircuitStep {
    GateInstance gate;
    Wires wires;
};

/// Ordered gate applications on 0-based wires plus an optional terminal
/// measurement. Steps cannot be added once the measurement is set.
class Circuit {
  public:
    Circuit(int dim, std::size_t num_wires) : dim_(dim), num_wires_(num_wires) {
        detail::check_dim(dim);
        if (num_wires == 0) {
            throw std::invalid_argument("Circuit: need at least one wire");
        }
    }

    Circuit &apply(GateInstance gate, Wires wires) {
        if (measurement_) {
            throw std::logic_error("Circuit: measurement must be the final step");
        }
        if (gate.dim() != dim_) {
            throw std::invalid_argument("Circuit: gate " + gate.label() +
                                        " does not match circuit dimension " +
                                        std::to_string(dim_));
        }
        if (wires.size() != static_cast<std::size_t>(gate.arity())) {
            throw std::invalid_argument("Circuit: gate " + gate.label() + " takes " +
                                        std::to_string(gate.arity()) + " wire(s)");
        }
        detail::check_wires(wires, num_wires_);
        steps_.push_back({std::move(gate), std::move(wires)});
        return *this;
    }

    Circuit &measure(Wires wires) {
        if (measurement_) {
            throw std::logic_error("Circuit: measurement already set");
        }
        if (wires.empty()) {
            throw std::invalid_argument("Circuit: measurement needs at least one wire");
        }
        detail::check_wires(wires, num_wires_);
        measurement_ = std::move(wires);
        return *this;
    }

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] std::size_t num_wires() const { return num_wires_; }
    [[nodiscard]] const std::vector<CircuitStep> &steps() const { return steps_; }
    [[nodiscard]] const std::optional<Wires> &measurement() const { return measurement_; }

  private:
    int dim_;
    std::size_t num_wires_;
    std::vector<CircuitStep> steps_;
    std::optional<Wires> measurement_;
};

/// Final state before measurement plus, when the circuit measures, every
/// outcome of the measured wires (lexicographic order, including empty
/// zero-probability branches).
struct SimulationResult {
    PureState final_state;
    std::map<Dits, MeasurementBranch> outcomes;
};

inline SimulationResult simulate(const Circuit &c, const PureState &input) {
    if (input.dim() != c.dim() || input.num_wires() != c.num_wires()) {
        throw std::invalid_argument("simulate: input state does not match circuit");
    }
    PureState state = input;
    for (const auto &step : c.steps()) {
        state = embed_apply(state, step.gate.matrix(), step.wires);
    }
    SimulationResult result{state, {}};
    if (const auto &wires = c.measurement()) {
        const std::size_t count = ipow(static_cast<std::size_t>(c.dim()), wires->size());
        Dits outcome(wires->size(), 0);
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t rest = i;
            for (std::size_t t = outcome.size(); t-- > 0;) {
                outcome[t] = static_cast<int>(rest % static_cast<std::size_t>(c.dim()));
                rest /= static_cast<std::size_t>(c.dim());
            }
            result.outcomes.emplace(outcome, measure_project(state, *wires, outcome));
        }
    }
    return result;
}

/// Replaces every gate by its basic-gate decomposition; identity gates vanish.
inline Circuit decompose_circuit(const Circuit &c) {
    Circuit out(c.dim(), c.num_wires());
    for (const auto &step : c.steps()) {
        for (auto &piece : decompose(step.gate)) {
            Wires wires;
            for (const auto w : piece.local_wires) {
                wires.push_back(step.wires[w]);
            }
            out.apply(std::move(piece.gate), std::move(wires));
        }
    }
    if (c.measurement()) {
        out.measure(*c.measurement());
    }
    return out;
}

struct GateTally {
    std::string label;
    int count = 0;
    int unit_cost = 0;
    int subtotal = 0;
};

struct CostReport {
    int total_cost = 0;
    std::vector<GateTally> per_gate;
    int measurement_cost = 0;
    int basic_kinds = 0;
    std::vector<std::string> basic_kind_labels;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GateTally, label, count, unit_cost, subtotal)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CostReport, total_cost, per_gate, measurement_cost,
                                   basic_kinds, basic_kind_labels)

/**
 * Quantum cost of a circuit: the sum of gate costs (identity gates cost 0,
 * composites cost their decomposition) plus 1 for the terminal measurement,
 * however many wires it covers.
 *
 * basic_kinds counts distinct basic gates with nonzero cost in the fully
 * decomposed circuit. Two basic gates are the same kind when their matrices
 * agree, so H_2 and H_2^dagger count once.
 */
inline CostReport total_cost(const Circuit &c) {
    CostReport report;
    for (const auto &step : c.steps()) {
        const auto label = step.gate.label();
        auto it = std::find_if(report.per_gate.begin(), report.per_gate.end(),
                               [&](const GateTally &t) { return t.label == label; });
        if (it == report.per_gate.end()) {
            report.per_gate.push_back({label, 0, step.gate.cost(), 0});
            it = std::prev(report.per_gate.end());
        }
        it->count += 1;
        it->subtotal += step.gate.cost();
        report.total_cost += step.gate.cost();
    }
    report.measurement_cost = c.measurement() ? 1 : 0;
    report.total_cost += report.measurement_cost;

    std::vector<const GateInstance *> kinds;
    const Circuit basic = decompose_circuit(c);
    for (const auto &step : basic.steps()) {
        if (step.gate.cost() == 0) {
            continue;
        }
        const bool seen = std::any_of(kinds.begin(), kinds.end(), [&](const GateInstance *k) {
            return k->arity() == step.gate.arity() &&
                   approx_equal(k->matrix(), step.gate.matrix());
        });
        if (!seen) {
            kinds.push_back(&step.gate);
            report.basic_kind_labels.push_back(step.gate.label());
        }
    }
    report.basic_kinds = static_cast<int>(kinds.size());
    return report;
}

} // namespace qudit
