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
 * @file verify.hpp
 * Self-check suites over small dimensions, as run by `quditcost verify`.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dense_coding.hpp"
#include "gates.hpp"
#include "linalg.hpp"
#include "noise.hpp"
#include "teleportation.hpp"

namespace qudit {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

namespace detail {

inline std::string fmt_sci(double v) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s.precision(3);
    s << std::scientific << v;
    return s.str();
}

} // namespace detail

inline CheckResult check_gate_identities(int d_max) {
    int failures = 0;
    std::string first;
    const auto note = [&](bool ok, const std::string &what) {
        if (!ok && failures++ == 0) {
            first = what;
        }
    };
    for (int d = 2; d <= d_max; ++d) {
        const auto tag = " (d=" + std::to_string(d) + ")";
        const auto h = hadamard(d).matrix();
        const auto id = ComplexMatrix::identity(static_cast<std::size_t>(d));
        for (const auto &g : {hadamard(d), hadamard_dagger(d), cnot(d), cnot_dagger(d), control_z(d)}) {
            note(is_unitary(g.matrix()), g.label() + " not unitary");
        }
        note(approx_equal(cnot_dagger(d).matrix(),
                          matrix_power(cnot(d).matrix(), static_cast<unsigned>(d - 1))),
             "CNOT^dagger != CNOT^(d-1)" + tag);
        note(approx_equal(control_z(d).matrix(),
                          tensor(id, h) * cnot(d).matrix() * tensor(id, h)),
             "CZ != (I x H) CNOT (I x H)" + tag);
        for (int k = 0; k < d; ++k) {
            note(approx_equal(z_phase(k, d).matrix(), h * x_shift(k, d).matrix() * h),
                 "Z_k != H X_k H" + tag);
            const auto p = p_gate(k, d).matrix();
            note(is_identity(p * p), "P_k^2 != I" + tag);
            for (const auto &g : {x_shift(k, d), z_phase(k, d), p_gate(k, d)}) {
                note(is_unitary(g.matrix()), g.label() + " not unitary");
            }
            for (int n = 0; n < d; ++n) {
                note(is_unitary(u_mn(k, n, d).matrix()), "U not unitary" + tag);
                note(is_unitary(weyl(k, n, d).matrix()), "Weyl not unitary" + tag);
            }
        }
    }
    return {"gate identities d=2.." + std::to_string(d_max), failures == 0,
            failures == 0 ? "" : first};
}

inline CheckResult check_dense_coding(int d_max) {
    int bad = 0;
    std::string first;
    for (int d = 2; d <= d_max; ++d) {
        for (const auto &row : dense_coding_table(d)) {
            const bool ok = row.decoded_ok &&
                            row.quantum_cost == cost_formula_dense(d, row.message);
            if (!ok && bad++ == 0) {
                first = "d=" + std::to_string(d) + " message (" + std::to_string(row.message.m) +
                        "," + std::to_string(row.message.n) + ")";
            }
        }
    }
    return {"dense coding cost and decoding d=2.." + std::to_string(d_max), bad == 0, first};
}

inline CheckResult check_teleportation(int d_max, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int bad = 0;
    std::string first;
    for (int d = 2; d <= d_max; ++d) {
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                const auto row = teleport_table_row(d, {a, b}, rng);
                const bool ok =
                    row.roundtrip_ok && row.quantum_cost == cost_formula_teleport(d, {a, b});
                if (!ok && bad++ == 0) {
                    first = "d=" + std::to_string(d) + " channel (" + std::to_string(a) + "," +
                            std::to_string(b) + ")";
                }
            }
        }
    }
    return {"teleportation cost and round trip d=2.." + std::to_string(d_max), bad == 0, first};
}

inline CheckResult check_kraus_completeness(int d_max) {
    double worst = 0.0;
    for (const auto kind : kNoiseKinds) {
        for (int d = 2; d <= d_max; ++d) {
            for (const double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const auto s = completeness_sum(kraus_set(kind, d, p));
                worst = std::max(
                    worst, max_abs_diff(s, ComplexMatrix::identity(static_cast<std::size_t>(d))));
            }
        }
    }
    return {"Kraus completeness d=2.." + std::to_string(d_max), worst <= kIdentityTolerance,
            "max deviation " + detail::fmt_sci(worst)};
}

/// Simulation against the closed form on an 11-point p grid, one line per kind.
inline CheckResult check_fidelity(NoiseKind kind, int d_max) {
    double worst = 0.0;
    for (int d = 2; d <= d_max; ++d) {
        for (const double p : probability_grid(11)) {
            const double sim = simulate_noisy_dense_coding(d, p, kind, {0, 1});
            worst = std::max(worst, std::abs(sim - closed_form_fidelity(kind, d, p)));
        }
    }
    return {"fidelity " + std::string(noise_name(kind)) + " d=2.." + std::to_string(d_max),
            worst <= kAggregateTolerance, "max |sim-closed| " + detail::fmt_sci(worst)};
}

inline std::vector<CheckResult> run_verification(int d_max = 6, std::uint64_t seed = 0) {
    std::vector<CheckResult> out{check_gate_identities(d_max), check_dense_coding(d_max),
                                 check_teleportation(std::min(d_max, 5), seed),
                                 check_kraus_completeness(d_max)};
    for (const auto kind : kNoiseKinds) {
        out.push_back(check_fidelity(kind, d_max));
    }
    return out;
}

} // namespace qudit
