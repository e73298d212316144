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
 * @file noise.hpp
 * Weyl-operator noise on the shared Bell pair of dense coding.
 *
 * Each noise kind is a single-qudit Kraus channel built from the Weyl
 * operators weyl(m, n, d). The channel acts on both qudits of |phi_1><phi_1|
 * before Alice encodes; Bob then decodes and the fidelity is the weight of
 * the sent message |m, n> in the result.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dense_coding.hpp"
#include "gates.hpp"
#include "linalg.hpp"

namespace qudit {

enum class NoiseKind { DitFlip, DPhaseFlip, DitPhaseFlip, Depolarizing };

inline constexpr std::array<NoiseKind, 4> kNoiseKinds{
    NoiseKind::DitFlip, NoiseKind::DPhaseFlip, NoiseKind::DitPhaseFlip,
    NoiseKind::Depolarizing};

inline std::string_view noise_name(NoiseKind kind) {
    switch (kind) {
    case NoiseKind::DitFlip: return "dit-flip";
    case NoiseKind::DPhaseFlip: return "d-phase-flip";
    case NoiseKind::DitPhaseFlip: return "dit-phase-flip";
    case NoiseKind::Depolarizing: return "depolarizing";
    }
    throw std::logic_error("unknown noise kind");
}

inline std::optional<NoiseKind> noise_from_name(std::string_view name) {
    for (const auto kind : kNoiseKinds) {
        if (noise_name(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

struct KrausChannel {
    NoiseKind kind;
    int dim;
    double p;
    std::vector<ComplexMatrix> operators;
    std::vector<std::pair<int, int>> weyl_indices; // (m, n) of each operator
};

namespace detail {

inline void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::out_of_range("error probability must lie in [0, 1], got " +
                                std::to_string(p));
    }
}

/// Weyl indices of the error operators (all but U_00) for a noise kind.
inline std::vector<std::pair<int, int>> error_indices(NoiseKind kind, int d) {
    std::vector<std::pair<int, int>> out;
    switch (kind) {
    case NoiseKind::DitFlip:
        for (int n = 1; n < d; ++n) out.emplace_back(0, n);
        break;
    case NoiseKind::DPhaseFlip:
        for (int m = 1; m < d; ++m) out.emplace_back(m, 0);
        break;
    case NoiseKind::DitPhaseFlip:
        for (int m = 1; m < d; ++m)
            for (int n = 1; n < d; ++n) out.emplace_back(m, n);
        break;
    case NoiseKind::Depolarizing:
        for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n)
                if (m != 0 || n != 0) out.emplace_back(m, n);
        break;
    }
    return out;
}

/// (weight of U_00, weight of each error operator); the squared Kraus
/// coefficients.
inline std::pair<double, double> kraus_weights(NoiseKind kind, int d, double p) {
    const double dm1 = d - 1.0;
    const double d2 = static_cast<double>(d) * d;
    switch (kind) {
    case NoiseKind::DitFlip:
    case NoiseKind::DPhaseFlip:
        return {1.0 - p, p / dm1};
    case NoiseKind::DitPhaseFlip:
        return {1.0 - p, p / (dm1 * dm1)};
    case NoiseKind::Depolarizing:
        return {1.0 - (d2 - 1.0) / d2 * p, p / d2};
    }
    throw std::logic_error("unknown noise kind");
}

} // namespace detail

/**
 * Kraus operators E_00 = sqrt(w0) U_00 and E_mn = sqrt(w) U_mn:
 *   dit-flip        w0 = 1-p,               w = p/(d-1),     (0,n), n >= 1
 *   d-phase-flip    w0 = 1-p,               w = p/(d-1),     (m,0), m >= 1
 *   dit-phase-flip  w0 = 1-p,               w = p/(d-1)^2,   (m,n), m,n >= 1
 *   depolarizing    w0 = 1-(d^2-1)p/d^2,    w = p/d^2,       (m,n) != (0,0)
 */
inline KrausChannel kraus_set(NoiseKind kind, int d, double p) {
    detail::check_dim(d);
    detail::check_probability(p);
    const auto [w0, w] = detail::kraus_weights(kind, d, p);
    KrausChannel ch{kind, d, p, {}, {}};
    ch.operators.push_back(std::sqrt(w0) * weyl(0, 0, d).matrix());
    ch.weyl_indices.emplace_back(0, 0);
    for (const auto &[m, n] : detail::error_indices(kind, d)) {
        ch.operators.push_back(std::sqrt(w) * weyl(m, n, d).matrix());
        ch.weyl_indices.emplace_back(m, n);
    }
    return ch;
}

/// sum_k E_k^dagger E_k.
inline ComplexMatrix completeness_sum(const KrausChannel &ch) {
    ComplexMatrix s(static_cast<std::size_t>(ch.dim), static_cast<std::size_t>(ch.dim));
    for (const auto &e : ch.operators) {
        s += e.adjoint() * e;
    }
    return s;
}

/// sum_{j,q} (E_j (x) E_q) rho (E_j (x) E_q)^dagger, applied as the channel
/// on qudit 0 followed by the channel on qudit 1.
inline DensityMatrix apply_two_qudit_noise(const DensityMatrix &rho, const KrausChannel &ch) {
    if (rho.num_wires() != 2 || rho.dim() != ch.dim) {
        throw std::invalid_argument("apply_two_qudit_noise: expected a two-qudit state of d=" +
                                    std::to_string(ch.dim));
    }
    const auto first = apply_channel(rho, ch.operators, Wires{0});
    return apply_channel(first, ch.operators, Wires{1});
}

/// rho'_mn = V rho' V^dagger with V = (H^dagger (x) I) CNOT^dagger (U_mn (x) I).
inline DensityMatrix decode_dense_coding(const DensityMatrix &rho, ClassicalMessage msg) {
    const int d = rho.dim();
    msg.validate(d);
    auto out = apply_unitary(rho, u_mn(msg.m, msg.n, d).matrix(), {0});
    out = apply_unitary(out, cnot_dagger(d).matrix(), {0, 1});
    return apply_unitary(out, hadamard_dagger(d).matrix(), {0});
}

/// Exact density-matrix fidelity tr(|m,n><m,n| rho'_mn) of noisy dense coding.
inline double simulate_noisy_dense_coding(int d, double p, NoiseKind kind,
                                          ClassicalMessage msg) {
    msg.validate(d);
    const auto channel = kraus_set(kind, d, p);
    const auto rho = DensityMatrix::from_pure(bell_state(d, 1));
    const auto noisy = apply_two_qudit_noise(rho, channel);
    const auto decoded = decode_dense_coding(noisy, msg);
    return fidelity_pure(PureState::basis(d, {msg.m, msg.n}), decoded);
}

/**
 * Closed-form fidelities:
 *   F_F = F_P = (1-p)^2 + p^2/(d-1)
 *   F_FP      = (1-p)^2 + p^2/(d-1)^2
 *   F_D       = (1 - (d^2-1)p/d^2)^2 + (d-1)^2 p^2 / d^4
 *
 * The depolarizing expression disagrees with exact simulation for p > 0;
 * weyl_pair_fidelity() gives the value the simulation reproduces.
 */
inline double closed_form_fidelity(NoiseKind kind, int d, double p) {
    detail::check_dim(d);
    detail::check_probability(p);
    const double q = 1.0 - p;
    const double dm1 = d - 1.0;
    switch (kind) {
    case NoiseKind::DitFlip:
    case NoiseKind::DPhaseFlip:
        return q * q + p * p / dm1;
    case NoiseKind::DitPhaseFlip:
        return q * q + p * p / (dm1 * dm1);
    case NoiseKind::Depolarizing: {
        const double d2 = static_cast<double>(d) * d;
        const double lead = 1.0 - (d2 - 1.0) / d2 * p;
        return lead * lead + dm1 * dm1 * p * p / (d2 * d2);
    }
    }
    throw std::logic_error("unknown noise kind");
}

/**
 * Fidelity from counting Kraus pairs that leave |phi_1> invariant.
 *
 * <phi_1| U_a (x) U_b |phi_1> = tr(U_a U_b^T)/d is a phase when
 * b = (-m mod d, n) for a = (m, n) and zero otherwise, so the fidelity is
 * w0^2 plus w^2 for every error index whose partner is also in the set.
 */
inline double weyl_pair_fidelity(NoiseKind kind, int d, double p) {
    detail::check_dim(d);
    detail::check_probability(p);
    const auto [w0, w] = detail::kraus_weights(kind, d, p);
    const auto errors = detail::error_indices(kind, d);
    int pairs = 0;
    for (const auto &[m, n] : errors) {
        const std::pair<int, int> partner{(d - m) % d, n};
        pairs += static_cast<int>(std::count(errors.begin(), errors.end(), partner));
    }
    return w0 * w0 + pairs * w * w;
}

/// Closed-form fidelity as a function of the protocol cost D = d + 4
/// (messages other than (0,0)).
inline double fidelity_vs_cost(NoiseKind kind, int cost, double p) {
    if (cost < 6) {
        throw std::out_of_range("quantum cost D must be >= 6, got " + std::to_string(cost));
    }
    return closed_form_fidelity(kind, cost - 4, p);
}

struct FidelityRecord {
    NoiseKind kind;
    int d;
    int cost; // D = d + 4
    double p;
    double simulated;
    double closed_form;
};

/// `steps` evenly spaced points from 0 to 1 inclusive.
inline std::vector<double> probability_grid(int steps) {
    if (steps < 2) {
        throw std::invalid_argument("probability grid needs at least 2 steps");
    }
    std::vector<double> out;
    for (int i = 0; i < steps; ++i) {
        out.push_back(i == steps - 1 ? 1.0 : static_cast<double>(i) / (steps - 1));
    }
    return out;
}

/// Records for d in [d_lo, d_hi] (outer) and the p grid (inner). Simulation
/// sends the message (0,1), whose cost is d + 4.
inline std::vector<FidelityRecord> sweep(NoiseKind kind, int d_lo, int d_hi, int p_steps) {
    detail::check_dim(d_lo);
    if (d_hi < d_lo) {
        throw std::invalid_argument("sweep: empty dimension range");
    }
    const auto grid = probability_grid(p_steps);
    std::vector<FidelityRecord> out;
    for (int d = d_lo; d <= d_hi; ++d) {
        const ClassicalMessage msg{0, 1};
        const int cost = cost_formula_dense(d, msg);
        for (const double p : grid) {
            out.push_back({kind, d, cost, p, simulate_noisy_dense_coding(d, p, kind, msg),
                           closed_form_fidelity(kind, d, p)});
        }
    }
    return out;
}

} // namespace qudit
