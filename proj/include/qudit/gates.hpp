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

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace qudit {

enum class GateFamily {
    H,
    Hdag,
    CNOT,
    CNOTdag,
    Xshift,
    Zphase,
    Pgate,
    Umn,
    CZ,
    Weyl,
    PauliX,
    PauliY,
    PauliZ,
    Identity,
};

/// How many integer parameters a family takes: none, k, or (m, n).
enum class ParamShape { None, K, MN };

struct FamilyInfo {
    GateFamily family;
    std::string_view name; // token used in QCF files and gate labels
    int arity;
    ParamShape params;
    bool composite;
};

inline constexpr std::array<FamilyInfo, 14> kFamilies{{
    {GateFamily::H, "H", 1, ParamShape::None, false},
    {GateFamily::Hdag, "Hdag", 1, ParamShape::None, false},
    {GateFamily::CNOT, "CNOT", 2, ParamShape::None, false},
    {GateFamily::CNOTdag, "CNOTdag", 2, ParamShape::None, true},
    {GateFamily::Xshift, "X", 1, ParamShape::K, false},
    {GateFamily::Zphase, "Z", 1, ParamShape::K, false},
    {GateFamily::Pgate, "P", 1, ParamShape::K, false},
    {GateFamily::Umn, "U", 1, ParamShape::MN, false},
    {GateFamily::CZ, "CZ", 2, ParamShape::None, true},
    {GateFamily::Weyl, "W", 1, ParamShape::MN, false},
    {GateFamily::PauliX, "PX", 1, ParamShape::None, false},
    {GateFamily::PauliY, "PY", 1, ParamShape::None, false},
    {GateFamily::PauliZ, "PZ", 1, ParamShape::None, false},
    {GateFamily::Identity, "I", 1, ParamShape::None, false},
}};

inline const FamilyInfo &family_info(GateFamily family) {
    for (const auto &info : kFamilies) {
        if (info.family == family) {
            return info;
        }
    }
    throw std::logic_error("unknown gate family");
}

inline std::optional<GateFamily> family_from_name(std::string_view name) {
    for (const auto &info : kFamilies) {
        if (info.name == name) {
            return info.family;
        }
    }
    return std::nullopt;
}

/// omega^power with omega = exp(2 pi i / d); the exponent is reduced mod d
/// first so large powers stay accurate.
inline Complex root_of_unity(int d, long long power) {
    const long long r = ((power % d) + d) % d;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / d);
}

class GateInstance;

namespace detail {
GateInstance build_gate(GateFamily family, int dim, std::vector<int> params,
                       ComplexMatrix matrix, int cost);
} // namespace detail

/**
 * A named catalog gate: family, qudit dimension, integer parameters (already
 * reduced mod d), its explicit matrix and its quantum cost.
 *
 * Cost rule: a basic gate costs 0 when its matrix is the identity and 1
 * otherwise; a composite gate costs the summed cost of its decomposition.
 */
class GateInstance {
  public:
    [[nodiscard]] GateFamily family() const { return family_; }
    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] std::span<const int> params() const { return params_; }
    [[nodiscard]] int arity() const { return family_info(family_).arity; }
    [[nodiscard]] bool is_composite() const { return family_info(family_).composite; }
    [[nodiscard]] const ComplexMatrix &matrix() const { return matrix_; }
    [[nodiscard]] int cost() const { return cost_; }
    [[nodiscard]] std::string_view name() const { return family_info(family_).name; }

    /// e.g. "H(d=3)", "P(k=1,d=3)", "U(m=1,n=2,d=3)".
    [[nodiscard]] std::string label() const {
        std::string out(name());
        out += '(';
        switch (family_info(family_).params) {
        case ParamShape::K:
            out += "k=" + std::to_string(params_[0]) + ",";
            break;
        case ParamShape::MN:
            out += "m=" + std::to_string(params_[0]) +
                   ",n=" + std::to_string(params_[1]) + ",";
            break;
        case ParamShape::None:
            break;
        }
        out += "d=" + std::to_string(dim_) + ")";
        return out;
    }

  private:
    GateInstance(GateFamily family, int dim, std::vector<int> params,
                 ComplexMatrix matrix, int cost)
        : family_(family), dim_(dim), params_(std::move(params)),
          matrix_(std::move(matrix)), cost_(cost) {}

    friend GateInstance detail::build_gate(GateFamily, int, std::vector<int>,
                                          ComplexMatrix, int);

    GateFamily family_;
    int dim_;
    std::vector<int> params_;
    ComplexMatrix matrix_;
    int cost_;
};

namespace detail {

inline GateInstance build_gate(GateFamily family, int dim, std::vector<int> params,
                              ComplexMatrix matrix, int cost) {
    return GateInstance(family, dim, std::move(params), std::move(matrix), cost);
}

inline GateInstance make_basic(GateFamily family, int dim, std::vector<int> params,
                               ComplexMatrix matrix) {
    const int cost = is_identity(matrix) ? 0 : 1;
    return build_gate(family, dim, std::move(params), std::move(matrix), cost);
}

inline int reduce_param(int value, int d, const char *what) {
    if (value < 0) {
        throw std::out_of_range(std::string("gate parameter ") + what +
                                " must be non-negative, got " + std::to_string(value));
    }
    return value % d;
}

inline std::size_t sz(int v) { return static_cast<std::size_t>(v); }

} // namespace detail

/// H_d: (1/sqrt d) omega^{xy} |x><y|.
inline GateInstance hadamard(int d) {
    detail::check_dim(d);
    ComplexMatrix m(detail::sz(d), detail::sz(d));
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int x = 0; x < d; ++x) {
        for (int y = 0; y < d; ++y) {
            m(detail::sz(x), detail::sz(y)) = scale * root_of_unity(d, 1LL * x * y);
        }
    }
    return detail::make_basic(GateFamily::H, d, {}, std::move(m));
}

/// H_d^dagger: (1/sqrt d) omega^{x(d-y)} |x><y|.
inline GateInstance hadamard_dagger(int d) {
    detail::check_dim(d);
    ComplexMatrix m(detail::sz(d), detail::sz(d));
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int x = 0; x < d; ++x) {
        for (int y = 0; y < d; ++y) {
            m(detail::sz(x), detail::sz(y)) = scale * root_of_unity(d, 1LL * x * (d - y));
        }
    }
    return detail::make_basic(GateFamily::Hdag, d, {}, std::move(m));
}

/// |x, y> -> |x, y + x mod d>.
inline GateInstance cnot(int d) {
    detail::check_dim(d);
    ComplexMatrix m(detail::sz(d * d), detail::sz(d * d));
    for (int x = 0; x < d; ++x) {
        for (int y = 0; y < d; ++y) {
            m(detail::sz(x * d + (y + x) % d), detail::sz(x * d + y)) = 1.0;
        }
    }
    return detail::make_basic(GateFamily::CNOT, d, {}, std::move(m));
}

/// |x, y> -> |x, y + (d-1)x mod d>, built from d-1 CNOTs.
inline GateInstance cnot_dagger(int d) {
    detail::check_dim(d);
    ComplexMatrix m(detail::sz(d * d), detail::sz(d * d));
    for (int x = 0; x < d; ++x) {
        for (int y = 0; y < d; ++y) {
            m(detail::sz(x * d + (y + (d - 1) * x) % d), detail::sz(x * d + y)) = 1.0;
        }
    }
    return detail::build_gate(GateFamily::CNOTdag, d, {}, std::move(m), d - 1);
}

/// X_{k,d} = sum_s |s + k><s|.
inline GateInstance x_shift(int k, int d) {
    detail::check_dim(d);
    k = detail::reduce_param(k, d, "k");
    ComplexMatrix m(detail::sz(d), detail::sz(d));
    for (int s = 0; s < d; ++s) {
        m(detail::sz((s + k) % d), detail::sz(s)) = 1.0;
    }
    return detail::make_basic(GateFamily::Xshift, d, {k}, std::move(m));
}

/// Z_{k,d} = H_d X_{k,d} H_d = sum_j omega^{kj} |j><(d - j) mod d|.
inline GateInstance z_phase(int k, int d) {
    detail::check_dim(d);
    k = detail::reduce_param(k, d, "k");
    ComplexMatrix m(detail::sz(d), detail::sz(d));
    for (int j = 0; j < d; ++j) {
        m(detail::sz(j), detail::sz((d - j) % d)) = root_of_unity(d, 1LL * k * j);
    }
    return detail::make_basic(GateFamily::Zphase, d, {k}, std::move(m));
}

/// P_{k,d} = sum_s |s><k + (d - s) mod d|; an involution.
inline GateInstance p_gate(int k, int d) {
    detail::check_dim(d);
    k = detail::reduce_param(k, d, "k");
    ComplexMatrix m(detail::sz(d), detail::sz(d));
    for (int s = 0; s < d; ++s) {
        m(detail::sz(s), detail::sz((k + d - s) % d)) = 1.0;
    }
    return detail::make_basic(GateFamily::Pgate, d, {k}, std::move(m));
}

/// Dense-coding encoder U_{mn,d} = sum_u omega^{mu} |u><n + u mod d|.
inline GateInstance u_mn(int m, int n, int d) {
    detail::check_dim(d);
    m = detail::reduce_param(m, d, "m");
    n = detail::reduce_param(n, d, "n");
    ComplexMatrix mat(detail::sz(d), detail::sz(d));
    for (int u = 0; u < d; ++u) {
        mat(detail::sz(u), detail::sz((n + u) % d)) = root_of_unity(d, 1LL * m * u);
    }
    return detail::make_basic(GateFamily::Umn, d, {m, n}, std::move(mat));
}

/// Weyl operator U_{mn} = sum_j omega^{jm} |j + n mod d><j|.
inline GateInstance weyl(int m, int n, int d) {
    detail::check_dim(d);
    m = detail::reduce_param(m, d, "m");
    n = detail::reduce_param(n, d, "n");
    ComplexMatrix mat(detail::sz(d), detail::sz(d));
    for (int j = 0; j < d; ++j) {
        mat(detail::sz((j + n) % d), detail::sz(j)) = root_of_unity(d, 1LL * j * m);
    }
    return detail::make_basic(GateFamily::Weyl, d, {m, n}, std::move(mat));
}

/// (I x H_d) CNOT (I x H_d); with control |k> it applies Z_{k,d} to the target.
inline GateInstance control_z(int d) {
    detail::check_dim(d);
    const auto ih = tensor(ComplexMatrix::identity(detail::sz(d)), hadamard(d).matrix());
    auto m = ih * cnot(d).matrix() * ih;
    return detail::build_gate(GateFamily::CZ, d, {}, std::move(m), 3);
}

inline GateInstance pauli_x() {
    return detail::make_basic(GateFamily::PauliX, 2, {}, ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}});
}

inline GateInstance pauli_y() {
    const Complex i{0.0, 1.0};
    return detail::make_basic(GateFamily::PauliY, 2, {}, ComplexMatrix{{0.0, -i}, {i, 0.0}});
}

inline GateInstance pauli_z() {
    return detail::make_basic(GateFamily::PauliZ, 2, {}, ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}});
}

inline GateInstance identity_gate(int d) {
    detail::check_dim(d);
    return detail::make_basic(GateFamily::Identity, d, {},
                              ComplexMatrix::identity(detail::sz(d)));
}

/// Builds any catalog gate from its family and raw parameters.
inline GateInstance make_gate(GateFamily family, int d, std::span<const int> params = {}) {
    const auto &info = family_info(family);
    const std::size_t expected = info.params == ParamShape::None ? 0
                                 : info.params == ParamShape::K  ? 1
                                                                 : 2;
    if (params.size() != expected) {
        throw std::invalid_argument(std::string(info.name) + " takes " +
                                    std::to_string(expected) + " parameter(s), got " +
                                    std::to_string(params.size()));
    }
    const auto require_qubit = [&] {
        if (d != 2) {
            throw std::invalid_argument(std::string(info.name) +
                                        " is only defined for d=2");
        }
    };
    switch (family) {
    case GateFamily::H: return hadamard(d);
    case GateFamily::Hdag: return hadamard_dagger(d);
    case GateFamily::CNOT: return cnot(d);
    case GateFamily::CNOTdag: return cnot_dagger(d);
    case GateFamily::Xshift: return x_shift(params[0], d);
    case GateFamily::Zphase: return z_phase(params[0], d);
    case GateFamily::Pgate: return p_gate(params[0], d);
    case GateFamily::Umn: return u_mn(params[0], params[1], d);
    case GateFamily::CZ: return control_z(d);
    case GateFamily::Weyl: return weyl(params[0], params[1], d);
    case GateFamily::PauliX: require_qubit(); return pauli_x();
    case GateFamily::PauliY: require_qubit(); return pauli_y();
    case GateFamily::PauliZ: require_qubit(); return pauli_z();
    case GateFamily::Identity: return identity_gate(d);
    }
    throw std::logic_error("unhandled gate family");
}

/// One basic gate of a decomposition, on wires local to the parent gate.
struct DecompositionStep {
    GateInstance gate;
    Wires local_wires;
};

/**
 * Expands a catalog gate into cost-1 basic gates whose ordered product (first
 * step applied first) equals the gate's matrix. Basic gates return themselves
 * and identity instances return an empty list.
 */
inline std::vector<DecompositionStep> decompose(const GateInstance &g) {
    std::vector<DecompositionStep> out;
    switch (g.family()) {
    case GateFamily::CNOTdag:
        for (int i = 0; i < g.dim() - 1; ++i) {
            out.push_back({cnot(g.dim()), {0, 1}});
        }
        return out;
    case GateFamily::CZ:
        out.push_back({hadamard(g.dim()), {1}});
        out.push_back({cnot(g.dim()), {0, 1}});
        out.push_back({hadamard(g.dim()), {1}});
        return out;
    default:
        break;
    }
    if (g.cost() == 0) {
        return out;
    }
    Wires wires(static_cast<std::size_t>(g.arity()));
    for (std::size_t i = 0; i < wires.size(); ++i) {
        wires[i] = i;
    }
    out.push_back({g, std::move(wires)});
    return out;
}

} // namespace qudit
