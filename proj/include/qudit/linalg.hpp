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
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

/**
 * @file linalg.hpp
 * Dense complex linear algebra over qudit registers.
 *
 * Basis convention: a register of n qudits of dimension d is indexed by
 * |q_0 q_1 ... q_{n-1}> -> sum_i q_i d^(n-1-i), i.e. wire 0 is the most
 * significant digit. Wires are 0-based throughout the C++ API.
 */

namespace qudit {

using Complex = std::complex<double>;
using Wires = std::vector<std::size_t>;
using Dits = std::vector<int>;

/// Max-norm tolerance for operator identities and unitarity.
inline constexpr double kIdentityTolerance = 1e-12;
/// Tolerance for aggregated quantities (probability sums, fidelities).
inline constexpr double kAggregateTolerance = 1e-10;
/// Most negative eigenvalue accepted in a density matrix.
inline constexpr double kEigenvalueFloor = -1e-10;
/// Measurement branches at or below this probability are reported empty.
inline constexpr double kZeroProbability = 1e-24;

inline std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t out = 1;
    while (exp-- > 0) {
        out *= base;
    }
    return out;
}

/// Row-major dense complex matrix.
class ComplexMatrix {
  public:
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0) {
            throw std::invalid_argument("ComplexMatrix: empty shape");
        }
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : ComplexMatrix(rows.size(), rows.size() ? rows.begin()->size() : 0) {
        std::size_t r = 0;
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw std::invalid_argument("ComplexMatrix: ragged rows");
            }
            std::copy(row.begin(), row.end(), data_.begin() + r * cols_);
            ++r;
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix out(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            out(i, i) = 1.0;
        }
        return out;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool is_square() const { return rows_ == cols_; }

    Complex &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    [[nodiscard]] std::span<const Complex> data() const { return data_; }
    [[nodiscard]] std::span<Complex> data() { return data_; }

    [[nodiscard]] ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    [[nodiscard]] ComplexMatrix conjugate() const {
        ComplexMatrix out = *this;
        for (auto &z : out.data_) {
            z = std::conj(z);
        }
        return out;
    }

    [[nodiscard]] Complex trace() const {
        Complex t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &other) {
        require_same_shape(other);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += other.data_[i];
        }
        return *this;
    }

    ComplexMatrix &operator-=(const ComplexMatrix &other) {
        require_same_shape(other);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] -= other.data_[i];
        }
        return *this;
    }

    ComplexMatrix &operator*=(Complex scale) {
        for (auto &z : data_) {
            z *= scale;
        }
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        return a += b;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        return a -= b;
    }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
        return a *= s;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) {
        return a *= s;
    }

    friend ComplexMatrix operator*(const ComplexMatrix &a,
                                   const ComplexMatrix &b) {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("ComplexMatrix: product shape mismatch");
        }
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

  private:
    void require_same_shape(const ComplexMatrix &other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            throw std::invalid_argument("ComplexMatrix: shape mismatch");
        }
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    double out = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        out = std::max(out, std::abs(a.data()[i] - b.data()[i]));
    }
    return out;
}

inline bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b,
                         double tol = kIdentityTolerance) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           max_abs_diff(a, b) <= tol;
}

inline bool is_identity(const ComplexMatrix &m,
                        double tol = kIdentityTolerance) {
    return m.is_square() && approx_equal(m, ComplexMatrix::identity(m.rows()), tol);
}

/// ||M M^dagger - I||_max <= tol.
inline bool is_unitary(const ComplexMatrix &m, double tol = kIdentityTolerance) {
    return m.is_square() && is_identity(m * m.adjoint(), tol);
}

inline bool is_hermitian(const ComplexMatrix &m,
                         double tol = kIdentityTolerance) {
    return m.is_square() && approx_equal(m, m.adjoint(), tol);
}

inline ComplexMatrix matrix_power(const ComplexMatrix &m, unsigned exponent) {
    if (!m.is_square()) {
        throw std::invalid_argument("matrix_power: matrix not square");
    }
    ComplexMatrix out = ComplexMatrix::identity(m.rows());
    for (unsigned i = 0; i < exponent; ++i) {
        out = out * m;
    }
    return out;
}

/// Kronecker product; `a` acts on the more significant factor.
inline ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex s = a(ar, ac);
            if (s == Complex{}) {
                continue;
            }
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

/// Smallest eigenvalue of a Hermitian matrix.
inline double min_eigenvalue(const ComplexMatrix &m) {
    Eigen::MatrixXcd em(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            em(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

namespace detail {

inline void check_dim(int dim) {
    if (dim < 2) {
        throw std::invalid_argument("qudit dimension must be >= 2, got " +
                                    std::to_string(dim));
    }
}

inline void check_wires(std::span<const std::size_t> wires,
                        std::size_t num_wires) {
    for (std::size_t i = 0; i < wires.size(); ++i) {
        if (wires[i] >= num_wires) {
            throw std::out_of_range("wire " + std::to_string(wires[i]) +
                                    " out of range for " +
                                    std::to_string(num_wires) + " wires");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (wires[i] == wires[j]) {
                throw std::invalid_argument("duplicate wire " +
                                            std::to_string(wires[i]));
            }
        }
    }
}

/// a * b without the C99 Annex G NaN recovery of std::complex operator*.
inline Complex fast_mul(Complex a, Complex b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline std::vector<std::size_t> wire_strides(std::size_t dim, std::size_t num_wires) {
    std::vector<std::size_t> strides(num_wires);
    for (std::size_t w = 0; w < num_wires; ++w) {
        strides[w] = ipow(dim, num_wires - 1 - w);
    }
    return strides;
}

/// Flat offset of each local basis index of `wires` (wires[0] most significant).
inline std::vector<std::size_t> local_offsets(std::size_t dim,
                                              std::span<const std::size_t> strides,
                                              std::span<const std::size_t> wires) {
    std::vector<std::size_t> offsets(ipow(dim, wires.size()), 0);
    for (std::size_t j = 0; j < offsets.size(); ++j) {
        std::size_t rest = j;
        for (std::size_t t = wires.size(); t-- > 0;) {
            offsets[j] += (rest % dim) * strides[wires[t]];
            rest /= dim;
        }
    }
    return offsets;
}

/// Flat indices whose digits on `wires` are all zero.
inline std::vector<std::size_t> block_bases(std::size_t dim,
                                            std::span<const std::size_t> strides,
                                            std::span<const std::size_t> wires) {
    std::vector<std::size_t> bases{0};
    for (std::size_t w = 0; w < strides.size(); ++w) {
        if (std::find(wires.begin(), wires.end(), w) != wires.end()) {
            continue;
        }
        const std::size_t count = bases.size();
        for (std::size_t v = 1; v < dim; ++v) {
            for (std::size_t i = 0; i < count; ++i) {
                bases.push_back(bases[i] + v * strides[w]);
            }
        }
    }
    return bases;
}

/**
 * Adds `op` (d^k x d^k, k = wires.size()) applied to `wires` of an amplitude
 * vector over `num_wires` qudits, identity elsewhere, into `out`. The local
 * basis of `op` takes wires[0] as its most significant digit, so permuted and
 * non-adjacent wire lists are both supported. Exact zeros of `op` are
 * skipped, which makes permutation-like operators linear in the vector size.
 */
inline void apply_local_into(std::span<const Complex> amps, std::size_t dim,
                             std::size_t num_wires, const ComplexMatrix &op,
                             std::span<const std::size_t> wires, std::span<Complex> out) {
    check_wires(wires, num_wires);
    const std::size_t local_dim = ipow(dim, wires.size());
    if (op.rows() != local_dim || op.cols() != local_dim) {
        throw std::invalid_argument("operator shape " + std::to_string(op.rows()) +
                                    "x" + std::to_string(op.cols()) +
                                    " does not match " +
                                    std::to_string(wires.size()) + " wire(s) of dimension " +
                                    std::to_string(dim));
    }
    if (amps.size() != ipow(dim, num_wires) || out.size() != amps.size()) {
        throw std::invalid_argument("amplitude vector has wrong length");
    }

    const auto strides = wire_strides(dim, num_wires);
    const auto offsets = local_offsets(dim, strides, wires);
    struct Entry {
        std::size_t row;
        std::size_t col;
        Complex value;
    };
    std::vector<Entry> nonzeros;
    for (std::size_t r = 0; r < local_dim; ++r) {
        for (std::size_t c = 0; c < local_dim; ++c) {
            if (op(r, c) != Complex{}) {
                nonzeros.push_back({offsets[r], offsets[c], op(r, c)});
            }
        }
    }
    const auto bases = block_bases(dim, strides, wires);

    for (const auto base : bases) {
        for (const auto &e : nonzeros) {
            out[base + e.row] += fast_mul(e.value, amps[base + e.col]);
        }
    }
}

inline std::vector<Complex> apply_local(std::span<const Complex> amps,
                                        std::size_t dim, std::size_t num_wires,
                                        const ComplexMatrix &op,
                                        std::span<const std::size_t> wires) {
    std::vector<Complex> out(amps.size());
    apply_local_into(amps, dim, num_wires, op, wires, out);
    return out;
}

} // namespace detail

class PureState;
class DensityMatrix;

struct MeasurementBranch;

PureState embed_apply(const PureState &state, const ComplexMatrix &gate,
                      std::span<const std::size_t> wires);
MeasurementBranch measure_project(const PureState &state,
                                  std::span<const std::size_t> wires,
                                  std::span<const int> outcome);
PureState tensor(const PureState &a, const PureState &b);

/// Normalized state vector over (Z_d)^n.
class PureState {
  public:
    PureState(int dim, std::size_t num_wires, std::vector<Complex> amplitudes)
        : PureState(unchecked_tag{}, dim, num_wires, std::move(amplitudes)) {
        if (std::abs(norm_squared() - 1.0) > kIdentityTolerance) {
            throw std::invalid_argument("PureState: amplitudes not normalized");
        }
    }

    /// Computational basis state |dits[0] dits[1] ...>.
    static PureState basis(int dim, std::span<const int> dits) {
        detail::check_dim(dim);
        if (dits.empty()) {
            throw std::invalid_argument("PureState: need at least one wire");
        }
        std::vector<Complex> amps(ipow(static_cast<std::size_t>(dim), dits.size()));
        amps[index_of(dim, dits)] = 1.0;
        return PureState(dim, dits.size(), std::move(amps));
    }
    static PureState basis(int dim, std::initializer_list<int> dits) {
        return basis(dim, std::span<const int>(dits.begin(), dits.size()));
    }

    static std::size_t index_of(int dim, std::span<const int> dits) {
        std::size_t index = 0;
        for (const int q : dits) {
            if (q < 0 || q >= dim) {
                throw std::out_of_range("dit " + std::to_string(q) +
                                        " out of range for d=" + std::to_string(dim));
            }
            index = index * static_cast<std::size_t>(dim) + static_cast<std::size_t>(q);
        }
        return index;
    }

    [[nodiscard]] Dits digits_of(std::size_t index) const {
        Dits out(num_wires_);
        for (std::size_t w = num_wires_; w-- > 0;) {
            out[w] = static_cast<int>(index % static_cast<std::size_t>(dim_));
            index /= static_cast<std::size_t>(dim_);
        }
        return out;
    }

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] std::size_t num_wires() const { return num_wires_; }
    [[nodiscard]] std::size_t size() const { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amps_; }
    [[nodiscard]] Complex amplitude(std::size_t index) const { return amps_.at(index); }
    [[nodiscard]] Complex amplitude(std::initializer_list<int> dits) const {
        return amps_.at(index_of(dim_, std::span<const int>(dits.begin(), dits.size())));
    }

    [[nodiscard]] double norm_squared() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

  private:
    struct unchecked_tag {};

    PureState(unchecked_tag, int dim, std::size_t num_wires,
              std::vector<Complex> amplitudes)
        : dim_(dim), num_wires_(num_wires), amps_(std::move(amplitudes)) {
        detail::check_dim(dim);
        if (num_wires == 0) {
            throw std::invalid_argument("PureState: need at least one wire");
        }
        if (amps_.size() != ipow(static_cast<std::size_t>(dim), num_wires)) {
            throw std::invalid_argument("PureState: expected d^n amplitudes");
        }
    }

    friend PureState embed_apply(const PureState &, const ComplexMatrix &,
                                 std::span<const std::size_t>);
    friend MeasurementBranch measure_project(const PureState &,
                                             std::span<const std::size_t>,
                                             std::span<const int>);
    friend PureState tensor(const PureState &, const PureState &);

    int dim_;
    std::size_t num_wires_;
    std::vector<Complex> amps_;
};

/// Result of projecting onto one measurement outcome. `state` is empty when
/// the branch has (numerically) zero probability.
struct MeasurementBranch {
    double probability;
    std::optional<PureState> state;
};

/// <a|b>.
inline Complex inner(const PureState &a, const PureState &b) {
    if (a.dim() != b.dim() || a.num_wires() != b.num_wires()) {
        throw std::invalid_argument("inner: state shapes differ");
    }
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    }
    return s;
}

/// Largest entrywise modulus between two states' amplitudes.
inline double max_abs_diff(const PureState &a, const PureState &b) {
    if (a.dim() != b.dim() || a.num_wires() != b.num_wires()) {
        throw std::invalid_argument("max_abs_diff: state shapes differ");
    }
    double out = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        out = std::max(out, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
    }
    return out;
}

inline PureState tensor(const PureState &a, const PureState &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("tensor: qudit dimensions differ");
    }
    std::vector<Complex> amps(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            amps[i * b.size() + j] = a.amplitudes()[i] * b.amplitudes()[j];
        }
    }
    return PureState(PureState::unchecked_tag{}, a.dim(),
                     a.num_wires() + b.num_wires(), std::move(amps));
}

/// Applies `gate` to the listed wires. Norm is preserved for unitary gates.
inline PureState embed_apply(const PureState &state, const ComplexMatrix &gate,
                             std::span<const std::size_t> wires) {
    auto amps = detail::apply_local(state.amplitudes(),
                                    static_cast<std::size_t>(state.dim()),
                                    state.num_wires(), gate, wires);
    return PureState(PureState::unchecked_tag{}, state.dim(), state.num_wires(),
                     std::move(amps));
}
inline PureState embed_apply(const PureState &state, const ComplexMatrix &gate,
                             std::initializer_list<std::size_t> wires) {
    return embed_apply(state, gate, std::span<const std::size_t>(wires.begin(), wires.size()));
}

/// Projects `wires` onto `outcome` and renormalizes the surviving branch.
inline MeasurementBranch measure_project(const PureState &state,
                                         std::span<const std::size_t> wires,
                                         std::span<const int> outcome) {
    detail::check_wires(wires, state.num_wires());
    if (outcome.size() != wires.size()) {
        throw std::invalid_argument("measure_project: outcome/wire count mismatch");
    }
    for (const int q : outcome) {
        if (q < 0 || q >= state.dim()) {
            throw std::out_of_range("measure_project: outcome dit " +
                                    std::to_string(q) + " out of range");
        }
    }
    std::vector<Complex> projected(state.size());
    double probability = 0.0;
    for (std::size_t index = 0; index < state.size(); ++index) {
        const Dits digits = state.digits_of(index);
        bool match = true;
        for (std::size_t t = 0; t < wires.size(); ++t) {
            if (digits[wires[t]] != outcome[t]) {
                match = false;
                break;
            }
        }
        if (match) {
            projected[index] = state.amplitudes()[index];
            probability += std::norm(projected[index]);
        }
    }
    if (probability <= kZeroProbability) {
        return {0.0, std::nullopt};
    }
    const double scale = 1.0 / std::sqrt(probability);
    for (auto &a : projected) {
        a *= scale;
    }
    return {probability, PureState(PureState::unchecked_tag{}, state.dim(),
                                   state.num_wires(), std::move(projected))};
}
inline MeasurementBranch measure_project(const PureState &state,
                                         std::initializer_list<std::size_t> wires,
                                         std::initializer_list<int> outcome) {
    return measure_project(state, std::span<const std::size_t>(wires.begin(), wires.size()),
                           std::span<const int>(outcome.begin(), outcome.size()));
}

/// Full d^n x d^n matrix of `op` acting on `wires` of an n-qudit register.
inline ComplexMatrix embed_operator(const ComplexMatrix &op, int dim,
                                    std::size_t num_wires,
                                    std::span<const std::size_t> wires) {
    const std::size_t n = ipow(static_cast<std::size_t>(dim), num_wires);
    ComplexMatrix out(n, n);
    std::vector<Complex> column(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::fill(column.begin(), column.end(), Complex{});
        column[c] = 1.0;
        const auto image = detail::apply_local(column, static_cast<std::size_t>(dim),
                                               num_wires, op, wires);
        for (std::size_t r = 0; r < n; ++r) {
            out(r, c) = image[r];
        }
    }
    return out;
}
inline ComplexMatrix embed_operator(const ComplexMatrix &op, int dim,
                                    std::size_t num_wires,
                                    std::initializer_list<std::size_t> wires) {
    return embed_operator(op, dim, num_wires,
                          std::span<const std::size_t>(wires.begin(), wires.size()));
}

DensityMatrix apply_channel(const DensityMatrix &rho,
                            std::span<const ComplexMatrix> ops,
                            std::span<const std::size_t> wires);

/// Mixed state over (Z_d)^n: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
  public:
    DensityMatrix(int dim, std::size_t num_wires, ComplexMatrix matrix)
        : DensityMatrix(unchecked_tag{}, dim, num_wires, std::move(matrix)) {
        if (!is_hermitian(matrix_)) {
            throw std::invalid_argument("DensityMatrix: not Hermitian");
        }
        if (std::abs(matrix_.trace() - Complex{1.0}) > kIdentityTolerance) {
            throw std::invalid_argument("DensityMatrix: trace is not 1");
        }
        if (min_eigenvalue(matrix_) < kEigenvalueFloor) {
            throw std::invalid_argument("DensityMatrix: negative eigenvalue");
        }
    }

    static DensityMatrix from_pure(const PureState &psi) {
        ComplexMatrix m(psi.size(), psi.size());
        const auto a = psi.amplitudes();
        for (std::size_t r = 0; r < psi.size(); ++r) {
            for (std::size_t c = 0; c < psi.size(); ++c) {
                m(r, c) = a[r] * std::conj(a[c]);
            }
        }
        return DensityMatrix(unchecked_tag{}, psi.dim(), psi.num_wires(), std::move(m));
    }

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] std::size_t num_wires() const { return num_wires_; }
    [[nodiscard]] const ComplexMatrix &matrix() const { return matrix_; }
    [[nodiscard]] double trace() const { return matrix_.trace().real(); }

  private:
    struct unchecked_tag {};

    DensityMatrix(unchecked_tag, int dim, std::size_t num_wires, ComplexMatrix matrix)
        : dim_(dim), num_wires_(num_wires), matrix_(std::move(matrix)) {
        detail::check_dim(dim);
        const std::size_t n = ipow(static_cast<std::size_t>(dim), num_wires);
        if (num_wires == 0 || matrix_.rows() != n || matrix_.cols() != n) {
            throw std::invalid_argument("DensityMatrix: expected d^n x d^n matrix");
        }
    }

    friend DensityMatrix apply_channel(const DensityMatrix &,
                                       std::span<const ComplexMatrix>,
                                       std::span<const std::size_t>);

    int dim_;
    std::size_t num_wires_;
    ComplexMatrix matrix_;
};

/**
 * rho -> sum_k O_k rho O_k^dagger with every O_k acting on `wires`.
 *
 * The matrix is treated as a row-major vector over 2n wires, so O rho O^dagger
 * is O on the row wires followed by conj(O) on the column wires.
 */
inline DensityMatrix apply_channel(const DensityMatrix &rho,
                                   std::span<const ComplexMatrix> ops,
                                   std::span<const std::size_t> wires) {
    const std::size_t n = rho.num_wires();
    const auto d = static_cast<std::size_t>(rho.dim());
    detail::check_wires(wires, n);
    Wires column_wires(wires.begin(), wires.end());
    for (auto &w : column_wires) {
        w += n;
    }
    const std::size_t side = rho.matrix().rows();
    ComplexMatrix out(side, side);
    // O rho O^dagger in one pass over pairs of nonzeros (row entry of O,
    // column entry of conj(O)).
    Wires both(wires.begin(), wires.end());
    both.insert(both.end(), column_wires.begin(), column_wires.end());
    const auto strides = detail::wire_strides(d, 2 * n);
    const auto row_off = detail::local_offsets(d, strides, wires);
    const auto col_off = detail::local_offsets(d, strides, column_wires);
    const auto bases = detail::block_bases(d, strides, both);
    const std::size_t local_dim = row_off.size();
    const auto in = rho.matrix().data();
    auto dst = out.data();
    struct Entry {
        std::size_t out_row;
        std::size_t out_col;
        std::size_t in_row;
        std::size_t in_col;
        Complex value;
    };
    std::vector<Entry> pairs;
    std::vector<std::pair<std::size_t, std::size_t>> nonzeros;
    for (const auto &op : ops) {
        if (op.rows() != local_dim || op.cols() != local_dim) {
            throw std::invalid_argument("apply_channel: operator shape does not match wires");
        }
        nonzeros.clear();
        for (std::size_t r = 0; r < local_dim; ++r) {
            for (std::size_t c = 0; c < local_dim; ++c) {
                if (op(r, c) != Complex{}) {
                    nonzeros.push_back({r, c});
                }
            }
        }
        pairs.clear();
        for (const auto &[r, c] : nonzeros) {
            for (const auto &[r2, c2] : nonzeros) {
                pairs.push_back({row_off[r], col_off[r2], row_off[c], col_off[c2],
                                 op(r, c) * std::conj(op(r2, c2))});
            }
        }
        for (const auto base : bases) {
            for (const auto &e : pairs) {
                dst[base + e.out_row + e.out_col] +=
                    detail::fast_mul(e.value, in[base + e.in_row + e.in_col]);
            }
        }
    }
    return DensityMatrix(DensityMatrix::unchecked_tag{}, rho.dim(), n, std::move(out));
}

/// rho -> sum_k O_k rho O_k^dagger with full-register operators.
inline DensityMatrix evolve_density(const DensityMatrix &rho,
                                    std::span<const ComplexMatrix> ops) {
    Wires all(rho.num_wires());
    for (std::size_t w = 0; w < all.size(); ++w) {
        all[w] = w;
    }
    return apply_channel(rho, ops, all);
}
inline DensityMatrix evolve_density(const DensityMatrix &rho,
                                    std::initializer_list<ComplexMatrix> ops) {
    return evolve_density(rho, std::span<const ComplexMatrix>(ops.begin(), ops.size()));
}

/// rho -> U rho U^dagger with U on `wires`.
inline DensityMatrix apply_unitary(const DensityMatrix &rho, const ComplexMatrix &u,
                                   std::span<const std::size_t> wires) {
    return apply_channel(rho, std::span<const ComplexMatrix>(&u, 1), wires);
}
inline DensityMatrix apply_unitary(const DensityMatrix &rho, const ComplexMatrix &u,
                                   std::initializer_list<std::size_t> wires) {
    return apply_unitary(rho, u, std::span<const std::size_t>(wires.begin(), wires.size()));
}

/// <psi|rho|psi>, clamped to [0, 1].
inline double fidelity_pure(const PureState &ket, const DensityMatrix &rho) {
    if (ket.dim() != rho.dim() || ket.num_wires() != rho.num_wires()) {
        throw std::invalid_argument("fidelity_pure: dimension mismatch");
    }
    const auto a = ket.amplitudes();
    const auto &m = rho.matrix();
    Complex s = 0.0;
    for (std::size_t r = 0; r < ket.size(); ++r) {
        if (a[r] == Complex{}) {
            continue;
        }
        for (std::size_t c = 0; c < ket.size(); ++c) {
            s += std::conj(a[r]) * m(r, c) * a[c];
        }
    }
    return std::clamp(s.real(), 0.0, 1.0);
}

} // namespace qudit
