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
#include <random>
#include <vector>

#include "catch_amalgamated.hpp"

#include "qudit/linalg.hpp"

using namespace qudit;

namespace {

ComplexMatrix random_matrix(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = {g(rng), g(rng)};
    return m;
}

std::vector<Complex> random_vector(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<Complex> v(n);
    double s = 0;
    for (auto &a : v) {
        a = {g(rng), g(rng)};
        s += std::norm(a);
    }
    for (auto &a : v) a /= std::sqrt(s);
    return v;
}

// Reference kron straight from (A (x) B)[(i,k),(j,l)] = A[i,j] B[k,l].
ComplexMatrix kron_oracle(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

} // namespace

TEST_CASE("matrix product matches the triple loop") {
    std::mt19937_64 rng(1);
    const auto a = random_matrix(5, rng);
    const auto b = random_matrix(5, rng);
    const auto p = a * b;
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 5; ++c) {
            Complex s = 0;
            for (std::size_t k = 0; k < 5; ++k) s += a(r, k) * b(k, c);
            CHECK(std::abs(p(r, c) - s) < 1e-12);
        }
}

TEST_CASE("tensor product against the index formula") {
    std::mt19937_64 rng(2);
    const auto a = random_matrix(3, rng);
    const auto b = random_matrix(2, rng);
    CHECK(max_abs_diff(tensor(a, b), kron_oracle(a, b)) < 1e-15);
    // mixed-product property
    const auto c = random_matrix(3, rng);
    const auto d = random_matrix(2, rng);
    CHECK(max_abs_diff(tensor(a, b) * tensor(c, d), tensor(a * c, b * d)) < 1e-12);
}

TEST_CASE("adjoint, trace and predicates") {
    const ComplexMatrix m{{1.0, Complex(0, 2)}, {3.0, 4.0}};
    const auto a = m.adjoint();
    CHECK(a(0, 1) == Complex(3.0));
    CHECK(a(1, 0) == Complex(0, -2));
    CHECK(m.trace() == Complex(5.0));
    CHECK(is_identity(ComplexMatrix::identity(4)));
    CHECK_FALSE(is_unitary(m));
    CHECK(is_hermitian(m + m.adjoint()));
    CHECK(approx_equal(matrix_power(m, 0), ComplexMatrix::identity(2)));
    CHECK(approx_equal(matrix_power(m, 3), m * m * m));
}

TEST_CASE("shape mismatch throws") {
    ComplexMatrix a(2, 3);
    ComplexMatrix b(2, 2);
    CHECK_THROWS_AS(a * a, std::invalid_argument);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS(ComplexMatrix{{1.0, 2.0}, {3.0}});
}

TEST_CASE("embed_apply equals the full embedded operator") {
    std::mt19937_64 rng(3);
    const int d = 3;
    const auto op = random_matrix(9, rng);
    const auto amps = random_vector(27, rng);
    const PureState psi(d, 3, amps);
    // wires (2, 0): local digit 0 is wire 2
    const Wires wires{2, 0};
    const auto full = embed_operator(op, d, 3, wires);
    std::vector<Complex> expect(27);
    for (std::size_t r = 0; r < 27; ++r)
        for (std::size_t c = 0; c < 27; ++c) expect[r] += full(r, c) * amps[c];

    // independent construction of the same embedding by index bookkeeping
    for (std::size_t r = 0; r < 27; ++r) {
        const std::size_t w0 = r / 9, w1 = (r / 3) % 3, w2 = r % 3;
        Complex s = 0;
        for (std::size_t a2 = 0; a2 < 3; ++a2)
            for (std::size_t a0 = 0; a0 < 3; ++a0)
                s += op(w2 * 3 + w0, a2 * 3 + a0) * amps[a0 * 9 + w1 * 3 + a2];
        CHECK(std::abs(s - expect[r]) < 1e-12);
    }

    // non-unitary op gives an unnormalized vector, so compare with a unitary
    ComplexMatrix swap(9, 9);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) swap(j * 3 + i, i * 3 + j) = 1.0;
    const auto out = embed_apply(psi, swap, wires);
    CHECK(std::abs(out.amplitude({0, 1, 2}) - psi.amplitude({2, 1, 0})) < 1e-15);
}

TEST_CASE("basis states and digit order") {
    const auto s = PureState::basis(4, {1, 2, 3});
    CHECK(PureState::index_of(4, std::vector<int>{1, 2, 3}) == 1 * 16 + 2 * 4 + 3);
    CHECK(s.amplitude({1, 2, 3}) == Complex(1.0));
    CHECK(s.digits_of(27) == Dits{1, 2, 3});
    CHECK_THROWS_AS(PureState::basis(3, {3}), std::out_of_range);
    CHECK_THROWS_AS(PureState(2, 1, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("measurement branches sum to one and renormalize") {
    std::mt19937_64 rng(4);
    const PureState psi(3, 2, random_vector(9, rng));
    double total = 0;
    for (int a = 0; a < 3; ++a) {
        const auto br = measure_project(psi, Wires{0}, Dits{a});
        double expect = 0;
        for (int b = 0; b < 3; ++b) expect += std::norm(psi.amplitude({a, b}));
        CHECK(std::abs(br.probability - expect) < 1e-14);
        REQUIRE(br.state);
        CHECK(std::abs(br.state->norm_squared() - 1.0) < 1e-12);
        total += br.probability;
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
    const auto zero = measure_project(PureState::basis(3, {0, 0}), Wires{1}, Dits{2});
    CHECK(zero.probability == 0.0);
    CHECK_FALSE(zero.state);
}

TEST_CASE("density matrix validation and channels") {
    std::mt19937_64 rng(5);
    const PureState psi(2, 2, random_vector(4, rng));
    const auto rho = DensityMatrix::from_pure(psi);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);

    ComplexMatrix not_psd{{1.5, 0.0}, {0.0, -0.5}};
    CHECK_THROWS_AS(DensityMatrix(2, 1, not_psd), std::invalid_argument);
    ComplexMatrix not_herm{{0.5, 0.1}, {0.0, 0.5}};
    CHECK_THROWS_AS(DensityMatrix(2, 1, not_herm), std::invalid_argument);

    // U rho U^dagger via apply_unitary equals the explicit product
    const auto u = embed_operator(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}, 2, 2, Wires{1});
    const auto evolved = apply_unitary(rho, ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}, {1});
    CHECK(max_abs_diff(evolved.matrix(), u * rho.matrix() * u.adjoint()) < 1e-14);

    // fidelity of a pure state with itself
    CHECK(std::abs(fidelity_pure(psi, rho) - 1.0) < 1e-12);

    // full dephasing channel keeps the diagonal only
    const double h = std::sqrt(0.5);
    const std::vector<ComplexMatrix> ks{ComplexMatrix{{h, 0.0}, {0.0, h}},
                                        ComplexMatrix{{h, 0.0}, {0.0, -h}}};
    const auto deph = apply_channel(rho, ks, Wires{0});
    CHECK(std::abs(deph.trace() - 1.0) < 1e-12);
    CHECK(std::abs(deph.matrix()(0, 2)) < 1e-15);
    CHECK(std::abs(deph.matrix()(0, 0) - rho.matrix()(0, 0)) < 1e-15);
}

TEST_CASE("min eigenvalue of a known spectrum") {
    ComplexMatrix m{{2.0, Complex(0, 1)}, {Complex(0, -1), 2.0}};
    CHECK(std::abs(min_eigenvalue(m) - 1.0) < 1e-12);
}
