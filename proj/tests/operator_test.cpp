// Copyright 2026 The rangedim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rangedim/operator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "oracles.hpp"
#include "rangedim/errors.hpp"

using namespace rangedim;

namespace {

ComplexMatrix diag(std::initializer_list<double> values) {
  ComplexMatrix m = ComplexMatrix::Zero(Eigen::Index(values.size()), Eigen::Index(values.size()));
  Eigen::Index k = 0;
  for (double v : values) m(k, k) = v, ++k;
  return m;
}

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

}  // namespace

TEST(tensor_product, identity_times_identity) {
  EXPECT_EQ(tensor_product(identity(2), identity(2)), identity(4));
}

TEST(tensor_product, diagonal_factors) {
  EXPECT_EQ(tensor_product(diag({1, 0}), diag({0.3, 0.7})), diag({0.3, 0.7, 0, 0}));
}

TEST(tensor_product, matches_four_index_loop) {
  const ComplexMatrix a = oracle::seeded_matrix(2, 2, 11);
  const ComplexMatrix b = oracle::seeded_matrix(2, 2, 12);
  const ComplexMatrix got = tensor_product(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) EXPECT_EQ(got(i * 2 + j, k * 2 + l), a(i, k) * b(j, l));
  EXPECT_EQ(tensor_product(oracle::seeded_matrix(3, 2, 1), oracle::seeded_matrix(2, 4, 2)),
            oracle::kron_loop(oracle::seeded_matrix(3, 2, 1), oracle::seeded_matrix(2, 4, 2)));
}

TEST(tensor_product, associative_exactly_on_dyadic_entries) {
  // Entries are small dyadic rationals, so every product is exact and the
  // two groupings must agree bit for bit.
  std::mt19937 engine(9);
  std::uniform_int_distribution<int> pick(-8, 8);
  const auto dyadic = [&](Eigen::Index r, Eigen::Index c) {
    ComplexMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = {pick(engine) / 4.0, pick(engine) / 4.0};
    return m;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = dyadic(2, 3);
    const auto b = dyadic(3, 2);
    const auto c = dyadic(2, 2);
    ASSERT_EQ(tensor_product(tensor_product(a, b), c), tensor_product(a, tensor_product(b, c)));
  }
}

TEST(tensor_product, associative_to_rounding_on_random_entries) {
  for (unsigned seed = 0; seed < 20; ++seed) {
    const auto a = oracle::seeded_matrix(2, 3, seed);
    const auto b = oracle::seeded_matrix(3, 2, seed + 100);
    const auto c = oracle::seeded_matrix(2, 2, seed + 200);
    const auto left = tensor_product(tensor_product(a, b), c);
    const auto right = tensor_product(a, tensor_product(b, c));
    ASSERT_EQ(left.rows(), right.rows());
    for (Eigen::Index r = 0; r < left.rows(); ++r)
      for (Eigen::Index k = 0; k < left.cols(); ++k)
        ASSERT_LE(std::abs(left(r, k) - right(r, k)), 1e-15);
  }
}

TEST(tensor_product, rejects_oversized_result) {
  const ComplexMatrix big = ComplexMatrix::Zero(65, 1);
  EXPECT_THROW(tensor_product(big, big), SizingError);
  EXPECT_NO_THROW(tensor_product(ComplexMatrix::Zero(64, 1), ComplexMatrix::Zero(64, 1)));
}

TEST(hermitian_eigensystem, diagonal) {
  const auto es = hermitian_eigensystem(diag({0.5, 0.5}));
  ASSERT_EQ(es.eigenvalues.size(), 2u);
  EXPECT_DOUBLE_EQ(es.eigenvalues[0], 0.5);
  EXPECT_DOUBLE_EQ(es.eigenvalues[1], 0.5);
}

TEST(hermitian_eigensystem, pauli_x) {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const auto es = hermitian_eigensystem(x);
  EXPECT_NEAR(es.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues[1], 1.0, 1e-14);
}

TEST(hermitian_eigensystem, reconstruction_and_orthonormality) {
  for (unsigned seed = 0; seed < 50; ++seed) {
    const ComplexMatrix a = oracle::seeded_matrix(4, 4, seed);
    const ComplexMatrix h = (a + a.adjoint()) * 0.5;
    const auto es = hermitian_eigensystem(h);
    ASSERT_TRUE(std::is_sorted(es.eigenvalues.begin(), es.eigenvalues.end()));
    const auto& v = es.eigenvectors;
    ComplexMatrix lambda = ComplexMatrix::Zero(4, 4);
    for (int k = 0; k < 4; ++k) lambda(k, k) = es.eigenvalues[std::size_t(k)];
    const double floor = std::max(1e-12, 1e-10 * h.norm());
    EXPECT_LT(oracle::frobenius_loop(v * lambda * v.adjoint(), h), floor);
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) {
        const Complex ip = v.col(p).dot(v.col(q));
        EXPECT_LT(std::abs(ip - Complex(p == q ? 1.0 : 0.0)), 1e-10);
      }
  }
}

TEST(hermitian_eigensystem, eigenvalue_sum_is_trace) {
  for (unsigned seed = 0; seed < 50; ++seed) {
    const ComplexMatrix rho = oracle::seeded_density(5, seed);
    const auto es = hermitian_eigensystem(rho);
    double sum = 0.0;
    for (double v : es.eigenvalues) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-10);
  }
}

TEST(hermitian_eigensystem, deterministic_for_identical_input) {
  const ComplexMatrix rho = oracle::seeded_density(6, 3);
  const auto a = hermitian_eigensystem(rho);
  const auto b = hermitian_eigensystem(rho);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(hermitian_eigensystem, errors) {
  EXPECT_THROW(hermitian_eigensystem(ComplexMatrix::Zero(2, 3)), ShapeError);
  ComplexMatrix m(2, 2);
  m << 1, 1, 0, 1;
  EXPECT_THROW(hermitian_eigensystem(m), SymmetryError);
}

TEST(numerical_rank, examples) {
  EXPECT_EQ(numerical_rank(identity(4) / 4.0), 4u);
  EXPECT_EQ(numerical_rank(diag({1, 0, 0, 0})), 1u);
  // 0.5 |00><00| + 0.5 |Phi+><Phi+|
  ComplexMatrix phi = ComplexMatrix::Zero(4, 1);
  phi(0, 0) = phi(3, 0) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix mix = 0.5 * diag({1, 0, 0, 0}) + 0.5 * phi * phi.adjoint();
  EXPECT_EQ(oracle::elimination_rank(mix), 2u);
  EXPECT_EQ(numerical_rank(mix), 2u);
}

TEST(numerical_rank, threshold_is_relative_with_unit_floor) {
  EXPECT_EQ(numerical_rank(diag({1.0, 2e-9})), 2u);
  EXPECT_EQ(numerical_rank(diag({1.0, 5e-10})), 1u);
  EXPECT_EQ(numerical_rank(diag({1e-3, 5e-10})), 1u);  // floor of 1 applies
  EXPECT_EQ(numerical_rank(diag({1.0, 1e-6}), 1e-5), 1u);
}

TEST(numerical_rank, negative_eigenvalue_is_an_error) {
  EXPECT_THROW(numerical_rank(diag({1.0, -1e-6})), NegativityError);
  EXPECT_EQ(numerical_rank(diag({1.0, -1e-12})), 1u);
}

TEST(numerical_rank, invariant_under_random_unitary_conjugation) {
  for (unsigned trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 2 + trial % 7;
    const Eigen::Index k = 1 + trial % n;
    const ComplexMatrix g = oracle::seeded_matrix(n, k, trial);
    const ComplexMatrix gg = g * g.adjoint();
    const ComplexMatrix h = (gg + gg.adjoint()) * 0.5 / gg.trace().real();
    const ComplexMatrix u = random_unitary(std::size_t(n), trial + 1);
    const ComplexMatrix raw = u * h * u.adjoint();
    const ComplexMatrix conj = (raw + raw.adjoint()) * 0.5;
    ASSERT_EQ(numerical_rank(conj), numerical_rank(h)) << "trial " << trial;
    ASSERT_EQ(numerical_rank(h), std::size_t(k));
  }
}

TEST(frobenius_distance, examples) {
  const ComplexMatrix m = oracle::seeded_matrix(3, 3, 5);
  EXPECT_EQ(frobenius_distance(m, m), 0.0);
  EXPECT_DOUBLE_EQ(frobenius_distance(diag({1, 0}), diag({0, 1})), std::sqrt(2.0));
  const ComplexMatrix a = oracle::seeded_matrix(4, 3, 6);
  const ComplexMatrix b = oracle::seeded_matrix(4, 3, 7);
  EXPECT_NEAR(frobenius_distance(a, b), oracle::frobenius_loop(a, b), 1e-14);
  EXPECT_THROW(frobenius_distance(a, m), ShapeError);
}

TEST(random_unitary, scalar_has_unit_modulus) {
  const ComplexMatrix u = random_unitary(1, 42);
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-14);
}

TEST(random_unitary, unitary_and_deterministic) {
  for (std::size_t dim = 1; dim <= 8; ++dim) {
    for (std::uint64_t seed = 1; seed < 10; ++seed) {
      const ComplexMatrix u = random_unitary(dim, seed);
      EXPECT_LT(oracle::frobenius_loop(u.adjoint() * u, identity(Eigen::Index(dim))), 1e-10);
      EXPECT_EQ(u, random_unitary(dim, seed));
    }
  }
  EXPECT_NE(random_unitary(3, 1), random_unitary(3, 2));
  EXPECT_THROW(random_unitary(0, 1), SizingError);
}

TEST(derive_seed, distinct_streams) {
  EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
  EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
  EXPECT_NE(derive_seed(1, {2}), derive_seed(2, {2}));
}
