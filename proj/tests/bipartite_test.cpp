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

#include "rangedim/bipartite.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "oracles.hpp"
#include "rangedim/constructions.hpp"
#include "rangedim/errors.hpp"

using namespace rangedim;

namespace {

ComplexMatrix ket(std::size_t n, std::initializer_list<std::pair<std::size_t, Complex>> entries) {
  ComplexMatrix v = ComplexMatrix::Zero(Eigen::Index(n), 1);
  for (const auto& [i, a] : entries) v(Eigen::Index(i), 0) = a;
  return v;
}

DensityOperator bell() {
  const double s = 1.0 / std::sqrt(2.0);
  return DensityOperator::pure({2, 2}, ket(4, {{0, s}, {3, s}}));
}

ComplexMatrix diag(std::initializer_list<double> values) {
  ComplexMatrix m = ComplexMatrix::Zero(Eigen::Index(values.size()), Eigen::Index(values.size()));
  Eigen::Index k = 0;
  for (double v : values) m(k, k) = v, ++k;
  return m;
}

DensityOperator product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return DensityOperator::from_matrix({std::size_t(a.rows()), std::size_t(b.rows())},
                                      tensor_product(a, b));
}

DensityOperator seeded_state(std::size_t da, std::size_t db, unsigned seed) {
  return DensityOperator::from_matrix({da, db}, oracle::seeded_density(Eigen::Index(da * db), seed));
}

}  // namespace

TEST(density_operator, validation_names_the_invariant) {
  const auto invariant_of = [](BipartiteDims dims, const ComplexMatrix& m) {
    try {
      DensityOperator::from_matrix(dims, m);
    } catch (const ValidationError& e) {
      return e.invariant();
    }
    return std::string("valid");
  };
  EXPECT_EQ(invariant_of({2, 2}, diag({0.5, 0.5})), "shape");
  EXPECT_EQ(invariant_of({1, 2}, diag({0.6, 0.6})), "trace");
  EXPECT_EQ(invariant_of({1, 2}, diag({1.5, -0.5})), "positivity");
  ComplexMatrix asym = diag({0.5, 0.5});
  asym(0, 1) = 0.1;
  EXPECT_EQ(invariant_of({1, 2}, asym), "hermitian");
  ComplexMatrix nan = diag({0.5, 0.5});
  nan(1, 1) = std::nan("");
  EXPECT_EQ(invariant_of({1, 2}, nan), "finite");
  EXPECT_EQ(invariant_of({1, 2}, diag({0.5, 0.5})), "valid");
  EXPECT_THROW(DensityOperator::from_matrix({0, 2}, diag({1})), SizingError);
  EXPECT_THROW(DensityOperator::from_matrix({65, 64}, diag({1})), SizingError);
}

TEST(density_operator, pure_requires_unit_norm) {
  EXPECT_THROW(DensityOperator::pure({2, 2}, ket(4, {{0, 1.0}, {1, 1.0}})), NormalizationError);
  EXPECT_THROW(DensityOperator::pure({2, 2}, ket(3, {{0, 1.0}})), ShapeError);
}

TEST(partial_trace, bell_state_reduces_to_maximally_mixed) {
  const ComplexMatrix half = diag({0.5, 0.5});
  EXPECT_LT(frobenius_distance(partial_trace_over_2(bell()), half), 1e-15);
  EXPECT_LT(frobenius_distance(partial_trace_over_1(bell()), half), 1e-15);
}

TEST(partial_trace, recovers_product_factors) {
  const ComplexMatrix a = oracle::seeded_density(3, 1);
  const ComplexMatrix b = oracle::seeded_density(2, 2);
  const DensityOperator rho = product(a, b);
  EXPECT_LT(frobenius_distance(partial_trace_over_2(rho), a), 1e-12);
  EXPECT_LT(frobenius_distance(partial_trace_over_1(rho), b), 1e-12);
}

TEST(partial_trace, matches_index_loop_oracle) {
  for (unsigned seed = 0; seed < 20; ++seed) {
    const DensityOperator rho = seeded_state(3, 2, seed);
    EXPECT_LT(frobenius_distance(partial_trace_over_2(rho), oracle::trace_out_b(rho.matrix(), 3, 2)),
              1e-12);
    EXPECT_LT(frobenius_distance(partial_trace_over_1(rho), oracle::trace_out_a(rho.matrix(), 3, 2)),
              1e-12);
  }
}

TEST(partial_trace, reduced_operators_are_states) {
  for (unsigned seed = 0; seed < 100; ++seed) {
    const std::size_t da = 1 + seed % 4;
    const std::size_t db = 1 + (seed / 4) % 4;
    const DensityOperator rho = sample_random_state({da, db}, 1 + seed % (da * db), seed);
    for (const ComplexMatrix& red : {partial_trace_over_2(rho), partial_trace_over_1(rho)}) {
      EXPECT_LE(hermitian_deviation(red), 1e-10);
      EXPECT_NEAR(red.trace().real(), 1.0, 1e-10);
      EXPECT_GE(hermitian_eigensystem(red).eigenvalues.front(), -1e-10);
    }
  }
}

TEST(rank_triple, examples) {
  EXPECT_EQ(rank_triple(bell()), (RankTriple{2, 2, 1}));
  EXPECT_EQ(rank_triple(product(diag({0.5, 0.5}), diag({0.5, 0.5}))), (RankTriple{2, 2, 4}));
}

TEST(rank_triple, subbasis_construction_3_2_2) {
  const DensityOperator rho =
      construct_subbasis_mixture(3, 2, 2, WeightVector::linear_decreasing(2), 5);
  EXPECT_EQ(oracle::elimination_rank(rho.matrix()), 2u);
  EXPECT_EQ(oracle::elimination_rank(oracle::trace_out_b(rho.matrix(), 3, 2)), 3u);
  EXPECT_EQ(oracle::elimination_rank(oracle::trace_out_a(rho.matrix(), 3, 2)), 2u);
  EXPECT_EQ(rank_triple(rho), (RankTriple{3, 2, 2}));
}

TEST(schmidt_rank, examples) {
  EXPECT_EQ(schmidt_rank(ket(4, {{0, 1.0}}), {2, 2}), 1u);
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_EQ(schmidt_rank(ket(4, {{0, s}, {3, s}}), {2, 2}), 2u);
  EXPECT_THROW(schmidt_rank(ket(4, {{0, 0.5}}), {2, 2}), NormalizationError);
}

TEST(schmidt_rank, equals_reduced_ranks_of_pure_states) {
  for (unsigned seed = 0; seed < 200; ++seed) {
    const std::size_t da = 1 + seed % 4;
    const std::size_t db = 1 + (seed / 4) % 5;
    ComplexMatrix psi = oracle::seeded_matrix(Eigen::Index(da * db), 1, seed);
    // Zero out a random block to hit lower Schmidt ranks.
    if (seed % 3 == 0) {
      for (std::size_t i = 1; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j) psi(Eigen::Index(i * db + j), 0) = psi(Eigen::Index(j), 0) * double(i);
    }
    psi /= psi.norm();
    const RankTriple r = rank_triple(DensityOperator::pure({da, db}, psi));
    const std::size_t sr = schmidt_rank(psi, {da, db});
    EXPECT_EQ(r.d3, 1u);
    EXPECT_EQ(r.d1, r.d2);
    EXPECT_EQ(r.d1, sr) << "seed " << seed;
  }
  ComplexMatrix psi = oracle::seeded_matrix(12, 1, 77);
  psi /= psi.norm();
  EXPECT_EQ(schmidt_rank(psi, {3, 4}), 3u);
}

TEST(is_uncorrelated, product_state) {
  const auto v = is_uncorrelated(product(oracle::seeded_density(2, 3), oracle::seeded_density(3, 4)));
  EXPECT_TRUE(v.uncorrelated);
  EXPECT_LT(v.residual, 1e-12);
  EXPECT_FALSE(v.ambiguous);
}

TEST(is_uncorrelated, bell_state_residual) {
  const auto v = is_uncorrelated(bell());
  EXPECT_FALSE(v.uncorrelated);
  EXPECT_NEAR(v.residual, std::sqrt(12.0 / 16.0), 1e-15);
}

TEST(is_uncorrelated, ambiguous_band) {
  // rho = (I + eps Z(x)Z) / 4 has maximally mixed marginals, so its residual
  // is |eps Z(x)Z / 4|_F = eps / 2.
  const auto state = [](double eps) {
    ComplexMatrix m = diag({1 + eps, 1 - eps, 1 - eps, 1 + eps}) / 4.0;
    return DensityOperator::from_matrix({2, 2}, m);
  };
  const auto tiny = is_uncorrelated(state(1e-10));
  EXPECT_TRUE(tiny.uncorrelated);
  const auto mid = is_uncorrelated(state(2e-7));
  EXPECT_FALSE(mid.uncorrelated);
  EXPECT_TRUE(mid.ambiguous);
  EXPECT_NEAR(mid.residual, 1e-7, 1e-12);
  const auto big = is_uncorrelated(state(1e-3));
  EXPECT_FALSE(big.uncorrelated);
  EXPECT_FALSE(big.ambiguous);
}

TEST(is_uncorrelated, product_rank_law_on_construction_a) {
  const DensityOperator rho = construct_product_mixture(2, 2, 3, WeightVector::linear_decreasing(3));
  EXPECT_FALSE(is_uncorrelated(rho).uncorrelated);
}

TEST(swap_subsystems, symmetric_bell_state_is_fixed) {
  EXPECT_EQ(swap_subsystems(bell()).matrix(), bell().matrix());
}

TEST(swap_subsystems, exchanges_product_factors) {
  const ComplexMatrix a = oracle::seeded_density(2, 8);
  const ComplexMatrix b = oracle::seeded_density(3, 9);
  const DensityOperator swapped = swap_subsystems(product(a, b));
  EXPECT_EQ(swapped.dims(), (BipartiteDims{3, 2}));
  EXPECT_LT(frobenius_distance(swapped.matrix(), tensor_product(b, a)), 1e-15);
}

TEST(swap_subsystems, involution_and_rank_exchange) {
  for (unsigned seed = 0; seed < 50; ++seed) {
    const std::size_t da = 1 + seed % 3;
    const std::size_t db = 2 + seed % 4;
    const DensityOperator rho = sample_random_state({da, db}, 1 + seed % (da * db), seed);
    const DensityOperator once = swap_subsystems(rho);
    EXPECT_LT(frobenius_distance(swap_subsystems(once).matrix(), rho.matrix()), 1e-14);
    const RankTriple r = rank_triple(rho);
    EXPECT_EQ(rank_triple(once), (RankTriple{r.d2, r.d1, r.d3}));
    EXPECT_EQ(is_uncorrelated(once).uncorrelated, is_uncorrelated(rho).uncorrelated);
  }
}
