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

#ifndef RANGEDIM_BIPARTITE_HPP
#define RANGEDIM_BIPARTITE_HPP

#include <compare>
#include <cstddef>
#include <string>

#include "rangedim/operator.hpp"

namespace rangedim {

/// Default Frobenius threshold below which a state counts as uncorrelated.
inline constexpr double kDefaultProdTol = 1e-8;

/// Residuals between prod_tol and this value are reported as ambiguous.
inline constexpr double kAmbiguousUpper = 1e-6;

/// Tolerances enforced on every DensityOperator.
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kNegativityTol = 1e-10;
inline constexpr double kNormTol = 1e-10;

/// Ambient dimensions of the two factors of a composite space.
struct BipartiteDims {
  std::size_t dim_a = 1;
  std::size_t dim_b = 1;

  std::size_t composite() const noexcept { return dim_a * dim_b; }

  /// Throws SizingError unless both factors are >= 1 and the composite
  /// dimension fits within kMaxMatrixDim.
  void validate() const;

  BipartiteDims swapped() const noexcept { return {dim_b, dim_a}; }

  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

/// Range dimensions of Tr_2 rho, Tr_1 rho and rho itself.
struct RankTriple {
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  std::size_t d3 = 0;

  friend auto operator<=>(const RankTriple&, const RankTriple&) = default;
};

std::string to_string(const RankTriple& t);

/// A Hermitian, positive-semidefinite, unit-trace operator on a bipartite
/// space. Instances can only be obtained through validating factories, so a
/// DensityOperator in hand always satisfies its invariants.
class DensityOperator {
 public:
  /// Validates and wraps `matrix`. Throws ValidationError naming the broken
  /// invariant (shape, finite, hermitian, trace, positivity), or SizingError
  /// for unusable dimensions.
  static DensityOperator from_matrix(BipartiteDims dims, ComplexMatrix matrix);

  /// |psi><psi| for a unit column vector of length dims.composite().
  /// Throws NormalizationError when |psi| differs from 1 by more than kNormTol.
  static DensityOperator pure(BipartiteDims dims, const ComplexMatrix& psi);

  const BipartiteDims& dims() const noexcept { return dims_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  DensityOperator(BipartiteDims dims, ComplexMatrix matrix)
      : dims_(dims), matrix_(std::move(matrix)) {}

  BipartiteDims dims_;
  ComplexMatrix matrix_;
};

/// rho_1 = Tr_2 rho_3, a dimA x dimA matrix.
ComplexMatrix partial_trace_over_2(const DensityOperator& rho3);

/// rho_2 = Tr_1 rho_3, a dimB x dimB matrix.
ComplexMatrix partial_trace_over_1(const DensityOperator& rho3);

RankTriple rank_triple(const DensityOperator& rho3, double rank_tol = kDefaultRankTol);

/// Number of Schmidt coefficients of `psi` above rank_tol * max(1, sigma_max).
/// `psi` is reshaped subsystem-1-major into a dimA x dimB coefficient matrix.
std::size_t schmidt_rank(const ComplexMatrix& psi, BipartiteDims dims,
                         double rank_tol = kDefaultRankTol);

struct CorrelationVerdict {
  bool uncorrelated = false;
  double residual = 0.0;  // |rho3 - rho1 (x) rho2|_F
  bool ambiguous = false;  // prod_tol <= residual < kAmbiguousUpper
};

CorrelationVerdict is_uncorrelated(const DensityOperator& rho3,
                                   double prod_tol = kDefaultProdTol);

/// Exchanges the two factors. The rank triple (d1, d2, d3) becomes (d2, d1, d3).
DensityOperator swap_subsystems(const DensityOperator& rho3);

/// Hermitian part (m + m^dagger) / 2, used to clean rounding asymmetry.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

}  // namespace rangedim

#endif  // RANGEDIM_BIPARTITE_HPP
