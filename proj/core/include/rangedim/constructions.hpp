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

#ifndef RANGEDIM_CONSTRUCTIONS_HPP
#define RANGEDIM_CONSTRUCTIONS_HPP

// Classification of rank triples and witness states realising them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rangedim/bipartite.hpp"
#include "rangedim/errors.hpp"

namespace rangedim {

enum class Reason {
  kViolatesIneq1,     // d1 > d2 * d3
  kViolatesIneq2,     // d2 > d3 * d1
  kViolatesIneq3,     // d3 > d1 * d2
  kLowerBoundFail,    // d1 == 1 or d2 == 1: every state is uncorrelated
  kProductMatch,      // d3 == d1 * d2
  kProductMismatch,   // d3 != d1 * d2: no uncorrelated state
  kExactlyOneInfinite,
};

std::string_view to_string(Reason r);

struct TripleClass {
  bool exists = false;
  bool correlated_exists = false;
  bool uncorrelated_exists = false;
  std::vector<Reason> reasons;
};

/// Throws DomainError if any dimension is zero.
TripleClass classify_triple(std::size_t d1, std::size_t d2, std::size_t d3);

/// A positive natural or infinity.
class ExtendedDim {
 public:
  /// Throws DomainError for zero.
  static ExtendedDim finite(std::size_t n);
  static ExtendedDim infinite() { return ExtendedDim(); }

  bool is_infinite() const noexcept { return !value_; }
  /// Requires !is_infinite().
  std::size_t value() const { return *value_; }

  friend ExtendedDim operator*(const ExtendedDim& a, const ExtendedDim& b);
  friend bool operator<=(const ExtendedDim& a, const ExtendedDim& b);
  friend bool operator==(const ExtendedDim&, const ExtendedDim&) = default;

 private:
  ExtendedDim() = default;
  explicit ExtendedDim(std::size_t n) : value_(n) {}

  std::optional<std::size_t> value_;
};

std::string to_string(const ExtendedDim& d);

struct ExtendedVerdict {
  bool feasible = false;
  std::vector<Reason> reasons;
};

/// The cyclic inequalities over extended naturals (inf * x = inf, x <= inf).
ExtendedVerdict classify_triple_extended(const ExtendedDim& d1, const ExtendedDim& d2,
                                         const ExtendedDim& d3);

/// Strictly positive weights summing to one.
class WeightVector {
 public:
  /// Throws DomainError unless all weights are > 0 and sum to 1 within 1e-12.
  explicit WeightVector(std::vector<double> weights);

  /// Divides positive raw values by their sum.
  static WeightVector normalized(const std::vector<double>& raw);

  /// w_n proportional to (n + 1 - k), k = 1..n: strictly decreasing.
  static WeightVector linear_decreasing(std::size_t n);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t k) const { return weights_[k]; }
  const std::vector<double>& values() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
};

/// Infeasible request; carries the classification that rejected it.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, std::vector<Reason> reasons)
      : Error(what), reasons_(std::move(reasons)) {}

  const std::vector<Reason>& reasons() const noexcept { return reasons_; }

 private:
  std::vector<Reason> reasons_;
};

/// Mixture of orthogonal product projectors |i>|j> for the case
/// d2 <= d1 <= d3 <= d1 * d2. Pairs are taken as (k, k) for k < d2, then
/// (k, 0) for d2 <= k < d1, then unused pairs in lexicographic order until d3
/// pairs are used; pair n receives weight weights[n]. Dims are (d1, d2).
DensityOperator construct_product_mixture(std::size_t d1, std::size_t d2, std::size_t d3,
                                          const WeightVector& weights);

/// Entangled mixture for d2 <= d1, d3 <= d1 <= d2 * d3. The d1 basis vectors
/// of factor 1 are split into d3 consecutive blocks (balanced, larger first);
/// block n yields sum_k alpha_k |i_k>|j_k> with j counted cumulatively
/// across blocks modulo d2. Amplitudes are seeded, moduli in [0.3, 1] before
/// per-block normalisation.
DensityOperator construct_subbasis_mixture(std::size_t d1, std::size_t d2, std::size_t d3,
                                           const WeightVector& spectrum,
                                           std::uint64_t amplitude_seed);

/// Block sizes used by construct_subbasis_mixture.
std::vector<std::size_t> subbasis_block_sizes(std::size_t d1, std::size_t d3);

/// diag(spectrum_a) (x) diag(spectrum_b).
DensityOperator construct_uncorrelated(std::size_t d1, std::size_t d2,
                                       const WeightVector& spectrum_a,
                                       const WeightVector& spectrum_b);

enum class WitnessKind { kAny, kCorrelated, kUncorrelated };

std::string_view to_string(WitnessKind k);
std::optional<WitnessKind> parse_witness_kind(std::string_view s);

/// Maximum number of weight perturbations tried for a correlated witness.
inline constexpr int kMaxCorrelationRetries = 8;

/// Builds a state with exactly the requested rank triple and correlation
/// status. Throws InfeasibleError when the triple admits no such state and
/// ConstructionError if the result cannot be certified.
DensityOperator construct_witness(std::size_t d1, std::size_t d2, std::size_t d3,
                                  WitnessKind kind, std::uint64_t seed,
                                  double rank_tol = kDefaultRankTol);

/// rho = G G^dagger / tr(G G^dagger) with G a seeded (dA*dB) x mix_rank
/// complex Gaussian matrix.
DensityOperator sample_random_state(BipartiteDims dims, std::size_t mix_rank,
                                    std::uint64_t seed);

/// (U1 (x) U2) rho (U1 (x) U2)^dagger with seeded local unitaries. Seed 0 is
/// reserved for the identity.
DensityOperator scramble_local(const DensityOperator& rho3, std::uint64_t seed);

}  // namespace rangedim

#endif  // RANGEDIM_CONSTRUCTIONS_HPP
