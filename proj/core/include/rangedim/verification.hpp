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

#ifndef RANGEDIM_VERIFICATION_HPP
#define RANGEDIM_VERIFICATION_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rangedim/bipartite.hpp"

namespace rangedim {

/// Frobenius tolerance for the span-of-supports projector comparison.
inline constexpr double kSpanTol = 1e-8;

struct EigenvectorRecord {
  double weight = 0.0;        // eigenvalue r_n of rho3
  std::size_t schmidt1 = 0;   // rank of Tr_2 |psi_n><psi_n|
  std::size_t schmidt2 = 0;   // rank of Tr_1 |psi_n><psi_n|
};

/// Outcome of checking the rank relations that hold for every state:
/// each eigenvector of rho3 has equal reduced ranks, those ranks bound d1 and
/// d2 from below and their sums bound them from above, and the reduced
/// supports of the eigenvectors span exactly range(rho1) and range(rho2).
struct NecessityReport {
  std::size_t eigen_count = 0;
  std::vector<EigenvectorRecord> per_eigenvector;
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  bool schmidt_equal = false;
  bool bounds_ok_1 = false;
  bool bounds_ok_2 = false;
  bool span_ok = false;
  double span_residual_1 = 0.0;
  double span_residual_2 = 0.0;
  bool all_ok = false;
};

NecessityReport verify_necessity_chain(const DensityOperator& rho3,
                                       double rank_tol = kDefaultRankTol);

struct AnalysisReport {
  RankTriple ranks;
  double purity = 0.0;  // tr(rho3^2)
  CorrelationVerdict correlation;
  NecessityReport necessity;
};

AnalysisReport analyze_state(const DensityOperator& rho3, double rank_tol = kDefaultRankTol,
                             double prod_tol = kDefaultProdTol);

struct SweepFailure {
  // Requested rank triple for construction stages, (dA, dB, mix_rank) for
  // sampling stages.
  RankTriple triple;
  std::string stage;
  std::string detail;

  friend auto operator<=>(const SweepFailure&, const SweepFailure&) = default;
};

struct SweepReport {
  std::size_t max_dim = 0;
  std::size_t triples_checked = 0;
  std::size_t feasible_count = 0;
  std::size_t correlated_count = 0;
  std::size_t uncorrelated_count = 0;
  std::size_t samples_checked = 0;
  std::vector<SweepFailure> failures;  // sorted
};

/// Largest max_dim accepted by sweep_theorem: max_dim^2 must fit kMaxMatrixDim.
std::size_t max_sweep_dim();

/// Reconciles classification, construction and random sampling for every
/// triple in [1, max_dim]^3 and every ambient (dA, dB) <= max_dim. Failures
/// are collected, not thrown. Throws SizingError when max_dim is 0 or exceeds
/// max_sweep_dim(). `threads` = 0 uses the hardware concurrency.
SweepReport sweep_theorem(std::size_t max_dim, std::size_t samples_per_config,
                          std::uint64_t seed, double rank_tol = kDefaultRankTol,
                          double prod_tol = kDefaultProdTol, unsigned threads = 0);

}  // namespace rangedim

#endif  // RANGEDIM_VERIFICATION_HPP
