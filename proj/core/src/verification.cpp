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

#include "rangedim/verification.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

#include "rangedim/constructions.hpp"
#include "rangedim/errors.hpp"

namespace rangedim {

namespace {

// Orthonormal eigenvectors whose eigenvalue exceeds the rank cutoff.
Eigen::MatrixXcd support_basis(const EigenSystem& es, double rank_tol) {
  if (es.eigenvalues.empty()) return {};
  const double cutoff = rank_cutoff(es.eigenvalues.back(), rank_tol);
  std::vector<Eigen::Index> keep;
  for (std::size_t k = 0; k < es.eigenvalues.size(); ++k) {
    if (es.eigenvalues[k] > cutoff) keep.push_back(static_cast<Eigen::Index>(k));
  }
  Eigen::MatrixXcd out(es.eigenvectors.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    out.col(static_cast<Eigen::Index>(c)) = es.eigenvectors.col(keep[c]);
  }
  return out;
}

Eigen::MatrixXcd projector(const Eigen::MatrixXcd& orthonormal_columns) {
  return orthonormal_columns * orthonormal_columns.adjoint();
}

// Projector onto the span of the (not necessarily independent) columns.
Eigen::MatrixXcd span_projector(const Eigen::MatrixXcd& stacked, Eigen::Index dim) {
  if (stacked.cols() == 0) return Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const double cutoff = kSpanTol * std::max(1.0, sigma.maxCoeff());
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  return projector(svd.matrixU().leftCols(rank));
}

}  // namespace

NecessityReport verify_necessity_chain(const DensityOperator& rho3, double rank_tol) {
  const auto da = static_cast<Eigen::Index>(rho3.dims().dim_a);
  const auto db = static_cast<Eigen::Index>(rho3.dims().dim_b);

  const EigenSystem spectral = hermitian_eigensystem(rho3.matrix());
  rank_of_spectrum(spectral.eigenvalues, rank_tol);  // negativity check
  const EigenSystem reduced1 = hermitian_eigensystem(partial_trace_over_2(rho3));
  const EigenSystem reduced2 = hermitian_eigensystem(partial_trace_over_1(rho3));

  NecessityReport report;
  report.d1 = rank_of_spectrum(reduced1.eigenvalues, rank_tol);
  report.d2 = rank_of_spectrum(reduced2.eigenvalues, rank_tol);

  const double cutoff = rank_cutoff(spectral.eigenvalues.back(), rank_tol);
  std::vector<Eigen::MatrixXcd> supports1;
  std::vector<Eigen::MatrixXcd> supports2;
  for (std::size_t k = spectral.eigenvalues.size(); k-- > 0;) {
    if (!(spectral.eigenvalues[k] > cutoff)) continue;
    const auto col = spectral.eigenvectors.col(static_cast<Eigen::Index>(k));
    ComplexMatrix coeffs(da, db);
    for (Eigen::Index i = 0; i < da; ++i) {
      for (Eigen::Index j = 0; j < db; ++j) coeffs(i, j) = col(i * db + j);
    }
    const EigenSystem part1 = hermitian_eigensystem(hermitian_part(coeffs * coeffs.adjoint()));
    const EigenSystem part2 =
        hermitian_eigensystem(hermitian_part((coeffs.adjoint() * coeffs).transpose()));
    EigenvectorRecord rec;
    rec.weight = spectral.eigenvalues[k];
    rec.schmidt1 = rank_of_spectrum(part1.eigenvalues, rank_tol);
    rec.schmidt2 = rank_of_spectrum(part2.eigenvalues, rank_tol);
    report.per_eigenvector.push_back(rec);
    supports1.push_back(support_basis(part1, rank_tol));
    supports2.push_back(support_basis(part2, rank_tol));
  }
  report.eigen_count = report.per_eigenvector.size();

  report.schmidt_equal = std::all_of(
      report.per_eigenvector.begin(), report.per_eigenvector.end(),
      [](const EigenvectorRecord& r) { return r.schmidt1 == r.schmidt2; });

  std::size_t sum1 = 0;
  std::size_t sum2 = 0;
  bool lower1 = true;
  bool lower2 = true;
  for (const auto& r : report.per_eigenvector) {
    sum1 += r.schmidt1;
    sum2 += r.schmidt2;
    lower1 = lower1 && r.schmidt1 <= report.d1;
    lower2 = lower2 && r.schmidt2 <= report.d2;
  }
  report.bounds_ok_1 = lower1 && report.d1 <= sum1;
  report.bounds_ok_2 = lower2 && report.d2 <= sum2;

  const auto stack = [](const std::vector<Eigen::MatrixXcd>& blocks, Eigen::Index dim) {
    Eigen::Index total = 0;
    for (const auto& b : blocks) total += b.cols();
    Eigen::MatrixXcd out(dim, total);
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
      out.middleCols(at, b.cols()) = b;
      at += b.cols();
    }
    return out;
  };
  const Eigen::MatrixXcd range1 = projector(support_basis(reduced1, rank_tol));
  const Eigen::MatrixXcd range2 = projector(support_basis(reduced2, rank_tol));
  report.span_residual_1 =
      frobenius_distance(span_projector(stack(supports1, da), da), range1);
  report.span_residual_2 =
      frobenius_distance(span_projector(stack(supports2, db), db), range2);
  report.span_ok = report.span_residual_1 < kSpanTol && report.span_residual_2 < kSpanTol;

  report.all_ok = report.schmidt_equal && report.bounds_ok_1 && report.bounds_ok_2 &&
                  report.span_ok && report.eigen_count >= 1;
  return report;
}

AnalysisReport analyze_state(const DensityOperator& rho3, double rank_tol, double prod_tol) {
  AnalysisReport out;
  out.ranks = rank_triple(rho3, rank_tol);
  out.purity = (rho3.matrix() * rho3.matrix()).trace().real();
  out.correlation = is_uncorrelated(rho3, prod_tol);
  out.necessity = verify_necessity_chain(rho3, rank_tol);
  return out;
}

std::size_t max_sweep_dim() {
  std::size_t d = 1;
  while ((d + 1) * (d + 1) <= kMaxMatrixDim) ++d;
  return d;
}

namespace {

struct Partial {
  std::size_t triples_checked = 0;
  std::size_t feasible_count = 0;
  std::size_t correlated_count = 0;
  std::size_t uncorrelated_count = 0;
  std::size_t samples_checked = 0;
  std::vector<SweepFailure> failures;

  void fail(const RankTriple& t, std::string stage, std::string detail) {
    failures.push_back({t, std::move(stage), std::move(detail)});
  }
};

void check_witness(const RankTriple& want, WitnessKind kind, const DensityOperator& rho,
                   std::uint64_t seed, double rank_tol, double prod_tol, Partial& out) {
  const std::string stage = "witness:" + std::string(to_string(kind));
  const RankTriple got = rank_triple(rho, rank_tol);
  if (got != want) out.fail(want, stage, "rank triple " + to_string(got));

  const CorrelationVerdict v = is_uncorrelated(rho, prod_tol);
  if (kind == WitnessKind::kCorrelated && !(v.residual > kAmbiguousUpper)) {
    out.fail(want, stage, "product residual " + describe(v.residual) + " <= 1e-6");
  }
  if (kind == WitnessKind::kUncorrelated && !(v.residual < 1e-10)) {
    out.fail(want, stage, "product residual " + describe(v.residual) + " >= 1e-10");
  }
  if (v.uncorrelated && got.d3 != got.d1 * got.d2) {
    out.fail(want, stage, "uncorrelated state with d3 != d1*d2");
  }
  if ((got.d1 == 1 || got.d2 == 1) && !v.uncorrelated) {
    out.fail(want, stage, "correlated state with a rank-one marginal");
  }
  if (!verify_necessity_chain(rho, rank_tol).all_ok) {
    out.fail(want, stage, "necessity chain failed");
  }

  const DensityOperator scrambled = scramble_local(rho, seed | 1u);
  const RankTriple sgot = rank_triple(scrambled, rank_tol);
  if (sgot != got) out.fail(want, stage + ":scrambled", "rank triple " + to_string(sgot));
  if (is_uncorrelated(scrambled, prod_tol).uncorrelated != v.uncorrelated) {
    out.fail(want, stage + ":scrambled", "correlation verdict changed");
  }
  if (!verify_necessity_chain(scrambled, rank_tol).all_ok) {
    out.fail(want, stage + ":scrambled", "necessity chain failed");
  }
}

void sweep_triple(const RankTriple& t, std::uint64_t seed, double rank_tol, double prod_tol,
                  Partial& out) {
  const TripleClass cls = classify_triple(t.d1, t.d2, t.d3);
  ++out.triples_checked;
  out.feasible_count += cls.exists;
  out.correlated_count += cls.correlated_exists;
  out.uncorrelated_count += cls.uncorrelated_exists;

  const std::uint64_t triple_seed = derive_seed(seed, {1, t.d1, t.d2, t.d3});
  for (const auto kind : {WitnessKind::kAny, WitnessKind::kCorrelated, WitnessKind::kUncorrelated}) {
    const bool expected = kind == WitnessKind::kAny          ? cls.exists
                          : kind == WitnessKind::kCorrelated ? cls.correlated_exists
                                                             : cls.uncorrelated_exists;
    const std::string stage = "construct:" + std::string(to_string(kind));
    const std::uint64_t kind_seed = derive_seed(triple_seed, {static_cast<std::uint64_t>(kind)});
    try {
      const DensityOperator rho = construct_witness(t.d1, t.d2, t.d3, kind, kind_seed, rank_tol);
      if (!expected) {
        out.fail(t, stage, "accepted a triple the classification rejects");
        continue;
      }
      check_witness(t, kind, rho, kind_seed, rank_tol, prod_tol, out);
    } catch (const InfeasibleError& e) {
      if (expected) out.fail(t, stage, std::string("rejected: ") + e.what());
      if (e.reasons().empty()) out.fail(t, stage, "rejection without reasons");
    } catch (const Error& e) {
      out.fail(t, stage, e.what());
    }
  }
}

void sweep_samples(BipartiteDims dims, std::size_t mix_rank, std::size_t samples,
                   std::uint64_t seed, double rank_tol, double prod_tol, Partial& out) {
  const RankTriple config{dims.dim_a, dims.dim_b, mix_rank};
  for (std::size_t s = 0; s < samples; ++s) {
    const std::uint64_t sample_seed = derive_seed(seed, {2, dims.dim_a, dims.dim_b, mix_rank, s});
    const std::string stage = "sample:" + std::to_string(s);
    ++out.samples_checked;
    try {
      const DensityOperator rho = sample_random_state(dims, mix_rank, sample_seed);
      const RankTriple r = rank_triple(rho, rank_tol);
      if (!classify_triple(r.d1, r.d2, r.d3).exists) {
        out.fail(config, stage, "ranks " + to_string(r) + " violate the cyclic inequalities");
      }
      if (r.d3 != mix_rank) out.fail(config, stage, "d3 = " + std::to_string(r.d3));
      if (mix_rank == 1) {
        ComplexMatrix psi = random_gaussian(dims.composite(), 1, sample_seed);
        psi /= psi.norm();
        const std::size_t sr = schmidt_rank(psi, dims, rank_tol);
        if (r.d1 != r.d2 || r.d1 != sr) {
          out.fail(config, stage, "pure state ranks " + to_string(r) + ", Schmidt rank " +
                                      std::to_string(sr));
        }
      }
      const CorrelationVerdict v = is_uncorrelated(rho, prod_tol);
      if (v.uncorrelated && r.d3 != r.d1 * r.d2) {
        out.fail(config, stage, "uncorrelated state with d3 != d1*d2");
      }
      if ((r.d1 == 1 || r.d2 == 1) && !v.uncorrelated) {
        out.fail(config, stage, "correlated state with a rank-one marginal");
      }
      if (!verify_necessity_chain(rho, rank_tol).all_ok) {
        out.fail(config, stage, "necessity chain failed");
      }
    } catch (const Error& e) {
      out.fail(config, stage, e.what());
    }
  }
}

}  // namespace

SweepReport sweep_theorem(std::size_t max_dim, std::size_t samples_per_config,
                          std::uint64_t seed, double rank_tol, double prod_tol,
                          unsigned threads) {
  if (max_dim == 0 || max_dim > max_sweep_dim()) {
    throw SizingError("sweep_theorem: max_dim " + std::to_string(max_dim) + " outside [1, " +
                      std::to_string(max_sweep_dim()) + "]");
  }

  std::vector<std::function<void(Partial&)>> tasks;
  for (std::size_t d1 = 1; d1 <= max_dim; ++d1) {
    for (std::size_t d2 = 1; d2 <= max_dim; ++d2) {
      for (std::size_t d3 = 1; d3 <= max_dim; ++d3) {
        tasks.emplace_back([=](Partial& p) {
          sweep_triple({d1, d2, d3}, seed, rank_tol, prod_tol, p);
        });
      }
      for (std::size_t k = 1; k <= d1 * d2; ++k) {
        tasks.emplace_back([=](Partial& p) {
          sweep_samples({d1, d2}, k, samples_per_config, seed, rank_tol, prod_tol, p);
        });
      }
    }
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));

  std::atomic<std::size_t> next{0};
  std::mutex merge_mutex;
  SweepReport report;
  report.max_dim = max_dim;
  const auto worker = [&] {
    Partial local;
    for (std::size_t i = next++; i < tasks.size(); i = next++) tasks[i](local);
    std::lock_guard lock(merge_mutex);
    report.triples_checked += local.triples_checked;
    report.feasible_count += local.feasible_count;
    report.correlated_count += local.correlated_count;
    report.uncorrelated_count += local.uncorrelated_count;
    report.samples_checked += local.samples_checked;
    report.failures.insert(report.failures.end(),
                           std::make_move_iterator(local.failures.begin()),
                           std::make_move_iterator(local.failures.end()));
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  std::sort(report.failures.begin(), report.failures.end());
  return report;
}

}  // namespace rangedim
