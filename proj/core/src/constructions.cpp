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

#include "rangedim/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <utility>

namespace rangedim {

namespace {

// a <= b * c without overflow.
bool le_product(std::size_t a, std::size_t b, std::size_t c) {
  if (b != 0 && c > std::numeric_limits<std::size_t>::max() / b) return true;
  return a <= b * c;
}

std::string triple_string(std::size_t d1, std::size_t d2, std::size_t d3) {
  return to_string(RankTriple{d1, d2, d3});
}

std::string join_reasons(const std::vector<Reason>& reasons) {
  std::string out;
  for (const auto r : reasons) {
    if (!out.empty()) out += ", ";
    out += to_string(r);
  }
  return out;
}

std::vector<Reason> filter(const std::vector<Reason>& reasons,
                           std::initializer_list<Reason> keep) {
  std::vector<Reason> out;
  std::copy_if(reasons.begin(), reasons.end(), std::back_inserter(out), [&](Reason r) {
    return std::find(keep.begin(), keep.end(), r) != keep.end();
  });
  return out;
}

void require_weights(const WeightVector& w, std::size_t expected, const char* what) {
  if (w.size() != expected) {
    throw ShapeError(std::string(what) + ": expected " + std::to_string(expected) +
                     " weights, got " + std::to_string(w.size()));
  }
}

DensityOperator finish(BipartiteDims dims, const ComplexMatrix& m) {
  try {
    return DensityOperator::from_matrix(dims, hermitian_part(m));
  } catch (const ValidationError& e) {
    throw ConstructionError(std::string("constructed operator is invalid: ") + e.what());
  }
}

}  // namespace

std::string_view to_string(Reason r) {
  switch (r) {
    case Reason::kViolatesIneq1: return "VIOLATES_INEQ_1";
    case Reason::kViolatesIneq2: return "VIOLATES_INEQ_2";
    case Reason::kViolatesIneq3: return "VIOLATES_INEQ_3";
    case Reason::kLowerBoundFail: return "LOWER_BOUND_FAIL";
    case Reason::kProductMatch: return "PRODUCT_MATCH";
    case Reason::kProductMismatch: return "PRODUCT_MISMATCH";
    case Reason::kExactlyOneInfinite: return "EXACTLY_ONE_INFINITE";
  }
  return "UNKNOWN";
}

TripleClass classify_triple(std::size_t d1, std::size_t d2, std::size_t d3) {
  if (d1 == 0 || d2 == 0 || d3 == 0) {
    throw DomainError("classify_triple: dimensions must be >= 1, got " +
                      triple_string(d1, d2, d3));
  }
  TripleClass c;
  const bool ineq1 = le_product(d1, d2, d3);
  const bool ineq2 = le_product(d2, d3, d1);
  const bool ineq3 = le_product(d3, d1, d2);
  if (!ineq1) c.reasons.push_back(Reason::kViolatesIneq1);
  if (!ineq2) c.reasons.push_back(Reason::kViolatesIneq2);
  if (!ineq3) c.reasons.push_back(Reason::kViolatesIneq3);
  const bool lower_bound = d1 >= 2 && d2 >= 2;
  if (!lower_bound) c.reasons.push_back(Reason::kLowerBoundFail);
  // d3 == d1 * d2 exactly: both inequalities d3 <= d1 d2 and d1 d2 <= d3.
  const bool product = ineq3 && !le_product(d3 + 1, d1, d2);
  c.reasons.push_back(product ? Reason::kProductMatch : Reason::kProductMismatch);

  c.exists = ineq1 && ineq2 && ineq3;
  c.correlated_exists = c.exists && lower_bound;
  c.uncorrelated_exists = product;
  return c;
}

ExtendedDim ExtendedDim::finite(std::size_t n) {
  if (n == 0) throw DomainError("ExtendedDim: finite dimensions must be >= 1");
  return ExtendedDim(n);
}

ExtendedDim operator*(const ExtendedDim& a, const ExtendedDim& b) {
  if (a.is_infinite() || b.is_infinite()) return ExtendedDim::infinite();
  if (a.value() > std::numeric_limits<std::size_t>::max() / b.value()) {
    throw DomainError("ExtendedDim: finite product overflows");
  }
  return ExtendedDim::finite(a.value() * b.value());
}

bool operator<=(const ExtendedDim& a, const ExtendedDim& b) {
  if (b.is_infinite()) return true;
  if (a.is_infinite()) return false;
  return a.value() <= b.value();
}

std::string to_string(const ExtendedDim& d) {
  return d.is_infinite() ? "inf" : std::to_string(d.value());
}

ExtendedVerdict classify_triple_extended(const ExtendedDim& d1, const ExtendedDim& d2,
                                         const ExtendedDim& d3) {
  ExtendedVerdict v;
  const int infinite = int(d1.is_infinite()) + int(d2.is_infinite()) + int(d3.is_infinite());
  if (infinite == 1) v.reasons.push_back(Reason::kExactlyOneInfinite);
  const auto checked_le = [](const ExtendedDim& a, const ExtendedDim& b, const ExtendedDim& c) {
    if (b.is_infinite() || c.is_infinite()) return a <= ExtendedDim::infinite();
    return a.is_infinite() ? false : le_product(a.value(), b.value(), c.value());
  };
  const bool ineq1 = checked_le(d1, d2, d3);
  const bool ineq2 = checked_le(d2, d3, d1);
  const bool ineq3 = checked_le(d3, d1, d2);
  if (!ineq1) v.reasons.push_back(Reason::kViolatesIneq1);
  if (!ineq2) v.reasons.push_back(Reason::kViolatesIneq2);
  if (!ineq3) v.reasons.push_back(Reason::kViolatesIneq3);
  v.feasible = ineq1 && ineq2 && ineq3;
  return v;
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw DomainError("WeightVector: empty");
  double sum = 0.0;
  for (const double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw DomainError("WeightVector: weights must be finite and > 0");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw DomainError("WeightVector: weights sum to " + describe(sum));
  }
}

WeightVector WeightVector::normalized(const std::vector<double>& raw) {
  const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
  std::vector<double> w(raw.size());
  std::transform(raw.begin(), raw.end(), w.begin(), [sum](double x) { return x / sum; });
  return WeightVector(std::move(w));
}

WeightVector WeightVector::linear_decreasing(std::size_t n) {
  std::vector<double> raw(n);
  for (std::size_t k = 0; k < n; ++k) raw[k] = static_cast<double>(n - k);
  return normalized(raw);
}

DensityOperator construct_product_mixture(std::size_t d1, std::size_t d2, std::size_t d3,
                                          const WeightVector& weights) {
  if (!(d2 >= 1 && d2 <= d1 && d1 <= d3 && le_product(d3, d1, d2))) {
    throw OrderingError("construct_product_mixture: requires d2 <= d1 <= d3 <= d1*d2, got " +
                        triple_string(d1, d2, d3));
  }
  require_weights(weights, d3, "construct_product_mixture");
  const BipartiteDims dims{d1, d2};
  dims.validate();

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(d3);
  std::vector<bool> used(d1 * d2, false);
  const auto take = [&](std::size_t i, std::size_t j) {
    pairs.emplace_back(i, j);
    used[i * d2 + j] = true;
  };
  for (std::size_t k = 0; k < d2; ++k) take(k, k);
  for (std::size_t k = d2; k < d1; ++k) take(k, 0);
  for (std::size_t idx = 0; idx < d1 * d2 && pairs.size() < d3; ++idx) {
    if (!used[idx]) take(idx / d2, idx % d2);
  }

  const auto n = static_cast<Eigen::Index>(dims.composite());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto idx = static_cast<Eigen::Index>(pairs[k].first * d2 + pairs[k].second);
    m(idx, idx) = weights[k];
  }
  return finish(dims, m);
}

std::vector<std::size_t> subbasis_block_sizes(std::size_t d1, std::size_t d3) {
  if (d3 == 0 || d3 > d1) {
    throw OrderingError("subbasis_block_sizes: requires 1 <= d3 <= d1");
  }
  std::vector<std::size_t> sizes(d3, d1 / d3);
  for (std::size_t k = 0; k < d1 % d3; ++k) ++sizes[k];
  return sizes;
}

DensityOperator construct_subbasis_mixture(std::size_t d1, std::size_t d2, std::size_t d3,
                                           const WeightVector& spectrum,
                                           std::uint64_t amplitude_seed) {
  if (!(d2 >= 1 && d3 >= 1 && d2 <= d1 && d3 <= d1 && le_product(d1, d2, d3))) {
    throw OrderingError(
        "construct_subbasis_mixture: requires d2 <= d1 and d3 <= d1 <= d2*d3, got " +
        triple_string(d1, d2, d3));
  }
  require_weights(spectrum, d3, "construct_subbasis_mixture");
  const BipartiteDims dims{d1, d2};
  dims.validate();

  std::mt19937_64 engine(amplitude_seed);
  std::uniform_real_distribution<double> modulus(0.3, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  const auto sizes = subbasis_block_sizes(d1, d3);
  const auto n = static_cast<Eigen::Index>(dims.composite());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  std::size_t i = 0;  // next first-factor basis vector
  std::size_t j = 0;  // cyclic second-factor counter
  for (std::size_t block = 0; block < d3; ++block) {
    ComplexMatrix psi = ComplexMatrix::Zero(n, 1);
    for (std::size_t k = 0; k < sizes[block]; ++k, ++i, j = (j + 1) % d2) {
      const double r = modulus(engine);
      const double theta = phase(engine);
      if (!(r > 0.0)) throw AmplitudeError("construct_subbasis_mixture: zero amplitude");
      psi(static_cast<Eigen::Index>(i * d2 + j), 0) = std::polar(r, theta);
    }
    psi /= psi.norm();
    m += spectrum[block] * (psi * psi.adjoint());
  }
  return finish(dims, m);
}

DensityOperator construct_uncorrelated(std::size_t d1, std::size_t d2,
                                       const WeightVector& spectrum_a,
                                       const WeightVector& spectrum_b) {
  require_weights(spectrum_a, d1, "construct_uncorrelated");
  require_weights(spectrum_b, d2, "construct_uncorrelated");
  const BipartiteDims dims{d1, d2};
  dims.validate();
  ComplexMatrix a = ComplexMatrix::Zero(static_cast<Eigen::Index>(d1), static_cast<Eigen::Index>(d1));
  ComplexMatrix b = ComplexMatrix::Zero(static_cast<Eigen::Index>(d2), static_cast<Eigen::Index>(d2));
  for (std::size_t k = 0; k < d1; ++k) a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = spectrum_a[k];
  for (std::size_t k = 0; k < d2; ++k) b(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = spectrum_b[k];
  return finish(dims, tensor_product(a, b));
}

std::string_view to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::kAny: return "any";
    case WitnessKind::kCorrelated: return "correlated";
    case WitnessKind::kUncorrelated: return "uncorrelated";
  }
  return "unknown";
}

std::optional<WitnessKind> parse_witness_kind(std::string_view s) {
  if (s == "any") return WitnessKind::kAny;
  if (s == "correlated") return WitnessKind::kCorrelated;
  if (s == "uncorrelated") return WitnessKind::kUncorrelated;
  return std::nullopt;
}

namespace {

// Construction A when d3 dominates, construction B otherwise; the factors are
// exchanged first whenever d1 < d2 so both constructions see d2 <= d1.
DensityOperator build_correlatable(std::size_t d1, std::size_t d2, std::size_t d3,
                                   const WeightVector& weights, std::uint64_t seed) {
  const bool exchanged = d1 < d2;
  const std::size_t big = exchanged ? d2 : d1;
  const std::size_t small = exchanged ? d1 : d2;
  DensityOperator rho =
      d3 >= big ? construct_product_mixture(big, small, d3, weights)
                : construct_subbasis_mixture(big, small, d3, weights, derive_seed(seed, {0xA11}));
  return exchanged ? swap_subsystems(rho) : rho;
}

WeightVector perturb(const WeightVector& w, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> draw(0.5, 1.5);
  std::vector<double> fresh(w.size());
  for (auto& x : fresh) x = draw(engine);
  const double sum = std::accumulate(fresh.begin(), fresh.end(), 0.0);
  std::vector<double> mixed(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) mixed[k] = 0.9 * w[k] + 0.1 * fresh[k] / sum;
  return WeightVector::normalized(mixed);
}

void require_ranks(const DensityOperator& rho, const RankTriple& want, double rank_tol) {
  const RankTriple got = rank_triple(rho, rank_tol);
  if (got != want) {
    throw ConstructionError("witness has ranks " + to_string(got) + ", requested " +
                            to_string(want));
  }
}

}  // namespace

DensityOperator construct_witness(std::size_t d1, std::size_t d2, std::size_t d3,
                                  WitnessKind kind, std::uint64_t seed, double rank_tol) {
  const TripleClass cls = classify_triple(d1, d2, d3);
  const auto deny = [&](std::vector<Reason> reasons) {
    throw InfeasibleError("no " + std::string(to_string(kind)) + " state has ranks " +
                              triple_string(d1, d2, d3) + " [" + join_reasons(reasons) + "]",
                          std::move(reasons));
  };
  switch (kind) {
    case WitnessKind::kAny:
      if (!cls.exists) {
        deny(filter(cls.reasons, {Reason::kViolatesIneq1, Reason::kViolatesIneq2,
                                  Reason::kViolatesIneq3}));
      }
      break;
    case WitnessKind::kCorrelated:
      if (!cls.correlated_exists) {
        deny(filter(cls.reasons, {Reason::kViolatesIneq1, Reason::kViolatesIneq2,
                                  Reason::kViolatesIneq3, Reason::kLowerBoundFail}));
      }
      break;
    case WitnessKind::kUncorrelated:
      if (!cls.uncorrelated_exists) deny(filter(cls.reasons, {Reason::kProductMismatch}));
      break;
  }

  const RankTriple want{d1, d2, d3};
  if (kind == WitnessKind::kUncorrelated) {
    DensityOperator rho = construct_uncorrelated(d1, d2, WeightVector::linear_decreasing(d1),
                                                 WeightVector::linear_decreasing(d2));
    require_ranks(rho, want, rank_tol);
    return rho;
  }

  WeightVector weights = WeightVector::linear_decreasing(d3);
  for (int attempt = 0; attempt <= kMaxCorrelationRetries; ++attempt) {
    DensityOperator rho = build_correlatable(d1, d2, d3, weights, seed);
    require_ranks(rho, want, rank_tol);
    if (kind == WitnessKind::kAny) return rho;
    const CorrelationVerdict v = is_uncorrelated(rho);
    if (!v.uncorrelated && v.residual > kAmbiguousUpper) return rho;
    weights = perturb(weights, derive_seed(seed, {0xB22, static_cast<std::uint64_t>(attempt)}));
  }
  throw ConstructionError("no correlated witness for " + triple_string(d1, d2, d3) + " after " +
                          std::to_string(kMaxCorrelationRetries) + " retries");
}

DensityOperator sample_random_state(BipartiteDims dims, std::size_t mix_rank,
                                    std::uint64_t seed) {
  dims.validate();
  if (mix_rank == 0 || mix_rank > dims.composite()) {
    throw DomainError("sample_random_state: mix_rank " + std::to_string(mix_rank) +
                      " outside [1, " + std::to_string(dims.composite()) + "]");
  }
  const ComplexMatrix g = random_gaussian(dims.composite(), mix_rank, seed);
  ComplexMatrix m = hermitian_part(g * g.adjoint());
  m /= m.trace().real();
  return DensityOperator::from_matrix(dims, std::move(m));
}

DensityOperator scramble_local(const DensityOperator& rho3, std::uint64_t seed) {
  if (seed == 0) return rho3;
  const auto& dims = rho3.dims();
  const ComplexMatrix u = tensor_product(random_unitary(dims.dim_a, derive_seed(seed, {1})),
                                         random_unitary(dims.dim_b, derive_seed(seed, {2})));
  return DensityOperator::from_matrix(dims, hermitian_part(u * rho3.matrix() * u.adjoint()));
}

}  // namespace rangedim
