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
#include <string>

#include "rangedim/errors.hpp"

namespace rangedim {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw ShapeError(std::string(what) + ": expected a square matrix, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_hermitian(const ComplexMatrix& h, const char* what) {
  const double dev = hermitian_deviation(h);
  if (!(dev <= kHermitianTol)) {
    throw SymmetryError(std::string(what) + ": |h - h^dagger| = " + describe(dev) +
                        " exceeds " + describe(kHermitianTol));
  }
}

}  // namespace

void require_finite(const ComplexMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex z = m(r, c);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ShapeError("non-finite entry at (" + std::to_string(r) + ", " +
                         std::to_string(c) + ")");
      }
    }
  }
}

double hermitian_deviation(const ComplexMatrix& m) {
  require_square(m, "hermitian_deviation");
  double worst = 0.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = r; c < m.cols(); ++c) {
      worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
    }
  }
  return worst;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (rows > kMaxMatrixDim || cols > kMaxMatrixDim) {
    throw SizingError("tensor_product: result " + std::to_string(rows) + "x" +
                      std::to_string(cols) + " exceeds the " +
                      std::to_string(kMaxMatrixDim) + " limit");
  }
  ComplexMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  const Eigen::Index br = b.rows();
  const Eigen::Index bc = b.cols();
  for (Eigen::Index ia = 0; ia < a.rows(); ++ia) {
    for (Eigen::Index ka = 0; ka < a.cols(); ++ka) {
      const Complex s = a(ia, ka);
      for (Eigen::Index ib = 0; ib < br; ++ib) {
        for (Eigen::Index kb = 0; kb < bc; ++kb) {
          out(ia * br + ib, ka * bc + kb) = s * b(ib, kb);
        }
      }
    }
  }
  return out;
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& h) {
  require_square(h, "hermitian_eigensystem");
  require_hermitian(h, "hermitian_eigensystem");
  if (h.rows() == 0) return {};

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eigensystem: eigensolver did not converge");
  }
  EigenSystem out;
  const auto& values = solver.eigenvalues();
  out.eigenvalues.assign(values.data(), values.data() + values.size());
  out.eigenvectors = solver.eigenvectors();
  return out;
}

double rank_cutoff(double max_eigenvalue, double rank_tol) {
  return rank_tol * std::max(1.0, max_eigenvalue);
}

std::size_t rank_of_spectrum(const std::vector<double>& eigenvalues, double rank_tol) {
  if (eigenvalues.empty()) return 0;
  const auto [lo, hi] = std::minmax_element(eigenvalues.begin(), eigenvalues.end());
  const double cutoff = rank_cutoff(*hi, rank_tol);
  if (*lo < -cutoff) {
    throw NegativityError("eigenvalue " + describe(*lo) + " below -" +
                          describe(cutoff));
  }
  return static_cast<std::size_t>(
      std::count_if(eigenvalues.begin(), eigenvalues.end(),
                    [cutoff](double v) { return v > cutoff; }));
}

std::size_t numerical_rank(const ComplexMatrix& h, double rank_tol) {
  require_square(h, "numerical_rank");
  require_hermitian(h, "numerical_rank");
  if (h.rows() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("numerical_rank: eigensolver did not converge");
  }
  const auto& values = solver.eigenvalues();
  return rank_of_spectrum(std::vector<double>(values.data(), values.data() + values.size()),
                          rank_tol);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("frobenius_distance: shapes " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()) + " differ");
  }
  double sum = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      sum += std::norm(a(r, c) - b(r, c));
    }
  }
  return std::sqrt(sum);
}

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  if (rows > kMaxMatrixDim || cols > kMaxMatrixDim) {
    throw SizingError("random_gaussian: " + std::to_string(rows) + "x" +
                      std::to_string(cols) + " exceeds the size limit");
  }
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
      const double re = normal(engine);
      const double im = normal(engine);
      g(r, c) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim == 0 || dim > kMaxMatrixDim) {
    throw SizingError("random_unitary: dimension " + std::to_string(dim) +
                      " outside [1, " + std::to_string(kMaxMatrixDim) + "]");
  }
  const Eigen::MatrixXcd g = random_gaussian(dim, dim, seed);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  // Fixing the phases of R's diagonal makes the distribution of Q Haar.
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * tags.size());
  const auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(master);
  for (const auto t : tags) push(t);
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

}  // namespace rangedim
