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
#include <string>

#include "rangedim/errors.hpp"

namespace rangedim {

void BipartiteDims::validate() const {
  if (dim_a == 0 || dim_b == 0) {
    throw SizingError("bipartite dimensions must be >= 1, got " + std::to_string(dim_a) +
                      "x" + std::to_string(dim_b));
  }
  if (dim_a > kMaxMatrixDim || dim_b > kMaxMatrixDim || composite() > kMaxMatrixDim) {
    throw SizingError("composite dimension " + std::to_string(dim_a) + "*" +
                      std::to_string(dim_b) + " exceeds " + std::to_string(kMaxMatrixDim));
  }
}

std::string to_string(const RankTriple& t) {
  return "(" + std::to_string(t.d1) + ", " + std::to_string(t.d2) + ", " +
         std::to_string(t.d3) + ")";
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

DensityOperator DensityOperator::from_matrix(BipartiteDims dims, ComplexMatrix matrix) {
  dims.validate();
  const auto n = static_cast<Eigen::Index>(dims.composite());
  if (matrix.rows() != n || matrix.cols() != n) {
    throw ValidationError("shape", "expected " + std::to_string(n) + "x" + std::to_string(n) +
                                       ", got " + std::to_string(matrix.rows()) + "x" +
                                       std::to_string(matrix.cols()));
  }
  try {
    require_finite(matrix);
  } catch (const ShapeError& e) {
    throw ValidationError("finite", e.what());
  }
  const double dev = hermitian_deviation(matrix);
  if (!(dev <= kHermitianTol)) {
    throw ValidationError("hermitian", "max |m - m^dagger| = " + describe(dev));
  }
  const Complex tr = matrix.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    throw ValidationError("trace", "trace = " + describe(tr.real()) + " + " +
                                       describe(tr.imag()) + "i");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues()(0);
  if (min_eig < -kNegativityTol) {
    throw ValidationError("positivity", "minimum eigenvalue " + describe(min_eig));
  }
  return DensityOperator(dims, std::move(matrix));
}

DensityOperator DensityOperator::pure(BipartiteDims dims, const ComplexMatrix& psi) {
  dims.validate();
  if (psi.cols() != 1 || psi.rows() != static_cast<Eigen::Index>(dims.composite())) {
    throw ShapeError("pure: expected a column vector of length " +
                     std::to_string(dims.composite()));
  }
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw NormalizationError("pure: |psi| = " + describe(norm));
  }
  return from_matrix(dims, hermitian_part(psi * psi.adjoint()));
}

ComplexMatrix partial_trace_over_2(const DensityOperator& rho3) {
  const auto da = static_cast<Eigen::Index>(rho3.dims().dim_a);
  const auto db = static_cast<Eigen::Index>(rho3.dims().dim_b);
  const ComplexMatrix& m = rho3.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index ip = 0; ip < da; ++ip) {
      Complex s = 0.0;
      for (Eigen::Index j = 0; j < db; ++j) s += m(i * db + j, ip * db + j);
      out(i, ip) = s;
    }
  }
  return out;
}

ComplexMatrix partial_trace_over_1(const DensityOperator& rho3) {
  const auto da = static_cast<Eigen::Index>(rho3.dims().dim_a);
  const auto db = static_cast<Eigen::Index>(rho3.dims().dim_b);
  const ComplexMatrix& m = rho3.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index j = 0; j < db; ++j) {
    for (Eigen::Index jp = 0; jp < db; ++jp) {
      Complex s = 0.0;
      for (Eigen::Index i = 0; i < da; ++i) s += m(i * db + j, i * db + jp);
      out(j, jp) = s;
    }
  }
  return out;
}

RankTriple rank_triple(const DensityOperator& rho3, double rank_tol) {
  return {numerical_rank(partial_trace_over_2(rho3), rank_tol),
          numerical_rank(partial_trace_over_1(rho3), rank_tol),
          numerical_rank(rho3.matrix(), rank_tol)};
}

std::size_t schmidt_rank(const ComplexMatrix& psi, BipartiteDims dims, double rank_tol) {
  dims.validate();
  if (psi.cols() != 1 || psi.rows() != static_cast<Eigen::Index>(dims.composite())) {
    throw ShapeError("schmidt_rank: expected a column vector of length " +
                     std::to_string(dims.composite()));
  }
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw NormalizationError("schmidt_rank: |psi| = " + describe(norm));
  }
  const auto da = static_cast<Eigen::Index>(dims.dim_a);
  const auto db = static_cast<Eigen::Index>(dims.dim_b);
  Eigen::MatrixXcd coeffs(da, db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < db; ++j) coeffs(i, j) = psi(i * db + j, 0);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coeffs);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0) return 0;
  const double cutoff = rank_cutoff(sigma.maxCoeff(), rank_tol);
  std::size_t count = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > cutoff) ++count;
  }
  return count;
}

CorrelationVerdict is_uncorrelated(const DensityOperator& rho3, double prod_tol) {
  const ComplexMatrix product =
      tensor_product(partial_trace_over_2(rho3), partial_trace_over_1(rho3));
  CorrelationVerdict v;
  v.residual = frobenius_distance(rho3.matrix(), product);
  v.uncorrelated = v.residual < prod_tol;
  v.ambiguous = !v.uncorrelated && v.residual < kAmbiguousUpper;
  return v;
}

DensityOperator swap_subsystems(const DensityOperator& rho3) {
  const auto da = static_cast<Eigen::Index>(rho3.dims().dim_a);
  const auto db = static_cast<Eigen::Index>(rho3.dims().dim_b);
  const ComplexMatrix& m = rho3.matrix();
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < db; ++j) {
      for (Eigen::Index ip = 0; ip < da; ++ip) {
        for (Eigen::Index jp = 0; jp < db; ++jp) {
          out(j * da + i, jp * da + ip) = m(i * db + j, ip * db + jp);
        }
      }
    }
  }
  // A permutation conjugation preserves every invariant exactly.
  return DensityOperator::from_matrix(rho3.dims().swapped(), std::move(out));
}

}  // namespace rangedim
