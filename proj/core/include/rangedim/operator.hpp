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

#ifndef RANGEDIM_OPERATOR_HPP
#define RANGEDIM_OPERATOR_HPP

// Dense complex matrix primitives shared by every other module.
//
// Composite indices are subsystem-1-major throughout the library: the basis
// vector |i>|j> of a (dA x dB) space sits at index i * dB + j.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace rangedim {

using Complex = std::complex<double>;

/// Dense rectangular complex matrix, row-major. Column vectors are n x 1.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Largest permitted row or column count of any matrix the library builds.
inline constexpr std::size_t kMaxMatrixDim = 4096;

/// Default relative cutoff used by numerical_rank and schmidt_rank.
inline constexpr double kDefaultRankTol = 1e-9;

/// Tolerance on |h - h^dagger| accepted as Hermitian.
inline constexpr double kHermitianTol = 1e-10;

struct EigenSystem {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

/// Throws ShapeError unless every entry is finite.
void require_finite(const ComplexMatrix& m);

/// Largest entrywise modulus of m - m^dagger. Requires a square matrix.
double hermitian_deviation(const ComplexMatrix& m);

/// Kronecker product, composite index (i_a * b.rows() + i_b).
/// Throws SizingError when the result would exceed kMaxMatrixDim.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Spectral decomposition of a Hermitian matrix with ascending eigenvalues.
/// Throws ShapeError for non-square input and SymmetryError when the input
/// deviates from Hermitian by more than kHermitianTol.
EigenSystem hermitian_eigensystem(const ComplexMatrix& h);

/// Cutoff below which an eigenvalue of a spectrum with maximum `max_eigenvalue`
/// counts as zero: rank_tol * max(1, max_eigenvalue).
double rank_cutoff(double max_eigenvalue, double rank_tol);

/// Number of eigenvalues above rank_cutoff. Throws NegativityError when the
/// smallest eigenvalue is below -rank_cutoff.
std::size_t numerical_rank(const ComplexMatrix& h, double rank_tol = kDefaultRankTol);

/// Same counting rule applied to an already computed ascending spectrum.
std::size_t rank_of_spectrum(const std::vector<double>& eigenvalues,
                             double rank_tol = kDefaultRankTol);

/// sqrt(sum |a - b|^2). Throws ShapeError on mismatched shapes.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Haar-distributed unitary obtained from the QR factorisation of a seeded
/// complex Gaussian matrix. Deterministic in (dim, seed).
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);

/// Seeded matrix of independent standard complex Gaussian entries.
ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Mixes a master seed with stream tags into an independent 64-bit seed.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags);

}  // namespace rangedim

#endif  // RANGEDIM_OPERATOR_HPP
