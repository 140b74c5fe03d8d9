// Copyright 2026 The metastab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "metastab/types.hpp"

namespace metastab {

struct SymmetricEigen {
  Vector values;   ///< ascending
  Matrix vectors;  ///< orthonormal columns, vectors.col(i) <-> values[i]
};

/// Eigendecomposition of a symmetric matrix. Throws kContractViolation when
/// |M - M^T| exceeds 1e-10 (1 + |M|).
SymmetricEigen sym_eig(const Matrix& m);

/// All eigenvalues of a real square matrix (d <= 64) by Householder
/// Hessenberg reduction followed by Francis double-shift QR. Balancing is
/// applied for d > 16. Conjugate pairs are returned adjacent, positive
/// imaginary part first. Throws kNumericFailure after 100 d sweeps without
/// convergence.
std::vector<std::complex<double>> real_eigenvalues(const Matrix& m);

/// Imaginary parts with |Im| <= 1e-9 * scale are set to zero.
std::vector<std::complex<double>> snap_real(std::vector<std::complex<double>> eigs, double scale);

/// Number of eigenvalues with negative real part after snapping.
int count_negative_real_part(const std::vector<std::complex<double>>& eigs);
/// Number of real (snapped) eigenvalues that are negative.
int count_negative_real(const std::vector<std::complex<double>>& eigs);

/// Spectral data of an index-1 saddle.
///
/// e_1 (column 0 of hessian_vecs) carries the negative Hessian eigenvalue
/// -lambda_1; v is the unit eigenvector of H - L^T for the eigenvalue -mu,
/// with v . e_1 > 0.
struct SaddleSpectrum {
  Vector hessian_eigs;  ///< (-lambda_1, lambda_2, ..., lambda_d)
  Matrix hessian_vecs;
  double mu = 0.0;
  Vector v;
  double det_hessian = 0.0;

  int dim() const { return static_cast<int>(hessian_eigs.size()); }
  double lambda1() const { return -hessian_eigs[0]; }
  Vector e1() const { return hessian_vecs.col(0); }
  /// Components of v in the Hessian eigenbasis.
  Vector v_in_eigenbasis() const { return hessian_vecs.transpose() * v; }
};

struct NegativeEigen {
  double mu = 0.0;
  Vector v;
};

/// For symmetric index-1 H and L with HL skew (to 1e-8), returns mu > 0 with
/// -mu the unique negative eigenvalue of H + L and the unit v solving
/// (H - L^T) v = -mu v, signed so that v . e1 > 0.
///
/// Throws kPreconditionViolation when H is not index-1, HL is not skew, or
/// H + L does not have exactly one eigenvalue with negative real part.
/// Throws kNumericFailure when |v . e1| <= 1e-12 (degenerate instance) or the
/// eigenvector residual exceeds 1e-8 mu.
NegativeEigen unique_negative_eig(const Matrix& h, const Matrix& l, const Vector& e1);

/// Full saddle spectrum. When orientation is given, e_1 is signed so that
/// e_1 . orientation > 0; otherwise its largest-magnitude component is made
/// positive.
SaddleSpectrum saddle_spectrum(const Matrix& h, const Matrix& l,
                               const std::optional<Vector>& orientation = std::nullopt);

/// Rank-one determinant identities at a saddle.
struct RankOneDets {
  double det_plus2 = 0.0;  ///< det(H + 2 mu v v^T), equals -det H
  double det_plus1 = 0.0;  ///< det(H + mu v v^T), equals 0
  Vector null_vec;         ///< H^{-1} v / |H^{-1} v|, spans ker(H + mu v v^T)
};

/// Throws kNumericFailure when det_plus2 differs from -det H by more than
/// 1e-8 relative or |(H + mu v v^T) null_vec| > 1e-8.
RankOneDets rank_one_dets(const Matrix& h, double mu, const Vector& v);

/// det(H~ + mu v~ v~^T) computed directly and via mu v_1^2 / lambda_1 prod lambda_k,
/// both in the Hessian eigenbasis with the e_1 row/column removed.
struct ReducedDeterminant {
  double direct = 0.0;
  double closed_form = 0.0;
  double relative_difference() const;
};
ReducedDeterminant reduced_determinant(const SaddleSpectrum& s);

}  // namespace metastab
