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

#include "metastab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "metastab/errors.hpp"

namespace metastab {

SymmetricEigen sym_eig(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorCode::kContractViolation, "sym_eig needs a non-empty square matrix");
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * (1.0 + m.norm()))
    throw Error(ErrorCode::kContractViolation,
                "sym_eig input is not symmetric (max |M - M^T| = " + std::to_string(asym) + ")");
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::kNumericFailure, "symmetric eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

namespace {

// Row/column scaling by powers of two so that row and column norms are
// comparable. Similarity transform; eigenvalues unchanged.
void balance(Matrix& a) {
  constexpr double kRadix = 2.0;
  const double sqrdx = kRadix * kRadix;
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= kRadix;
        c *= sqrdx;
      }
      g = r * kRadix;
      while (c > g) {
        f /= kRadix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form, in place.
void to_hessenberg(Matrix& a) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index len = n - k - 1;
    Vector u = a.col(k).tail(len);
    const double alpha = u.norm();
    if (alpha == 0.0) continue;
    u[0] += (u[0] >= 0.0 ? alpha : -alpha);
    const double unorm2 = u.squaredNorm();
    if (unorm2 == 0.0) continue;
    // A <- P A P with P = I - 2 u u^T / |u|^2 acting on rows/cols k+1..n-1.
    const Eigen::RowVectorXd left = (u.transpose() * a.bottomRows(len)) * (2.0 / unorm2);
    a.bottomRows(len).noalias() -= u * left;
    const Vector right = (a.rightCols(len) * u) * (2.0 / unorm2);
    a.rightCols(len).noalias() -= right * u.transpose();
    a.col(k).tail(len - 1).setZero();
  }
}

double sign_of(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Francis double-shift QR on an upper Hessenberg matrix (EISPACK hqr
// lineage). Indices below are 1-based to keep the deflation logic legible.
std::vector<std::complex<double>> hessenberg_qr(Matrix& h) {
  const int n = static_cast<int>(h.rows());
  auto a = [&h](int i, int j) -> double& { return h(i - 1, j - 1); };
  std::vector<double> wr(n + 1, 0.0), wi(n + 1, 0.0);

  double anorm = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::abs(a(i, j));

  const long max_sweeps = 100L * n;
  long sweeps = 0;
  int nn = n;
  double t = 0.0;
  while (nn >= 1) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l >= 2; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) + s == s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn] = 0.0;
        --nn;
      } else {
        double y = a(nn - 1, nn - 1);
        double w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          const double p = 0.5 * (y - x);
          const double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0.0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0.0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn - 1] = z;
            wi[nn] = -z;
          }
          nn -= 2;
        } else {
          if (++sweeps > max_sweeps)
            throw Error(ErrorCode::kNumericFailure,
                        "QR iteration did not converge within " + std::to_string(max_sweeps) + " sweeps");
          if (its == 10 || its == 20 || (its > 20 && its % 10 == 0)) {
            // Exceptional shift.
            t += x;
            for (int i = 1; i <= nn; ++i) a(i, i) -= x;
            const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          for (; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
            if (u + v == v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != m + 2) a(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k != nn - 1) r = a(k + 2, k - 1);
              if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s != 0.0) {
              if (k == m) {
                if (l != m) a(k, k - 1) = -a(k, k - 1);
              } else {
                a(k, k - 1) = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (int j = k; j <= nn; ++j) {
                p = a(k, j) + q * a(k + 1, j);
                if (k != nn - 1) {
                  p += r * a(k + 2, j);
                  a(k + 2, j) -= p * z;
                }
                a(k + 1, j) -= p * y;
                a(k, j) -= p * x;
              }
              const int mmin = nn < k + 3 ? nn : k + 3;
              for (int i = l; i <= mmin; ++i) {
                p = x * a(i, k) + y * a(i, k + 1);
                if (k != nn - 1) {
                  p += z * a(i, k + 2);
                  a(i, k + 2) -= p * r;
                }
                a(i, k + 1) -= p * q;
                a(i, k) -= p;
              }
            }
          }
        }
      }
    } while (l < nn - 1);
  }

  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) out.emplace_back(wr[i], wi[i]);
  return out;
}

}  // namespace

std::vector<std::complex<double>> real_eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorCode::kContractViolation, "real_eigenvalues needs a non-empty square matrix");
  if (m.rows() > 64) throw Error(ErrorCode::kContractViolation, "real_eigenvalues supports d <= 64");
  if (!m.allFinite()) throw Error(ErrorCode::kContractViolation, "real_eigenvalues input has non-finite entries");
  Matrix a = m;
  if (a.rows() > 16) balance(a);
  to_hessenberg(a);
  return hessenberg_qr(a);
}

std::vector<std::complex<double>> snap_real(std::vector<std::complex<double>> eigs, double scale) {
  const double tol = 1e-9 * std::max(scale, 1e-300);
  for (auto& z : eigs)
    if (std::abs(z.imag()) <= tol) z = {z.real(), 0.0};
  return eigs;
}

int count_negative_real_part(const std::vector<std::complex<double>>& eigs) {
  return static_cast<int>(std::count_if(eigs.begin(), eigs.end(), [](const auto& z) { return z.real() < 0.0; }));
}

int count_negative_real(const std::vector<std::complex<double>>& eigs) {
  return static_cast<int>(
      std::count_if(eigs.begin(), eigs.end(), [](const auto& z) { return z.imag() == 0.0 && z.real() < 0.0; }));
}

NegativeEigen unique_negative_eig(const Matrix& h, const Matrix& l, const Vector& e1) {
  const Eigen::Index d = h.rows();
  if (l.rows() != d || l.cols() != d || e1.size() != d)
    throw Error(ErrorCode::kContractViolation, "unique_negative_eig: dimension mismatch");
  const SymmetricEigen he = sym_eig(h);
  const auto n_neg = (he.values.array() < 0.0).count();
  if (n_neg != 1)
    throw Error(ErrorCode::kPreconditionViolation,
                "H must have exactly one negative eigenvalue (found " + std::to_string(n_neg) + ")");
  const Matrix hl = h * l;
  const double skew_res = (hl + hl.transpose()).norm();
  if (skew_res > 1e-8 * std::max(1.0, h.norm() * l.norm()))
    throw Error(ErrorCode::kPreconditionViolation,
                "H L is not skew-symmetric (|HL + (HL)^T| = " + std::to_string(skew_res) + ")");

  if (l.isZero(0.0)) {
    // Reversible saddle: H + L = H, so mu = lambda_1 and v = e1 exactly.
    return {-he.values[0], e1.normalized()};
  }

  const Matrix sum = h + l;
  const auto eigs = snap_real(real_eigenvalues(sum), sum.norm());
  const int n_neg_re = count_negative_real_part(eigs);
  if (n_neg_re != 1 || count_negative_real(eigs) != 1)
    throw Error(ErrorCode::kPreconditionViolation,
                "H + L has " + std::to_string(n_neg_re) +
                    " eigenvalues with negative real part (expected exactly one, real)");
  const auto neg = std::find_if(eigs.begin(), eigs.end(), [](const auto& z) { return z.real() < 0.0; });
  const double mu = -neg->real();

  // v spans ker(H - L^T + mu I), the eigenvector of the similar matrix H - L^T.
  const Matrix adj = h - l.transpose();
  const Matrix shifted = adj + mu * Matrix::Identity(d, d);
  Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
  Vector v = svd.matrixV().col(d - 1);
  v.normalize();
  const double residual = (adj * v + mu * v).norm();
  if (residual > 1e-8 * mu)
    throw Error(ErrorCode::kNumericFailure,
                "eigenvector residual " + std::to_string(residual) + " exceeds 1e-8 mu");
  const double proj = v.dot(e1);
  if (std::abs(proj) <= 1e-12)
    throw Error(ErrorCode::kNumericFailure, "v . e1 vanishes numerically; instance rejected as degenerate");
  if (proj < 0.0) v = -v;
  return {mu, v};
}

SaddleSpectrum saddle_spectrum(const Matrix& h, const Matrix& l, const std::optional<Vector>& orientation) {
  const SymmetricEigen he = sym_eig(h);
  SaddleSpectrum s;
  s.hessian_eigs = he.values;
  s.hessian_vecs = he.vectors;
  Vector e1 = s.hessian_vecs.col(0);
  double sgn = 1.0;
  if (orientation) {
    sgn = e1.dot(*orientation) < 0.0 ? -1.0 : 1.0;
  } else {
    Eigen::Index imax = 0;
    e1.cwiseAbs().maxCoeff(&imax);
    sgn = e1[imax] < 0.0 ? -1.0 : 1.0;
  }
  s.hessian_vecs.col(0) *= sgn;
  const NegativeEigen ne = unique_negative_eig(h, l, s.hessian_vecs.col(0));
  s.mu = ne.mu;
  s.v = ne.v;
  s.det_hessian = s.hessian_eigs.prod();
  return s;
}

RankOneDets rank_one_dets(const Matrix& h, double mu, const Vector& v) {
  const Matrix vv = v * v.transpose();
  RankOneDets out;
  out.det_plus2 = Eigen::PartialPivLU<Matrix>(h + 2.0 * mu * vv).determinant();
  const Matrix plus1 = h + mu * vv;
  out.det_plus1 = Eigen::FullPivLU<Matrix>(plus1).determinant();
  const double det_h = Eigen::PartialPivLU<Matrix>(h).determinant();
  out.null_vec = Eigen::PartialPivLU<Matrix>(h).solve(v);
  out.null_vec.normalize();
  const double rel = std::abs(out.det_plus2 + det_h) / std::max(std::abs(det_h), 1e-300);
  if (rel > 1e-8)
    throw Error(ErrorCode::kNumericFailure,
                "det(H + 2 mu v v^T) differs from -det H by relative " + std::to_string(rel));
  const double null_res = (plus1 * out.null_vec).norm();
  if (null_res > 1e-8 * std::max(1.0, h.norm()))
    throw Error(ErrorCode::kNumericFailure,
                "H^{-1} v is not in the kernel of H + mu v v^T (residual " + std::to_string(null_res) + ")");
  return out;
}

double ReducedDeterminant::relative_difference() const {
  const double scale = std::max(std::abs(direct), std::abs(closed_form));
  return scale == 0.0 ? 0.0 : std::abs(direct - closed_form) / scale;
}

ReducedDeterminant reduced_determinant(const SaddleSpectrum& s) {
  const int d = s.dim();
  if (d < 2) throw Error(ErrorCode::kContractViolation, "reduced determinant needs d >= 2");
  const Vector w = s.v_in_eigenbasis();
  const Vector lam = s.hessian_eigs.tail(d - 1);
  const Vector wt = w.tail(d - 1);
  const Matrix reduced = Matrix(lam.asDiagonal()) + s.mu * wt * wt.transpose();
  ReducedDeterminant out;
  out.direct = Eigen::PartialPivLU<Matrix>(reduced).determinant();
  out.closed_form = s.mu * w[0] * w[0] / s.lambda1() * lam.prod();
  return out;
}

}  // namespace metastab
