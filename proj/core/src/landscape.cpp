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

#include "metastab/landscape.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "metastab/errors.hpp"

namespace metastab {
namespace {

inline double ipow(double x, int k) {
  switch (k) {
    case 0: return 1.0;
    case 1: return x;
    case 2: return x * x;
    case 3: return x * x * x;
    case 4: {
      const double x2 = x * x;
      return x2 * x2;
    }
    default: {
      double r = 1.0;
      double b = x;
      while (k > 0) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
      }
      return r;
    }
  }
}

std::string format_point(const Vector& x) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

}  // namespace

PolynomialPotential::PolynomialPotential(int dim, std::vector<Term> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (dim_ <= 0) throw Error(ErrorCode::kContractViolation, "polynomial dimension must be positive");
  for (const auto& t : terms_) {
    if (static_cast<int>(t.exponents.size()) != dim_)
      throw Error(ErrorCode::kContractViolation, "polynomial term has wrong exponent count");
    for (int k : t.exponents)
      if (k < 0) throw Error(ErrorCode::kContractViolation, "negative exponent in polynomial term");
  }
}

double PolynomialPotential::value(const VectorCRef& x) const {
  double u = 0.0;
  for (const auto& t : terms_) {
    double m = t.coefficient;
    for (int i = 0; i < dim_; ++i) m *= ipow(x[i], t.exponents[i]);
    u += m;
  }
  return u;
}

void PolynomialPotential::gradient(const VectorCRef& x, VectorRef g) const {
  g.setZero();
  for (const auto& t : terms_) {
    for (int i = 0; i < dim_; ++i) {
      const int ki = t.exponents[i];
      if (ki == 0) continue;
      double m = t.coefficient * ki * ipow(x[i], ki - 1);
      for (int j = 0; j < dim_; ++j)
        if (j != i) m *= ipow(x[j], t.exponents[j]);
      g[i] += m;
    }
  }
}

void PolynomialPotential::hessian(const VectorCRef& x, MatrixRef h) const {
  h.setZero();
  for (const auto& t : terms_) {
    for (int i = 0; i < dim_; ++i) {
      const int ki = t.exponents[i];
      if (ki == 0) continue;
      for (int j = i; j < dim_; ++j) {
        const int kj = t.exponents[j];
        double m = t.coefficient;
        if (i == j) {
          if (ki < 2) continue;
          m *= ki * (ki - 1) * ipow(x[i], ki - 2);
        } else {
          if (kj == 0) continue;
          m *= ki * kj * ipow(x[i], ki - 1) * ipow(x[j], kj - 1);
        }
        for (int k = 0; k < dim_; ++k)
          if (k != i && k != j) m *= ipow(x[k], t.exponents[k]);
        h(i, j) += m;
        if (i != j) h(j, i) += m;
      }
    }
  }
}

ScalarPolySkew::ScalarPolySkew(Matrix base, std::vector<double> coefficients)
    : base_(std::move(base)), coefficients_(std::move(coefficients)) {
  if (base_.rows() != base_.cols() || base_.rows() == 0)
    throw Error(ErrorCode::kContractViolation, "skew generator base must be a non-empty square matrix");
  if (coefficients_.empty()) coefficients_.push_back(1.0);
}

bool ScalarPolySkew::is_constant() const {
  return std::all_of(coefficients_.begin() + 1, coefficients_.end(), [](double c) { return c == 0.0; });
}

bool ScalarPolySkew::is_zero() const {
  return base_.isZero(0.0) ||
         std::all_of(coefficients_.begin(), coefficients_.end(), [](double c) { return c == 0.0; });
}

void ScalarPolySkew::value(double u, MatrixRef j) const {
  double p = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) p = p * u + *it;
  j = p * base_;
}

void ScalarPolySkew::derivative(double u, MatrixRef dj) const {
  double dp = 0.0;
  for (std::size_t k = coefficients_.size() - 1; k >= 1; --k) dp = dp * u + static_cast<double>(k) * coefficients_[k];
  dj = dp * base_;
}

std::shared_ptr<const SkewGenerator> constant_skew(Matrix entries) {
  return std::make_shared<ScalarPolySkew>(std::move(entries), std::vector<double>{1.0});
}

std::shared_ptr<const SkewGenerator> zero_skew(int dim) {
  return constant_skew(Matrix::Zero(dim, dim));
}

std::shared_ptr<const SkewGenerator> planar_rotation_skew(double amplitude) {
  Matrix j(2, 2);
  j << 0.0, amplitude, -amplitude, 0.0;
  return constant_skew(std::move(j));
}

LandscapeSpec::LandscapeSpec(std::string name, std::shared_ptr<const Potential> potential,
                             std::shared_ptr<const SkewGenerator> skew)
    : name_(std::move(name)), potential_(std::move(potential)), skew_(std::move(skew)) {
  if (!potential_) throw Error(ErrorCode::kContractViolation, "landscape needs a potential");
  dim_ = potential_->dim();
  if (!skew_) skew_ = zero_skew(dim_);
  if (skew_->dim() != dim_)
    throw Error(ErrorCode::kContractViolation, "skew generator dimension does not match potential");
}

LandscapeSpec LandscapeSpec::with_skew(std::shared_ptr<const SkewGenerator> skew) const {
  return LandscapeSpec(name_, potential_, std::move(skew));
}

Vector LandscapeSpec::gradient(const VectorCRef& x) const {
  Vector g(dim_);
  potential_->gradient(x, g);
  return g;
}

Matrix LandscapeSpec::hessian(const VectorCRef& x) const {
  Matrix h(dim_, dim_);
  potential_->hessian(x, h);
  return h;
}

Matrix LandscapeSpec::skew_at(double u) const {
  Matrix j(dim_, dim_);
  skew_->value(u, j);
  return j;
}

Matrix LandscapeSpec::skew_derivative_at(double u) const {
  Matrix j(dim_, dim_);
  skew_->derivative(u, j);
  return j;
}

void LandscapeSpec::drift(const VectorCRef& x, double sign, VectorRef out, DriftWorkspace& ws) const {
  potential_->gradient(x, ws.grad);
  if (skew_->is_zero()) {
    out = ws.grad;
    return;
  }
  const double u = skew_->is_constant() ? 0.0 : potential_->value(x);
  skew_->value(u, ws.jmat);
  out.noalias() = ws.grad;
  out.noalias() += sign * (ws.jmat * ws.grad);
}

namespace {

struct LocalEval {
  double u;
  Vector grad;
};

LocalEval checked_eval(const LandscapeSpec& spec, const Vector& x) {
  if (x.size() != spec.dim())
    throw Error(ErrorCode::kContractViolation, "point dimension does not match landscape");
  if (!x.allFinite()) throw EvaluationError("non-finite point " + format_point(x), x);
  LocalEval e{spec.value(x), spec.gradient(x)};
  if (!std::isfinite(e.u) || !e.grad.allFinite())
    throw EvaluationError("non-finite potential or gradient at " + format_point(x), x);
  return e;
}

}  // namespace

Vector eval_ell(const LandscapeSpec& spec, const Vector& x) {
  const LocalEval e = checked_eval(spec, x);
  return spec.skew_at(e.u) * e.grad;
}

Matrix eval_ell_jacobian(const LandscapeSpec& spec, const Vector& x) {
  const LocalEval e = checked_eval(spec, x);
  const Matrix h = spec.hessian(x);
  return spec.skew_derivative_at(e.u) * (e.grad * e.grad.transpose()) + spec.skew_at(e.u) * h;
}

OrthogonalityReport certify_orthogonality(const LandscapeSpec& spec,
                                          const std::vector<Vector>& probes) {
  if (probes.empty()) throw Error(ErrorCode::kContractViolation, "orthogonality certificate needs probes");
  OrthogonalityReport rep;
  rep.n_probes = probes.size();
  rep.worst_probe = probes.front();
  for (const auto& x : probes) {
    const Vector g = spec.gradient(x);
    const Vector ell = eval_ell(spec, x);
    const double dot = std::abs(g.dot(ell));
    const double div = std::abs(eval_ell_jacobian(spec, x).trace());
    rep.max_dot = std::max(rep.max_dot, dot);
    rep.max_divergence = std::max(rep.max_divergence, div);
    const double tol = 1e-10 * (1.0 + g.squaredNorm());
    const double scaled = std::max(dot, div) / tol;
    if (scaled > rep.worst_scaled) {
      rep.worst_scaled = scaled;
      rep.worst_probe = x;
    }
  }
  rep.pass = rep.worst_scaled <= 1.0;
  return rep;
}

double fd_step(const Vector& x) {
  static const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
  return cbrt_eps * (1.0 + x.norm());
}

DerivativeReport certify_derivatives(const LandscapeSpec& spec,
                                     const std::vector<Vector>& probes) {
  DerivativeReport rep;
  rep.n_probes = probes.size();
  const int d = spec.dim();
  for (const auto& x : probes) {
    const double u = spec.value(x);
    const Matrix j = spec.skew_at(u);
    rep.max_skew_residual = std::max(rep.max_skew_residual, (j + j.transpose()).cwiseAbs().maxCoeff());

    const double h = fd_step(x);
    const Vector g = spec.gradient(x);
    const Matrix hess = spec.hessian(x);
    const Matrix dl = eval_ell_jacobian(spec, x);
    Vector g_fd(d);
    Matrix h_fd(d, d), dl_fd(d, d);
    for (int i = 0; i < d; ++i) {
      Vector xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      g_fd[i] = (spec.value(xp) - spec.value(xm)) / (2.0 * h);
      h_fd.col(i) = (spec.gradient(xp) - spec.gradient(xm)) / (2.0 * h);
      dl_fd.col(i) = (eval_ell(spec, xp) - eval_ell(spec, xm)) / (2.0 * h);
    }
    rep.max_gradient_rel_err =
        std::max(rep.max_gradient_rel_err, (g_fd - g).norm() / std::max(1.0, g.norm()));
    rep.max_hessian_rel_err =
        std::max(rep.max_hessian_rel_err, (h_fd - hess).norm() / std::max(1.0, hess.norm()));
    rep.max_jacobian_rel_err =
        std::max(rep.max_jacobian_rel_err, (dl_fd - dl).norm() / std::max(1.0, dl.norm()));
  }
  rep.pass = rep.max_skew_residual <= kSkewTolerance && rep.max_gradient_rel_err <= kGradientTolerance &&
             rep.max_hessian_rel_err <= kHessianTolerance && rep.max_jacobian_rel_err <= kHessianTolerance;
  return rep;
}

std::vector<Vector> halton_probes(const Box& box, std::size_t n) {
  static constexpr std::array<int, 16> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  const int d = box.dim();
  if (d > static_cast<int>(kPrimes.size()))
    throw Error(ErrorCode::kContractViolation, "halton probes support at most 16 dimensions");
  std::vector<Vector> out;
  out.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Vector p(d);
    for (int i = 0; i < d; ++i) {
      const int base = kPrimes[i];
      double f = 1.0, r = 0.0;
      for (std::size_t m = k; m > 0; m /= base) {
        f /= base;
        r += f * static_cast<double>(m % base);
      }
      p[i] = box.lo[i] + r * (box.hi[i] - box.lo[i]);
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace metastab
