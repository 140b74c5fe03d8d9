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

#include <memory>
#include <string>
#include <vector>

#include "metastab/types.hpp"

namespace metastab {

using VectorCRef = Eigen::Ref<const Vector>;
using VectorRef = Eigen::Ref<Vector>;
using MatrixRef = Eigen::Ref<Matrix>;

/// A smooth potential U: R^d -> R with analytic first and second derivatives.
///
/// Implementations must be at least C^3 on R^d. Polynomials satisfy this
/// automatically; anything merely C^2 is outside the supported class.
class Potential {
 public:
  virtual ~Potential() = default;

  virtual int dim() const = 0;
  virtual double value(const VectorCRef& x) const = 0;
  virtual void gradient(const VectorCRef& x, VectorRef g) const = 0;
  virtual void hessian(const VectorCRef& x, MatrixRef h) const = 0;
};

/// Sum of monomials  c * prod_i x_i^{k_i}.
class PolynomialPotential final : public Potential {
 public:
  struct Term {
    double coefficient;
    std::vector<int> exponents;
  };

  PolynomialPotential(int dim, std::vector<Term> terms);

  int dim() const override { return dim_; }
  double value(const VectorCRef& x) const override;
  void gradient(const VectorCRef& x, VectorRef g) const override;
  void hessian(const VectorCRef& x, MatrixRef h) const override;

  const std::vector<Term>& terms() const { return terms_; }

 private:
  int dim_;
  std::vector<Term> terms_;
};

/// The map u -> J(u) used to build the non-reversible field
/// ell(x) = J(U(x)) grad U(x). Values are expected to be skew-symmetric; this
/// is certified, not enforced, so corrupted generators can be diagnosed.
class SkewGenerator {
 public:
  virtual ~SkewGenerator() = default;

  virtual int dim() const = 0;
  /// True when J does not depend on u (the hot path can skip evaluating U).
  virtual bool is_constant() const = 0;
  /// True when J vanishes identically (reversible dynamics).
  virtual bool is_zero() const = 0;
  virtual void value(double u, MatrixRef j) const = 0;
  virtual void derivative(double u, MatrixRef dj) const = 0;
};

/// J(u) = p(u) * S with p a polynomial (coefficients in ascending powers).
/// A constant generator is the special case p == 1.
class ScalarPolySkew final : public SkewGenerator {
 public:
  ScalarPolySkew(Matrix base, std::vector<double> coefficients);

  int dim() const override { return static_cast<int>(base_.rows()); }
  bool is_constant() const override;
  bool is_zero() const override;
  void value(double u, MatrixRef j) const override;
  void derivative(double u, MatrixRef dj) const override;

  const Matrix& base() const { return base_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

 private:
  Matrix base_;
  std::vector<double> coefficients_;
};

std::shared_ptr<const SkewGenerator> constant_skew(Matrix entries);
std::shared_ptr<const SkewGenerator> zero_skew(int dim);
/// [[0, a], [-a, 0]].
std::shared_ptr<const SkewGenerator> planar_rotation_skew(double amplitude);

/// Scratch buffers for allocation-free drift evaluation.
struct DriftWorkspace {
  explicit DriftWorkspace(int dim) : grad(dim), jmat(dim, dim) {}
  Vector grad;
  Matrix jmat;
};

/// Immutable description of the landscape: U, J and a name. Safe to share
/// across threads; every evaluation is pure.
class LandscapeSpec {
 public:
  LandscapeSpec(std::string name, std::shared_ptr<const Potential> potential,
                std::shared_ptr<const SkewGenerator> skew);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const Potential& potential() const { return *potential_; }
  const SkewGenerator& skew() const { return *skew_; }
  std::shared_ptr<const Potential> potential_ptr() const { return potential_; }
  std::shared_ptr<const SkewGenerator> skew_ptr() const { return skew_; }

  /// Same potential, different skew generator.
  LandscapeSpec with_skew(std::shared_ptr<const SkewGenerator> skew) const;

  double value(const VectorCRef& x) const { return potential_->value(x); }
  Vector gradient(const VectorCRef& x) const;
  Matrix hessian(const VectorCRef& x) const;
  Matrix skew_at(double u) const;
  Matrix skew_derivative_at(double u) const;
  bool reversible() const { return skew_->is_zero(); }

  /// out = grad U(x) + sign * ell(x). No allocation, no finiteness checks.
  void drift(const VectorCRef& x, double sign, VectorRef out, DriftWorkspace& ws) const;

 private:
  std::string name_;
  int dim_;
  std::shared_ptr<const Potential> potential_;
  std::shared_ptr<const SkewGenerator> skew_;
};

/// ell(x) = J(U(x)) grad U(x). Throws EvaluationError on non-finite input,
/// potential or gradient.
Vector eval_ell(const LandscapeSpec& spec, const Vector& x);

/// D ell(x) = J'(U) (grad U ⊗ grad U) + J(U) Hess U, analytically.
Matrix eval_ell_jacobian(const LandscapeSpec& spec, const Vector& x);

struct OrthogonalityReport {
  std::size_t n_probes = 0;
  double max_dot = 0.0;         ///< max |grad U . ell|
  double max_divergence = 0.0;  ///< max |trace D ell|
  /// Largest ratio of either quantity to 1e-10 (1 + |grad U|^2); pass iff <= 1.
  double worst_scaled = 0.0;
  Vector worst_probe;
  bool pass = true;
};

/// Checks grad U . ell = 0 and div ell = 0 at every probe, with tolerance
/// 1e-10 (1 + |grad U|^2). Always returns a report.
OrthogonalityReport certify_orthogonality(const LandscapeSpec& spec,
                                          const std::vector<Vector>& probes);

struct DerivativeReport {
  std::size_t n_probes = 0;
  double max_skew_residual = 0.0;     ///< max |J(u) + J(u)^T| entrywise
  double max_gradient_rel_err = 0.0;  ///< vs central differences of U
  double max_hessian_rel_err = 0.0;   ///< vs central differences of grad U
  double max_jacobian_rel_err = 0.0;  ///< D ell vs central differences of ell
  bool pass = true;
};

inline constexpr double kSkewTolerance = 1e-12;
inline constexpr double kGradientTolerance = 1e-6;
inline constexpr double kHessianTolerance = 1e-5;

/// Finite-difference certificates for the analytic derivatives, plus the
/// skew-symmetry check of J at u = U(probe). Central differences with step
/// eps^{1/3} (1 + |x|).
DerivativeReport certify_derivatives(const LandscapeSpec& spec,
                                     const std::vector<Vector>& probes);

/// Deterministic Halton points in the box (bases = first d primes).
std::vector<Vector> halton_probes(const Box& box, std::size_t n = 256);

/// Central-difference step used by the certificates.
double fd_step(const Vector& x);

}  // namespace metastab
