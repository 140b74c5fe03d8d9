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

#include "metastab/saddlecheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "metastab/errors.hpp"
#include "metastab/simulate.hpp"

namespace metastab {

namespace {

constexpr double kQuadratureTolerance = 1e-8;
constexpr unsigned kQuadratureMaxDepth = 16;  // 2^16 panels
constexpr int kFaceScan = 4096;

void require_planar(const SaddleConstant& sc, const char* what) {
  if (sc.spectrum.dim() != 2) {
    std::ostringstream os;
    os << what << " is implemented for d = 2 only (got d = " << sc.spectrum.dim() << ")";
    throw Error(ErrorCode::kContractViolation, os.str());
  }
}

void require_decreasing(const std::vector<double>& ladder) {
  if (ladder.empty()) throw Error(ErrorCode::kContractViolation, "epsilon ladder is empty");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (!(ladder[i] < ladder[i - 1])) throw Error(ErrorCode::kContractViolation, "epsilon ladder must decrease");
}

/// Sub-intervals of [lo, hi] on which g < 0, endpoints refined by bisection.
template <class G>
std::vector<std::pair<double, double>> negative_intervals(const G& g, double lo, double hi) {
  std::vector<std::pair<double, double>> out;
  auto refine = [&](double a, double b) {  // g(a) and g(b) differ in sign
    const bool a_neg = g(a) < 0.0;
    for (int it = 0; it < 100 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
      const double m = 0.5 * (a + b);
      ((g(m) < 0.0) == a_neg ? a : b) = m;
    }
    return 0.5 * (a + b);
  };
  double prev_t = lo;
  bool prev_neg = g(lo) < 0.0;
  double start = lo;
  for (int i = 1; i <= kFaceScan; ++i) {
    const double t = lo + (hi - lo) * i / kFaceScan;
    const bool neg = g(t) < 0.0;
    if (neg != prev_neg) {
      const double root = refine(prev_t, t);
      if (neg)
        start = root;
      else
        out.emplace_back(start, root);
    }
    prev_t = t;
    prev_neg = neg;
  }
  if (prev_neg) out.emplace_back(start, hi);
  return out;
}

/// Adaptive Gauss–Kronrod over the pieces, in the coordinate u = t / scale
/// with unit-width panels. Boost's recursive rule reports leaf error
/// estimates in reference-interval units (not multiplied by the half-width),
/// so it is only trustworthy on panels of width O(1); the rescaling also
/// keeps the Gaussian peak from hiding inside one wide initial interval.
template <class F>
double integrate(const F& f, const std::vector<std::pair<double, double>>& pieces, const char* label, double eps,
                 double scale) {
  auto g = [&](double u) { return f(scale * u); };
  double total = 0.0, error = 0.0, l1 = 0.0;
  for (const auto& [a, b] : pieces) {
    const double ua = a / scale, ub = b / scale;
    const int n = std::max(1, static_cast<int>(std::ceil(ub - ua)));
    for (int i = 0; i < n; ++i) {
      const double lo = ua + (ub - ua) * i / n;
      const double hi = i + 1 == n ? ub : ua + (ub - ua) * (i + 1) / n;
      double e = 0.0, m = 0.0;
      total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, lo, hi, kQuadratureMaxDepth,
                                                                            kQuadratureTolerance, &e, &m);
      error += e;
      l1 += m;
    }
  }
  if (!std::isfinite(total) || error > kQuadratureTolerance * l1 + 1e-300) {
    std::ostringstream os;
    os << "quadrature for " << label << " at eps = " << eps << " did not reach relative accuracy "
       << kQuadratureTolerance << " (error estimate " << scale * error << ", L1 " << scale * l1 << ")";
    throw Error(ErrorCode::kNumericFailure, os.str());
  }
  return scale * total;
}

}  // namespace

SaddleBox make_saddle_box(const SaddleConstant& sc, double epsilon, double j_box) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::kContractViolation, "saddle box needs 0 < eps < 1");
  if (!(j_box > 0.0)) throw Error(ErrorCode::kContractViolation, "J_box must be positive");
  SaddleBox b;
  b.center = sc.saddle.x;
  b.epsilon = epsilon;
  b.delta = std::sqrt(epsilon * std::log(1.0 / epsilon));
  b.j_box = j_box;
  b.axes = sc.spectrum.hessian_vecs;
  b.lambdas = sc.spectrum.hessian_eigs.cwiseAbs();
  b.half_widths.resize(b.lambdas.size());
  for (Eigen::Index i = 0; i < b.lambdas.size(); ++i)
    b.half_widths[i] = (i == 0 ? 1.0 : 2.0) * j_box * b.delta / std::sqrt(b.lambdas[i]);
  b.level = sc.saddle.value;
  b.level_cap = b.level + j_box * j_box * b.delta * b.delta;
  return b;
}

double test_function(const VectorCRef& x, const VectorCRef& center, const SaddleSpectrum& s, double epsilon) {
  const double z = (x - center).dot(s.v) * std::sqrt(s.mu / epsilon);
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double log_normal_upper_tail(double z) {
  if (z < 30.0) return std::log(0.5 * std::erfc(z / std::numbers::sqrt2));
  // Asymptotic series 1 - Phi(z) = phi(z)/z sum_k (-1)^k (2k-1)!! / z^{2k}.
  const double inv2 = 1.0 / (z * z);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 8; ++k) {
    term *= -(2.0 * k - 1.0) * inv2;
    sum += term;
  }
  return -0.5 * z * z - std::log(z) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(sum);
}

double test_function_complement(const VectorCRef& x, const VectorCRef& center, const SaddleSpectrum& s,
                                double epsilon) {
  const double z = (x - center).dot(s.v) * std::sqrt(s.mu / epsilon);
  return std::exp(log_normal_upper_tail(z));
}

bool BoundaryTable::monotone_toward_one() const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(std::abs(rows[i].ratio - 1.0) < std::abs(rows[i - 1].ratio - 1.0))) return false;
  return true;
}

BoundaryTable boundary_asymptotics(const LandscapeSpec& spec, const SaddleConstant& sc,
                                   const std::vector<double>& epsilon_ladder, double j_box, unsigned threads) {
  require_planar(sc, "boundary_asymptotics");
  require_decreasing(epsilon_ladder);
  const SaddleSpectrum& s = sc.spectrum;
  BoundaryTable table;
  table.j_box = j_box;
  table.omega = sc.omega;
  table.rows.resize(epsilon_ladder.size());

  parallel_for(epsilon_ladder.size(), threads, [&](std::size_t k) {
    const double eps = epsilon_ladder[k];
    const SaddleBox box = make_saddle_box(sc, eps, j_box);
    const Vector e1 = box.axes.col(0);
    const double v1 = s.v.dot(e1);
    const double c = std::sqrt(2.0 * std::numbers::pi * eps / s.mu);
    const double a1 = box.half_widths[0];
    const double w2 = box.half_widths[1];
    auto face_point = [&](double t) { return box.point(Vector{{a1, t}}); };
    auto excess = [&](double t) { return spec.value(face_point(t)) - box.level_cap; };
    const auto pieces = negative_intervals(excess, -w2, w2);

    auto i1_integrand = [&](double t) {
      const Vector x = face_point(t);
      const double sv = (x - box.center).dot(s.v);
      return eps * v1 / c * std::exp(-s.mu * sv * sv / (2.0 * eps) - (spec.value(x) - box.level) / eps);
    };
    auto i2_integrand = [&](double t) {
      const Vector x = face_point(t);
      const double ell1 = eval_ell(spec, x).dot(e1);
      if (ell1 == 0.0) return 0.0;
      const double z = (x - box.center).dot(s.v) * std::sqrt(s.mu / eps);
      return ell1 * std::exp(log_normal_upper_tail(z) - (spec.value(x) - box.level) / eps);
    };
    BoundaryRow row;
    row.epsilon = eps;
    row.i1 = integrate(i1_integrand, pieces, "I1", eps, std::sqrt(eps));
    row.i2 = integrate(i2_integrand, pieces, "I2", eps, std::sqrt(eps));
    row.alpha_omega = std::pow(2.0 * std::numbers::pi * eps, 0.5 * s.dim()) * sc.omega;
    row.ratio = row.difference() / row.alpha_omega;
    table.rows[k] = row;
  });
  return table;
}

double reduced_det_check(const SaddleSpectrum& s) {
  if (s.dim() < 2) throw Error(ErrorCode::kContractViolation, "reduced_det_check needs d >= 2");
  return reduced_determinant(s).relative_difference();
}

std::vector<GeneratorResidualRow> generator_residual(const LandscapeSpec& spec, const SaddleConstant& sc,
                                                     const std::vector<double>& epsilon_ladder, double j_box,
                                                     int panels) {
  require_planar(sc, "generator_residual");
  require_decreasing(epsilon_ladder);
  if (panels < 1) throw Error(ErrorCode::kContractViolation, "panels must be positive");
  const SaddleSpectrum& s = sc.spectrum;
  const auto& nodes = boost::math::quadrature::gauss<double, 8>::abscissa();
  const auto& weights = boost::math::quadrature::gauss<double, 8>::weights();
  std::vector<double> gl_x, gl_w;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    gl_x.push_back(nodes[i]);
    gl_w.push_back(weights[i]);
    gl_x.push_back(-nodes[i]);
    gl_w.push_back(weights[i]);
  }
  std::vector<GeneratorResidualRow> out;
  for (double eps : epsilon_ladder) {
    const SaddleBox box = make_saddle_box(sc, eps, j_box);
    const double c = std::sqrt(2.0 * std::numbers::pi * eps / s.mu);
    std::vector<double> coords[2], wts[2];
    for (int axis = 0; axis < 2; ++axis) {
      const double h = 2.0 * box.half_widths[axis] / panels;
      for (int p = 0; p < panels; ++p) {
        const double mid = -box.half_widths[axis] + (p + 0.5) * h;
        for (std::size_t q = 0; q < gl_x.size(); ++q) {
          coords[axis].push_back(mid + 0.5 * h * gl_x[q]);
          wts[axis].push_back(0.5 * h * gl_w[q]);
        }
      }
    }
    double integral = 0.0;
    for (std::size_t i = 0; i < coords[0].size(); ++i) {
      for (std::size_t j = 0; j < coords[1].size(); ++j) {
        const Vector x = box.point(Vector{{coords[0][i], coords[1][j]}});
        const double u = spec.value(x);
        if (u >= box.level_cap) continue;
        const double sv = (x - box.center).dot(s.v);
        const Vector drift = spec.gradient(x) - eval_ell(spec, x);
        const double bracket = -drift.dot(s.v) - s.mu * sv;
        integral += wts[0][i] * wts[1][j] * std::abs(bracket) / c *
                    std::exp(-s.mu * sv * sv / (2.0 * eps) - (u - box.level) / eps);
      }
    }
    out.push_back({eps, integral, integral / (2.0 * std::numbers::pi * eps)});
  }
  return out;
}

FaceSampleReport corner_exclusion(const LandscapeSpec& spec, const SaddleConstant& sc, double epsilon,
                                  double j_box, double a, int n_samples) {
  require_planar(sc, "corner_exclusion");
  if (n_samples < 2) throw Error(ErrorCode::kContractViolation, "need at least two samples");
  const SaddleBox box = make_saddle_box(sc, epsilon, j_box);
  FaceSampleReport r;
  r.n_samples = n_samples;
  const double jd = j_box * box.delta;
  for (int i = 0; i < n_samples; ++i) {
    const double t = -box.half_widths[1] + 2.0 * box.half_widths[1] * i / (n_samples - 1);
    const Vector x = box.point(Vector{{box.half_widths[0], t}});
    const double slack1 = (x - box.center).dot(sc.spectrum.v) - a * jd;
    const double slack2 = spec.value(x) - (box.level + a * jd * jd);
    const double slack = std::max(slack1, slack2);
    r.worst_margin = i == 0 ? slack : std::min(r.worst_margin, slack);
    if (slack < 0.0) ++r.n_violations;
  }
  return r;
}

FaceSampleReport side_face_floor(const LandscapeSpec& spec, const SaddleConstant& sc, double epsilon,
                                 double j_box, int n_samples) {
  require_planar(sc, "side_face_floor");
  if (n_samples < 2) throw Error(ErrorCode::kContractViolation, "need at least two samples");
  const SaddleBox box = make_saddle_box(sc, epsilon, j_box);
  const double floor = box.level + 1.25 * j_box * j_box * box.delta * box.delta;
  FaceSampleReport r;
  bool first = true;
  for (double side : {-1.0, 1.0}) {
    for (int i = 0; i < n_samples; ++i) {
      const double t = -box.half_widths[0] + 2.0 * box.half_widths[0] * i / (n_samples - 1);
      const Vector x = box.point(Vector{{t, side * box.half_widths[1]}});
      const double slack = spec.value(x) - floor;
      r.worst_margin = first ? slack : std::min(r.worst_margin, slack);
      first = false;
      ++r.n_samples;
      if (slack < 0.0) ++r.n_violations;
    }
  }
  return r;
}

}  // namespace metastab
