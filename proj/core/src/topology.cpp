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

#include "metastab/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include "metastab/errors.hpp"
#include "metastab/spectral.hpp"

namespace metastab {

std::string_view to_string(CriticalKind kind) {
  switch (kind) {
    case CriticalKind::kMinimum: return "minimum";
    case CriticalKind::kSaddle: return "saddle_index_1";
    case CriticalKind::kHigherIndex: return "other_index_k";
  }
  return "unknown";
}

CriticalPoint classify_critical_point(const LandscapeSpec& spec, const Vector& x) {
  CriticalPoint c;
  c.x = x;
  c.value = spec.value(x);
  c.hessian = spec.hessian(x);
  const SymmetricEigen he = sym_eig(c.hessian);
  c.hessian_eigs = he.values;
  const double det = he.values.prod();
  if (std::abs(det) < 1e-8) {
    std::ostringstream os;
    os << "critical point at (" << x.transpose() << ") has |det Hess U| = " << std::abs(det)
       << " < 1e-8 (Morse condition violated)";
    throw Error(ErrorCode::kDegenerateCriticalPoint, os.str());
  }
  c.morse_index = static_cast<int>((he.values.array() < 0.0).count());
  c.kind = c.morse_index == 0 ? CriticalKind::kMinimum
           : c.morse_index == 1 ? CriticalKind::kSaddle
                                : CriticalKind::kHigherIndex;
  c.ell_jac = eval_ell_jacobian(spec, x);
  return c;
}

namespace {

std::optional<Vector> newton(const LandscapeSpec& spec, Vector x, const Box& box) {
  const Vector margin = 0.1 * box.widths();
  const Box outer{box.lo - margin, box.hi + margin};
  for (int it = 0; it < 100; ++it) {
    const Vector g = spec.gradient(x);
    if (!g.allFinite()) return std::nullopt;
    const double gn = g.norm();
    if (gn <= 1e-13) break;
    const Matrix h = spec.hessian(x);
    Eigen::FullPivLU<Matrix> lu(h);
    if (!lu.isInvertible()) return std::nullopt;
    x -= lu.solve(g);
    if (!x.allFinite() || !outer.contains(x)) return std::nullopt;
  }
  if (!box.contains(x)) return std::nullopt;
  if (spec.gradient(x).norm() > 1e-10) return std::nullopt;
  return x;
}

}  // namespace

std::vector<CriticalPoint> find_critical_points(const LandscapeSpec& spec, const Box& box, int seeds_per_axis) {
  if (seeds_per_axis < 4) throw Error(ErrorCode::kContractViolation, "seeds_per_axis must be at least 4");
  const int d = spec.dim();
  if (box.dim() != d) throw Error(ErrorCode::kContractViolation, "box dimension does not match landscape");
  const double dedup = 1e-6 * box.diameter();

  std::vector<Vector> found;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  long total = 1;
  for (int i = 0; i < d; ++i) total *= seeds_per_axis;
  for (long s = 0; s < total; ++s) {
    long rem = s;
    Vector seed(d);
    for (int i = 0; i < d; ++i) {
      const long k = rem % seeds_per_axis;
      rem /= seeds_per_axis;
      seed[i] = box.lo[i] + (static_cast<double>(k) + 0.5) / seeds_per_axis * (box.hi[i] - box.lo[i]);
    }
    auto x = newton(spec, seed, box);
    if (!x) continue;
    const bool dup = std::any_of(found.begin(), found.end(), [&](const Vector& y) { return (y - *x).norm() <= dedup; });
    if (!dup) found.push_back(*x);
  }

  std::vector<CriticalPoint> crits;
  crits.reserve(found.size());
  for (const auto& x : found) crits.push_back(classify_critical_point(spec, x));
  std::sort(crits.begin(), crits.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    if (a.value != b.value) return a.value < b.value;
    return std::lexicographical_compare(a.x.data(), a.x.data() + a.x.size(), b.x.data(), b.x.data() + b.x.size());
  });
  return crits;
}

std::size_t nearest_critical_point(const std::vector<CriticalPoint>& crits, const Vector& x) {
  if (crits.empty()) throw Error(ErrorCode::kContractViolation, "no critical points to match against");
  std::size_t best = 0;
  double bd = (crits[0].x - x).norm();
  for (std::size_t i = 1; i < crits.size(); ++i) {
    const double dd = (crits[i].x - x).norm();
    if (dd < bd) {
      bd = dd;
      best = i;
    }
  }
  return best;
}

int default_cells_per_axis(int dim) {
  switch (dim) {
    case 1: return 4000;
    case 2: return 400;
    case 3: return 96;
    default: return 0;
  }
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Component labels of {U < threshold} sampled at cell centers.
class SublevelGrid {
 public:
  SublevelGrid(const LandscapeSpec& spec, const Box& box, int n, double threshold)
      : d_(box.dim()), n_(n), box_(box), h_(box.widths() / n) {
    std::size_t total = 1;
    for (int i = 0; i < d_; ++i) total *= static_cast<std::size_t>(n_);
    std::vector<char> inside(total, 0);
    Vector c(d_);
    for (std::size_t k = 0; k < total; ++k) {
      center_of(k, c);
      inside[k] = spec.value(c) < threshold ? 1 : 0;
    }
    DisjointSets ds(total);
    std::size_t stride = 1;
    for (int axis = 0; axis < d_; ++axis) {
      for (std::size_t k = 0; k < total; ++k) {
        if (!inside[k]) continue;
        const auto coord = (k / stride) % static_cast<std::size_t>(n_);
        if (coord + 1 < static_cast<std::size_t>(n_) && inside[k + stride]) ds.unite(k, k + stride);
      }
      stride *= static_cast<std::size_t>(n_);
    }
    label_.assign(total, -1);
    std::vector<int> root_label(total, -1);
    for (std::size_t k = 0; k < total; ++k) {
      if (!inside[k]) continue;
      const std::size_t r = ds.find(k);
      if (root_label[r] < 0) root_label[r] = n_components_++;
      label_[k] = root_label[r];
    }
  }

  int n_components() const { return n_components_; }
  const Vector& spacing() const { return h_; }

  /// Label of the cell containing x (-1 outside the set or the box).
  int label_at(const Vector& x) const {
    std::size_t k = 0, stride = 1;
    for (int i = 0; i < d_; ++i) {
      const double t = std::floor((x[i] - box_.lo[i]) / h_[i]);
      if (t < 0.0 || t >= n_) return -1;
      k += static_cast<std::size_t>(t) * stride;
      stride *= static_cast<std::size_t>(n_);
    }
    return label_[k];
  }

  /// Label at x, falling back to face/diagonal neighbors within one cell.
  int label_near(const Vector& x) const {
    int l = label_at(x);
    if (l >= 0) return l;
    int count = 1;
    for (int i = 0; i < d_; ++i) count *= 3;
    for (int m = 0; m < count; ++m) {
      Vector y = x;
      int rem = m;
      for (int i = 0; i < d_; ++i) {
        y[i] += static_cast<double>(rem % 3 - 1) * h_[i];
        rem /= 3;
      }
      l = label_at(y);
      if (l >= 0) return l;
    }
    return -1;
  }

 private:
  void center_of(std::size_t k, Vector& c) const {
    for (int i = 0; i < d_; ++i) {
      const auto coord = k % static_cast<std::size_t>(n_);
      k /= static_cast<std::size_t>(n_);
      c[i] = box_.lo[i] + (static_cast<double>(coord) + 0.5) * h_[i];
    }
  }

  int d_;
  int n_;
  Box box_;
  Vector h_;
  std::vector<int> label_;
  int n_components_ = 0;
};

// First labeled cell along x0 + r dir for r = 2..8 grid cells.
int probe_label(const SublevelGrid& grid, const Vector& x0, const Vector& dir) {
  const double h = grid.spacing().maxCoeff();
  for (int k = 2; k <= 8; ++k) {
    const int l = grid.label_at(x0 + static_cast<double>(k) * h * dir);
    if (l >= 0) return l;
  }
  return -1;
}

}  // namespace

ValleyStructure build_valley_structure(const LandscapeSpec& spec, const std::vector<CriticalPoint>& crits,
                                       const CriticalPoint& m0, double level, const Box& box, int cells_per_axis) {
  const int d = spec.dim();
  if (d > 3) throw Error(ErrorCode::kContractViolation, "valley construction supports d <= 3");
  if (box.dim() != d) throw Error(ErrorCode::kContractViolation, "box dimension does not match landscape");
  if (m0.kind != CriticalKind::kMinimum)
    throw Error(ErrorCode::kContractViolation, "starting point must be a local minimum");
  if (!(m0.value < level)) {
    std::ostringstream os;
    os << "level H = " << level << " does not exceed U(m0) = " << m0.value;
    throw Error(ErrorCode::kInconsistentLevel, os.str());
  }
  const int n = cells_per_axis > 0 ? cells_per_axis : default_cells_per_axis(d);

  ValleyStructure vs;
  vs.requested_level = level;
  vs.box = box;
  vs.cells_per_axis.assign(static_cast<std::size_t>(d), n);
  vs.spacing = box.widths() / n;
  const double h = vs.spacing.maxCoeff();

  double lambda_ref = 0.0;
  for (const auto& c : crits)
    if (c.kind == CriticalKind::kSaddle) {
      const double l1 = -c.hessian_eigs[0];
      lambda_ref = lambda_ref == 0.0 ? l1 : std::min(lambda_ref, l1);
    }
  if (lambda_ref == 0.0) lambda_ref = 1.0;
  vs.level_tolerance = 0.5 * h * h * lambda_ref;

  for (const auto& c : crits) {
    if (c.kind != CriticalKind::kSaddle && std::abs(c.value - level) <= vs.level_tolerance) {
      level += 1e-9;
      std::ostringstream os;
      os << "non-saddle critical value " << c.value << " lies within grid tolerance of H; shifted H by +1e-9";
      vs.warnings.push_back(os.str());
      break;
    }
  }
  vs.level = level;

  // The threshold sits slightly below H so that valleys touching only at a
  // level-H saddle stay separated on the grid.
  const SublevelGrid grid(spec, box, n, level - vs.level_tolerance);
  vs.n_components = grid.n_components();

  vs.start = m0;
  vs.home_component = grid.label_near(m0.x);
  if (vs.home_component < 0)
    throw Error(ErrorCode::kInconsistentLevel, "starting minimum does not lie in any sublevel component");

  for (const auto& c : crits) {
    if (c.kind != CriticalKind::kMinimum || !(c.value < level)) continue;
    const int lab = grid.label_near(c.x);
    if (lab < 0) {
      std::ostringstream os;
      os << "minimum at (" << c.x.transpose() << ") below H was not resolved by the grid";
      vs.warnings.push_back(os.str());
      continue;
    }
    if (lab == vs.home_component) {
      vs.minima_home.push_back(c);
    } else {
      vs.minima_far.push_back(c);
      vs.far_components.push_back(lab);
    }
  }

  for (const auto& c : crits) {
    if (c.kind != CriticalKind::kSaddle || std::abs(c.value - level) > vs.level_tolerance) continue;
    const SymmetricEigen he = sym_eig(c.hessian);
    const Vector e1 = he.vectors.col(0);
    const int plus = probe_label(grid, c.x, e1);
    const int minus = probe_label(grid, c.x, -e1);
    if (plus < 0 || minus < 0 || plus == minus) continue;
    if (plus == vs.home_component) {
      vs.gates.push_back({c, e1, minus});
    } else if (minus == vs.home_component) {
      vs.gates.push_back({c, -e1, plus});
    }
  }

  vs.h0 = m0.value;
  for (const auto& m : vs.minima_home) vs.h0 = std::min(vs.h0, m.value);
  const double tie = 1e-9 * (1.0 + std::abs(vs.h0));
  for (const auto& m : vs.minima_home)
    if (m.value - vs.h0 <= tie) vs.deepest_home.push_back(m);

  if (vs.gates.empty()) {
    std::ostringstream os;
    os << "no index-1 saddle at level H = " << level
       << " joins the home valley to another component; the mean transition time is then much larger than "
          "exp((H - h0)/eps) and a higher level (see auto_gate_level) is required";
    throw Error(ErrorCode::kGateNotFound, os.str());
  }
  return vs;
}

double auto_gate_level(const LandscapeSpec& spec, const std::vector<CriticalPoint>& crits, const CriticalPoint& m0,
                       const std::vector<Vector>& targets, const Box& box, int cells_per_axis) {
  if (targets.empty()) throw Error(ErrorCode::kContractViolation, "auto_gate_level needs at least one target");
  std::vector<const CriticalPoint*> target_minima;
  for (const auto& t : targets) {
    const auto& c = crits[nearest_critical_point(crits, t)];
    if (c.kind != CriticalKind::kMinimum)
      throw Error(ErrorCode::kContractViolation, "target does not match a located minimum");
    target_minima.push_back(&c);
  }
  std::vector<double> levels;
  for (const auto& c : crits)
    if (c.kind == CriticalKind::kSaddle && c.value > m0.value) levels.push_back(c.value);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end(),
                           [](double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)); }),
               levels.end());

  const double match = 1e-6 * box.diameter();
  for (double level : levels) {
    ValleyStructure vs;
    try {
      vs = build_valley_structure(spec, crits, m0, level, box, cells_per_axis);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kGateNotFound) continue;
      throw;
    }
    const bool all_far = std::all_of(target_minima.begin(), target_minima.end(), [&](const CriticalPoint* t) {
      return std::any_of(vs.minima_far.begin(), vs.minima_far.end(),
                         [&](const CriticalPoint& m) { return (m.x - t->x).norm() <= match; });
    });
    if (all_far) return level;
  }
  throw Error(ErrorCode::kUnreachableTarget,
              "no saddle value separates the targets from the starting valley behind a gate");
}

}  // namespace metastab
