// Stable rooted chains of projective spaces with marked points, their
// per-component projections, the associated configuration cycles with
// Kunneth classes, and reconstruction of the chain from its cycle.
//
// Conventions: components are listed from the root; each marked point i is
// stored by its affine coordinates on its component, which are nonzero (the
// markings avoid the exceptional locus); the heavy point is pinned to
// e0 = [1:0:...:0] on the last component and never stored; representatives
// are unique up to one scaling factor per component.
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lmtoric/exact.hpp"

namespace lmtoric {

class ProjectivePoint {
 public:
  // normalizes so the first nonzero coordinate is 1
  explicit ProjectivePoint(QVec h) : h_(std::move(h)) {
    std::size_t p = 0;
    while (p < h_.size() && h_[p] == 0) ++p;
    if (p == h_.size()) throw std::invalid_argument("projective point: zero vector");
    const Rat lead = h_[p];
    for (auto& c : h_) c /= lead;
  }

  static ProjectivePoint e0(long d) {
    QVec h(static_cast<std::size_t>(d) + 1, Rat(0));
    h[0] = 1;
    return ProjectivePoint(std::move(h));
  }

  // [1 : a_1 : ... : a_d]
  static ProjectivePoint affine(const QVec& a) {
    QVec h;
    h.reserve(a.size() + 1);
    h.push_back(Rat(1));
    for (const auto& c : a) h.push_back(c);
    return ProjectivePoint(std::move(h));
  }

  // [0 : a_1 : ... : a_d], the image on the hyperplane at infinity
  static ProjectivePoint at_infinity(const QVec& a) {
    QVec h;
    h.reserve(a.size() + 1);
    h.push_back(Rat(0));
    for (const auto& c : a) h.push_back(c);
    return ProjectivePoint(std::move(h));
  }

  const QVec& coords() const { return h_; }
  long dim() const { return static_cast<long>(h_.size()) - 1; }

  bool is_e0() const {
    if (h_[0] != 1) return false;
    for (std::size_t i = 1; i < h_.size(); ++i)
      if (h_[i] != 0) return false;
    return true;
  }
  bool on_hyperplane() const { return h_[0] == 0; }
  bool is_torus_fixed() const { return is_e0() || on_hyperplane(); }

  QVec affine_part() const {
    if (h_[0] == 0) throw std::invalid_argument("projective point: lies at infinity");
    return QVec(h_.begin() + 1, h_.end());
  }

  bool operator==(const ProjectivePoint& o) const { return h_ == o.h_; }
  bool operator!=(const ProjectivePoint& o) const { return !(*this == o); }

 private:
  QVec h_;
};

struct TreeComponent {
  std::map<long, QVec> marked;  // light point index -> affine coordinates
};

struct StableRootedTree {
  long d = 0;
  long n = 0;
  std::vector<TreeComponent> components;  // index 0 is the root
};

struct PointConfiguration {
  long d = 0;
  long n = 0;
  std::vector<ProjectivePoint> points;  // the n-1 light points
};

struct CycleComponent {
  std::set<long> marked_indices;  // the indices whose points move
  PointConfiguration config;
};

struct Cycle {
  std::vector<CycleComponent> components;
};

using KunnethClass = std::vector<int>;  // coefficient of gamma_i, length n-1

inline std::vector<std::string> validate_tree(const StableRootedTree& t) {
  std::vector<std::string> violations;
  if (t.d < 1) violations.push_back("dimension must be positive");
  if (t.n < 2) violations.push_back("need at least two points");
  if (t.components.empty()) violations.push_back("chain has no components");
  std::set<long> seen;
  for (std::size_t v = 0; v < t.components.size(); ++v) {
    const auto& comp = t.components[v];
    if (comp.marked.empty())
      violations.push_back("component " + std::to_string(v) + " carries no marking");
    for (const auto& [i, a] : comp.marked) {
      if (i < 1 || i > t.n - 1)
        violations.push_back("marked index " + std::to_string(i) + " out of range");
      if (!seen.insert(i).second)
        violations.push_back("marked index " + std::to_string(i) + " appears twice");
      if (a.size() != static_cast<std::size_t>(t.d))
        violations.push_back("marking " + std::to_string(i) + " has wrong dimension");
      bool zero = true;
      for (const auto& c : a)
        if (c != 0) zero = false;
      if (zero)
        violations.push_back("marking " + std::to_string(i) + " meets the exceptional locus");
    }
  }
  if (static_cast<long>(seen.size()) != t.n - 1)
    violations.push_back("markings do not exhaust the light points");
  return violations;
}

inline void require_valid(const StableRootedTree& t) {
  const auto v = validate_tree(t);
  if (!v.empty()) throw std::invalid_argument("invalid tree: " + v.front());
}

// Projection onto component v: ancestors land on the hyperplane at infinity,
// descendants collapse to e0, the component itself maps identically.
inline PointConfiguration phi(const StableRootedTree& t, std::size_t v) {
  require_valid(t);
  if (v >= t.components.size()) throw std::invalid_argument("phi: component index out of range");
  PointConfiguration out{t.d, t.n, {}};
  std::vector<ProjectivePoint> pts(static_cast<std::size_t>(t.n - 1), ProjectivePoint::e0(t.d));
  for (std::size_t w = 0; w < t.components.size(); ++w)
    for (const auto& [i, a] : t.components[w].marked) {
      const std::size_t slot = static_cast<std::size_t>(i - 1);
      if (w < v)
        pts[slot] = ProjectivePoint::at_infinity(a);
      else if (w == v)
        pts[slot] = ProjectivePoint::affine(a);
      else
        pts[slot] = ProjectivePoint::e0(t.d);
    }
  out.points = std::move(pts);
  return out;
}

inline void check_cycle_component(const CycleComponent& c) {
  if (c.marked_indices.empty())
    throw std::invalid_argument("cycle component carries no moving point");
  for (std::size_t s = 0; s < c.config.points.size(); ++s) {
    const long i = static_cast<long>(s) + 1;
    const bool fixed = c.config.points[s].is_torus_fixed();
    if (c.marked_indices.count(i) && fixed)
      throw std::invalid_argument("cycle component: marked point is torus-fixed");
    if (!c.marked_indices.count(i) && !fixed)
      throw std::invalid_argument("cycle component: unmarked point is not torus-fixed");
  }
}

inline KunnethClass component_class(const CycleComponent& c) {
  KunnethClass k(c.config.points.size(), 0);
  for (long i : c.marked_indices) k[static_cast<std::size_t>(i - 1)] = 1;
  return k;
}

inline KunnethClass total_class(const Cycle& z) {
  if (z.components.empty()) throw std::invalid_argument("empty cycle");
  KunnethClass k(z.components.front().config.points.size(), 0);
  for (const auto& c : z.components) {
    const auto kc = component_class(c);
    for (std::size_t i = 0; i < k.size(); ++i) k[i] += kc[i];
  }
  return k;
}

// One orbit closure per component of the chain.
inline Cycle configuration_cycle(const StableRootedTree& t) {
  require_valid(t);
  Cycle z;
  for (std::size_t v = 0; v < t.components.size(); ++v) {
    CycleComponent c;
    for (const auto& [i, a] : t.components[v].marked) c.marked_indices.insert(i);
    c.config = phi(t, v);
    check_cycle_component(c);
    z.components.push_back(std::move(c));
  }
  return z;
}

// Membership of a configuration in the closure of the one-parameter orbit of
// c.config: a common rescaling of the moving points' affine parts, or the
// limit where they all collapse to e0, or the limit where they all project to
// the hyperplane at infinity. Fixed points must match exactly throughout.
inline bool orbit_contains(const CycleComponent& c, const PointConfiguration& q) {
  if (q.points.size() != c.config.points.size()) return false;
  std::vector<std::size_t> moving;
  for (std::size_t s = 0; s < c.config.points.size(); ++s) {
    if (c.config.points[s].is_torus_fixed()) {
      if (q.points[s] != c.config.points[s]) return false;
    } else {
      moving.push_back(s);
    }
  }
  if (moving.empty()) return true;

  // t -> 0 limit: every moving point at e0
  {
    bool all = true;
    for (auto s : moving)
      if (!q.points[s].is_e0()) all = false;
    if (all) return true;
  }
  // t -> infinity limit: every moving point at its hyperplane projection
  {
    bool all = true;
    for (auto s : moving)
      if (q.points[s] != ProjectivePoint::at_infinity(c.config.points[s].affine_part()))
        all = false;
    if (all) return true;
  }
  // interior of the orbit: one common nonzero scalar on all affine parts
  std::optional<Rat> scale;
  for (auto s : moving) {
    if (q.points[s].on_hyperplane()) return false;
    const QVec a = c.config.points[s].affine_part();
    const QVec b = q.points[s].affine_part();
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[j] == 0) {
        if (b[j] != 0) return false;
        continue;
      }
      const Rat ratio = b[j] / a[j];
      if (ratio == 0) return false;
      if (!scale)
        scale = ratio;
      else if (*scale != ratio)
        return false;
    }
  }
  return scale.has_value();
}

// Rebuilds the chain from its cycle: the root is the unique component whose
// closure contains (e0,...,e0); afterwards, with the points of the earlier
// components frozen at their hyperplane projections and everything else at
// e0, exactly one unidentified component contains the probe configuration.
inline StableRootedTree reconstruct_tree(const Cycle& z) {
  if (z.components.empty()) throw std::invalid_argument("malformed cycle: empty");
  const long n_minus_1 = static_cast<long>(z.components.front().config.points.size());
  const long d = z.components.front().config.points.front().dim();
  {
    std::set<long> all;
    for (const auto& c : z.components) {
      check_cycle_component(c);
      if (static_cast<long>(c.config.points.size()) != n_minus_1)
        throw std::invalid_argument("malformed cycle: component sizes differ");
      for (long i : c.marked_indices) {
        if (i < 1 || i > n_minus_1 || !all.insert(i).second)
          throw std::invalid_argument("malformed cycle: marked indices do not partition");
      }
    }
    if (static_cast<long>(all.size()) != n_minus_1)
      throw std::invalid_argument("malformed cycle: marked indices do not partition");
  }

  StableRootedTree t;
  t.d = d;
  t.n = n_minus_1 + 1;
  std::vector<bool> used(z.components.size(), false);
  std::map<long, QVec> placed;  // index -> affine coordinates on its component
  for (std::size_t step = 0; step < z.components.size(); ++step) {
    PointConfiguration probe{d, t.n, {}};
    for (long i = 1; i <= n_minus_1; ++i) {
      const auto it = placed.find(i);
      probe.points.push_back(it == placed.end() ? ProjectivePoint::e0(d)
                                                : ProjectivePoint::at_infinity(it->second));
    }
    std::optional<std::size_t> found;
    for (std::size_t c = 0; c < z.components.size(); ++c) {
      if (used[c] || !orbit_contains(z.components[c], probe)) continue;
      if (found) throw std::invalid_argument("malformed cycle: ambiguous component order");
      found = c;
    }
    if (!found) throw std::invalid_argument("malformed cycle: no next component contains the probe");
    used[*found] = true;
    TreeComponent comp;
    for (long i : z.components[*found].marked_indices) {
      const QVec a = z.components[*found].config.points[static_cast<std::size_t>(i - 1)].affine_part();
      placed.emplace(i, a);
      comp.marked.emplace(i, a);
    }
    t.components.push_back(std::move(comp));
  }
  require_valid(t);
  return t;
}

// Same chain shape and markings, with coordinates agreeing up to one nonzero
// scalar per component.
inline bool trees_isomorphic(const StableRootedTree& a, const StableRootedTree& b) {
  if (a.d != b.d || a.n != b.n || a.components.size() != b.components.size()) return false;
  for (std::size_t v = 0; v < a.components.size(); ++v) {
    const auto& ca = a.components[v].marked;
    const auto& cb = b.components[v].marked;
    if (ca.size() != cb.size()) return false;
    std::optional<Rat> scale;
    for (auto ita = ca.begin(), itb = cb.begin(); ita != ca.end(); ++ita, ++itb) {
      if (ita->first != itb->first) return false;
      const QVec& x = ita->second;
      const QVec& y = itb->second;
      if (x.size() != y.size()) return false;
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] == 0) {
          if (y[j] != 0) return false;
          continue;
        }
        const Rat r = y[j] / x[j];
        if (r == 0) return false;
        if (!scale)
          scale = r;
        else if (*scale != r)
          return false;
      }
    }
  }
  return true;
}

}  // namespace lmtoric
