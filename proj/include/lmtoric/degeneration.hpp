// One-parameter degenerations with exact Laurent-series arithmetic: a family
// of point configurations over a punctured disk, its per-point vanishing
// levels, the limit stable rooted chain read off the leading coefficients,
// and a symbolic-limit oracle that recomputes each component projection by
// rescaling homogeneous coordinates.
#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "lmtoric/exact.hpp"
#include "lmtoric/trees.hpp"

namespace lmtoric {

class LaurentSeries {
 public:
  LaurentSeries() = default;
  explicit LaurentSeries(std::map<long, Rat> terms) : terms_(std::move(terms)) { prune(); }

  static LaurentSeries monomial(long exponent, const Rat& coeff) {
    LaurentSeries s;
    if (coeff != 0) s.terms_.emplace(exponent, coeff);
    return s;
  }

  const std::map<long, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // order of vanishing; the zero series reports a sentinel
  long ord() const {
    return terms_.empty() ? std::numeric_limits<long>::max() : terms_.begin()->first;
  }

  Rat coeff(long exponent) const {
    const auto it = terms_.find(exponent);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  LaurentSeries shifted(long by) const {
    std::map<long, Rat> t;
    for (const auto& [e, c] : terms_) t.emplace(e + by, c);
    return LaurentSeries(std::move(t));
  }

  LaurentSeries operator+(const LaurentSeries& o) const {
    std::map<long, Rat> t = terms_;
    for (const auto& [e, c] : o.terms_) t[e] += c;
    return LaurentSeries(std::move(t));
  }

  LaurentSeries operator-(const LaurentSeries& o) const {
    std::map<long, Rat> t = terms_;
    for (const auto& [e, c] : o.terms_) t[e] -= c;
    return LaurentSeries(std::move(t));
  }

  LaurentSeries operator*(const LaurentSeries& o) const {
    std::map<long, Rat> t;
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) t[e1 + e2] += c1 * c2;
    return LaurentSeries(std::move(t));
  }

  bool operator==(const LaurentSeries& o) const { return terms_ == o.terms_; }

 private:
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }

  std::map<long, Rat> terms_;
};

struct Family {
  long d = 0;
  long n = 0;
  // points[i][s] is the s-th affine coordinate series of the (i+1)-st point
  std::vector<std::vector<LaurentSeries>> points;
};

inline void check_family(const Family& f) {
  if (f.d < 1 || f.n < 2) throw std::invalid_argument("family: bad dimensions");
  if (f.points.size() != static_cast<std::size_t>(f.n - 1))
    throw std::invalid_argument("family: wrong number of points");
  for (const auto& p : f.points) {
    if (p.size() != static_cast<std::size_t>(f.d))
      throw std::invalid_argument("family: wrong number of coordinates");
    bool all_zero = true;
    for (const auto& s : p) {
      if (!s.is_zero() && s.ord() < 0)
        throw std::invalid_argument("family: coordinate has a pole at the origin");
      if (!s.is_zero()) all_zero = false;
    }
    if (all_zero)
      throw std::invalid_argument("family: a point is identically the heavy point");
  }
  for (std::size_t i = 0; i < f.points.size(); ++i)
    for (std::size_t j = i + 1; j < f.points.size(); ++j) {
      bool distinct = false;
      for (std::size_t s = 0; s < f.points[i].size(); ++s)
        if (!(f.points[i][s] - f.points[j][s]).is_zero()) distinct = true;
      if (!distinct) throw std::invalid_argument("family: two points coincide identically");
    }
}

// minimal vanishing order across the coordinates of point i (1-based)
inline long level(const Family& f, long i) {
  check_family(f);
  if (i < 1 || i > f.n - 1) throw std::invalid_argument("level: index out of range");
  long m = std::numeric_limits<long>::max();
  for (const auto& s : f.points[static_cast<std::size_t>(i - 1)]) m = std::min(m, s.ord());
  return m;
}

inline std::vector<long> family_levels(const Family& f) {
  check_family(f);
  std::set<long> levels;
  for (long i = 1; i <= f.n - 1; ++i) levels.insert(level(f, i));
  return {levels.begin(), levels.end()};
}

// Limit chain: one component per distinct level, points grouped by level,
// coordinates given by the coefficient vector at that level. Only level
// differences are meaningful, so the root is normalized to level zero.
inline StableRootedTree limit_tree(const Family& f) {
  check_family(f);
  const auto levels = family_levels(f);
  StableRootedTree t;
  t.d = f.d;
  t.n = f.n;
  t.components.resize(levels.size());
  for (long i = 1; i <= f.n - 1; ++i) {
    const long m = level(f, i);
    const std::size_t v = static_cast<std::size_t>(
        std::lower_bound(levels.begin(), levels.end(), m) - levels.begin());
    QVec a;
    for (const auto& s : f.points[static_cast<std::size_t>(i - 1)]) a.push_back(s.coeff(m));
    t.components[v].marked.emplace(i, std::move(a));
  }
  require_valid(t);
  return t;
}

// Exact limit as t -> 0 of the configuration rescaled by diag(1, t^-level,
// ..., t^-level): rescale each homogeneous coordinate vector so its most
// negative exponent becomes zero and read off the constant terms.
inline PointConfiguration gv_limit(const Family& f, long level_value) {
  check_family(f);
  PointConfiguration out{f.d, f.n, {}};
  for (long i = 1; i <= f.n - 1; ++i) {
    std::vector<LaurentSeries> h;
    h.push_back(LaurentSeries::monomial(0, Rat(1)));
    for (const auto& s : f.points[static_cast<std::size_t>(i - 1)])
      h.push_back(s.shifted(-level_value));
    long mu = 0;
    for (const auto& s : h)
      if (!s.is_zero()) mu = std::min(mu, s.ord());
    QVec coords;
    for (const auto& s : h) coords.push_back(s.coeff(mu));
    out.points.push_back(ProjectivePoint(std::move(coords)));
  }
  return out;
}

// The symbolic limits agree with the component projections of the limit
// chain, level by level.
inline bool oracle_check(const Family& f) {
  const auto levels = family_levels(f);
  const auto t = limit_tree(f);
  for (std::size_t v = 0; v < levels.size(); ++v) {
    const auto lhs = gv_limit(f, levels[v]);
    const auto rhs = phi(t, v);
    if (lhs.points != rhs.points) return false;
  }
  return true;
}

}  // namespace lmtoric
