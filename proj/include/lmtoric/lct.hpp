// Central hyperplane arrangements: intersection-lattice enumeration with
// canonical row-reduced flat keys, the log canonical threshold as the minimum
// of codim/s over flats, the structured three-families arrangement attached
// to the n = 3 moduli space with its blow-up exclusion rule, and the exact
// divisor arithmetic for its log-Fano certificate.
#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "lmtoric/exact.hpp"

namespace lmtoric {

using LinearForm = QVec;

struct CentralArrangement {
  std::size_t m = 0;  // ambient dimension
  std::vector<LinearForm> forms;
};

namespace detail {

inline std::vector<QVec> rref(std::vector<QVec> rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const Rat lead = rows[r][c];
    for (std::size_t j = c; j < cols; ++j) rows[r][j] /= lead;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rat f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

inline bool in_rowspan(const std::vector<QVec>& basis, QVec f) {
  for (const auto& row : basis) {
    std::size_t p = 0;
    while (p < row.size() && row[p] == 0) ++p;
    if (p < row.size() && f[p] != 0) {
      const Rat c = f[p];
      for (std::size_t j = 0; j < f.size(); ++j) f[j] -= c * row[j];
    }
  }
  for (const auto& x : f)
    if (x != 0) return false;
  return true;
}

inline std::string rref_key(const std::vector<QVec>& basis) {
  std::string key;
  for (const auto& row : basis) {
    for (const auto& x : row) {
      key += rat_to_string(x);
      key += ',';
    }
    key += ';';
  }
  return key;
}

}  // namespace detail

inline void check_arrangement(const CentralArrangement& a) {
  for (const auto& f : a.forms) {
    if (f.size() != a.m) throw std::invalid_argument("arrangement: form has wrong arity");
    bool zero = true;
    for (const auto& x : f)
      if (x != 0) zero = false;
    if (zero) throw std::invalid_argument("arrangement: zero form");
  }
  for (std::size_t i = 0; i < a.forms.size(); ++i)
    for (std::size_t j = i + 1; j < a.forms.size(); ++j)
      if (detail::in_rowspan(detail::rref({a.forms[i]}), a.forms[j]))
        throw std::invalid_argument("arrangement: proportional forms");
}

struct Flat {
  std::vector<QVec> normals;  // canonical row-reduced basis of the normal space
  std::size_t codim = 0;
  std::size_t s = 0;  // number of arrangement forms vanishing on the flat
};

// All intersections of nonempty subsets of hyperplanes, deduplicated by their
// canonical normal space. Grown by adjoining one hyperplane at a time, which
// reaches every flat without walking all subsets.
inline std::vector<Flat> flats(const CentralArrangement& a) {
  check_arrangement(a);
  if (a.forms.size() > 24)
    throw std::invalid_argument("flats: arrangement too large for enumeration");
  std::map<std::string, std::vector<QVec>> seen;
  std::deque<std::vector<QVec>> work;
  for (const auto& f : a.forms) {
    auto basis = detail::rref({f});
    const auto key = detail::rref_key(basis);
    if (seen.emplace(key, basis).second) work.push_back(std::move(basis));
  }
  while (!work.empty()) {
    const auto basis = std::move(work.front());
    work.pop_front();
    for (const auto& f : a.forms) {
      if (detail::in_rowspan(basis, f)) continue;
      auto next = basis;
      next.push_back(f);
      next = detail::rref(std::move(next));
      const auto key = detail::rref_key(next);
      if (seen.emplace(key, next).second) work.push_back(std::move(next));
      if (seen.size() > (std::size_t(1) << 20))
        throw std::invalid_argument("flats: intersection lattice too large");
    }
  }
  std::vector<Flat> out;
  for (const auto& [key, basis] : seen) {
    Flat fl;
    fl.normals = basis;
    fl.codim = basis.size();
    for (const auto& f : a.forms)
      if (detail::in_rowspan(basis, f)) ++fl.s;
    out.push_back(std::move(fl));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Flat& x, const Flat& y) { return x.codim < y.codim; });
  return out;
}

// min over flats of codim/s
inline Rat lct(const CentralArrangement& a) {
  if (a.forms.empty()) throw std::invalid_argument("lct: empty arrangement");
  const auto fl = flats(a);
  Rat best;
  bool first = true;
  for (const auto& f : fl) {
    const Rat ratio = make_rat(static_cast<long>(f.codim), static_cast<long>(f.s));
    if (first || ratio < best) {
      best = ratio;
      first = false;
    }
  }
  return best;
}

// The 3d hyperplanes in 2d variables: per coordinate index j, the vanishing
// of the first point's coordinate, of the second's, and of their difference.
inline CentralArrangement tdn3_arrangement(long d) {
  if (d < 2) throw std::invalid_argument("tdn3_arrangement: need d >= 2");
  CentralArrangement a;
  a.m = static_cast<std::size_t>(2 * d);
  const auto unit = [&](std::size_t p) {
    QVec v(a.m, Rat(0));
    v[p] = 1;
    return v;
  };
  for (long j = 0; j < d; ++j) a.forms.push_back(unit(static_cast<std::size_t>(j)));
  for (long j = 0; j < d; ++j) a.forms.push_back(unit(static_cast<std::size_t>(d + j)));
  for (long j = 0; j < d; ++j) {
    QVec v(a.m, Rat(0));
    v[static_cast<std::size_t>(j)] = 1;
    v[static_cast<std::size_t>(d + j)] = -1;
    a.forms.push_back(std::move(v));
  }
  check_arrangement(a);
  return a;
}

// min of codim/s over the flats of tdn3_arrangement(d), excluding flats on
// which all d forms of one family vanish (those intersections are separated
// by the blow-ups). The arrangement is a direct sum over the coordinate
// indices, each contributing one of five local flats (nothing, one of the
// three hyperplanes, or the full local origin), so the flats are enumerated
// as 5^d patterns instead of subsets.
inline Rat tdn3_min_ratio(long d) {
  if (d < 2) throw std::invalid_argument("tdn3_min_ratio: need d >= 2");
  if (d > 8) throw std::invalid_argument("tdn3_min_ratio: enumeration guard exceeded");
  long best_num = 0, best_den = 0;
  std::vector<int> pattern(static_cast<std::size_t>(d), 0);
  for (;;) {
    long a = 0, b = 0, c = 0, z = 0;
    for (const int p : pattern) {
      if (p == 1) ++a;
      if (p == 2) ++b;
      if (p == 3) ++c;
      if (p == 4) ++z;
    }
    const bool nonempty = a + b + c + z > 0;
    const bool excluded = (a + z == d) || (b + z == d) || (c + z == d);
    if (nonempty && !excluded) {
      const long num = a + b + c + 2 * z;  // codim
      const long den = a + b + c + 3 * z;  // s
      if (best_den == 0 || num * best_den < best_num * den) {
        best_num = num;
        best_den = den;
      }
    }
    std::size_t pos = 0;
    while (pos < pattern.size() && pattern[pos] == 4) pattern[pos++] = 0;
    if (pos == pattern.size()) break;
    ++pattern[pos];
  }
  if (best_den == 0) throw std::logic_error("tdn3_min_ratio: no admissible flat");
  return make_rat(best_num, best_den);
}

// The same minimum through the displayed subset formula: over triples of
// proper subsets J_A, J_B, J_C of the coordinate indices, minimize
// (|J_A|+|J_B|+|J_C'|)/(|J_A|+|J_B|+|J_C|) with J_C' = J_C minus J_A cap J_B.
inline Rat tdn3_min_ratio_closed_form(long d) {
  if (d < 2) throw std::invalid_argument("tdn3_min_ratio_closed_form: need d >= 2");
  if (d > 7) throw std::invalid_argument("tdn3_min_ratio_closed_form: guard exceeded");
  const unsigned full = (1u << d) - 1u;
  long best_num = 0, best_den = 0;
  for (unsigned ja = 0; ja <= full; ++ja) {
    if (ja == full) continue;
    for (unsigned jb = 0; jb <= full; ++jb) {
      if (jb == full) continue;
      for (unsigned jc = 0; jc <= full; ++jc) {
        if (jc == full) continue;
        if (ja == 0 && jb == 0 && jc == 0) continue;
        const unsigned jcp = jc & ~(ja & jb);
        const long num = __builtin_popcount(ja) + __builtin_popcount(jb) +
                         __builtin_popcount(jcp);
        const long den = __builtin_popcount(ja) + __builtin_popcount(jb) +
                         __builtin_popcount(jc);
        if (best_den == 0 || num * best_den < best_num * den) {
          best_num = num;
          best_den = den;
        }
      }
    }
  }
  return make_rat(best_num, best_den);
}

// Divisor classes on the n = 3 space in the basis (pullback hyperplane, E12,
// E13, E23).
struct DivisorClassT3 {
  Rat h, e12, e13, e23;

  DivisorClassT3 operator+(const DivisorClassT3& o) const {
    return {h + o.h, e12 + o.e12, e13 + o.e13, e23 + o.e23};
  }
  DivisorClassT3 operator-(const DivisorClassT3& o) const {
    return {h - o.h, e12 - o.e12, e13 - o.e13, e23 - o.e23};
  }
  DivisorClassT3 operator*(const Rat& c) const { return {h * c, e12 * c, e13 * c, e23 * c}; }
  bool operator==(const DivisorClassT3& o) const {
    return h == o.h && e12 == o.e12 && e13 == o.e13 && e23 == o.e23;
  }
};

struct AnticanonicalClasses {
  DivisorClassT3 minus_k;          // -K
  DivisorClassT3 boundary;         // D = (2/3) sum of strict transforms
  DivisorClassT3 minus_k_minus_d;  // -(K + D)
};

// strict transform of one hyperplane of a family: pullback minus (d-1) times
// the exceptional divisor over the stratum the family cuts out
inline DivisorClassT3 strict_transform_class(long d, const DivisorClassT3& exceptional) {
  const DivisorClassT3 pullback{Rat(1), Rat(0), Rat(0), Rat(0)};
  return pullback - exceptional * Rat(d - 1);
}

inline AnticanonicalClasses pullback_and_anticanonical(long d) {
  if (d < 2) throw std::invalid_argument("pullback_and_anticanonical: need d >= 2");
  const DivisorClassT3 e12{Rat(0), Rat(1), Rat(0), Rat(0)};
  const DivisorClassT3 e13{Rat(0), Rat(0), Rat(1), Rat(0)};
  const DivisorClassT3 e23{Rat(0), Rat(0), Rat(0), Rat(1)};
  const DivisorClassT3 sum_e = e12 + e13 + e23;
  // -K = pullback of -K upstairs minus (d-1) per exceptional divisor, with
  // -K upstairs of degree 2d
  const DivisorClassT3 minus_k =
      DivisorClassT3{Rat(2 * d), Rat(0), Rat(0), Rat(0)} - sum_e * Rat(d - 1);
  // D = (2/3) sum over the three families of their d strict transforms
  const DivisorClassT3 family_a = strict_transform_class(d, e13) * Rat(d);
  const DivisorClassT3 family_b = strict_transform_class(d, e23) * Rat(d);
  const DivisorClassT3 family_c = strict_transform_class(d, e12) * Rat(d);
  const DivisorClassT3 boundary = (family_a + family_b + family_c) * make_rat(2, 3);
  return {minus_k, boundary, minus_k - boundary};
}

struct LogFanoReport {
  long d = 0;
  Rat min_ratio;   // threshold witness, must be 2/3
  Rat e_coeff;     // common exceptional coefficient of -(K+D), must be positive
  Rat h_coeff;     // hyperplane coefficient of -(K+D), must vanish
  bool pass = false;
};

inline LogFanoReport log_fano_certificate(long d) {
  LogFanoReport rep;
  rep.d = d;
  rep.min_ratio = tdn3_min_ratio(d);
  const auto classes = pullback_and_anticanonical(d);
  rep.h_coeff = classes.minus_k_minus_d.h;
  rep.e_coeff = classes.minus_k_minus_d.e12;
  const bool equal_e = classes.minus_k_minus_d.e12 == classes.minus_k_minus_d.e13 &&
                       classes.minus_k_minus_d.e12 == classes.minus_k_minus_d.e23;
  rep.pass = rep.min_ratio == make_rat(2, 3) && rep.h_coeff == 0 && equal_e && rep.e_coeff > 0;
  return rep;
}

}  // namespace lmtoric
