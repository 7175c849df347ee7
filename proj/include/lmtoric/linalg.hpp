// Exact integer and rational linear algebra: Hermite and Smith normal forms
// with unimodular transforms, saturations, torsion-free quotient
// presentations, and integer kernels. Everything downstream (fans, moduli
// constructions, downgrades) reduces to these primitives.
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lmtoric/exact.hpp"

namespace lmtoric {

class ZMat {
 public:
  ZMat() = default;
  ZMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows, ZVec(cols, 0)) {}

  static ZMat identity(std::size_t n) {
    ZMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static ZMat from_rows(std::vector<ZVec> rows) {
    ZMat m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    for (const auto& r : rows)
      if (r.size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
    m.a_ = std::move(rows);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i][j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i][j]; }

  const ZVec& row(std::size_t i) const { return a_[i]; }
  ZVec& row(std::size_t i) { return a_[i]; }

  void swap_rows(std::size_t i, std::size_t j) { std::swap(a_[i], a_[j]); }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& r : a_) std::swap(r[i], r[j]);
  }

  bool operator==(const ZMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<ZVec> a_;
};

inline ZMat mul(const ZMat& a, const ZMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  ZMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

inline ZVec mul(const ZMat& m, const ZVec& v) {
  if (m.cols() != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  ZVec out(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline ZMat transpose(const ZMat& m) {
  ZMat t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

// Bareiss fraction-free determinant; all divisions are exact.
inline Int determinant(const ZMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  ZMat a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

inline ZVec primitive(const ZVec& v) {
  if (is_zero_vector(v)) throw std::invalid_argument("primitive of zero vector");
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  ZVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return out;
}

struct HermiteResult {
  ZMat h;  // row Hermite normal form
  ZMat u;  // unimodular, u * input == h
};

// Row-style HNF: pivots positive, zeros below each pivot, entries above a
// pivot reduced into [0, pivot). Unique per row lattice.
inline HermiteResult hermite_normal_form(const ZMat& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  ZMat h = m;
  ZMat u = ZMat::identity(rows);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && h(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      h.swap_rows(r, p);
      u.swap_rows(r, p);
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (h(i, c) == 0) continue;
      Int g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                 h(r, c).get_mpz_t(), h(i, c).get_mpz_t());
      Int ar, bi;
      mpz_divexact(ar.get_mpz_t(), h(r, c).get_mpz_t(), g.get_mpz_t());
      mpz_divexact(bi.get_mpz_t(), h(i, c).get_mpz_t(), g.get_mpz_t());
      // [x y; -bi ar] has determinant +1
      for (std::size_t j = 0; j < cols; ++j) {
        Int hr = h(r, j), hi = h(i, j);
        h(r, j) = x * hr + y * hi;
        h(i, j) = ar * hi - bi * hr;
      }
      for (std::size_t j = 0; j < rows; ++j) {
        Int ur = u(r, j), ui = u(i, j);
        u(r, j) = x * ur + y * ui;
        u(i, j) = ar * ui - bi * ur;
      }
    }
    if (h(r, c) < 0) {
      for (std::size_t j = 0; j < cols; ++j) h(r, j) = -h(r, j);
      for (std::size_t j = 0; j < rows; ++j) u(r, j) = -u(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) h(i, j) -= q * h(r, j);
      for (std::size_t j = 0; j < rows; ++j) u(i, j) -= q * u(r, j);
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

enum class SnfPivot {
  min_abs,        // smallest nonzero |entry|, row-major tie break (default)
  first_nonzero,  // first nonzero entry in row-major order
};

struct SmithResult {
  ZMat u;  // unimodular rows x rows
  ZMat s;  // diagonal with divisibility chain, u * input * v == s
  ZMat v;  // unimodular cols x cols
  std::size_t rank = 0;
};

inline SmithResult smith_normal_form(const ZMat& m, SnfPivot rule = SnfPivot::min_abs) {
  const std::size_t rows = m.rows(), cols = m.cols();
  ZMat s = m;
  ZMat u = ZMat::identity(rows);
  ZMat v = ZMat::identity(cols);

  auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t j = 0; j < cols; ++j) s(dst, j) += f * s(src, j);
    for (std::size_t j = 0; j < rows; ++j) u(dst, j) += f * u(src, j);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t i = 0; i < rows; ++i) s(i, dst) += f * s(i, src);
    for (std::size_t i = 0; i < cols; ++i) v(i, dst) += f * v(i, src);
  };

  const std::size_t steps = std::min(rows, cols);
  std::size_t k = 0;
  for (; k < steps; ++k) {
    // pick a pivot in the trailing block
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        if (s(i, j) == 0) continue;
        if (pi == rows) {
          pi = i;
          pj = j;
          if (rule == SnfPivot::first_nonzero) goto pivot_found;
        } else if (rule == SnfPivot::min_abs &&
                   mpz_cmpabs(s(i, j).get_mpz_t(), s(pi, pj).get_mpz_t()) < 0) {
          pi = i;
          pj = j;
        }
      }
  pivot_found:
    if (pi == rows) break;  // trailing block is zero
    if (pi != k) {
      s.swap_rows(k, pi);
      u.swap_rows(k, pi);
    }
    if (pj != k) {
      s.swap_cols(k, pj);
      v.swap_cols(k, pj);
    }
    for (;;) {
      bool clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (s(i, k) == 0) continue;
        if (s(i, k) % s(k, k) == 0) {
          add_row(i, k, -Int(s(i, k) / s(k, k)));
        } else {
          Int g, x, y;
          mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                     s(k, k).get_mpz_t(), s(i, k).get_mpz_t());
          Int a, b;
          mpz_divexact(a.get_mpz_t(), s(k, k).get_mpz_t(), g.get_mpz_t());
          mpz_divexact(b.get_mpz_t(), s(i, k).get_mpz_t(), g.get_mpz_t());
          for (std::size_t j = 0; j < cols; ++j) {
            Int sk = s(k, j), si = s(i, j);
            s(k, j) = x * sk + y * si;
            s(i, j) = a * si - b * sk;
          }
          for (std::size_t j = 0; j < rows; ++j) {
            Int uk = u(k, j), ui = u(i, j);
            u(k, j) = x * uk + y * ui;
            u(i, j) = a * ui - b * uk;
          }
          clean = false;
        }
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (s(k, j) == 0) continue;
        if (s(k, j) % s(k, k) == 0) {
          add_col(j, k, -Int(s(k, j) / s(k, k)));
          clean = false;  // column op may reintroduce entries below the pivot
        } else {
          Int g, x, y;
          mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                     s(k, k).get_mpz_t(), s(k, j).get_mpz_t());
          Int a, b;
          mpz_divexact(a.get_mpz_t(), s(k, k).get_mpz_t(), g.get_mpz_t());
          mpz_divexact(b.get_mpz_t(), s(k, j).get_mpz_t(), g.get_mpz_t());
          for (std::size_t i = 0; i < rows; ++i) {
            Int sk = s(i, k), sj = s(i, j);
            s(i, k) = x * sk + y * sj;
            s(i, j) = a * sj - b * sk;
          }
          for (std::size_t i = 0; i < cols; ++i) {
            Int vk = v(i, k), vj = v(i, j);
            v(i, k) = x * vk + y * vj;
            v(i, j) = a * vj - b * vk;
          }
          clean = false;
        }
      }
      if (!clean) continue;
      bool row_zero = true, col_zero = true;
      for (std::size_t i = k + 1; i < rows && col_zero; ++i)
        if (s(i, k) != 0) col_zero = false;
      for (std::size_t j = k + 1; j < cols && row_zero; ++j)
        if (s(k, j) != 0) row_zero = false;
      if (!row_zero || !col_zero) continue;
      // enforce divisibility of the trailing block by the pivot
      bool fixed = false;
      for (std::size_t i = k + 1; i < rows && !fixed; ++i)
        for (std::size_t j = k + 1; j < cols && !fixed; ++j)
          if (s(i, j) % s(k, k) != 0) {
            add_row(k, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (s(k, k) < 0) {
      for (std::size_t i = 0; i < rows; ++i) s(i, k) = -s(i, k);
      for (std::size_t i = 0; i < cols; ++i) v(i, k) = -v(i, k);
    }
  }
  SmithResult res{std::move(u), std::move(s), std::move(v), k};
  return res;
}

inline std::size_t rank(const ZMat& m) { return smith_normal_form(m).rank; }

inline std::vector<Int> invariant_factors(const ZMat& m) {
  const auto snf = smith_normal_form(m);
  std::vector<Int> d;
  for (std::size_t i = 0; i < snf.rank; ++i) d.push_back(snf.s(i, i));
  return d;
}

// Exact rational solve a * x = b via Gauss elimination; nullopt when
// inconsistent. Free variables (if any) are pinned to zero.
inline std::optional<QVec> solve_rational(const ZMat& a, const ZVec& b) {
  const std::size_t rows = a.rows(), cols = a.cols();
  if (b.size() != rows) throw std::invalid_argument("solve: shape mismatch");
  std::vector<QVec> w(rows, QVec(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) w[i][j] = Rat(a(i, j));
    w[i][cols] = Rat(b[i]);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && w[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(w[r], w[p]);
    const Rat inv = w[r][c];
    for (std::size_t j = c; j <= cols; ++j) w[r][j] /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || w[i][c] == 0) continue;
      const Rat f = w[i][c];
      for (std::size_t j = c; j <= cols; ++j) w[i][j] -= f * w[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (w[i][cols] != 0) return std::nullopt;
  QVec x(cols, Rat(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = w[i][cols];
  // with free variables pinned to zero the candidate must be re-verified
  if (r < cols) {
    for (std::size_t i = 0; i < rows; ++i) {
      Rat acc(0);
      for (std::size_t j = 0; j < cols; ++j) acc += Rat(a(i, j)) * x[j];
      if (acc != Rat(b[i])) return std::nullopt;
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Sublattices

struct Sublattice {
  std::size_t ambient_rank = 0;
  std::vector<ZVec> generators;  // may be redundant; each of length ambient_rank
};

inline void check_sublattice(const Sublattice& s) {
  for (const auto& g : s.generators)
    if (g.size() != s.ambient_rank)
      throw std::invalid_argument("sublattice generator has wrong length");
}

// Canonical basis: nonzero rows of the row HNF. Unique per lattice.
inline std::vector<ZVec> lattice_basis(const Sublattice& s) {
  check_sublattice(s);
  if (s.generators.empty()) return {};
  const auto hnf = hermite_normal_form(ZMat::from_rows(s.generators));
  std::vector<ZVec> basis;
  for (std::size_t i = 0; i < hnf.h.rows(); ++i)
    if (!is_zero_vector(hnf.h.row(i))) basis.push_back(hnf.h.row(i));
  return basis;
}

inline std::size_t lattice_rank(const Sublattice& s) { return lattice_basis(s).size(); }

inline bool lattice_equal(const Sublattice& a, const Sublattice& b) {
  return a.ambient_rank == b.ambient_rank && lattice_basis(a) == lattice_basis(b);
}

// Integer membership test against the HNF basis.
inline bool lattice_contains(const Sublattice& s, const ZVec& v) {
  if (v.size() != s.ambient_rank) throw std::invalid_argument("vector/lattice rank mismatch");
  const auto basis = lattice_basis(s);
  ZVec rem = v;
  for (const auto& row : basis) {
    std::size_t p = 0;
    while (p < row.size() && row[p] == 0) ++p;
    if (rem[p] % row[p] != 0) {
      if (rem[p] != 0) return false;
      continue;
    }
    const Int q = rem[p] / row[p];
    for (std::size_t j = 0; j < rem.size(); ++j) rem[j] -= q * row[j];
  }
  return is_zero_vector(rem);
}

// Integer kernel of a lattice map, returned with its canonical HNF basis.
// Saturated by construction (kernels of lattice maps always are).
inline Sublattice kernel_lattice(const ZMat& m) {
  const auto snf = smith_normal_form(m);
  std::vector<ZVec> gens;
  for (std::size_t j = snf.rank; j < m.cols(); ++j) {
    ZVec col(m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) col[i] = snf.v(i, j);
    gens.push_back(std::move(col));
  }
  Sublattice ker{m.cols(), std::move(gens)};
  return Sublattice{m.cols(), lattice_basis(ker)};
}

// Saturation computed as the double annihilator (L^perp)^perp.
inline Sublattice saturate(const Sublattice& s) {
  check_sublattice(s);
  if (s.generators.empty()) return Sublattice{s.ambient_rank, {}};
  const Sublattice perp = kernel_lattice(ZMat::from_rows(s.generators));
  if (perp.generators.empty()) {
    // full-rank lattice saturates to the ambient lattice
    std::vector<ZVec> gens;
    for (std::size_t i = 0; i < s.ambient_rank; ++i) {
      ZVec e(s.ambient_rank, 0);
      e[i] = 1;
      gens.push_back(std::move(e));
    }
    return Sublattice{s.ambient_rank, std::move(gens)};
  }
  return kernel_lattice(ZMat::from_rows(perp.generators));
}

inline bool is_saturated(const Sublattice& s) {
  return lattice_basis(s) == lattice_basis(saturate(s));
}

// ---------------------------------------------------------------------------
// Quotient presentations

struct QuotientPresentation {
  std::size_t ambient_rank = 0;
  std::vector<ZVec> relation_generators;
  ZMat coordinate_map;  // quotient_rank x ambient_rank, kernel == relations
  std::size_t quotient_rank = 0;
};

inline void validate_quotient(const QuotientPresentation& q) {
  if (q.coordinate_map.rows() != q.quotient_rank ||
      q.coordinate_map.cols() != q.ambient_rank)
    throw std::invalid_argument("quotient: coordinate map has wrong shape");
  for (const auto& g : q.relation_generators)
    if (!is_zero_vector(mul(q.coordinate_map, g)))
      throw std::invalid_argument("quotient: coordinate map does not annihilate a relation");
  const Sublattice ker = kernel_lattice(q.coordinate_map);
  if (!lattice_equal(ker, saturate(Sublattice{q.ambient_rank, q.relation_generators})))
    throw std::invalid_argument("quotient: kernel differs from the relation lattice");
  for (const auto& d : invariant_factors(q.coordinate_map))
    if (d != 1) throw std::invalid_argument("quotient: coordinate map is not surjective");
  if (rank(q.coordinate_map) != q.quotient_rank)
    throw std::invalid_argument("quotient: coordinate map is not surjective");
}

// Presentation of ambient/relations for a saturated relation lattice. The
// coordinate map is read off the Smith transform, so a fixed pivot rule makes
// it reproducible run to run.
inline QuotientPresentation quotient(std::size_t ambient_rank, const Sublattice& relations,
                                     SnfPivot rule = SnfPivot::min_abs) {
  if (relations.ambient_rank != ambient_rank)
    throw std::invalid_argument("quotient: relations live in a different rank");
  if (!is_saturated(relations))
    throw std::invalid_argument("quotient: relations are not saturated (torsion quotient rejected)");
  const auto basis = lattice_basis(relations);
  const std::size_t r = basis.size();
  QuotientPresentation q;
  q.ambient_rank = ambient_rank;
  q.relation_generators = basis;
  q.quotient_rank = ambient_rank - r;
  if (r == 0) {
    q.coordinate_map = ZMat::identity(ambient_rank);
    return q;
  }
  // columns are the relation basis vectors
  ZMat gen(ambient_rank, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < ambient_rank; ++i) gen(i, j) = basis[j][i];
  const auto snf = smith_normal_form(gen, rule);
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.s(i, i) != 1)
      throw std::invalid_argument("quotient: saturated input produced nontrivial invariant factor");
  ZMat q_map(q.quotient_rank, ambient_rank);
  for (std::size_t i = 0; i < q.quotient_rank; ++i)
    for (std::size_t j = 0; j < ambient_rank; ++j) q_map(i, j) = snf.u(r + i, j);
  q.coordinate_map = std::move(q_map);
  validate_quotient(q);
  return q;
}

// Integer right inverse of a surjective lattice map; used to compare two
// quotient presentations of the same lattice through their transition matrix.
inline ZMat right_inverse(const ZMat& m) {
  const auto snf = smith_normal_form(m);
  if (snf.rank != m.rows()) throw std::invalid_argument("right_inverse: map is not surjective");
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.s(i, i) != 1) throw std::invalid_argument("right_inverse: map is not surjective");
  // m = u^-1 [I 0] v^-1, so w = v [I;0] u satisfies m w = I
  ZMat iu(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) iu(i, j) = snf.u(i, j);
  return mul(snf.v, iu);
}

}  // namespace lmtoric
