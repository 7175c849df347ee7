#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lmtoric/linalg.hpp"

using namespace lmtoric;

namespace {

ZMat random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long span = 6) {
  ZMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.range(-span, span);
  return m;
}

}  // namespace

TEST_CASE("hermite normal form on pinned examples") {
  SUBCASE("identity") {
    const auto r = hermite_normal_form(ZMat::identity(2));
    CHECK(r.h == ZMat::identity(2));
    CHECK(r.u == ZMat::identity(2));
  }
  SUBCASE("2x2 with reduction") {
    const auto m = ZMat::from_rows({{2, 4}, {1, 3}});
    const auto r = hermite_normal_form(m);
    CHECK(r.h == ZMat::from_rows({{1, 1}, {0, 2}}));
    CHECK(mul(r.u, m) == r.h);
    CHECK(abs(determinant(r.u)) == 1);
  }
  SUBCASE("zero matrix") {
    const auto m = ZMat(3, 2);
    const auto r = hermite_normal_form(m);
    CHECK(r.h == m);
    CHECK(r.u == ZMat::identity(3));
  }
}

TEST_CASE("hermite normal form properties") {
  Rng rng(0x51a7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng.below(5), cols = 1 + rng.below(5);
    const auto m = random_matrix(rng, rows, cols);
    const auto r = hermite_normal_form(m);
    CHECK(mul(r.u, m) == r.h);
    CHECK(abs(determinant(r.u)) == 1);
    // echelon shape with positive pivots and reduced entries above
    std::ptrdiff_t last_pivot = -1;
    for (std::size_t i = 0; i < rows; ++i) {
      std::size_t p = 0;
      while (p < cols && r.h(i, p) == 0) ++p;
      if (p == cols) continue;
      CHECK(static_cast<std::ptrdiff_t>(p) > last_pivot);
      last_pivot = static_cast<std::ptrdiff_t>(p);
      CHECK(r.h(i, p) > 0);
      for (std::size_t k = 0; k < i; ++k) {
        CHECK(r.h(k, p) >= 0);
        CHECK(r.h(k, p) < r.h(i, p));
      }
    }
  }
}

TEST_CASE("smith normal form on pinned examples") {
  SUBCASE("diag(2,3) has invariant factors 1,6") {
    const auto m = ZMat::from_rows({{2, 0}, {0, 3}});
    const auto r = smith_normal_form(m);
    CHECK(r.s == ZMat::from_rows({{1, 0}, {0, 6}}));
    CHECK(mul(mul(r.u, m), r.v) == r.s);
  }
  SUBCASE("identity") {
    const auto r = smith_normal_form(ZMat::identity(3));
    CHECK(r.s == ZMat::identity(3));
  }
  SUBCASE("single row with unit gcd") {
    const auto m = ZMat::from_rows({{1, 0, 1}});
    const auto r = smith_normal_form(m);
    CHECK(r.s == ZMat::from_rows({{1, 0, 0}}));
    CHECK(mul(mul(r.u, m), r.v) == r.s);
  }
}

TEST_CASE("smith normal form properties under both pivot rules") {
  Rng rng(0xbeef);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng.below(5), cols = 1 + rng.below(5);
    const auto m = random_matrix(rng, rows, cols);
    for (const auto rule : {SnfPivot::min_abs, SnfPivot::first_nonzero}) {
      const auto r = smith_normal_form(m, rule);
      CHECK(mul(mul(r.u, m), r.v) == r.s);
      CHECK(abs(determinant(r.u)) == 1);
      CHECK(abs(determinant(r.v)) == 1);
      for (std::size_t i = 0; i < std::min(rows, cols); ++i)
        for (std::size_t j = 0; j < std::min(rows, cols); ++j)
          if (i != j) CHECK(r.s(i, j) == 0);
      for (std::size_t i = 0; i + 1 < r.rank; ++i) {
        CHECK(r.s(i, i) > 0);
        CHECK(r.s(i + 1, i + 1) % r.s(i, i) == 0);
      }
    }
  }
}

TEST_CASE("primitive vectors") {
  CHECK(primitive(ZVec{2, 4, 6}) == ZVec{1, 2, 3});
  CHECK(primitive(ZVec{1, 0, 0}) == ZVec{1, 0, 0});
  CHECK(primitive(ZVec{-2, -2, 0}) == ZVec{-1, -1, 0});
  CHECK_THROWS_AS(primitive(ZVec{0, 0}), std::invalid_argument);
}

TEST_CASE("saturation") {
  SUBCASE("gcd scaling") {
    const Sublattice s{2, {{2, 0}}};
    CHECK(lattice_basis(saturate(s)) == std::vector<ZVec>{{1, 0}});
  }
  SUBCASE("already saturated") {
    const Sublattice s{3, {{1, 0, 1}}};
    CHECK(lattice_equal(saturate(s), s));
  }
  SUBCASE("index-two sublattice saturates to the ambient lattice") {
    const Sublattice s{2, {{1, 1}, {1, -1}}};
    const auto sat = saturate(s);
    CHECK(lattice_basis(sat) == std::vector<ZVec>{{1, 0}, {0, 1}});
  }
  SUBCASE("idempotent on random sublattices") {
    Rng rng(0x5a7);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + rng.below(4), g = 1 + rng.below(3);
      Sublattice s{n, {}};
      for (std::size_t i = 0; i < g; ++i) {
        ZVec v(n);
        for (auto& x : v) x = rng.range(-4, 4);
        if (!is_zero_vector(v)) s.generators.push_back(v);
      }
      const auto once = saturate(s);
      CHECK(lattice_equal(saturate(once), once));
      CHECK(lattice_rank(once) == lattice_rank(s));
    }
  }
}

TEST_CASE("quotient presentations") {
  SUBCASE("rank 3 by a line") {
    const auto q = quotient(3, Sublattice{3, {{1, 0, 1}}});
    CHECK(q.quotient_rank == 2);
    CHECK(is_zero_vector(mul(q.coordinate_map, ZVec{1, 0, 1})));
    CHECK(lattice_equal(kernel_lattice(q.coordinate_map), Sublattice{3, {{1, 0, 1}}}));
  }
  SUBCASE("empty relations give the identity") {
    const auto q = quotient(2, Sublattice{2, {}});
    CHECK(q.coordinate_map == ZMat::identity(2));
    CHECK(q.quotient_rank == 2);
  }
  SUBCASE("non-saturated relations are a torsion error") {
    CHECK_THROWS_WITH_AS(quotient(2, Sublattice{2, {{2, 0}}}),
                         doctest::Contains("torsion"), std::invalid_argument);
  }
  SUBCASE("coordinate map annihilates relations on random saturated lattices") {
    Rng rng(0xc0de);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + rng.below(4);
      Sublattice s{n, {}};
      const std::size_t g = 1 + rng.below(n - 1);
      for (std::size_t i = 0; i < g; ++i) {
        ZVec v(n);
        for (auto& x : v) x = rng.range(-3, 3);
        if (!is_zero_vector(v)) s.generators.push_back(v);
      }
      const auto sat = saturate(s);
      const auto q = quotient(n, sat);
      CHECK(q.quotient_rank == n - lattice_rank(sat));
      for (const auto& gen : sat.generators)
        CHECK(is_zero_vector(mul(q.coordinate_map, gen)));
    }
  }
  SUBCASE("two pivot rules differ by a unimodular transition") {
    const Sublattice rel{4, {{1, 2, 0, 1}, {0, 1, 1, 1}}};
    const auto sat = saturate(rel);
    const auto q1 = quotient(4, sat, SnfPivot::min_abs);
    const auto q2 = quotient(4, sat, SnfPivot::first_nonzero);
    const auto t = mul(q2.coordinate_map, right_inverse(q1.coordinate_map));
    CHECK(mul(t, q1.coordinate_map) == q2.coordinate_map);
    CHECK(abs(determinant(t)) == 1);
  }
}

TEST_CASE("integer kernels") {
  SUBCASE("pinned example") {
    const auto m = ZMat::from_rows({{1, -1, 0}, {0, 0, 1}});
    CHECK(lattice_basis(kernel_lattice(m)) == std::vector<ZVec>{{1, 1, 0}});
  }
  SUBCASE("identity has trivial kernel") {
    CHECK(kernel_lattice(ZMat::identity(3)).generators.empty());
  }
  SUBCASE("zero map has full kernel") {
    const auto k = kernel_lattice(ZMat(1, 3));
    CHECK(lattice_basis(k) == std::vector<ZVec>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  }
  SUBCASE("rank-nullity and annihilation on random maps") {
    Rng rng(0xfeed);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + rng.below(4), cols = 1 + rng.below(5);
      const auto m = random_matrix(rng, rows, cols);
      const auto k = kernel_lattice(m);
      CHECK(k.generators.size() + rank(m) == cols);
      for (const auto& g : k.generators) CHECK(is_zero_vector(mul(m, g)));
    }
  }
}

TEST_CASE("rational solve") {
  const auto m = ZMat::from_rows({{2, 0}, {0, 3}});
  const auto x = solve_rational(m, ZVec{1, 1});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == make_rat(1, 2));
  CHECK((*x)[1] == make_rat(1, 3));
  CHECK_FALSE(solve_rational(ZMat::from_rows({{1, 1}, {1, 1}}), ZVec{0, 1}).has_value());
}
