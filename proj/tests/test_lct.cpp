#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lmtoric/lct.hpp"
#include "lmtoric/linalg.hpp"

using namespace lmtoric;

namespace {

CentralArrangement boolean_arrangement(std::size_t m) {
  CentralArrangement a;
  a.m = m;
  for (std::size_t i = 0; i < m; ++i) {
    QVec f(m, Rat(0));
    f[i] = 1;
    a.forms.push_back(std::move(f));
  }
  return a;
}

CentralArrangement braid3() {
  return CentralArrangement{
      3, {{Rat(1), Rat(-1), Rat(0)}, {Rat(1), Rat(0), Rat(-1)}, {Rat(0), Rat(1), Rat(-1)}}};
}

}  // namespace

TEST_CASE("flat enumeration") {
  SUBCASE("boolean arrangement has all coordinate subspaces") {
    const auto fl = flats(boolean_arrangement(3));
    CHECK(fl.size() == 7);
    for (const auto& f : fl) CHECK(f.s == f.codim);
  }
  SUBCASE("braid arrangement in three variables") {
    const auto fl = flats(braid3());
    REQUIRE(fl.size() == 4);
    CHECK(fl[0].codim == 1);
    CHECK(fl[0].s == 1);
    CHECK(fl[3].codim == 2);
    CHECK(fl[3].s == 3);
  }
  SUBCASE("single hyperplane") {
    CHECK(flats(CentralArrangement{2, {{Rat(1), Rat(2)}}}).size() == 1);
  }
  SUBCASE("proportional forms are rejected") {
    CHECK_THROWS_AS(
        check_arrangement(CentralArrangement{2, {{Rat(1), Rat(0)}, {Rat(2), Rat(0)}}}),
        std::invalid_argument);
  }
}

TEST_CASE("log canonical thresholds") {
  CHECK(lct(boolean_arrangement(2)) == Rat(1));
  CHECK(lct(boolean_arrangement(4)) == Rat(1));
  CHECK(lct(braid3()) == make_rat(2, 3));
  SUBCASE("d concurrent lines in the plane") {
    for (long k = 2; k <= 5; ++k) {
      CentralArrangement a;
      a.m = 2;
      a.forms.push_back(QVec{Rat(1), Rat(0)});
      for (long j = 1; j < k; ++j) a.forms.push_back(QVec{Rat(j - 1), Rat(1)});
      CHECK(lct(a) == make_rat(2, k));
    }
  }
  SUBCASE("empty arrangement is an error") {
    CHECK_THROWS_AS(lct(CentralArrangement{2, {}}), std::invalid_argument);
  }
  SUBCASE("at most one, and below one exactly for excess intersections") {
    Rng rng(0x1c7);
    for (int trial = 0; trial < 30; ++trial) {
      CentralArrangement a;
      a.m = 3;
      while (a.forms.size() < 4) {
        QVec f(3, Rat(0));
        bool zero = true;
        for (auto& x : f) {
          x = Rat(rng.range(-2, 2));
          if (x != 0) zero = false;
        }
        if (zero) continue;
        try {
          a.forms.push_back(f);
          check_arrangement(a);
        } catch (const std::invalid_argument&) {
          a.forms.pop_back();
        }
      }
      const Rat value = lct(a);
      CHECK(value <= 1);
      bool excess = false;
      for (const auto& f : flats(a))
        if (f.s > f.codim) excess = true;
      CHECK((value < 1) == excess);
    }
  }
  SUBCASE("invariant under unimodular coordinate changes") {
    Rng rng(0xacce);
    for (const auto& base : {boolean_arrangement(3), braid3()}) {
      for (int trial = 0; trial < 5; ++trial) {
        // random product of elementary integer operations
        ZMat u = ZMat::identity(3);
        for (int step = 0; step < 6; ++step) {
          const std::size_t i = rng.below(3), j = rng.below(3);
          if (i == j) continue;
          const Int c = rng.range(-2, 2);
          for (std::size_t k = 0; k < 3; ++k) u(i, k) += c * u(j, k);
        }
        CentralArrangement moved = base;
        for (auto& f : moved.forms) {
          QVec g(3, Rat(0));
          for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) g[c] += f[r] * Rat(u(r, c));
          f = std::move(g);
        }
        CHECK(lct(moved) == lct(base));
      }
    }
  }
}

TEST_CASE("the three-families arrangement") {
  SUBCASE("shape") {
    CHECK(tdn3_arrangement(2).forms.size() == 6);
    CHECK(tdn3_arrangement(2).m == 4);
    CHECK(tdn3_arrangement(3).forms.size() == 9);
    CHECK_THROWS_AS(tdn3_arrangement(1), std::invalid_argument);
  }
  SUBCASE("excluded minimum is 2/3 by patterns and by the subset formula") {
    for (long d = 2; d <= 6; ++d) {
      CHECK(tdn3_min_ratio(d) == make_rat(2, 3));
      CHECK(tdn3_min_ratio_closed_form(d) == make_rat(2, 3));
    }
  }
  SUBCASE("brute-force subset enumeration agrees for small d") {
    for (long d = 2; d <= 3; ++d) {
      const auto arr = tdn3_arrangement(d);
      Rat best;
      bool first = true;
      for (const auto& f : flats(arr)) {
        // drop flats on which a whole family vanishes
        bool all_a = true, all_b = true, all_c = true;
        for (long j = 0; j < d; ++j) {
          if (!detail::in_rowspan(f.normals, arr.forms[static_cast<std::size_t>(j)]))
            all_a = false;
          if (!detail::in_rowspan(f.normals, arr.forms[static_cast<std::size_t>(d + j)]))
            all_b = false;
          if (!detail::in_rowspan(f.normals, arr.forms[static_cast<std::size_t>(2 * d + j)]))
            all_c = false;
        }
        if (all_a || all_b || all_c) continue;
        const Rat ratio = make_rat(static_cast<long>(f.codim), static_cast<long>(f.s));
        if (first || ratio < best) {
          best = ratio;
          first = false;
        }
      }
      CHECK(best == tdn3_min_ratio(d));
    }
  }
  SUBCASE("the singleton flat attains the minimum") {
    for (long d = 2; d <= 6; ++d) {
      // x_{11} = x_{21} = 0 has codimension 2 and lies on exactly three forms
      const auto arr = tdn3_arrangement(d);
      const auto basis = detail::rref({arr.forms[0], arr.forms[static_cast<std::size_t>(d)]});
      std::size_t s = 0;
      for (const auto& f : arr.forms)
        if (detail::in_rowspan(basis, f)) ++s;
      CHECK(s == 3);
      CHECK(make_rat(2, static_cast<long>(s)) == tdn3_min_ratio(d));
    }
  }
}

TEST_CASE("divisor arithmetic") {
  SUBCASE("pullback relation") {
    for (long d = 2; d <= 6; ++d) {
      const DivisorClassT3 pullback{Rat(1), Rat(0), Rat(0), Rat(0)};
      const DivisorClassT3 e13{Rat(0), Rat(0), Rat(1), Rat(0)};
      CHECK(pullback - strict_transform_class(d, e13) == e13 * Rat(d - 1));
    }
  }
  SUBCASE("adjoint class coefficients") {
    for (long d = 2; d <= 10; ++d) {
      const auto cls = pullback_and_anticanonical(d);
      CHECK(cls.minus_k_minus_d.h == 0);
      const Rat expected = make_rat((2 * d - 3) * (d - 1), 3);
      CHECK(cls.minus_k_minus_d.e12 == expected);
      CHECK(cls.minus_k_minus_d.e13 == expected);
      CHECK(cls.minus_k_minus_d.e23 == expected);
    }
    CHECK(pullback_and_anticanonical(2).minus_k_minus_d.e12 == make_rat(1, 3));
    CHECK(pullback_and_anticanonical(3).minus_k_minus_d.e12 == Rat(2));
  }
  SUBCASE("log-Fano certificates") {
    for (long d = 2; d <= 6; ++d) {
      const auto rep = log_fano_certificate(d);
      CHECK(rep.pass);
      CHECK(rep.min_ratio == make_rat(2, 3));
      CHECK(rep.e_coeff > 0);
    }
    CHECK(log_fano_certificate(2).e_coeff == make_rat(1, 3));
    CHECK(log_fano_certificate(3).e_coeff == Rat(2));
  }
}
