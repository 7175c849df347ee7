#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lmtoric/fan.hpp"

using namespace lmtoric;

namespace {

// P^3 blown up along two disjoint invariant lines; the running example fan.
Fan two_line_blowup_of_p3() {
  Fan f = projective_space_fan(3);
  f = star_subdivide(f, ZVec{1, 1, 0});
  f = star_subdivide(f, ZVec{-1, -1, 0});
  return f;
}

}  // namespace

TEST_CASE("projective space fans") {
  const Fan p1 = projective_space_fan(1);
  CHECK(p1.rays() == std::vector<ZVec>{{-1}, {1}});
  CHECK(p1.max_cones().size() == 2);

  const Fan p2 = projective_space_fan(2);
  CHECK(p2.rays().size() == 3);
  CHECK(p2.max_cones().size() == 3);

  const Fan p3 = projective_space_fan(3);
  CHECK(p3.rays().size() == 4);
  CHECK(p3.max_cones().size() == 4);
  CHECK(is_smooth(p3));
  CHECK(is_complete(p3));

  CHECK_THROWS_AS(projective_space_fan(0), std::invalid_argument);
}

TEST_CASE("product fans") {
  const Fan p1 = projective_space_fan(1);
  const Fan p1xp1 = product_fan(p1, p1);
  CHECK(p1xp1.rays() ==
        std::vector<ZVec>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}});
  CHECK(p1xp1.max_cones().size() == 4);
  CHECK(is_smooth(p1xp1));
  CHECK(is_complete(p1xp1));

  const Fan with_point = product_fan(p1, point_fan());
  CHECK(fans_equal(with_point, p1));

  const Fan cube = product_fan(product_fan(p1, p1), p1);
  CHECK(cube.rays().size() == 6);
  CHECK(cube.max_cones().size() == 8);
}

TEST_CASE("stellar subdivision") {
  SUBCASE("blow up a point of P^2") {
    const Fan f = star_subdivide(projective_space_fan(2), ZVec{1, 1});
    CHECK(f.rays().size() == 4);
    CHECK(f.max_cones().size() == 4);
    CHECK(is_smooth(f));
    CHECK(is_complete(f));
  }
  SUBCASE("two line blow-ups of P^3") {
    const Fan f = two_line_blowup_of_p3();
    CHECK(f.rays().size() == 6);
    CHECK(f.max_cones().size() == 8);
    CHECK(is_smooth(f));
    CHECK(is_complete(f));
    CHECK(pairwise_intersections_are_faces(f));
  }
  SUBCASE("error paths") {
    const Fan p2 = projective_space_fan(2);
    CHECK_THROWS_WITH_AS(star_subdivide(p2, ZVec{1, 0}),
                         doctest::Contains("already a ray"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(star_subdivide(p2, ZVec{2, 2}),
                         doctest::Contains("primitive"), std::invalid_argument);
    const Fan half(2, {{1, 0}, {0, 1}}, {{0, 1}});
    CHECK_THROWS_WITH_AS(star_subdivide(half, ZVec{-1, -1}),
                         doctest::Contains("support"), std::invalid_argument);
  }
  SUBCASE("ray count, completeness and Picard proxy track subdivisions") {
    Fan f = projective_space_fan(3);
    std::size_t rays = f.rays().size();
    std::size_t proxy = picard_rank_proxy(f);
    for (const ZVec& v : {ZVec{1, 1, 0}, ZVec{-1, -1, 0}, ZVec{1, 1, 1}}) {
      f = star_subdivide(f, v);
      CHECK(f.rays().size() == rays + 1);
      CHECK(picard_rank_proxy(f) == proxy + 1);
      CHECK(is_complete(f));
      CHECK(is_smooth(f));  // each center is the barycenter of a smooth cone
      rays = f.rays().size();
      proxy = picard_rank_proxy(f);
    }
  }
}

TEST_CASE("smoothness detects non-unimodular cones") {
  const Fan singular(2, {{1, 0}, {1, 2}}, {{0, 1}});
  CHECK_FALSE(is_smooth(singular));
  const Fan lower_dim_bad(3, {{1, 0, 0}, {1, 2, 0}}, {{0, 1}});
  CHECK_FALSE(is_smooth(lower_dim_bad));
  const Fan lower_dim_good(3, {{0, 1, 0}, {1, 0, 0}}, {{0, 1}});
  CHECK(is_smooth(lower_dim_good));
}

TEST_CASE("completeness via the wall criterion") {
  CHECK(is_complete(projective_space_fan(3)));
  SUBCASE("boundary wall fails") {
    const Fan p2 = projective_space_fan(2);
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t i = 0; i + 1 < p2.max_cones().size(); ++i)
      cones.push_back(p2.max_cones()[i].ray_indices);
    const Fan punctured(2, p2.rays(), cones);
    CHECK_FALSE(is_complete(punctured));
  }
  SUBCASE("non-full-dimensional cones are rejected") {
    const Fan line(2, {{1, 0}}, {{0}});
    CHECK_THROWS_AS(is_complete(line), std::invalid_argument);
  }
}

TEST_CASE("fans_equal is presentation independent") {
  const Fan a = projective_space_fan(2);
  const Fan b(2, {{-1, -1}, {1, 0}, {0, 1}}, {{1, 2}, {0, 2}, {0, 1}});
  CHECK(fans_equal(a, b));
  CHECK(fans_equal(b, a));
  const Fan blown = star_subdivide(a, ZVec{1, 1});
  CHECK_FALSE(fans_equal(a, blown));
  CHECK_THROWS_AS(fans_equal(a, projective_space_fan(3)), std::invalid_argument);
}

TEST_CASE("ray downgrades") {
  const Fan f = two_line_blowup_of_p3();
  SUBCASE("pinned quotient coordinates give the hexagon") {
    const QuotientPresentation q{3, {{1, 0, 1}},
                                 ZMat::from_rows({{1, 0, -1}, {0, 1, 0}}), 2};
    validate_quotient(q);
    const auto rays = downgrade_rays(f, Sublattice{3, {{1, 0, 1}}}, q);
    CHECK(rays == std::vector<ZVec>{{-1, -1}, {-1, 0}, {0, -1}, {0, 1}, {1, 0}, {1, 1}});
  }
  SUBCASE("trivial sublattice returns the rays themselves") {
    const auto q = quotient(3, Sublattice{3, {}});
    CHECK(downgrade_rays(f, Sublattice{3, {}}, q) == f.rays());
  }
  SUBCASE("full sublattice kills everything") {
    const auto q = quotient(1, Sublattice{1, {{1}}});
    CHECK(downgrade_rays(projective_space_fan(1), Sublattice{1, {{1}}}, q).empty());
  }
  SUBCASE("independent of the pivot rule through the transition matrix") {
    const Sublattice sub{3, {{1, 0, 1}}};
    const auto q1 = quotient(3, sub, SnfPivot::min_abs);
    const auto q2 = quotient(3, sub, SnfPivot::first_nonzero);
    const auto r1 = downgrade_rays(f, sub, q1);
    const auto r2 = downgrade_rays(f, sub, q2);
    const auto t = mul(q2.coordinate_map, right_inverse(q1.coordinate_map));
    REQUIRE(mul(t, q1.coordinate_map) == q2.coordinate_map);
    REQUIRE(abs(determinant(t)) == 1);
    std::set<ZVec, ZVecLess> mapped;
    for (const auto& r : r1) mapped.insert(mul(t, r));
    CHECK(std::vector<ZVec>(mapped.begin(), mapped.end()) == r2);
  }
}

TEST_CASE("split fibration certificates") {
  SUBCASE("the running example fibers over P^1 x P^1") {
    const Fan src = two_line_blowup_of_p3();
    const Fan tgt = product_fan(projective_space_fan(1), projective_space_fan(1));
    const FanProjection p{ZMat::from_rows({{1, -1, 0}, {0, 0, 1}}), src, tgt};
    const auto sf = split_fibration(p);
    REQUIRE(sf.ok);
    CHECK(sf.kernel_basis == std::vector<ZVec>{{1, 1, 0}});
    CHECK(fans_equal(*sf.fiber, projective_space_fan(1)));
    CHECK(src.max_cones().size() ==
          tgt.max_cones().size() * sf.fiber->max_cones().size());
  }
  SUBCASE("coordinate projections of products split") {
    const Fan a = projective_space_fan(2);
    const Fan b = projective_space_fan(1);
    ZMat m(1, 3);
    m(0, 2) = 1;
    const auto sf = split_fibration(FanProjection{m, product_fan(a, b), b});
    REQUIRE(sf.ok);
    CHECK(fans_equal(*sf.fiber, a));
  }
  SUBCASE("P^2 is not a fibration over P^1") {
    const Fan p2 = projective_space_fan(2);
    const Fan p1 = projective_space_fan(1);
    ZMat m(1, 2);
    m(0, 0) = 1;
    const auto sf = split_fibration(FanProjection{m, p2, p1});
    CHECK_FALSE(sf.ok);
    CHECK(sf.failure_clause == "c");
  }
  SUBCASE("non-surjective maps are rejected") {
    const Fan p1 = projective_space_fan(1);
    ZMat m(1, 1);
    m(0, 0) = 2;
    CHECK_THROWS_WITH_AS(split_fibration(FanProjection{m, p1, p1}),
                         doctest::Contains("surjective"), std::invalid_argument);
  }
}

TEST_CASE("blow-ups of invariant linear subspaces are projective bundles") {
  CHECK(blowup_is_projective_bundle(2, 0));
  CHECK(blowup_is_projective_bundle(3, 0));
  CHECK(blowup_is_projective_bundle(3, 1));
  CHECK(blowup_is_projective_bundle(4, 1));
  CHECK_THROWS_AS(blowup_is_projective_bundle(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(blowup_is_projective_bundle(1, 0), std::invalid_argument);
}

TEST_CASE("pairwise face validation flags overlapping cones") {
  CHECK(pairwise_intersections_are_faces(projective_space_fan(2)));
  CHECK(pairwise_intersections_are_faces(projective_space_fan(3)));
  const Fan overlapping(2, {{1, 0}, {0, 1}, {1, 2}}, {{0, 1}, {0, 2}});
  CHECK_FALSE(pairwise_intersections_are_faces(overlapping));
}
