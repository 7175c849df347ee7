// Fans of the toric compactifications of n labeled points in affine d-space
// modulo translation and scaling, built two ways: from the closed ray
// formulas and as iterated stellar subdivisions of a projective space.
// Also: collision loci of admissible weight vectors, the subtorus lattice of
// the total-collision stratum with its quotient coordinates, and the
// fibration over (P^{d-1})^{n-1} with Losev-Manin fibers.
//
// Coordinate convention: the ambient lattice Z^{d(n-1)} modulo the sum of all
// basis vectors is realized in rank d(n-1)-1 by eliminating the (n-1,d)
// coordinate, so published example vectors are literal.
#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "lmtoric/exact.hpp"
#include "lmtoric/fan.hpp"
#include "lmtoric/linalg.hpp"

namespace lmtoric {

using IndexSet = std::set<long>;

struct WeightVector {
  std::vector<Rat> a;
};

inline void check_admissible(const WeightVector& w) {
  Rat sum(0);
  for (const auto& ai : w.a) {
    if (ai <= 0 || ai > 1)
      throw std::invalid_argument("weights must satisfy 0 < a_i <= 1");
    sum += ai;
  }
  if (sum <= 1) throw std::invalid_argument("weights must sum to more than 1");
}

// All collision index sets I with sum of weights over I exceeding 1 and
// 2 <= |I| <= n-1.
inline std::vector<IndexSet> collision_set(const WeightVector& w) {
  check_admissible(w);
  const std::size_t n = w.a.size();
  if (n > 24) throw std::invalid_argument("collision_set: too many points");
  std::vector<IndexSet> out;
  for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
    IndexSet idx;
    Rat sum(0);
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t(1) << i)) {
        idx.insert(static_cast<long>(i) + 1);
        sum += w.a[i];
      }
    if (idx.size() < 2 || idx.size() > n - 1) continue;
    if (sum > 1) out.push_back(std::move(idx));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct ModuliCoordinates {
  long d = 0;
  long n = 0;

  ModuliCoordinates(long d_, long n_) : d(d_), n(n_) {
    if (d < 1 || n < 2 || d * (n - 1) < 2)
      throw std::invalid_argument("moduli coordinates need d >= 1 and d(n-1) >= 2");
  }

  std::size_t rank() const { return static_cast<std::size_t>(d * (n - 1) - 1); }

  // image of the (i,k) basis vector, 1 <= i <= n-1, 1 <= k <= d
  ZVec basis_ray(long i, long k) const {
    if (i < 1 || i > n - 1 || k < 1 || k > d)
      throw std::invalid_argument("basis_ray: index out of range");
    if (i == n - 1 && k == d) return ZVec(rank(), -1);
    ZVec v(rank(), 0);
    v[static_cast<std::size_t>(d * (i - 1) + k - 1)] = 1;
    return v;
  }

  // sum over i in I of (e^1_i + ... + e^d_i)
  ZVec subset_ray(const IndexSet& I) const {
    ZVec v(rank(), 0);
    for (long i : I)
      for (long k = 1; k <= d; ++k) {
        const ZVec b = basis_ray(i, k);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] += b[j];
      }
    return v;
  }
};

namespace detail {

inline std::vector<IndexSet> proper_subsets(long n_minus_1, std::size_t max_size) {
  std::vector<IndexSet> out;
  const std::size_t m = static_cast<std::size_t>(n_minus_1);
  for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
    IndexSet s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t(1) << i)) s.insert(static_cast<long>(i) + 1);
    if (s.size() <= max_size) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

// Ray set of the compactification: the coordinate classes plus one subset-sum
// ray per nonempty I with |I| <= n-2. For d = 1 the singleton subset rays
// coincide with coordinate classes and are merged.
inline std::vector<ZVec> lm_rays(long d, long n) {
  const ModuliCoordinates mc(d, n);
  std::set<ZVec, ZVecLess> rays;
  for (long i = 1; i <= n - 1; ++i)
    for (long k = 1; k <= d; ++k) rays.insert(mc.basis_ray(i, k));
  for (const auto& I : detail::proper_subsets(n - 1, static_cast<std::size_t>(n - 2)))
    rays.insert(mc.subset_ray(I));
  return {rays.begin(), rays.end()};
}

// Cone of the projective-space fan over the collision stratum for I with
// n in I; only those strata are torus-invariant.
inline Cone delta_cone(long d, long n, const IndexSet& I) {
  const ModuliCoordinates mc(d, n);
  if (!I.count(n))
    throw std::invalid_argument(
        "delta_cone: stratum is not torus-invariant (index set must contain n)");
  if (I.size() < 2 || I.size() > static_cast<std::size_t>(n - 1))
    throw std::invalid_argument("delta_cone: index set size out of range");
  for (long i : I)
    if (i < 1 || i > n) throw std::invalid_argument("delta_cone: index out of range");
  const Fan ambient = projective_space_fan(static_cast<long>(mc.rank()));
  Cone c;
  for (long i : I) {
    if (i == n) continue;
    for (long k = 1; k <= d; ++k) {
      const auto idx = ambient.ray_index(mc.basis_ray(i, k));
      if (!idx) throw std::logic_error("delta_cone: stratum ray missing from fan");
      c.ray_indices.push_back(*idx);
    }
  }
  std::sort(c.ray_indices.begin(), c.ray_indices.end());
  return c;
}

inline ZVec delta_barycenter(long d, long n, const IndexSet& I) {
  const ModuliCoordinates mc(d, n);
  IndexSet light = I;
  light.erase(n);
  return mc.subset_ray(light);
}

// All blow-up centers: the I containing n with 2 <= |I| <= n-1, in decreasing
// size (deepest strata first).
inline std::vector<IndexSet> default_center_order(long d, long n) {
  ModuliCoordinates mc(d, n);  // validates the range
  std::vector<IndexSet> centers;
  for (const auto& light : detail::proper_subsets(n - 1, static_cast<std::size_t>(n - 2))) {
    IndexSet I = light;
    I.insert(n);
    centers.push_back(std::move(I));
  }
  std::stable_sort(centers.begin(), centers.end(),
                   [](const IndexSet& a, const IndexSet& b) { return a.size() > b.size(); });
  return centers;
}

// An order is admissible when no center is subdivided before a deeper center
// containing it, i.e. whenever I is a strict subset of J, the center J comes
// first. Star subdivisions realize strict-transform blow-ups, so admissible
// orders all produce the same fan; orders that violate nesting can produce a
// flopped triangulation once three stratum depths interact (n >= 5).
inline bool order_respects_nesting(const std::vector<IndexSet>& order) {
  for (std::size_t p = 0; p < order.size(); ++p)
    for (std::size_t q = p + 1; q < order.size(); ++q)
      if (order[p].size() < order[q].size() &&
          std::includes(order[q].begin(), order[q].end(), order[p].begin(), order[p].end()))
        return false;
  return true;
}

// Uniform-ish random linear extension of the supersets-first partial order:
// repeatedly draw among the centers whose strict supersets are all placed.
inline std::vector<IndexSet> random_center_order(long d, long n, std::uint64_t seed) {
  auto pool = default_center_order(d, n);
  std::vector<IndexSet> out;
  Rng rng(seed);
  while (!pool.empty()) {
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      bool blocked = false;
      for (std::size_t j = 0; j < pool.size() && !blocked; ++j)
        if (i != j && pool[j].size() > pool[i].size() &&
            std::includes(pool[j].begin(), pool[j].end(), pool[i].begin(), pool[i].end()))
          blocked = true;
      if (!blocked) ready.push_back(i);
    }
    const std::size_t pick = ready[rng.below(ready.size())];
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

// The staged order of the fibration construction: the |I| = 2 centers first,
// then the deeper ones from the deepest down. Also reproduces the fan.
inline std::vector<IndexSet> staged_center_order(long d, long n) {
  auto order = default_center_order(d, n);
  std::stable_sort(order.begin(), order.end(), [](const IndexSet& a, const IndexSet& b) {
    return (a.size() == 2) > (b.size() == 2);
  });
  return order;
}

inline Fan build_lm_fan(long d, long n, const std::vector<IndexSet>& order) {
  const ModuliCoordinates mc(d, n);
  {
    auto expected = default_center_order(d, n);
    auto given = order;
    std::sort(expected.begin(), expected.end());
    std::sort(given.begin(), given.end());
    if (given != expected)
      throw std::invalid_argument("build_lm_fan: order must enumerate every center exactly once");
  }
  Fan f = projective_space_fan(static_cast<long>(mc.rank()));
  for (const auto& I : order) {
    const ZVec center = delta_barycenter(d, n, I);
    // for d = 1 the singleton strata are divisors: their barycenter is
    // already a ray and the blow-up changes nothing
    if (f.ray_index(center)) continue;
    f = star_subdivide(f, center);
  }
  return f;
}

inline Fan build_lm_fan(long d, long n) { return build_lm_fan(d, n, default_center_order(d, n)); }

// Generators of the one-parameter-subgroup lattice of the total-collision
// subtorus: the d row sums, of rank d-1 since they add to zero.
inline Sublattice subtorus_lattice(long d, long n) {
  const ModuliCoordinates mc(d, n);
  Sublattice s{mc.rank(), {}};
  for (long k = 1; k <= d; ++k) {
    ZVec g(mc.rank(), 0);
    for (long i = 1; i <= n - 1; ++i) {
      const ZVec b = mc.basis_ray(i, k);
      for (std::size_t j = 0; j < g.size(); ++j) g[j] += b[j];
    }
    s.generators.push_back(std::move(g));
  }
  return s;
}

// The quotient modulo the subtorus lattice, in the canonical coordinates
// indexed by (i,k) with i <= n-2: per-point classes modulo the relation that
// each k-th coordinate sums to zero over the points.
inline QuotientPresentation plm_quotient(long d, long n) {
  const ModuliCoordinates mc(d, n);
  const std::size_t qrank = static_cast<std::size_t>(d * (n - 2));
  ZMat map(qrank, mc.rank());
  const auto target_row = [&](long i, long k) {
    return static_cast<std::size_t>(d * (i - 1) + k - 1);
  };
  for (long i = 1; i <= n - 1; ++i)
    for (long k = 1; k <= d; ++k) {
      if (i == n - 1 && k == d) continue;  // eliminated source coordinate
      const std::size_t col = static_cast<std::size_t>(d * (i - 1) + k - 1);
      if (i <= n - 2) {
        map(target_row(i, k), col) = 1;
      } else {
        for (long ii = 1; ii <= n - 2; ++ii) map(target_row(ii, k), col) = -1;
      }
    }
  QuotientPresentation q;
  q.ambient_rank = mc.rank();
  q.relation_generators = lattice_basis(subtorus_lattice(d, n));
  q.coordinate_map = std::move(map);
  q.quotient_rank = qrank;
  validate_quotient(q);
  return q;
}

// Ray images in the quotient coordinates of plm_quotient, directly from the
// closed formula: per-point classes plus subset sums, deduplicated.
inline std::vector<ZVec> plm_rays(long d, long n) {
  const ModuliCoordinates mc(d, n);
  const std::size_t qrank = static_cast<std::size_t>(d * (n - 2));
  const auto hat = [&](long i, long k) {
    ZVec v(qrank, 0);
    if (i <= n - 2) {
      v[static_cast<std::size_t>(d * (i - 1) + k - 1)] = 1;
    } else {
      for (long ii = 1; ii <= n - 2; ++ii) v[static_cast<std::size_t>(d * (ii - 1) + k - 1)] = -1;
    }
    return v;
  };
  std::set<ZVec, ZVecLess> rays;
  for (long i = 1; i <= n - 1; ++i)
    for (long k = 1; k <= d; ++k) rays.insert(hat(i, k));
  for (const auto& I : detail::proper_subsets(n - 1, static_cast<std::size_t>(n - 2))) {
    ZVec v(qrank, 0);
    for (long i : I)
      for (long k = 1; k <= d; ++k) {
        const ZVec h = hat(i, k);
        for (std::size_t j = 0; j < qrank; ++j) v[j] += h[j];
      }
    rays.insert(std::move(v));
  }
  return {rays.begin(), rays.end()};
}

// Lattice map of the projection [points] -> per-point directions, targeting
// the product fan of n-1 copies of P^{d-1}. Degenerate for d = 1.
inline FanProjection base_projection(long d, long n) {
  if (d < 2) throw std::invalid_argument("base_projection: degenerate for d = 1");
  if (n < 3) throw std::invalid_argument("base_projection: need n >= 3");
  const ModuliCoordinates mc(d, n);
  const std::size_t trank = static_cast<std::size_t>((d - 1) * (n - 1));
  ZMat map(trank, mc.rank());
  // per factor i, the class of e^k: a unit vector for k < d, all -1 for k = d
  for (long i = 1; i <= n - 1; ++i)
    for (long k = 1; k <= d; ++k) {
      if (i == n - 1 && k == d) continue;
      const std::size_t col = static_cast<std::size_t>(d * (i - 1) + k - 1);
      const std::size_t block = static_cast<std::size_t>((d - 1) * (i - 1));
      if (k < d) {
        map(block + static_cast<std::size_t>(k - 1), col) = 1;
      } else {
        for (long kk = 1; kk < d; ++kk) map(block + static_cast<std::size_t>(kk - 1), col) = -1;
      }
    }
  Fan target = projective_space_fan(d - 1);
  for (long i = 2; i <= n - 1; ++i) target = product_fan(target, projective_space_fan(d - 1));
  Fan source = build_lm_fan(d, n);
  // the eliminated coordinate must also map to its per-point class
  {
    ModuliCoordinates check(d, n);
    const ZVec image = mul(map, check.basis_ray(n - 1, d));
    ZVec expected(trank, 0);
    const std::size_t block = static_cast<std::size_t>((d - 1) * (n - 2));
    for (long kk = 1; kk < d; ++kk) expected[block + static_cast<std::size_t>(kk - 1)] = -1;
    if (image != expected)
      throw std::logic_error("base_projection: map is not well defined on the quotient");
  }
  return FanProjection{std::move(map), std::move(source), std::move(target)};
}

// Kernel basis of the base projection: the per-point diagonal vectors
// kappa_i = e^1_i + ... + e^d_i for i <= n-2. Identifying kappa_i with the
// i-th coordinate class exhibits the kernel as the d = 1 moduli lattice.
inline std::vector<ZVec> fiber_kernel_basis(long d, long n) {
  const ModuliCoordinates mc(d, n);
  std::vector<ZVec> basis;
  for (long i = 1; i <= n - 2; ++i) basis.push_back(mc.subset_ray(IndexSet{i}));
  return basis;
}

// Only the |I| = 2 centers: the first stage of the iterated blow-up, a
// projective bundle over the product of projective spaces.
inline Fan stage1_fan(long d, long n) {
  if (d < 2 || n < 3) throw std::invalid_argument("stage1_fan: need d >= 2 and n >= 3");
  const ModuliCoordinates mc(d, n);
  Fan f = projective_space_fan(static_cast<long>(mc.rank()));
  for (long i = 1; i <= n - 1; ++i)
    f = star_subdivide(f, delta_barycenter(d, n, IndexSet{i, n}));
  return f;
}

struct FibrationReport {
  bool pass = false;
  std::string detail;
  std::size_t source_max_cones = 0;
  std::size_t expected_max_cones = 0;
  std::optional<Fan> fiber;
};

// Certifies that the full fan fibers over (P^{d-1})^{n-1} with fiber the
// d = 1 fan in the canonical kernel coordinates, and that the maximal cone
// count is d^{n-1} (n-1)!.
inline FibrationReport verify_fibration(long d, long n) {
  FibrationReport rep;
  const auto proj = base_projection(d, n);
  const auto basis = fiber_kernel_basis(d, n);
  if (!lattice_equal(Sublattice{proj.source.rank(), basis}, kernel_lattice(proj.map))) {
    rep.detail = "kernel of the base projection is not the diagonal lattice";
    return rep;
  }
  const auto sf = split_fibration(proj, basis);
  if (!sf.ok) {
    rep.detail = "split fibration clause (" + sf.failure_clause + "): " + sf.detail;
    return rep;
  }
  rep.fiber = sf.fiber;
  if (!fans_equal(*sf.fiber, build_lm_fan(1, n))) {
    rep.detail = "fiber fan differs from the d = 1 fan";
    return rep;
  }
  rep.source_max_cones = proj.source.max_cones().size();
  std::size_t expected = 1;
  for (long i = 1; i <= n - 1; ++i) expected *= static_cast<std::size_t>(d) * i;
  // d^{n-1} (n-1)! regrouped as a product of d*i
  rep.expected_max_cones = expected;
  if (rep.source_max_cones != expected) {
    rep.detail = "maximal cone count differs from d^{n-1} (n-1)!";
    return rep;
  }
  rep.pass = true;
  return rep;
}

}  // namespace lmtoric
