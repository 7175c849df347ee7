// Simplicial polyhedral fans: builders (projective space, products), stellar
// subdivision, smoothness and completeness predicates, ray downgrades modulo
// a sublattice, and certification of split toric fibrations.
//
// Fans are canonicalized on construction (rays primitive and lexicographically
// sorted, cones sorted), so structural equality is equality of the stored
// data. Only simplicial fans are representable; cones are ray-index sets.
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lmtoric/exact.hpp"
#include "lmtoric/linalg.hpp"

namespace lmtoric {

struct Cone {
  std::vector<std::size_t> ray_indices;  // sorted, into the parent fan's ray list

  bool operator==(const Cone& o) const { return ray_indices == o.ray_indices; }
  bool operator<(const Cone& o) const { return ray_indices < o.ray_indices; }
};

class Fan {
 public:
  // Canonicalizing constructor: sorts rays lexicographically, re-indexes and
  // sorts cones, and rejects duplicate/non-primitive rays and cones whose
  // rays are linearly dependent.
  Fan(std::size_t rank, std::vector<ZVec> rays,
      std::vector<std::vector<std::size_t>> max_cones)
      : rank_(rank) {
    for (const auto& r : rays) {
      if (r.size() != rank_) throw std::invalid_argument("fan: ray has wrong length");
      if (is_zero_vector(r)) throw std::invalid_argument("fan: zero ray");
      if (primitive(r) != r) throw std::invalid_argument("fan: ray is not primitive");
    }
    std::vector<std::size_t> order(rays.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lex_less(rays[a], rays[b]); });
    std::vector<std::size_t> position(rays.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      position[order[i]] = i;
      rays_.push_back(rays[order[i]]);
    }
    for (std::size_t i = 0; i + 1 < rays_.size(); ++i)
      if (rays_[i] == rays_[i + 1]) throw std::invalid_argument("fan: duplicate ray");
    for (auto& c : max_cones) {
      Cone cone;
      for (auto idx : c) {
        if (idx >= rays_.size()) throw std::invalid_argument("fan: cone ray index out of range");
        cone.ray_indices.push_back(position[idx]);
      }
      std::sort(cone.ray_indices.begin(), cone.ray_indices.end());
      for (std::size_t i = 0; i + 1 < cone.ray_indices.size(); ++i)
        if (cone.ray_indices[i] == cone.ray_indices[i + 1])
          throw std::invalid_argument("fan: repeated ray in cone");
      max_cones_.push_back(std::move(cone));
    }
    std::sort(max_cones_.begin(), max_cones_.end());
    max_cones_.erase(std::unique(max_cones_.begin(), max_cones_.end()), max_cones_.end());
    for (const auto& c : max_cones_)
      if (!cone_is_simplicial(c))
        throw std::invalid_argument("fan: non-simplicial cone rejected");
  }

  static Fan from_ray_cones(std::size_t rank, const std::vector<std::vector<ZVec>>& cones) {
    std::vector<ZVec> rays;
    std::map<ZVec, std::size_t, ZVecLess> index;
    std::vector<std::vector<std::size_t>> max_cones;
    for (const auto& c : cones) {
      std::vector<std::size_t> idx;
      for (const auto& r : c) {
        auto it = index.find(r);
        if (it == index.end()) {
          it = index.emplace(r, rays.size()).first;
          rays.push_back(r);
        }
        idx.push_back(it->second);
      }
      max_cones.push_back(std::move(idx));
    }
    return Fan(rank, std::move(rays), std::move(max_cones));
  }

  std::size_t rank() const { return rank_; }
  const std::vector<ZVec>& rays() const { return rays_; }
  const std::vector<Cone>& max_cones() const { return max_cones_; }

  std::optional<std::size_t> ray_index(const ZVec& v) const {
    const auto it = std::lower_bound(rays_.begin(), rays_.end(), v, lex_less);
    if (it == rays_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - rays_.begin());
  }

  // Rational coordinates of v in the cone's ray basis, or nullopt when v is
  // outside the linear span.
  std::optional<QVec> cone_coordinates(const Cone& c, const ZVec& v) const {
    ZMat m(rank_, c.ray_indices.size());
    for (std::size_t j = 0; j < c.ray_indices.size(); ++j)
      for (std::size_t i = 0; i < rank_; ++i) m(i, j) = rays_[c.ray_indices[j]][i];
    return solve_rational(m, v);
  }

  bool cone_contains(const Cone& c, const ZVec& v) const {
    const auto x = cone_coordinates(c, v);
    if (!x) return false;
    for (const auto& xi : *x)
      if (xi < 0) return false;
    return true;
  }

  bool operator==(const Fan& o) const {
    return rank_ == o.rank_ && rays_ == o.rays_ && max_cones_ == o.max_cones_;
  }

 private:
  bool cone_is_simplicial(const Cone& c) const {
    if (c.ray_indices.size() > rank_) return false;
    ZMat m(c.ray_indices.size(), rank_);
    for (std::size_t i = 0; i < c.ray_indices.size(); ++i)
      for (std::size_t j = 0; j < rank_; ++j) m(i, j) = rays_[c.ray_indices[i]][j];
    return lmtoric::rank(m) == c.ray_indices.size();
  }

  std::size_t rank_ = 0;
  std::vector<ZVec> rays_;
  std::vector<Cone> max_cones_;
};

inline bool fans_equal(const Fan& a, const Fan& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("fans_equal: rank mismatch");
  return a == b;
}

// Fan of P^m: rays e_1..e_m and -(e_1+...+e_m), all m-subsets as maximal cones.
inline Fan projective_space_fan(long m) {
  if (m < 1) throw std::invalid_argument("projective_space_fan: rank must be positive");
  const std::size_t n = static_cast<std::size_t>(m);
  std::vector<ZVec> rays;
  for (std::size_t i = 0; i < n; ++i) {
    ZVec e(n, 0);
    e[i] = 1;
    rays.push_back(std::move(e));
  }
  rays.push_back(ZVec(n, -1));
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(std::move(c));
  }
  return Fan(n, std::move(rays), std::move(cones));
}

// Fan of rank 0 (a point); unit for products.
inline Fan point_fan() { return Fan(0, {}, {{}}); }

inline Fan product_fan(const Fan& a, const Fan& b) {
  const std::size_t r = a.rank() + b.rank();
  std::vector<ZVec> rays;
  for (const auto& ra : a.rays()) {
    ZVec v(r, 0);
    std::copy(ra.begin(), ra.end(), v.begin());
    rays.push_back(std::move(v));
  }
  for (const auto& rb : b.rays()) {
    ZVec v(r, 0);
    std::copy(rb.begin(), rb.end(), v.begin() + static_cast<std::ptrdiff_t>(a.rank()));
    rays.push_back(std::move(v));
  }
  std::vector<std::vector<std::size_t>> cones;
  for (const auto& ca : a.max_cones())
    for (const auto& cb : b.max_cones()) {
      std::vector<std::size_t> c = ca.ray_indices;
      for (auto i : cb.ray_indices) c.push_back(a.rays().size() + i);
      cones.push_back(std::move(c));
    }
  return Fan(r, std::move(rays), std::move(cones));
}

// Stellar subdivision at a primitive lattice point in the fan's support.
inline Fan star_subdivide(const Fan& f, const ZVec& v) {
  if (v.size() != f.rank()) throw std::invalid_argument("star_subdivide: vector rank mismatch");
  if (is_zero_vector(v)) throw std::invalid_argument("star_subdivide: zero vector");
  if (primitive(v) != v) throw std::invalid_argument("star_subdivide: vector is not primitive");
  if (f.ray_index(v)) throw std::invalid_argument("star_subdivide: vector is already a ray");

  // minimal cone containing v = support of its coordinates in any containing cone
  std::optional<std::vector<std::size_t>> tau;
  for (const auto& c : f.max_cones()) {
    const auto x = f.cone_coordinates(c, v);
    if (!x) continue;
    bool nonneg = true;
    for (const auto& xi : *x)
      if (xi < 0) {
        nonneg = false;
        break;
      }
    if (!nonneg) continue;
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < x->size(); ++j)
      if ((*x)[j] > 0) support.push_back(c.ray_indices[j]);
    if (tau && *tau != support)
      throw std::invalid_argument("star_subdivide: inconsistent minimal cone (input is not a fan)");
    tau = std::move(support);
  }
  if (!tau) throw std::invalid_argument("star_subdivide: vector is outside the fan's support");
  if (tau->size() == 1) throw std::invalid_argument("star_subdivide: vector lies on an existing ray");

  std::vector<ZVec> rays = f.rays();
  const std::size_t v_index = rays.size();
  rays.push_back(v);
  std::vector<std::vector<std::size_t>> cones;
  for (const auto& c : f.max_cones()) {
    const bool contains_tau =
        std::includes(c.ray_indices.begin(), c.ray_indices.end(), tau->begin(), tau->end());
    if (!contains_tau) {
      cones.push_back(c.ray_indices);
      continue;
    }
    for (auto drop : *tau) {
      std::vector<std::size_t> nc;
      for (auto i : c.ray_indices)
        if (i != drop) nc.push_back(i);
      nc.push_back(v_index);
      cones.push_back(std::move(nc));
    }
  }
  return Fan(f.rank(), std::move(rays), std::move(cones));
}

// Every maximal cone unimodular: |det| = 1 when full-dimensional, trivial
// invariant factors otherwise.
inline bool is_smooth(const Fan& f) {
  for (const auto& c : f.max_cones()) {
    ZMat m(c.ray_indices.size(), f.rank());
    for (std::size_t i = 0; i < c.ray_indices.size(); ++i)
      for (std::size_t j = 0; j < f.rank(); ++j) m(i, j) = f.rays()[c.ray_indices[i]][j];
    if (c.ray_indices.size() == f.rank()) {
      if (abs(determinant(m)) != 1) return false;
    } else {
      for (const auto& d : invariant_factors(m))
        if (d != 1) return false;
    }
  }
  return true;
}

// Wall criterion for pure full-dimensional simplicial fans: complete iff
// every codimension-one face lies in exactly two maximal cones. This is a
// restriction to the fans built here, not a general completeness test.
inline bool is_complete(const Fan& f) {
  if (f.rank() == 0) return !f.max_cones().empty();
  for (const auto& c : f.max_cones())
    if (c.ray_indices.size() != f.rank())
      throw std::invalid_argument("is_complete: maximal cone is not full-dimensional");
  std::map<std::vector<std::size_t>, int> walls;
  for (const auto& c : f.max_cones())
    for (std::size_t skip = 0; skip < c.ray_indices.size(); ++skip) {
      std::vector<std::size_t> w;
      for (std::size_t i = 0; i < c.ray_indices.size(); ++i)
        if (i != skip) w.push_back(c.ray_indices[i]);
      ++walls[w];
    }
  for (const auto& [w, count] : walls)
    if (count != 2) return false;
  return true;
}

// #rays - rank; invariant of the variety for the complete smooth fans here.
inline std::size_t picard_rank_proxy(const Fan& f) { return f.rays().size() - f.rank(); }

// Images of the rays under a quotient presentation: apply, discard zeros,
// primitivize, deduplicate, sort.
inline std::vector<ZVec> downgrade_rays(const Fan& f, const Sublattice& sub,
                                        const QuotientPresentation& q) {
  if (q.ambient_rank != f.rank())
    throw std::invalid_argument("downgrade_rays: presentation rank mismatch");
  if (!lattice_equal(Sublattice{q.ambient_rank, q.relation_generators},
                     Sublattice{sub.ambient_rank, sub.generators}))
    throw std::invalid_argument("downgrade_rays: presentation does not present rank/sub");
  std::set<ZVec, ZVecLess> images;
  for (const auto& r : f.rays()) {
    ZVec w = mul(q.coordinate_map, r);
    if (is_zero_vector(w)) continue;
    images.insert(primitive(w));
  }
  return {images.begin(), images.end()};
}

struct FanProjection {
  ZMat map;  // target rank x source rank
  Fan source;
  Fan target;
};

struct SplitFibration {
  bool ok = false;
  std::string failure_clause;  // empty on success
  std::string detail;
  std::vector<ZVec> kernel_basis;  // rows; fiber fan is expressed in these coordinates
  std::optional<Fan> fiber;
};

namespace detail {

// Express a kernel vector in the given kernel basis; exact and integral for
// saturated kernel lattices.
inline std::optional<ZVec> in_kernel_coordinates(const std::vector<ZVec>& basis, const ZVec& v) {
  if (basis.empty()) return std::nullopt;
  ZMat bt(v.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < v.size(); ++i) bt(i, j) = basis[j][i];
  const auto x = solve_rational(bt, v);
  if (!x) return std::nullopt;
  ZVec out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if ((*x)[i].get_den() != 1) return std::nullopt;
    out[i] = (*x)[i].get_num();
  }
  return out;
}

}  // namespace detail

// Certifies the split-fibration condition for a projection of complete
// simplicial fans:
//   (a) each source ray maps to zero or positively onto a target ray;
//   (b) the source cones inside the kernel form a complete fan there;
//   (c) each maximal source cone is (lifted target cone) + (maximal fiber
//       cone), with the lift unimodular onto the target lattice;
//   (d) every maximal target cone arises.
// On success the fiber fan is returned in kernel-basis coordinates and
// #max(source) = #max(target) * #max(fiber) is asserted.
inline SplitFibration split_fibration(const FanProjection& p,
                                      std::optional<std::vector<ZVec>> kernel_basis_opt = {}) {
  const Fan& src = p.source;
  const Fan& tgt = p.target;
  if (p.map.rows() != tgt.rank() || p.map.cols() != src.rank())
    throw std::invalid_argument("split_fibration: map shape mismatch");
  if (!is_complete(src) || !is_complete(tgt))
    throw std::invalid_argument("split_fibration: fans must be complete");
  {
    const auto snf = smith_normal_form(p.map);
    if (snf.rank != tgt.rank())
      throw std::invalid_argument("split_fibration: lattice map is not surjective");
    for (std::size_t i = 0; i < snf.rank; ++i)
      if (snf.s(i, i) != 1)
        throw std::invalid_argument("split_fibration: lattice map is not surjective");
  }

  SplitFibration out;
  const Sublattice ker = kernel_lattice(p.map);
  std::vector<ZVec> basis = kernel_basis_opt ? *kernel_basis_opt : ker.generators;
  if (kernel_basis_opt &&
      !lattice_equal(Sublattice{src.rank(), basis}, ker))
    throw std::invalid_argument("split_fibration: supplied basis does not span the kernel");
  out.kernel_basis = basis;
  const std::size_t fiber_rank = basis.size();

  // clause (a) + classify rays
  std::vector<std::optional<std::size_t>> target_ray_of(src.rays().size());
  std::vector<bool> in_kernel(src.rays().size(), false);
  for (std::size_t i = 0; i < src.rays().size(); ++i) {
    const ZVec w = mul(p.map, src.rays()[i]);
    if (is_zero_vector(w)) {
      in_kernel[i] = true;
      continue;
    }
    const auto idx = tgt.ray_index(primitive(w));
    if (!idx) {
      out.failure_clause = "a";
      out.detail = "source ray " + zvec_to_string(src.rays()[i]) +
                   " does not map onto a target ray";
      return out;
    }
    target_ray_of[i] = *idx;
  }

  // fiber cones and per-cone factorization, clause (c)
  std::map<std::vector<std::size_t>, std::size_t> target_cone_index;
  for (std::size_t i = 0; i < tgt.max_cones().size(); ++i)
    target_cone_index.emplace(tgt.max_cones()[i].ray_indices, i);

  std::map<std::vector<std::size_t>, std::size_t> fiber_cone_index;  // source ray idx sets
  std::vector<std::vector<std::size_t>> fiber_cones;
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<bool> target_cone_hit(tgt.max_cones().size(), false);

  for (const auto& c : src.max_cones()) {
    std::vector<std::size_t> fiber_part, base_part;
    for (auto i : c.ray_indices)
      (in_kernel[i] ? fiber_part : base_part).push_back(i);
    if (fiber_part.size() != fiber_rank) {
      out.failure_clause = "c";
      out.detail = "cone with rays";
      for (auto i : c.ray_indices) out.detail += " " + zvec_to_string(src.rays()[i]);
      out.detail += " has no maximal fiber factor";
      return out;
    }
    std::vector<std::size_t> image;
    for (auto i : base_part) image.push_back(*target_ray_of[i]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    const auto tc = target_cone_index.find(image);
    if (image.size() != base_part.size() || tc == target_cone_index.end()) {
      out.failure_clause = "c";
      out.detail = "cone rays do not map bijectively onto a maximal target cone";
      return out;
    }
    // unimodularity of the lift: saturated span of the base part maps to a
    // basis of the target lattice
    {
      std::vector<ZVec> span_gens;
      for (auto i : base_part) span_gens.push_back(src.rays()[i]);
      const auto sat = saturate(Sublattice{src.rank(), span_gens});
      bool unimodular = sat.generators.size() == tgt.rank();
      if (unimodular) {
        ZMat w(tgt.rank(), tgt.rank());
        for (std::size_t r = 0; r < tgt.rank(); ++r) {
          const ZVec im = mul(p.map, sat.generators[r]);
          for (std::size_t j = 0; j < tgt.rank(); ++j) w(r, j) = im[j];
        }
        unimodular = abs(determinant(w)) == 1;
      }
      if (!unimodular) {
        out.failure_clause = "c";
        out.detail = "lift of a maximal cone is not unimodular onto the target lattice";
        return out;
      }
    }
    auto fc = fiber_cone_index.find(fiber_part);
    if (fc == fiber_cone_index.end()) {
      fc = fiber_cone_index.emplace(fiber_part, fiber_cones.size()).first;
      fiber_cones.push_back(fiber_part);
    }
    target_cone_hit[tc->second] = true;
    if (!pairs.emplace(tc->second, fc->second).second) {
      out.failure_clause = "c";
      out.detail = "two maximal cones share the same base/fiber factorization";
      return out;
    }
  }

  // clause (d)
  for (std::size_t i = 0; i < tgt.max_cones().size(); ++i)
    if (!target_cone_hit[i]) {
      out.failure_clause = "d";
      out.detail = "maximal target cone " + std::to_string(i) + " does not arise";
      return out;
    }

  // clause (b): assemble the fiber fan in kernel coordinates
  std::vector<std::vector<ZVec>> fiber_cone_vectors;
  std::set<std::size_t> fiber_ray_indices;
  for (const auto& fc : fiber_cones) {
    std::vector<ZVec> vecs;
    for (auto i : fc) {
      fiber_ray_indices.insert(i);
      const auto coords = detail::in_kernel_coordinates(basis, src.rays()[i]);
      if (!coords) {
        out.failure_clause = "b";
        out.detail = "kernel ray is not integral in the kernel basis";
        return out;
      }
      vecs.push_back(*coords);
    }
    fiber_cone_vectors.push_back(std::move(vecs));
  }
  for (std::size_t i = 0; i < src.rays().size(); ++i)
    if (in_kernel[i] && !fiber_ray_indices.count(i)) {
      out.failure_clause = "b";
      out.detail = "kernel ray " + zvec_to_string(src.rays()[i]) + " lies in no fiber cone";
      return out;
    }
  Fan fiber = Fan::from_ray_cones(fiber_rank, fiber_cone_vectors);
  if (!is_complete(fiber)) {
    out.failure_clause = "b";
    out.detail = "fiber fan is not complete in the kernel lattice";
    return out;
  }
  if (src.max_cones().size() != tgt.max_cones().size() * fiber.max_cones().size()) {
    out.failure_clause = "count";
    out.detail = "maximal cone counts do not multiply";
    return out;
  }
  out.ok = true;
  out.fiber = std::move(fiber);
  return out;
}

// Blow up P^m along the torus-invariant linear subspace cut out by the last
// m-k coordinates and certify the resulting projective-bundle structure over
// P^{m-k-1}: the fiber fan must be the P^{k+1} fan.
inline bool blowup_is_projective_bundle(long m, long k) {
  if (k < 0 || m < 2 || k > m - 2)
    throw std::invalid_argument("blowup_is_projective_bundle: need 0 <= k <= m-2");
  const std::size_t mm = static_cast<std::size_t>(m), kk = static_cast<std::size_t>(k);
  Fan source = projective_space_fan(m);
  ZVec center(mm, 0);
  for (std::size_t i = kk; i < mm; ++i) center[i] = 1;
  source = star_subdivide(source, center);

  const std::size_t t = mm - kk - 1;
  ZMat map(t, mm);
  for (std::size_t i = 0; i < t; ++i) map(i, kk) = -1;
  for (std::size_t j = 0; j < t; ++j) map(j, kk + 1 + j) = 1;
  const FanProjection proj{std::move(map), std::move(source), projective_space_fan(static_cast<long>(t))};
  const auto sf = split_fibration(proj);
  if (!sf.ok) return false;
  return fans_equal(*sf.fiber, projective_space_fan(k + 1));
}

// ---------------------------------------------------------------------------
// Pairwise-face validation (on demand, small fans only)

namespace detail {

// Generators of {z >= 0 : a z = 0} by minimal-support enumeration; feasible
// only for few columns, which is all the validator needs.
inline std::vector<QVec> nonneg_kernel_generators(const ZMat& a) {
  const std::size_t m = a.cols();
  if (m > 16) throw std::invalid_argument("nonneg_kernel_generators: too many columns");
  std::vector<QVec> gens;
  for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < m; ++j)
      if (mask & (std::size_t(1) << j)) cols.push_back(j);
    ZMat sub(a.rows(), cols.size());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = a(i, cols[j]);
    const Sublattice ker = kernel_lattice(sub);
    if (ker.generators.size() != 1) continue;
    const ZVec& z = ker.generators.front();
    int sign = 0;
    bool ok = true;
    for (const auto& zi : z) {
      if (zi == 0) {
        ok = false;  // smaller support will produce this one
        break;
      }
      const int s = zi > 0 ? 1 : -1;
      if (sign == 0) sign = s;
      if (s != sign) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    QVec full(m, Rat(0));
    for (std::size_t j = 0; j < cols.size(); ++j) full[cols[j]] = Rat(sign * z[j]);
    gens.push_back(std::move(full));
  }
  return gens;
}

}  // namespace detail

// Checks that every pairwise intersection of maximal cones is the cone on the
// shared rays. Exponential in the combined ray count, hence guarded; intended
// for the small fans exercised in tests.
inline bool pairwise_intersections_are_faces(const Fan& f) {
  const auto& cones = f.max_cones();
  for (std::size_t a = 0; a < cones.size(); ++a)
    for (std::size_t b = a + 1; b < cones.size(); ++b) {
      const auto& ca = cones[a].ray_indices;
      const auto& cb = cones[b].ray_indices;
      std::vector<std::size_t> shared;
      std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(),
                            std::back_inserter(shared));
      ZMat sys(f.rank(), ca.size() + cb.size());
      for (std::size_t j = 0; j < ca.size(); ++j)
        for (std::size_t i = 0; i < f.rank(); ++i) sys(i, j) = f.rays()[ca[j]][i];
      for (std::size_t j = 0; j < cb.size(); ++j)
        for (std::size_t i = 0; i < f.rank(); ++i) sys(i, ca.size() + j) = -f.rays()[cb[j]][i];
      for (const auto& z : detail::nonneg_kernel_generators(sys)) {
        QVec pt(f.rank(), Rat(0));
        for (std::size_t j = 0; j < ca.size(); ++j)
          for (std::size_t i = 0; i < f.rank(); ++i) pt[i] += z[j] * Rat(f.rays()[ca[j]][i]);
        // clear denominators and test membership in cone(shared)
        Int lcm_den = 1;
        for (const auto& c : pt) lcm_den = lcm(lcm_den, c.get_den());
        ZVec v(f.rank());
        bool zero = true;
        for (std::size_t i = 0; i < f.rank(); ++i) {
          v[i] = pt[i].get_num() * (lcm_den / pt[i].get_den());
          if (v[i] != 0) zero = false;
        }
        if (zero) continue;
        Cone shared_cone{shared};
        if (shared.empty() || !f.cone_contains(shared_cone, v)) return false;
      }
    }
  return true;
}

}  // namespace lmtoric
