// Named verification suites over ranges of (d, n): each check re-derives a
// published structural fact about the fans, cycles, degenerations, or
// thresholds and records a pass/fail with a witness string. The command-line
// front end and the acceptance harness both drive these.
#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "lmtoric/degeneration.hpp"
#include "lmtoric/fan.hpp"
#include "lmtoric/lct.hpp"
#include "lmtoric/moduli.hpp"
#include "lmtoric/trees.hpp"

namespace lmtoric {

struct CheckResult {
  std::string id;
  bool pass = false;
  std::string witness;
};

struct Report {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  void add(std::string id, bool pass, std::string witness) {
    checks.push_back({std::move(id), pass, std::move(witness)});
  }
};

namespace verify_detail {

inline std::string cell(long d, long n) {
  return "d=" + std::to_string(d) + ",n=" + std::to_string(n);
}

template <typename F>
void per_cell(long d_max, long n_max, long rank_guard, F&& body) {
  for (long d = 1; d <= d_max; ++d)
    for (long n = 3; n <= n_max; ++n) {
      if (d * (n - 1) - 1 > rank_guard) continue;
      body(d, n);
    }
}

// exhaustive ordered set partitions of {1..m}, root block first
inline std::vector<std::vector<std::set<long>>> ordered_partitions(long m) {
  std::vector<std::vector<std::set<long>>> out;
  for (long k = 1; k <= m; ++k) {
    std::vector<long> assign(static_cast<std::size_t>(m), 1);
    for (;;) {
      std::vector<std::set<long>> blocks(static_cast<std::size_t>(k));
      for (long i = 0; i < m; ++i)
        blocks[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)] - 1)].insert(i + 1);
      bool surjective = true;
      for (const auto& b : blocks)
        if (b.empty()) surjective = false;
      if (surjective) out.push_back(blocks);
      long pos = m - 1;
      while (pos >= 0 && assign[static_cast<std::size_t>(pos)] == k) {
        assign[static_cast<std::size_t>(pos)] = 1;
        --pos;
      }
      if (pos < 0) break;
      ++assign[static_cast<std::size_t>(pos)];
    }
  }
  return out;
}

inline StableRootedTree random_tree(long d, long n, const std::vector<std::set<long>>& blocks,
                                    Rng& rng) {
  StableRootedTree t;
  t.d = d;
  t.n = n;
  for (const auto& b : blocks) {
    TreeComponent comp;
    for (long i : b) {
      QVec a(static_cast<std::size_t>(d));
      bool nonzero = false;
      while (!nonzero) {
        for (auto& c : a) {
          c = make_rat(rng.range(-4, 4), rng.range(1, 3));
          if (c != 0) nonzero = true;
        }
      }
      comp.marked.emplace(i, a);
    }
    t.components.push_back(std::move(comp));
  }
  return t;
}

inline Family random_family(long d, long n, Rng& rng, long max_exponent = 4) {
  for (;;) {
    Family f;
    f.d = d;
    f.n = n;
    f.points.resize(static_cast<std::size_t>(n - 1));
    for (auto& p : f.points) {
      p.resize(static_cast<std::size_t>(d));
      for (auto& s : p) {
        std::map<long, Rat> terms;
        const long k = rng.range(0, 2);
        for (long t = 0; t <= k; ++t) terms[rng.range(0, max_exponent)] = rng.nonzero_rat(4);
        if (rng.below(4) == 0) terms.clear();
        s = LaurentSeries(std::move(terms));
      }
    }
    try {
      check_family(f);
      return f;
    } catch (const std::invalid_argument&) {
    }
  }
}

}  // namespace verify_detail

// ray sets of the blow-up construction match the closed formula, with counts
inline Report rays_suite(long d_max, long n_max, long rank_guard = 9) {
  Report rep{"rays", {}};
  verify_detail::per_cell(d_max, n_max, rank_guard, [&](long d, long n) {
    const Fan f = build_lm_fan(d, n);
    const auto expected = lm_rays(d, n);
    const std::size_t count = d >= 2 ? static_cast<std::size_t>(d) * (n - 1) +
                                           (std::size_t(1) << (n - 1)) - 2
                                     : (std::size_t(1) << (n - 1)) - 2;
    const bool pass = f.rays() == expected && f.rays().size() == count;
    rep.add("rays " + verify_detail::cell(d, n), pass,
            std::to_string(f.rays().size()) + " rays");
  });
  return rep;
}

inline Report smooth_suite(long d_max, long n_max, long rank_guard = 9) {
  Report rep{"smooth", {}};
  verify_detail::per_cell(d_max, n_max, rank_guard, [&](long d, long n) {
    rep.add("smooth " + verify_detail::cell(d, n), is_smooth(build_lm_fan(d, n)),
            "all maximal cones unimodular");
  });
  return rep;
}

inline Report complete_suite(long d_max, long n_max, long rank_guard = 9) {
  Report rep{"complete", {}};
  verify_detail::per_cell(d_max, n_max, rank_guard, [&](long d, long n) {
    rep.add("complete " + verify_detail::cell(d, n), is_complete(build_lm_fan(d, n)),
            "every wall on two cones");
  });
  return rep;
}

// blow-up order independence over admissible orders, plus the staged order
inline Report order_suite(long d_max, long n_max, long rank_guard = 9,
                          std::uint64_t seed = 0x5eed) {
  Report rep{"order", {}};
  verify_detail::per_cell(d_max, n_max, rank_guard, [&](long d, long n) {
    const Fan ref = build_lm_fan(d, n);
    bool pass = fans_equal(build_lm_fan(d, n, staged_center_order(d, n)), ref);
    for (std::uint64_t t = 0; t < 3 && pass; ++t)
      pass = fans_equal(
          build_lm_fan(d, n, random_center_order(d, n, seed + 97 * t + 1009 * d + n)), ref);
    rep.add("order " + verify_detail::cell(d, n), pass, "3 admissible orders + staged order");
  });
  return rep;
}

// maximal cone counts d^{n-1} (n-1)!
inline Report count_suite(long d_max, long n_max, long rank_guard = 9) {
  Report rep{"count", {}};
  verify_detail::per_cell(d_max, n_max, rank_guard, [&](long d, long n) {
    std::size_t expected = 1;
    for (long i = 1; i <= n - 1; ++i) expected *= static_cast<std::size_t>(d) * i;
    const std::size_t got = build_lm_fan(d, n).max_cones().size();
    rep.add("count " + verify_detail::cell(d, n), got == expected,
            std::to_string(got) + " maximal cones");
  });
  return rep;
}

inline Report downgrade_suite(long d_max, long n_max, long rank_guard = 9) {
  Report rep{"downgrade", {}};
  verify_detail::per_cell(d_max, n_max, rank_guard, [&](long d, long n) {
    if (d < 2) return;
    const auto got =
        downgrade_rays(build_lm_fan(d, n), subtorus_lattice(d, n), plm_quotient(d, n));
    rep.add("downgrade " + verify_detail::cell(d, n), got == plm_rays(d, n),
            std::to_string(got.size()) + " quotient rays");
  });
  return rep;
}

// the full fibration and the stage-1 bundle
inline Report fibration_suite(long d_max, long n_max, long rank_guard = 9) {
  Report rep{"fibration", {}};
  verify_detail::per_cell(d_max, n_max, rank_guard, [&](long d, long n) {
    if (d < 2) return;
    const auto full = verify_fibration(d, n);
    rep.add("fibration " + verify_detail::cell(d, n), full.pass,
            full.pass ? std::to_string(full.source_max_cones) + " = base x fiber cones"
                      : full.detail);
    auto proj = base_projection(d, n);
    proj.source = stage1_fan(d, n);
    const auto sf = split_fibration(proj, fiber_kernel_basis(d, n));
    const bool stage_ok = sf.ok && fans_equal(*sf.fiber, projective_space_fan(n - 2));
    rep.add("stage1 " + verify_detail::cell(d, n), stage_ok,
            stage_ok ? "projective-space fiber" : sf.detail);
  });
  return rep;
}

// blow-ups of invariant linear subspaces of projective space
inline Report aux_suite() {
  Report rep{"aux", {}};
  for (const auto& [m, k] :
       std::vector<std::pair<long, long>>{{2, 0}, {3, 0}, {3, 1}, {4, 1}}) {
    rep.add("bundle m=" + std::to_string(m) + ",k=" + std::to_string(k),
            blowup_is_projective_bundle(m, k), "split fibration certificate");
  }
  return rep;
}

// Kunneth classes of configuration cycles sum to the fundamental class
inline Report cycle_suite(long d_max, long n_max, int fillings, std::uint64_t seed = 0xc1c1e) {
  Report rep{"cycles", {}};
  Rng rng(seed);
  for (long d = 1; d <= d_max; ++d)
    for (long n = 3; n <= n_max; ++n) {
      bool pass = true;
      for (const auto& blocks : verify_detail::ordered_partitions(n - 1))
        for (int fill = 0; fill < fillings && pass; ++fill) {
          const auto t = verify_detail::random_tree(d, n, blocks, rng);
          pass = total_class(configuration_cycle(t)) == KunnethClass(n - 1, 1);
        }
      rep.add("cycle-class " + verify_detail::cell(d, n), pass, "total class all-ones");
    }
  return rep;
}

// reconstruction inverts the configuration cycle over exhaustive chain shapes
inline Report reconstruction_suite(long d_max, long n_max, int fillings,
                                   std::uint64_t seed = 0x4ec0) {
  Report rep{"reconstruction", {}};
  Rng rng(seed);
  for (long d = 1; d <= d_max; ++d)
    for (long n = 3; n <= n_max; ++n) {
      bool pass = true;
      for (const auto& blocks : verify_detail::ordered_partitions(n - 1))
        for (int fill = 0; fill < fillings && pass; ++fill) {
          const auto t = verify_detail::random_tree(d, n, blocks, rng);
          pass = trees_isomorphic(reconstruct_tree(configuration_cycle(t)), t);
        }
      rep.add("reconstruct " + verify_detail::cell(d, n), pass, "round trip up to isomorphism");
    }
  return rep;
}

// symbolic limits of random families match the component projections
inline Report degeneration_suite(long d_max, long n_max, int families,
                                 std::uint64_t seed = 0xde6) {
  Report rep{"degeneration", {}};
  Rng rng(seed);
  for (long d = 1; d <= d_max; ++d)
    for (long n = 3; n <= n_max; ++n) {
      bool pass = true;
      for (int t = 0; t < families && pass; ++t)
        pass = oracle_check(verify_detail::random_family(d, n, rng));
      rep.add("oracle " + verify_detail::cell(d, n), pass,
              std::to_string(families) + " random families");
    }
  return rep;
}

// thresholds: pinned arrangements plus the structured family with both paths
inline Report lct_suite(long tdn3_d_max = 6) {
  Report rep{"lct", {}};
  {
    CentralArrangement boolean3{3, {}};
    for (std::size_t i = 0; i < 3; ++i) {
      QVec f(3, Rat(0));
      f[i] = 1;
      boolean3.forms.push_back(std::move(f));
    }
    rep.add("lct boolean", lct(boolean3) == Rat(1), "1");
  }
  {
    const CentralArrangement braid{
        3, {{Rat(1), Rat(-1), Rat(0)}, {Rat(1), Rat(0), Rat(-1)}, {Rat(0), Rat(1), Rat(-1)}}};
    rep.add("lct braid", lct(braid) == make_rat(2, 3), "2/3");
  }
  for (long d = 2; d <= tdn3_d_max; ++d) {
    const Rat patterns = tdn3_min_ratio(d);
    const Rat closed = tdn3_min_ratio_closed_form(d);
    rep.add("tdn3 d=" + std::to_string(d),
            patterns == make_rat(2, 3) && closed == patterns,
            rat_to_string(patterns) + " by both enumerations");
  }
  return rep;
}

// adjoint divisor coefficients and the log-Fano certificates
inline Report anticanonical_suite(long coeff_d_max = 10, long cert_d_max = 6) {
  Report rep{"anticanonical", {}};
  for (long d = 2; d <= coeff_d_max; ++d) {
    const auto cls = pullback_and_anticanonical(d);
    const Rat expected = make_rat((2 * d - 3) * (d - 1), 3);
    const bool pass = cls.minus_k_minus_d.h == 0 && cls.minus_k_minus_d.e12 == expected &&
                      cls.minus_k_minus_d.e13 == expected &&
                      cls.minus_k_minus_d.e23 == expected;
    rep.add("adjoint d=" + std::to_string(d), pass, rat_to_string(expected) + " on each E");
  }
  for (long d = 2; d <= cert_d_max; ++d) {
    const auto cert = log_fano_certificate(d);
    rep.add("log-fano d=" + std::to_string(d), cert.pass,
            "(" + rat_to_string(cert.min_ratio) + ", " + rat_to_string(cert.e_coeff) + ")");
  }
  return rep;
}

inline std::vector<std::string> fan_suite_names() {
  return {"rays", "smooth", "complete", "order", "count", "downgrade", "fibration", "aux"};
}

inline Report run_fan_suite(const std::string& name, long d_max, long n_max,
                            long rank_guard = 9) {
  if (name == "rays") return rays_suite(d_max, n_max, rank_guard);
  if (name == "smooth") return smooth_suite(d_max, n_max, rank_guard);
  if (name == "complete") return complete_suite(d_max, n_max, rank_guard);
  if (name == "order") return order_suite(d_max, n_max, rank_guard);
  if (name == "count") return count_suite(d_max, n_max, rank_guard);
  if (name == "downgrade") return downgrade_suite(d_max, n_max, rank_guard);
  if (name == "fibration") return fibration_suite(d_max, n_max, rank_guard);
  if (name == "aux") return aux_suite();
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace lmtoric
