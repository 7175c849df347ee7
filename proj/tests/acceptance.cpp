// Acceptance harness: thirteen structural criteria covering the fan
// constructions, the fibration and downgrade certificates, the configuration
// cycles with their reconstruction, the degeneration oracle, and the
// threshold and divisor computations. Every assertion is exact; each
// criterion also carries a wall-clock budget. One line is printed per
// criterion and the exit status reflects the aggregate.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lmtoric/degeneration.hpp"
#include "lmtoric/fan.hpp"
#include "lmtoric/json_io.hpp"
#include "lmtoric/lct.hpp"
#include "lmtoric/moduli.hpp"
#include "lmtoric/trees.hpp"
#include "lmtoric/verify.hpp"

using namespace lmtoric;

namespace {

struct Criterion {
  std::string id;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

bool check_eq_counts(std::string& witness) {
  // AC1: ray sets of the blow-up construction equal the closed formula
  std::size_t cells = 0;
  for (long d = 1; d <= 3; ++d)
    for (long n = 3; n <= 5; ++n) {
      const Fan f = build_lm_fan(d, n);
      if (f.rays() != lm_rays(d, n)) return false;
      const std::size_t expected =
          (d >= 2 ? static_cast<std::size_t>(d) * (n - 1) : 0) + (std::size_t(1) << (n - 1)) - 2;
      if (f.rays().size() != expected) return false;
      ++cells;
    }
  witness = "ray sets and counts match on " + std::to_string(cells) + " cells";
  return true;
}

bool check_smooth_complete(std::string& witness) {
  std::size_t cells = 0;
  for (long d = 1; d <= 3; ++d)
    for (long n = 3; n <= 5; ++n) {
      const Fan f = build_lm_fan(d, n);
      if (!is_smooth(f) || !is_complete(f)) return false;
      ++cells;
    }
  witness = "smooth and complete on " + std::to_string(cells) + " cells";
  return true;
}

bool check_order_independence(std::string& witness) {
  for (const auto& [d, n] : std::vector<std::pair<long, long>>{{2, 4}, {2, 5}, {3, 4}}) {
    const Fan ref = build_lm_fan(d, n);
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
      if (!fans_equal(build_lm_fan(d, n, random_center_order(d, n, seed * 7919)), ref))
        return false;
    if (!fans_equal(build_lm_fan(d, n, staged_center_order(d, n)), ref)) return false;
  }
  witness = "3 admissible orders and the staged order per cell";
  return true;
}

bool check_cone_counts(std::string& witness) {
  for (long d = 1; d <= 3; ++d)
    for (long n = 3; n <= 5; ++n) {
      std::size_t expected = 1;
      for (long i = 1; i <= n - 1; ++i) expected *= static_cast<std::size_t>(d) * i;
      if (build_lm_fan(d, n).max_cones().size() != expected) return false;
    }
  witness = "maximal cone counts equal d^(n-1) (n-1)!";
  return true;
}

bool check_stage1_bundle(std::string& witness) {
  for (const auto& [d, n] : std::vector<std::pair<long, long>>{{2, 4}, {3, 4}, {2, 5}}) {
    auto proj = base_projection(d, n);
    proj.source = stage1_fan(d, n);
    const auto sf = split_fibration(proj, fiber_kernel_basis(d, n));
    if (!sf.ok || !fans_equal(*sf.fiber, projective_space_fan(n - 2))) return false;
  }
  witness = "stage-1 fans split with projective-space fibers";
  return true;
}

bool check_full_fibration(std::string& witness) {
  for (const auto& [d, n] :
       std::vector<std::pair<long, long>>{{2, 3}, {2, 4}, {3, 3}, {3, 4}, {2, 5}}) {
    const auto rep = verify_fibration(d, n);
    if (!rep.pass) {
      witness = rep.detail;
      return false;
    }
  }
  witness = "splits with the one-dimensional moduli fan as fiber";
  return true;
}

bool check_downgrade(std::string& witness) {
  for (long d = 2; d <= 3; ++d)
    for (long n = 3; n <= 5; ++n) {
      const auto got =
          downgrade_rays(build_lm_fan(d, n), subtorus_lattice(d, n), plm_quotient(d, n));
      if (got != plm_rays(d, n)) return false;
    }
  witness = "quotient ray sets match the closed formula";
  return true;
}

bool check_linear_blowups(std::string& witness) {
  for (const auto& [m, k] : std::vector<std::pair<long, long>>{{2, 0}, {3, 0}, {3, 1}, {4, 1}})
    if (!blowup_is_projective_bundle(m, k)) return false;
  witness = "four projective-bundle certificates";
  return true;
}

bool check_cycle_classes(std::string& witness) {
  Rng rng(0xac9);
  std::size_t trees = 0;
  for (long d = 1; d <= 3; ++d)
    for (long n = 2; n <= 5; ++n)
      for (const auto& blocks : verify_detail::ordered_partitions(n - 1))
        for (int fill = 0; fill < 100; ++fill) {
          const auto t = verify_detail::random_tree(d, n, blocks, rng);
          if (total_class(configuration_cycle(t)) != KunnethClass(n - 1, 1)) return false;
          ++trees;
        }
  witness = "total class all-ones on " + std::to_string(trees) + " chains";
  return true;
}

bool check_reconstruction(std::string& witness) {
  Rng rng(0xac10);
  std::size_t trees = 0;
  for (long d = 1; d <= 3; ++d)
    for (long n = 2; n <= 5; ++n)
      for (const auto& blocks : verify_detail::ordered_partitions(n - 1))
        for (int fill = 0; fill < 100; ++fill) {
          const auto t = verify_detail::random_tree(d, n, blocks, rng);
          if (!trees_isomorphic(reconstruct_tree(configuration_cycle(t)), t)) return false;
          ++trees;
        }
  witness = "round trip on " + std::to_string(trees) + " chains";
  return true;
}

bool check_degeneration_oracle(std::string& witness) {
  Rng rng(0xac11);
  std::size_t families = 0;
  for (long d = 1; d <= 3; ++d)
    for (long n = 3; n <= 6; ++n)
      for (int t = 0; t < 100; ++t) {
        if (!oracle_check(verify_detail::random_family(d, n, rng, 4))) return false;
        ++families;
      }
  witness = "symbolic limits match on " + std::to_string(families) + " families";
  return true;
}

bool check_thresholds(std::string& witness) {
  CentralArrangement boolean3{3, {}};
  for (std::size_t i = 0; i < 3; ++i) {
    QVec f(3, Rat(0));
    f[i] = 1;
    boolean3.forms.push_back(std::move(f));
  }
  if (lct(boolean3) != Rat(1)) return false;
  const CentralArrangement braid{
      3, {{Rat(1), Rat(-1), Rat(0)}, {Rat(1), Rat(0), Rat(-1)}, {Rat(0), Rat(1), Rat(-1)}}};
  if (lct(braid) != make_rat(2, 3)) return false;
  for (long d = 2; d <= 6; ++d) {
    const Rat patterns = tdn3_min_ratio(d);
    if (patterns != make_rat(2, 3)) return false;
    if (tdn3_min_ratio_closed_form(d) != patterns) return false;
  }
  witness = "boolean 1, braid 2/3, excluded minimum 2/3 on both paths for d=2..6";
  return true;
}

bool check_anticanonical(std::string& witness) {
  for (long d = 2; d <= 10; ++d) {
    const auto cls = pullback_and_anticanonical(d);
    const Rat expected = make_rat((2 * d - 3) * (d - 1), 3);
    if (cls.minus_k_minus_d.h != 0 || cls.minus_k_minus_d.e12 != expected ||
        cls.minus_k_minus_d.e13 != expected || cls.minus_k_minus_d.e23 != expected)
      return false;
  }
  for (long d = 2; d <= 6; ++d)
    if (!log_fano_certificate(d).pass) return false;
  witness = "adjoint coefficients for d=2..10, certificates for d=2..6";
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1  ray sets", 10.0, check_eq_counts},
      {"AC2  smooth and complete", 30.0, check_smooth_complete},
      {"AC3  order independence", 60.0, check_order_independence},
      {"AC4  maximal cone counts", 30.0, check_cone_counts},
      {"AC5  stage-1 projective bundle", 30.0, check_stage1_bundle},
      {"AC6  fibration with moduli fiber", 60.0, check_full_fibration},
      {"AC7  ray downgrade", 10.0, check_downgrade},
      {"AC8  linear-subspace blow-ups", 5.0, check_linear_blowups},
      {"AC9  cycle classes", 30.0, check_cycle_classes},
      {"AC10 cycle reconstruction", 60.0, check_reconstruction},
      {"AC11 degeneration oracle", 60.0, check_degeneration_oracle},
      {"AC12 log canonical thresholds", 120.0, check_thresholds},
      {"AC13 adjoint divisor", 5.0, check_anticanonical},
  };

  bool all_pass = true;
  for (const auto& c : criteria) {
    std::string witness;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = c.run(witness);
    } catch (const std::exception& e) {
      ok = false;
      witness = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = elapsed < c.budget_seconds;
    const bool pass = ok && in_budget;
    all_pass = all_pass && pass;
    std::printf("%-34s %s  (%.2fs / %.0fs)  %s\n", c.id.c_str(), pass ? "PASS" : "FAIL",
                elapsed, c.budget_seconds,
                ok ? witness.c_str() : (witness.empty() ? "assertion failed" : witness.c_str()));
  }
  std::printf("%s\n", all_pass ? "acceptance: all criteria passed"
                               : "acceptance: FAILURES present");
  return all_pass ? 0 : 1;
}
