// Command-line front end: fan builders and verification suites, tree/cycle
// and degeneration tools, and threshold computations, all over JSON files.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "lmtoric/json_io.hpp"
#include "lmtoric/verify.hpp"

namespace {

using namespace lmtoric;

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("input is not valid JSON: " + std::string(e.what()));
  }
  return j;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << j.dump(2) << "\n";
  }
}

json report_to_json(const Report& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back(json{{"id", c.id}, {"pass", c.pass}, {"witness", c.witness}});
  return json{{"suite", rep.suite}, {"pass", rep.all_pass()}, {"checks", std::move(checks)}};
}

void print_report_text(const Report& rep) {
  for (const auto& c : rep.checks)
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.id << "  [" << c.witness << "]\n";
}

int finish_reports(const std::vector<Report>& reports, bool as_json) {
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.all_pass();
  if (as_json) {
    json out = json::array();
    for (const auto& r : reports) out.push_back(report_to_json(r));
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& r : reports) print_report_text(r);
    std::cout << (pass ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return pass ? kExitPass : kExitVerificationFailure;
}

struct Options {
  long d = 0, n = 0;
  long d_max = 2, n_max = 4;
  long rank_guard = 9;
  std::string variant = "lm";
  std::string suite = "all";
  std::string action;
  std::string input;
  std::string output;
  std::uint64_t order_seed = 0;
  bool have_order_seed = false;
  bool as_json = false;
};

int run_fan_build(const Options& opt) {
  if (opt.variant == "lm" || opt.variant == "stage1") {
    Fan f = [&] {
      if (opt.variant == "stage1") return stage1_fan(opt.d, opt.n);
      if (opt.have_order_seed)
        return build_lm_fan(opt.d, opt.n, random_center_order(opt.d, opt.n, opt.order_seed));
      return build_lm_fan(opt.d, opt.n);
    }();
    emit(fan_to_json(f), opt.output);
    return kExitPass;
  }
  if (opt.variant == "plm-rays") {
    const auto rays = plm_rays(opt.d, opt.n);
    json out = json::array();
    for (const auto& r : rays) {
      json row = json::array();
      for (const auto& x : r) row.push_back(x.get_si());
      out.push_back(std::move(row));
    }
    emit(json{{"rank", opt.d * (opt.n - 2)}, {"rays", std::move(out)}}, opt.output);
    return kExitPass;
  }
  throw CLI::ValidationError("--variant must be lm, stage1 or plm-rays");
}

int run_fan_verify(const Options& opt) {
  std::vector<Report> reports;
  if (opt.suite == "all") {
    for (const auto& name : fan_suite_names())
      reports.push_back(run_fan_suite(name, opt.d_max, opt.n_max, opt.rank_guard));
  } else {
    reports.push_back(run_fan_suite(opt.suite, opt.d_max, opt.n_max, opt.rank_guard));
  }
  return finish_reports(reports, opt.as_json);
}

int run_tree_tool(const Options& opt) {
  const json in = load_json(opt.input);
  if (opt.action == "cycle") {
    const auto t = tree_from_json(in);
    emit(cycle_to_json(t.d, t.n, configuration_cycle(t)), opt.output);
  } else if (opt.action == "reconstruct") {
    const auto z = cycle_from_json(in);
    emit(tree_to_json(reconstruct_tree(z)), opt.output);
  } else if (opt.action == "limit") {
    emit(tree_to_json(limit_tree(family_from_json(in))), opt.output);
  } else if (opt.action == "oracle") {
    const bool ok = oracle_check(family_from_json(in));
    emit(json{{"oracle", ok}}, opt.output);
    return ok ? kExitPass : kExitVerificationFailure;
  }
  return kExitPass;
}

int run_lct_tool(const Options& opt) {
  if (opt.action == "eval") {
    const auto a = arrangement_from_json(load_json(opt.input));
    emit(json{{"lct", rat_to_string(lct(a))}}, opt.output);
    return kExitPass;
  }
  if (opt.action == "tdn3") {
    const Rat patterns = tdn3_min_ratio(opt.d);
    const Rat closed = tdn3_min_ratio_closed_form(opt.d);
    emit(json{{"d", opt.d},
              {"min_ratio", rat_to_string(patterns)},
              {"closed_form", rat_to_string(closed)}},
         opt.output);
    return patterns == closed ? kExitPass : kExitVerificationFailure;
  }
  // certificate
  const auto rep = log_fano_certificate(opt.d);
  emit(json{{"d", rep.d},
            {"pass", rep.pass},
            {"min_ratio", rat_to_string(rep.min_ratio)},
            {"h_coefficient", rat_to_string(rep.h_coeff)},
            {"e_coefficient", rat_to_string(rep.e_coeff)}},
       opt.output);
  return rep.pass ? kExitPass : kExitVerificationFailure;
}

int run_report_all(const Options& opt) {
  std::vector<Report> reports;
  for (const auto& name : fan_suite_names())
    reports.push_back(run_fan_suite(name, opt.d_max, opt.n_max, opt.rank_guard));
  const long tree_n_max = std::min<long>(opt.n_max, 5);
  reports.push_back(cycle_suite(std::min<long>(opt.d_max, 3), tree_n_max, 20));
  reports.push_back(reconstruction_suite(std::min<long>(opt.d_max, 3), tree_n_max, 20));
  reports.push_back(degeneration_suite(std::min<long>(opt.d_max, 3), tree_n_max, 50));
  reports.push_back(lct_suite());
  reports.push_back(anticanonical_suite());
  return finish_reports(reports, opt.as_json);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toric workbench for moduli fans of weighted pointed chains"};
  app.require_subcommand(1);
  Options opt;

  auto* fan = app.add_subcommand("fan", "fan builders and verification suites");
  fan->require_subcommand(1);
  auto* fan_build = fan->add_subcommand("build", "emit a fan or ray list as JSON");
  fan_build->add_option("-d", opt.d, "affine dimension")->required();
  fan_build->add_option("-n", opt.n, "number of points")->required();
  fan_build->add_option("--variant", opt.variant, "lm | stage1 | plm-rays");
  fan_build->add_option("--order-seed", opt.order_seed,
                        "seed for a random admissible blow-up order")
      ->each([&](const std::string&) { opt.have_order_seed = true; });
  fan_build->add_option("--out", opt.output, "output file (default stdout)");
  fan_build->add_flag("--json", opt.as_json, "JSON output (always on for build)");

  auto* fan_verify = fan->add_subcommand("verify", "run a verification suite");
  fan_verify->add_option("--suite", opt.suite,
                         "rays|smooth|complete|order|count|downgrade|fibration|aux|all");
  fan_verify->add_option("--d-max", opt.d_max, "maximal affine dimension");
  fan_verify->add_option("--n-max", opt.n_max, "maximal number of points");
  fan_verify->add_option("--rank-guard", opt.rank_guard, "skip cells above this fan rank");
  fan_verify->add_flag("--json", opt.as_json, "machine-readable report");

  auto* tree = app.add_subcommand("tree", "stable chains, cycles and degenerations");
  tree->require_subcommand(1);
  for (const char* action : {"cycle", "reconstruct", "limit", "oracle"}) {
    auto* sub = tree->add_subcommand(action, "");
    sub->add_option("--in", opt.input, "input JSON file")->required();
    sub->add_option("--out", opt.output, "output file (default stdout)");
    sub->add_flag("--json", opt.as_json, "JSON output (always on)");
    sub->callback([&opt, action] { opt.action = action; });
  }

  auto* lct_cmd = app.add_subcommand("lct", "log canonical thresholds");
  lct_cmd->require_subcommand(1);
  auto* lct_eval = lct_cmd->add_subcommand("eval", "threshold of an arrangement file");
  lct_eval->add_option("--in", opt.input, "arrangement JSON file")->required();
  lct_eval->add_option("--out", opt.output, "output file");
  lct_eval->add_flag("--json", opt.as_json, "JSON output (always on)");
  lct_eval->callback([&opt] { opt.action = "eval"; });
  auto* lct_tdn3 = lct_cmd->add_subcommand("tdn3", "excluded minimum ratio, both paths");
  lct_tdn3->add_option("-d", opt.d, "affine dimension")->required();
  lct_tdn3->add_option("--out", opt.output, "output file");
  lct_tdn3->add_flag("--json", opt.as_json, "JSON output (always on)");
  lct_tdn3->callback([&opt] { opt.action = "tdn3"; });
  auto* lct_cert = lct_cmd->add_subcommand("certificate", "log-Fano certificate");
  lct_cert->add_option("-d", opt.d, "affine dimension")->required();
  lct_cert->add_option("--out", opt.output, "output file");
  lct_cert->add_flag("--json", opt.as_json, "JSON output (always on)");
  lct_cert->callback([&opt] { opt.action = "certificate"; });

  auto* report = app.add_subcommand("report", "aggregate verification reports");
  auto* report_all = report->add_subcommand("all", "run every suite");
  report_all->add_option("--d-max", opt.d_max, "maximal affine dimension");
  report_all->add_option("--n-max", opt.n_max, "maximal number of points");
  report_all->add_option("--rank-guard", opt.rank_guard, "skip cells above this fan rank");
  report_all->add_flag("--json", opt.as_json, "machine-readable report");
  report->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help requests exit cleanly, everything else is a usage error
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (fan_build->parsed()) return run_fan_build(opt);
    if (fan_verify->parsed()) return run_fan_verify(opt);
    if (tree->parsed()) return run_tree_tool(opt);
    if (lct_cmd->parsed()) return run_lct_tool(opt);
    if (report_all->parsed()) return run_report_all(opt);
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
}
