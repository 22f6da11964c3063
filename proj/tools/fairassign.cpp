// Command-line front end: rule solving, assignment diagnostics, synthetic
// instance generation and report emission over JSON/CSV files.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "fairassign/analysis.hpp"
#include "fairassign/errors.hpp"
#include "fairassign/io.hpp"
#include "fairassign/lp.hpp"
#include "fairassign/report.hpp"
#include "fairassign/rng.hpp"
#include "fairassign/rules.hpp"

namespace {

using fairassign::Assignment;
using fairassign::InputError;
using fairassign::InternalCheckError;
using fairassign::PreferenceProfile;
using fairassign::Rat;
using fairassign::SigmaOrder;
using nlohmann::json;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
}

fairassign::io::Format parse_format(const std::string& name) {
  if (name == "json") return fairassign::io::Format::Json;
  if (name == "csv") return fairassign::io::Format::Csv;
  throw InputError("unknown format '" + name + "' (expected json or csv)");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

SigmaOrder parse_sigma(const std::string& text, int n) {
  std::vector<int> order;
  for (const std::string& item : split_list(text)) {
    try {
      order.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw InputError("--sigma entries must be integers");
    }
  }
  return SigmaOrder(n, std::move(order));
}

struct SolveArgs {
  std::string rule, input, sigma, out, format = "json";
  std::uint64_t seed = 0;
};

int run_solve(const SolveArgs& args) {
  const fairassign::io::Problem problem =
      fairassign::io::parse_problem_file(args.input);
  const PreferenceProfile& profile = problem.profile;
  if (!args.sigma.empty() && args.rule != "sigma") {
    throw InputError("--sigma is only meaningful with --rule sigma");
  }

  json extra;
  Assignment result = [&]() -> Assignment {
    if (args.rule == "rawlsian") {
      const auto r = fairassign::rules::rawlsian_detailed(profile);
      extra["lp_solves"] = r.lp_solves;
      return r.assignment;
    }
    if (args.rule == "sigma") {
      if (args.sigma.empty()) {
        throw InputError("--rule sigma requires --sigma \"k1,k2,...\"");
      }
      const auto r = fairassign::rules::sigma_minimal_detailed(
          profile, parse_sigma(args.sigma, profile.size()));
      extra["lp_solves"] = r.lp_solves;
      return r.assignment;
    }
    if (args.rule == "ps") {
      return fairassign::rules::probabilistic_serial(profile);
    }
    if (args.rule == "boston") {
      return fairassign::rules::fractional_boston(profile);
    }
    if (args.rule == "mtav") {
      const auto r = fairassign::rules::mtav(profile, args.seed);
      extra["bottleneck_rank"] = r.bottleneck_rank;
      extra["rank_sum"] = r.rank_sum;
      extra["seed"] = args.seed;
      return r.assignment.to_assignment();
    }
    throw InputError("unknown rule '" + args.rule +
                     "' (rawlsian|ps|mtav|sigma|boston)");
  }();

  const fairassign::io::Format format = parse_format(args.format);
  if (format == fairassign::io::Format::Csv) {
    write_output(args.out,
                 fairassign::io::emit_assignment(profile.agent_names(),
                                                 profile.object_names(),
                                                 result, format));
    return 0;
  }
  json doc = json::parse(fairassign::io::emit_assignment(
      profile.agent_names(), profile.object_names(), result, format));
  doc["rule"] = args.rule;
  for (auto& [key, value] : extra.items()) doc[key] = value;
  write_output(args.out, doc.dump(2) + "\n");
  return 0;
}

struct AnalyzeArgs {
  std::string input, assignment, checks = "envy,sd,rank,egalitarian,maxrank";
  std::string out;
};

int run_analyze(const AnalyzeArgs& args) {
  const fairassign::io::Problem problem =
      fairassign::io::parse_problem_file(args.input);
  const PreferenceProfile& profile = problem.profile;
  const Assignment x = fairassign::io::parse_assignment_file(args.assignment);
  if (x.size() != profile.size()) {
    throw InputError("assignment size does not match the problem");
  }

  json doc;
  doc["n"] = profile.size();
  for (const std::string& check : split_list(args.checks)) {
    if (check == "envy") {
      const auto envy = fairassign::analysis::envy_report(profile, x);
      doc["envy"] = {{"agents_with_envy", envy.agents_with_violation},
                     {"agents_with_weak_envy", envy.agents_with_weak_envy},
                     {"avg_envied", fairassign::rat_to_decimal(envy.average_envied, 2)},
                     {"sd_envy_free", envy.sd_envy_free}};
    } else if (check == "sd") {
      const auto sd = fairassign::analysis::sd_efficient(profile, x);
      json cycle = json::array();
      for (int o : sd.cycle) cycle.push_back(profile.object_names()[o]);
      doc["sd_efficient"] = {{"efficient", sd.efficient},
                             {"cycle", std::move(cycle)}};
    } else if (check == "rank") {
      const auto dist = fairassign::analysis::rank_distribution(profile, x);
      json m = json::array();
      for (int k = 1; k <= profile.size(); ++k) {
        m.push_back(fairassign::rat_to_string(dist.m(k)));
      }
      doc["rank"] = {{"m", std::move(m)},
                     {"rank_efficient",
                      fairassign::analysis::rank_efficient(profile, x)}};
    } else if (check == "egalitarian") {
      const auto eg = fairassign::analysis::egalitarian_check(profile, x);
      doc["egalitarian"] = {{"egalitarian", eg.egalitarian}};
      if (!eg.egalitarian) {
        doc["egalitarian"]["witness_agent"] =
            profile.agent_names()[eg.witness_agent];
      }
    } else if (check == "maxrank") {
      doc["max_rank"] = fairassign::analysis::support_max_rank(profile, x);
    } else {
      throw InputError("unknown check '" + check + "'");
    }
  }
  write_output(args.out, doc.dump(2) + "\n");
  return 0;
}

struct CompareArgs {
  std::string input, rules, out;
  std::uint64_t seed = 0;
};

int run_compare(const CompareArgs& args) {
  const fairassign::io::Problem problem =
      fairassign::io::parse_problem_file(args.input);
  const PreferenceProfile& profile = problem.profile;
  const std::vector<std::string> names = split_list(args.rules);
  if (names.size() < 2) throw InputError("--rules needs at least two rules");

  std::vector<std::pair<std::string, Assignment>> runs;
  for (const std::string& name : names) {
    if (name == "rawlsian") {
      runs.emplace_back(name, fairassign::rules::rawlsian(profile));
    } else if (name == "ps") {
      runs.emplace_back(name, fairassign::rules::probabilistic_serial(profile));
    } else if (name == "boston") {
      runs.emplace_back(name, fairassign::rules::fractional_boston(profile));
    } else if (name == "mtav") {
      runs.emplace_back(
          name,
          fairassign::rules::mtav(profile, args.seed).assignment.to_assignment());
    } else {
      throw InputError("unknown rule '" + name + "' in --rules");
    }
  }

  json doc;
  doc["n"] = profile.size();
  for (const auto& [name, x] : runs) {
    doc["tables"][name] =
        fairassign::report::assignment_tables_json(profile, x);
  }
  for (std::size_t a = 0; a < runs.size(); ++a) {
    for (std::size_t b = a + 1; b < runs.size(); ++b) {
      const auto pp = fairassign::report::pairwise_preference(
          profile, runs[a].second, runs[b].second);
      doc["pairwise"][runs[a].first + "_vs_" + runs[b].first] = {
          {"prefer_" + runs[a].first, pp.prefer_first},
          {"prefer_" + runs[b].first, pp.prefer_second},
          {"same", pp.same},
          {"incomparable", pp.incomparable}};
    }
  }
  write_output(args.out, doc.dump(2) + "\n");
  return 0;
}

struct DecomposeArgs {
  std::string assignment, out;
};

int run_decompose(const DecomposeArgs& args) {
  const Assignment x = fairassign::io::parse_assignment_file(args.assignment);
  const auto dec = fairassign::analysis::bvn_decompose(x);
  json terms = json::array();
  for (const auto& term : dec.terms) {
    terms.push_back({{"weight", fairassign::rat_to_string(term.weight)},
                     {"mapping", term.perm.mapping()}});
  }
  json doc;
  doc["n"] = x.size();
  doc["terms"] = std::move(terms);
  write_output(args.out, doc.dump(2) + "\n");
  return 0;
}

struct ProbeArgs {
  bool manipulability = false;
  bool swaps = false;
  int n = 3;
  int max_n = 3;
  int count = 500;
  std::string rule = "rawlsian", out;
  std::uint64_t seed = 0;
};

int run_probe(const ProbeArgs& args) {
  if (args.manipulability == args.swaps) {
    throw InputError("pass exactly one of --manipulability or --swaps");
  }
  json doc;
  if (args.manipulability) {
    fairassign::analysis::RuleKind kind;
    if (args.rule == "rawlsian") {
      kind = fairassign::analysis::RuleKind::Rawlsian;
    } else if (args.rule == "ps") {
      kind = fairassign::analysis::RuleKind::ProbabilisticSerial;
    } else if (args.rule == "mtav") {
      kind = fairassign::analysis::RuleKind::Mtav;
    } else {
      throw InputError("unknown rule '" + args.rule + "' for the probe");
    }
    const auto report = fairassign::analysis::obvious_manipulability_probe(
        args.n, kind, args.max_n);
    doc["n"] = report.n;
    doc["rule"] = args.rule;
    doc["obviously_manipulable"] = report.obviously_manipulable;
    doc["rule_evaluations"] = report.rule_evaluations;
    json violations = json::array();
    for (const auto& rec : report.records) {
      if (!rec.violates_worst_case && !rec.violates_best_case) continue;
      violations.push_back({{"agent", rec.agent},
                            {"truthful", report.rankings[rec.truthful]},
                            {"misreport", report.rankings[rec.misreport]},
                            {"worst_truth", rec.worst_truth},
                            {"worst_lie", rec.worst_lie},
                            {"best_truth", rec.best_truth},
                            {"best_lie", rec.best_lie}});
    }
    doc["violations"] = std::move(violations);
    json witnesses = json::array();
    for (const auto& w : report.pointwise_witnesses) {
      witnesses.push_back({{"truthful", report.rankings[w.truthful]},
                           {"misreport", report.rankings[w.misreport]},
                           {"omega_bar_truth", w.omega_bar_truth},
                           {"omega_bar_lie", w.omega_bar_lie}});
    }
    doc["pointwise_witnesses"] = std::move(witnesses);
  } else {
    // random (profile, adjacent swap) pairs for the axiom checks
    fairassign::Rng rng(args.seed);
    int monotonic = 0, upper = 0, lower = 0;
    for (int trial = 0; trial < args.count; ++trial) {
      const int n = args.n < 2 ? 2 : args.n;
      const PreferenceProfile profile = fairassign::io::generate(
          n, fairassign::io::GenerateModel::Uniform, rng.next_u64());
      const int agent = rng.below(n);
      const int pos = 1 + rng.below(n - 1);  // swap positions pos, pos+1
      const auto result = fairassign::analysis::swap_axiom_check(
          profile, agent, profile.object_at_rank(agent, pos),
          profile.object_at_rank(agent, pos + 1));
      monotonic += result.swap_monotonic;
      upper += result.upper_invariant;
      lower += result.lower_invariant;
    }
    doc["trials"] = args.count;
    doc["swap_monotonic_held"] = monotonic;
    doc["upper_invariant_held"] = upper;
    doc["lower_invariant_held"] = lower;
  }
  write_output(args.out, doc.dump(2) + "\n");
  return 0;
}

struct GenArgs {
  int n = 0;
  std::string model = "uniform", weights, out, format = "json";
  std::uint64_t seed = 0;
};

int run_gen(const GenArgs& args) {
  fairassign::io::GenerateModel model;
  if (args.model == "uniform") {
    model = fairassign::io::GenerateModel::Uniform;
  } else if (args.model == "plackett-luce") {
    model = fairassign::io::GenerateModel::PlackettLuce;
  } else {
    throw InputError("unknown model '" + args.model +
                     "' (uniform|plackett-luce)");
  }
  std::vector<double> weights;
  for (const std::string& item : split_list(args.weights)) {
    try {
      weights.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw InputError("--weights entries must be numbers");
    }
  }
  const PreferenceProfile profile =
      fairassign::io::generate(args.n, model, args.seed, weights);
  write_output(args.out,
               fairassign::io::emit_problem(profile, parse_format(args.format)));
  return 0;
}

struct ReportArgs {
  std::string input, out, cdf_out;
  std::uint64_t seed = 0;
};

int run_report(const ReportArgs& args) {
  const fairassign::io::Problem problem =
      fairassign::io::parse_problem_file(args.input);
  const json bundle =
      fairassign::report::report_bundle(problem.profile, args.seed);
  write_output(args.out, bundle.dump(2) + "\n");
  if (!args.cdf_out.empty()) {
    std::vector<std::pair<std::string, Assignment>> runs;
    for (const std::string name : {"rawlsian", "ps", "mtav"}) {
      std::vector<std::vector<Rat>> matrix;
      for (const auto& row : bundle["assignments"][name]["matrix"]) {
        std::vector<Rat> vals;
        for (const auto& cell : row) {
          vals.push_back(*fairassign::rat_from_string(cell.get<std::string>()));
        }
        matrix.push_back(std::move(vals));
      }
      runs.emplace_back(name, Assignment(std::move(matrix)));
    }
    write_output(args.cdf_out,
                 fairassign::report::cdf_csv(problem.profile, runs));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair random assignment rules and diagnostics"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "compute a rule's assignment");
  solve->add_option("--rule", solve_args.rule, "rawlsian|ps|mtav|sigma|boston")
      ->required();
  solve->add_option("--input", solve_args.input, "problem file")->required();
  solve->add_option("--sigma", solve_args.sigma,
                    "rank order for --rule sigma, e.g. \"2,3,4\"");
  solve->add_option("--seed", solve_args.seed, "tie-break seed (mtav)");
  solve->add_option("--out", solve_args.out, "output path (default stdout)");
  solve->add_option("--format", solve_args.format, "json|csv");

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand("analyze", "diagnostics for an assignment");
  analyze->add_option("--input", analyze_args.input, "problem file")->required();
  analyze->add_option("--assignment", analyze_args.assignment, "assignment file")
      ->required();
  analyze->add_option("--checks", analyze_args.checks,
                      "comma list: envy,sd,rank,egalitarian,maxrank");
  analyze->add_option("--out", analyze_args.out, "output path");

  CompareArgs compare_args;
  CLI::App* compare = app.add_subcommand("compare", "pairwise rule comparison");
  compare->add_option("--input", compare_args.input, "problem file")->required();
  compare->add_option("--rules", compare_args.rules, "comma list of rules")
      ->required();
  compare->add_option("--seed", compare_args.seed, "tie-break seed (mtav)");
  compare->add_option("--out", compare_args.out, "output path");

  DecomposeArgs decompose_args;
  CLI::App* decompose =
      app.add_subcommand("decompose", "lottery over deterministic assignments");
  decompose->add_option("--assignment", decompose_args.assignment,
                        "assignment file")
      ->required();
  decompose->add_option("--out", decompose_args.out, "output path");

  ProbeArgs probe_args;
  CLI::App* probe = app.add_subcommand("probe", "manipulability diagnostics");
  probe->add_flag("--manipulability", probe_args.manipulability,
                  "exhaustive worst/best-case manipulation search");
  probe->add_flag("--swaps", probe_args.swaps, "random swap axiom checks");
  probe->add_option("--n", probe_args.n, "problem size");
  probe->add_option("--max-n", probe_args.max_n,
                    "safety bound for --manipulability");
  probe->add_option("--count", probe_args.count, "trials for --swaps");
  probe->add_option("--rule", probe_args.rule, "rawlsian|ps|mtav");
  probe->add_option("--seed", probe_args.seed, "seed for --swaps");
  probe->add_option("--out", probe_args.out, "output path");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic problem");
  gen->add_option("--n", gen_args.n, "size")->required();
  gen->add_option("--model", gen_args.model, "uniform|plackett-luce");
  gen->add_option("--seed", gen_args.seed, "seed");
  gen->add_option("--weights", gen_args.weights,
                  "comma list of positive weights (plackett-luce)");
  gen->add_option("--out", gen_args.out, "output path");
  gen->add_option("--format", gen_args.format, "json|csv");

  ReportArgs report_args;
  CLI::App* report = app.add_subcommand("report", "full comparison bundle");
  report->add_option("--input", report_args.input, "problem file")->required();
  report->add_option("--seed", report_args.seed, "tie-break seed (mtav)");
  report->add_option("--out", report_args.out, "bundle path (default stdout)");
  report->add_option("--cdf-out", report_args.cdf_out,
                     "rank-distribution series as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) return run_solve(solve_args);
    if (analyze->parsed()) return run_analyze(analyze_args);
    if (compare->parsed()) return run_compare(compare_args);
    if (decompose->parsed()) return run_decompose(decompose_args);
    if (probe->parsed()) return run_probe(probe_args);
    if (gen->parsed()) return run_gen(gen_args);
    if (report->parsed()) return run_report(report_args);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalCheckError& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
