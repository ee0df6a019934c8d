// Command-line front end: build significance curves from an evidence file,
// combine them, extract p-values and confidence intervals, run the betting
// game, and reproduce the bundled worked examples.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "confid/combine.hpp"
#include "confid/examples.hpp"
#include "confid/game.hpp"
#include "confid/io.hpp"

namespace {

using confid::Exec;
using ordered_json = nlohmann::ordered_json;

void print_json(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

confid::CombinationResult combine_from_file(const std::string& input,
                                            const std::string& tree_expr,
                                            Exec exec) {
  confid::EvidenceFile file = confid::load_evidence_file(input);
  if (tree_expr.empty()) return confid::combine(file.curves, exec);
  return confid::combine_tree(confid::parse_tree_expr(tree_expr), file.curves,
                              exec);
}

void write_curve(const confid::SignificanceCurve& curve,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw confid::validation_error("cannot open output file: " + path);
  confid::dump_curve_csv(curve, out);
}

int cmd_combine(const std::string& input, const std::string& output,
                const std::string& tree_expr, Exec exec) {
  confid::CombinationResult result = combine_from_file(input, tree_expr, exec);
  write_curve(result.curve, output);

  ordered_json summary;
  summary["sources"] = result.source_count;
  summary["provenance"] = result.source_ids;
  summary["grid"] = {{"min", result.curve.grid().front()},
                     {"max", result.curve.grid().back()},
                     {"points", result.curve.grid().size()}};
  summary["approximate"] = result.curve.approximate();
  summary["output"] = output;
  print_json(summary);
  return 0;
}

int cmd_pvalue(const std::string& input, double null_value,
               const std::string& alternative, Exec exec) {
  confid::Alternative alt;
  if (alternative == "greater")
    alt = confid::Alternative::Greater;
  else if (alternative == "less")
    alt = confid::Alternative::Less;
  else if (alternative == "two-sided")
    alt = confid::Alternative::TwoSided;
  else
    throw confid::validation_error(
        "--alternative must be greater, less or two-sided");

  confid::CombinationResult result = combine_from_file(input, "", exec);
  ordered_json out;
  out["p_value"] = confid::p_value(result.curve, null_value, alt);
  out["null"] = null_value;
  out["alternative"] = alternative;
  if (result.curve.approximate()) out["approximate"] = true;
  print_json(out);
  return 0;
}

int cmd_ci(const std::string& input, double level, const std::string& tails,
           Exec exec) {
  if (!(level > 0.0 && level < 1.0))
    throw confid::validation_error("--level must lie in (0,1)");
  double alpha = 1.0 - level;
  double a1, a2;
  if (tails == "central") {
    a1 = a2 = 0.5 * alpha;
  } else if (tails == "lower") {
    a1 = alpha;
    a2 = 0.0;
  } else if (tails == "upper") {
    a1 = 0.0;
    a2 = alpha;
  } else {
    throw confid::validation_error("--tails must be central, lower or upper");
  }

  confid::CombinationResult result = combine_from_file(input, "", exec);
  confid::IntervalUnion interval =
      confid::central_interval(result.curve, a1, a2);
  ordered_json out;
  out["level"] = level;
  out["tails"] = tails;
  auto arr = ordered_json::array();
  for (const auto& [lo, hi] : interval.intervals())
    arr.push_back({{"lo", lo}, {"hi", hi}});
  out["intervals"] = arr;
  if (result.curve.approximate()) out["approximate"] = true;
  print_json(out);
  return 0;
}

int cmd_game(const std::string& estimator, double theta, double gamma, int n,
             int reps, std::uint64_t seed, Exec exec) {
  confid::EstimatorSpec est = confid::EstimatorSpec::parse(estimator);
  confid::GameConfig cfg;
  cfg.model = confid::NormalModelSpec{theta, gamma, n};
  cfg.b_suite = confid::default_b_suite();
  cfg.replicates = reps;
  cfg.seed = seed;
  confid::GameReport report = confid::run_game(est, cfg, exec);
  print_json(confid::game_report_json(report));
  return 0;
}

int cmd_example(const std::string& name, const std::string& output_dir,
                Exec exec) {
  auto path = [&](const char* file) { return output_dir + "/" + file; };
  if (name == "torricelli") {
    confid::TorricelliReport report = confid::example_torricelli(exec);
    write_curve(report.product_curve, path("torricelli_product.csv"));
    write_curve(report.combined_curve, path("torricelli_combined.csv"));
    ordered_json out;
    out["likelihood_product_mode"] = {{"computed", report.product_mode},
                                      {"reference", report.product_mode_reference},
                                      {"agrees", report.product_agrees}};
    out["combined_density_mode"] = {{"computed", report.abcu_mode},
                                    {"reference", report.abcu_mode_reference},
                                    {"agrees", report.abcu_agrees}};
    out["curves"] = {path("torricelli_product.csv"),
                     path("torricelli_combined.csv")};
    print_json(out);
    return 0;
  }
  if (name == "common-mean") {
    confid::CommonMeanReport r = confid::example_common_mean(exec);
    ordered_json out;
    out["p_two_source"] = {{"computed", r.p_two_source},
                           {"reference", r.p_two_source_reference},
                           {"agrees", r.two_source_agrees}};
    out["p_simultaneous_four"] = {{"computed", r.p_flat_four},
                                  {"reference", r.p_flat_four_reference},
                                  {"agrees", r.flat_four_agrees}};
    out["p_sequential_tree"] = {{"computed", r.p_tree},
                                {"reference", r.p_tree_reference},
                                {"agrees", r.tree_agrees}};
    out["non_additivity_gap"] = r.flat_tree_gap;
    print_json(out);
    return 0;
  }
  throw confid::validation_error("unknown example '" + name +
                                 "' (expected torricelli or common-mean)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confidence-measure inference: curve combination, p-values, "
               "intervals, and the betting-game calibration harness"};
  app.require_subcommand(1);
  bool serial = false;
  app.add_flag("--serial", serial, "Run kernels on the serial reference path");

  std::string input, output, tree_expr;
  auto* combine_cmd =
      app.add_subcommand("combine", "Combine evidence sources into one curve");
  combine_cmd->add_option("--input", input, "Evidence JSON file")->required();
  combine_cmd->add_option("--output", output, "Curve CSV output path")
      ->required();
  combine_cmd->add_option("--tree", tree_expr,
                          "Nested grouping, e.g. ((0,1),(2,3))");

  double null_value = 0.0;
  std::string alternative = "greater";
  auto* pvalue_cmd = app.add_subcommand("pvalue", "p-value at a null value");
  pvalue_cmd->add_option("--input", input, "Evidence JSON file")->required();
  pvalue_cmd->add_option("--null", null_value, "Null parameter value")
      ->required();
  pvalue_cmd->add_option("--alternative", alternative,
                         "greater | less | two-sided");

  double level = 0.95;
  std::string tails = "central";
  auto* ci_cmd = app.add_subcommand("ci", "Confidence interval");
  ci_cmd->add_option("--input", input, "Evidence JSON file")->required();
  ci_cmd->add_option("--level", level, "Confidence level in (0,1)")->required();
  ci_cmd->add_option("--tails", tails, "central | lower | upper");

  std::string estimator = "calibrated";
  double theta = 1.0, gamma = 1.0;
  int n = 3, reps = 10000;
  std::uint64_t seed = 12345;
  auto* game_cmd =
      app.add_subcommand("game", "Betting-game calibration report");
  game_cmd->add_option("--estimator", estimator,
                       "calibrated | shift:<v> | scale:<v>");
  game_cmd->add_option("--theta", theta, "True mean");
  game_cmd->add_option("--gamma", gamma, "Population sd");
  game_cmd->add_option("--n", n, "Sample size per replicate");
  game_cmd->add_option("--reps", reps, "Replicates");
  game_cmd->add_option("--seed", seed, "RNG seed");

  std::string example_name, output_dir = ".";
  auto* example_cmd =
      app.add_subcommand("example", "Run a bundled worked example");
  example_cmd->add_option("name", example_name, "torricelli | common-mean")
      ->required();
  example_cmd->add_option("--output-dir", output_dir,
                          "Directory for curve dumps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Exec exec = serial ? Exec::Serial : Exec::Parallel;
  try {
    if (combine_cmd->parsed()) return cmd_combine(input, output, tree_expr, exec);
    if (pvalue_cmd->parsed())
      return cmd_pvalue(input, null_value, alternative, exec);
    if (ci_cmd->parsed()) return cmd_ci(input, level, tails, exec);
    if (game_cmd->parsed())
      return cmd_game(estimator, theta, gamma, n, reps, seed, exec);
    if (example_cmd->parsed()) return cmd_example(example_name, output_dir, exec);
  } catch (const confid::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const confid::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}
