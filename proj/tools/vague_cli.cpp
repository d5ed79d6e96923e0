// Command-line front end.
//
//   vague run <scenario.json>     run a scenario and emit per-level tables
//   vague tables                  recompute the built-in golden tables and
//                                 diff them against the expected values
//   vague check                   seeded property suites (ratio inequality,
//                                 LU support limitation, posterior mixture)
//   vague compare <scenario.json> side-by-side speaker matrices per model
//
// Exit codes: 0 success, 1 failed checks or table diffs, 2 configuration
// error, 3 engine error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vague/checks.hpp"
#include "vague/lu.hpp"
#include "vague/prob.hpp"
#include "vague/rational.hpp"
#include "vague/reference_tables.hpp"
#include "vague/report.hpp"
#include "vague/rsa.hpp"
#include "vague/scenario.hpp"
#include "vague/semantics.hpp"
#include "vague/variants.hpp"

namespace {

using namespace vague;

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_config_error = 2;
constexpr int exit_engine_error = 3;

std::string default_out_dir() {
  if (const char* env = std::getenv("VAGUE_OUT_DIR")) return env;
  return "";
}

// Per-level tables in a fixed order: l0 (per interpretation for the LU
// models), then s1, l1, s2, l2, ...
std::vector<Table> collect_tables(const Scenario& scn, int depth) {
  std::vector<Table> tables;
  if (scn.model == ModelKind::lu || scn.model == ModelKind::lu_marginal_utility) {
    const lu::Trace trace = lu::run_lu(scn, depth);
    for (std::size_t ri = 0; ri < trace.radii.size(); ++ri) {
      tables.push_back(listener_table("l0_y" + std::to_string(trace.radii[ri]),
                                      trace.literal_per_radius[ri], scn.domain));
    }
    for (std::size_t ri = 0; ri < trace.radii.size(); ++ri) {
      tables.push_back(speaker_table("s1_y" + std::to_string(trace.radii[ri]),
                                     trace.s1_per_radius[ri]));
    }
    tables.push_back(speaker_table("s1", trace.s1_mixture));
    tables.push_back(listener_table("l1", trace.listeners[0], scn.domain));
    for (int level = 2; level <= depth; ++level) {
      tables.push_back(speaker_table("s" + std::to_string(level), trace.speaker_at(level)));
      tables.push_back(listener_table("l" + std::to_string(level),
                                      trace.listeners[static_cast<std::size_t>(level) - 1],
                                      scn.domain));
    }
  } else {
    const rsa::RecursionTrace trace = rsa::run_recursion(scn, depth);
    tables.push_back(listener_table("l0", trace.literal, scn.domain));
    for (int level = 1; level <= depth; ++level) {
      tables.push_back(
          speaker_table("s" + std::to_string(level), trace.speakers[static_cast<std::size_t>(level) - 1]));
      tables.push_back(listener_table("l" + std::to_string(level),
                                      trace.listeners[static_cast<std::size_t>(level) - 1],
                                      scn.domain));
    }
  }
  return tables;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write '" + path.string() + "'");
  out << content;
}

void emit_tables(const Scenario& scn, const std::vector<Table>& tables, const std::string& format,
                 const std::string& out_dir) {
  if (format == "json") {
    nlohmann::json report;
    report["scenario"] = scenario_to_json(scn);
    report["tables"] = nlohmann::json::array();
    for (const Table& t : tables) report["tables"].push_back(table_to_json(t));
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!out_dir.empty()) write_file(std::filesystem::path(out_dir) / "report.json", text);
    return;
  }
  for (const Table& t : tables) {
    if (format == "csv") {
      std::cout << "# " << t.name << "\n" << to_csv(t) << "\n";
      if (!out_dir.empty()) write_file(std::filesystem::path(out_dir) / (t.name + ".csv"), to_csv(t));
    } else {
      std::cout << to_text(t) << "\n";
      if (!out_dir.empty()) write_file(std::filesystem::path(out_dir) / (t.name + ".txt"), to_text(t));
    }
  }
}

int cmd_run(const std::string& scenario_path, std::optional<int> depth,
            std::optional<std::string> model, const std::string& format, std::string out_dir) {
  Scenario scn = load_scenario_file(scenario_path);
  if (model) scn.model = detail::model_kind_from(*model, "--model");
  if (depth) scn.depth = *depth;
  validate_scenario(scn);
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  emit_tables(scn, collect_tables(scn, scn.depth), format, out_dir);
  return exit_ok;
}

struct GoldenDiff {
  std::string name;
  double max_diff = 0.0;
  double tol = 0.0;
  bool pass() const { return max_diff <= tol; }
};

GoldenDiff diff_table(const Table& computed, const std::vector<std::vector<double>>& expected,
                      double tol) {
  GoldenDiff d{computed.name, 0.0, tol};
  for (std::size_t r = 0; r < expected.size(); ++r) {
    for (std::size_t c = 0; c < expected[r].size(); ++c) {
      d.max_diff = std::max(d.max_diff, std::abs(computed.cells[r][c] - expected[r][c]));
    }
  }
  return d;
}

template <std::size_t R, std::size_t C>
std::vector<std::vector<double>> to_rows(const std::array<std::array<double, C>, R>& a) {
  std::vector<std::vector<double>> out;
  for (const auto& row : a) out.emplace_back(row.begin(), row.end());
  return out;
}

int cmd_tables(const std::string& format, std::string out_dir) {
  namespace ref = vague::reference;
  const Scenario scn = reference_scenario();
  const FiniteDomain dom = scn.domain;
  const JointPmf joint = build_joint_prior(scn);
  const rsa::RecursionTrace trace = rsa::run_recursion(scn, 5);

  std::vector<Table> tables;
  std::vector<GoldenDiff> diffs;
  const auto add = [&](Table t, const std::vector<std::vector<double>>& expected, double tol) {
    diffs.push_back(diff_table(t, expected, tol));
    tables.push_back(std::move(t));
  };

  // Worked example: hypothetical speaker distribution and the literal
  // posteriors of its two candidate messages over uniform priors.
  const Pmf po(dom, std::vector<double>(ref::example_speaker_po.begin(), ref::example_speaker_po.end()));
  {
    std::vector<std::vector<double>> expected;
    for (double v : ref::example_speaker_po) expected.push_back({v});
    add(curve_table("speaker_distribution", "p", po), expected, 1e-12);
  }

  const Pmf uniform_prior = uniform_pmf(dom);
  const Pmf p_between = condition(uniform_prior, extension(between(1, 7), 0, dom));
  const Pmf p_around = around_posterior(4, uniform_prior, scn.radius_prior);
  {
    Table t;
    t.name = "literal_posteriors";
    t.row_axis = "message";
    t.row_labels = {"between 1 and 7", "around 4"};
    for (int v = 0; v <= 8; ++v) t.col_labels.push_back(std::to_string(v));
    t.cells.emplace_back(p_between.mass().begin(), p_between.mass().end());
    t.cells.emplace_back(p_around.mass().begin(), p_around.mass().end());
    std::vector<std::vector<double>> expected = {
        {ref::example_posterior_between_1_7.begin(), ref::example_posterior_between_1_7.end()},
        {ref::example_posterior_around_4.begin(), ref::example_posterior_around_4.end()}};
    add(std::move(t), expected, 0.005);
  }

  {
    Table t;
    t.name = "observation_conditionals";
    t.row_axis = "x";
    for (int v = 0; v <= 8; ++v) t.row_labels.push_back(std::to_string(v));
    for (const Observation& o : scn.observations) t.col_labels.push_back(o.label);
    for (int v = 0; v <= 8; ++v) {
      std::vector<double> row;
      for (const Observation& o : scn.observations) row.push_back(o.conditional.at(v));
      t.cells.push_back(std::move(row));
    }
    add(std::move(t), to_rows(ref::observation_conditionals), 0.01);
  }

  {
    Table t;
    t.name = "observation_probabilities";
    t.row_axis = "row";
    t.row_labels = {"weight", "probability"};
    const Pmf om = joint.obs_marginal();
    std::vector<double> weights, probs;
    for (std::size_t o = 0; o < scn.observations.size(); ++o) {
      t.col_labels.push_back(scn.observations[o].label);
      weights.push_back(scn.observations[o].weight);
      probs.push_back(om.at_index(o));
    }
    t.cells = {weights, probs};
    std::vector<std::vector<double>> expected = {
        {ref::observation_weights.begin(), ref::observation_weights.end()},
        {ref::observation_probabilities.begin(), ref::observation_probabilities.end()}};
    add(std::move(t), expected, 1e-9);
  }

  {
    std::vector<std::vector<double>> expected;
    for (double v : ref::prior_x) expected.push_back({v});
    add(curve_table("prior_x", "p", joint.x_marginal()), expected, 0.01);
  }

  {
    Table t;
    t.name = "joint_prior";
    t.row_axis = "x";
    for (int v = 0; v <= 8; ++v) t.row_labels.push_back(std::to_string(v));
    for (const Observation& o : scn.observations) t.col_labels.push_back(o.label);
    for (int v = 0; v <= 8; ++v) {
      std::vector<double> row;
      for (std::size_t o = 0; o < scn.observations.size(); ++o) row.push_back(joint.cell(v, o));
      t.cells.push_back(std::move(row));
    }
    add(std::move(t), to_rows(ref::joint_prior), 0.001);
  }

  add(listener_table("l0", trace.literal, dom), to_rows(ref::l0), 0.01);
  add(speaker_table("s1", trace.speakers[0]), to_rows(ref::s1), 0.01);
  add(listener_table("l1", trace.listeners[0], dom), to_rows(ref::l1), 0.01);
  add(speaker_table("s5", trace.speakers[4]), to_rows(ref::s5), 0.01);
  add(listener_table("l5", trace.listeners[4], dom), to_rows(ref::l5), 0.01);

  // Curve data (emitted, not diffed): the closed-form posterior for
  // "around 20" over [0, 40] and the alternative listener on the same input.
  {
    std::vector<double> closed(41);
    for (int k = 0; k <= 40; ++k) closed[static_cast<std::size_t>(k)] = to_double(closed_form_uniform_around(20, k));
    tables.push_back(curve_table("closed_form_curve_n20", "p", Pmf(FiniteDomain{0, 40}, closed)));
    tables.push_back(curve_table(
        "alt_listener_curve_n20", "p",
        alt_literal_listener(20, uniform_pmf(FiniteDomain{0, 40}), uniform_radius_prior(20))));
  }

  const double kl_around = kl_divergence(po, p_around);
  const double kl_between = kl_divergence(po, p_between);

  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  emit_tables(scn, tables, format, out_dir);

  bool all_pass = true;
  for (const GoldenDiff& d : diffs) {
    all_pass = all_pass && d.pass();
    std::cout << (d.pass() ? "[pass] " : "[FAIL] ") << d.name << ": max diff "
              << format_full(d.max_diff) << " (tol " << format_full(d.tol) << ")\n";
  }
  const bool kl_ok = std::abs(kl_around - ref::example_kl_around) <= 0.005 &&
                     std::abs(kl_between - ref::example_kl_between) <= 0.005;
  all_pass = all_pass && kl_ok;
  std::cout << (kl_ok ? "[pass] " : "[FAIL] ") << "kl_divergences: around "
            << format_fixed(kl_around, 4) << " (expected 0.65), between "
            << format_fixed(kl_between, 4) << " (expected 0.89)\n";
  return all_pass ? exit_ok : exit_check_failed;
}

int cmd_check(const std::string& suite, int trials, std::uint64_t seed) {
  bool all_pass = true;
  if (suite == "ratio" || suite == "all") {
    const auto r = checks::ratio_sweep(trials, seed);
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "[pass] " : "[FAIL] ") << "ratio: " << r.trials << " trials, "
              << r.pairs_checked << " pairs, " << r.strict_failures << " failures, min margin "
              << format_full(r.min_margin) << ", between-control worst deviation "
              << format_full(r.max_between_deviation) << "\n";
  }
  if (suite == "lu-support" || suite == "all") {
    const auto r = checks::lu_support_check();
    all_pass = all_pass && r.pass;
    for (const auto& c : r.cases) {
      std::cout << "  lambda " << format_fixed(c.lambda, 0) << (c.with_costs ? " with costs" : "")
                << ": worst pair gap " << format_full(c.worst_gap) << "\n";
    }
    std::cout << (r.pass ? "[pass] " : "[FAIL] ") << "lu-support: worst gap "
              << format_full(r.worst_gap) << " (tol 1e-09), main-model S1 contrast "
              << format_fixed(r.main_s1_gap, 2) << " (>= 0.4 required)\n";
  }
  if (suite == "mixture" || suite == "all") {
    const auto r = checks::mixture_sweep(trials, seed);
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "[pass] " : "[FAIL] ") << "mixture: " << r.trials
              << " trials, worst deviation " << format_full(r.worst_deviation) << " (tol 1e-12)\n";
  }
  return all_pass ? exit_ok : exit_check_failed;
}

int cmd_compare(const std::string& scenario_path, const std::vector<std::string>& model_names,
                std::optional<int> depth) {
  if (model_names.size() < 2) {
    throw config_error(ConfigCode::schema_violation, "--models", "need at least two models");
  }
  Scenario base = load_scenario_file(scenario_path);
  if (depth) base.depth = *depth;
  validate_scenario(base);

  // Equal-support observation pairs, in scenario order.
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < base.observations.size(); ++i) {
    for (std::size_t j = i + 1; j < base.observations.size(); ++j) {
      if (base.observations[i].conditional.support() ==
          base.observations[j].conditional.support()) {
        pairs.emplace_back(base.observations[i].label, base.observations[j].label);
      }
    }
  }

  std::vector<std::pair<std::string, rsa::SpeakerMatrix>> finals;
  for (const std::string& name : model_names) {
    Scenario scn = base;
    scn.model = detail::model_kind_from(name, "--models");
    if (scn.model == ModelKind::lu || scn.model == ModelKind::lu_marginal_utility) {
      const lu::Trace trace = lu::run_lu(scn, scn.depth);
      finals.emplace_back(name, scn.depth >= 2 ? trace.speaker_at(scn.depth) : trace.s1_mixture);
    } else {
      const rsa::RecursionTrace trace = rsa::run_recursion(scn, scn.depth);
      finals.emplace_back(name, trace.speakers.back());
    }
  }

  for (const auto& [name, matrix] : finals) {
    std::cout << to_text(speaker_table("s" + std::to_string(base.depth) + "_" + name, matrix))
              << "\n";
  }
  if (pairs.empty()) {
    std::cout << "no equal-support observation pairs in this scenario\n";
    return exit_ok;
  }
  std::cout << "# support sensitivity (row gap per equal-support pair)\n";
  for (const auto& [o1, o2] : pairs) {
    std::cout << o1 << " vs " << o2 << ":";
    for (const auto& [name, matrix] : finals) {
      const double gap = rsa::max_row_gap(matrix, o1, o2);
      std::cout << "  " << name << " " << (gap > 1e-9 ? "differs" : "identical") << " ("
                << format_fixed(gap, 4) << ")";
    }
    std::cout << "\n";
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete pragmatic-inference engine for approximation messages"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string format = "table";
  std::string out_dir = default_out_dir();
  std::optional<int> depth;
  std::optional<std::string> model;

  CLI::App* run = app.add_subcommand("run", "run a scenario and emit per-level tables");
  run->add_option("scenario", scenario_path, "scenario document (json)")->required();
  run->add_option("--depth", depth, "recursion depth override");
  run->add_option("--model", model, "model override: main|lu|lu_marginal_utility|alt_listener");
  run->add_option("--format", format, "table|csv|json")->check(CLI::IsMember({"table", "csv", "json"}));
  run->add_option("--out", out_dir, "directory for emitted table files");

  CLI::App* tables = app.add_subcommand("tables", "golden-table reproduction with diffs");
  tables->add_option("--format", format, "table|csv|json")->check(CLI::IsMember({"table", "csv", "json"}));
  tables->add_option("--out", out_dir, "directory for emitted table files");

  std::string suite = "all";
  int trials = 1000;
  std::uint64_t seed = 20260810u;
  CLI::App* check = app.add_subcommand("check", "seeded property suites");
  check->add_option("--suite", suite, "ratio|lu-support|mixture|all")
      ->check(CLI::IsMember({"ratio", "lu-support", "mixture", "all"}));
  check->add_option("--trials", trials, "trials per randomized suite")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "seed for randomized suites");

  std::vector<std::string> model_names;
  CLI::App* compare = app.add_subcommand("compare", "side-by-side speaker matrices per model");
  compare->add_option("scenario", scenario_path, "scenario document (json)")->required();
  compare->add_option("--models", model_names, "comma-separated model list")
      ->required()
      ->delimiter(',');
  compare->add_option("--depth", depth, "recursion depth override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(scenario_path, depth, model, format, out_dir);
    if (tables->parsed()) return cmd_tables(format, out_dir);
    if (check->parsed()) return cmd_check(suite, trials, seed);
    if (compare->parsed()) return cmd_compare(scenario_path, model_names, depth);
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config_error;
  } catch (const vague::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_engine_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_engine_error;
  }
  return exit_ok;
}
