#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>
#include <vector>

#include "vague/checks.hpp"
#include "vague/lu.hpp"
#include "vague/rsa.hpp"
#include "vague/scenario.hpp"

using namespace vague;

namespace {

// Reference implementation of the LU recursion, transcribing the defining
// equations one by one with no algebraic reshaping. Serves as the oracle for
// the production path, which computes speaker rows from the decomposed
// utilities.
struct NaiveLu {
  Scenario scn;
  lu::Variant variant;
  JointPmf prior;
  std::vector<Pmf> conditionals;

  explicit NaiveLu(Scenario s, lu::Variant v)
      : scn(std::move(s)), variant(v), prior(build_joint_prior(scn)) {
    for (const Observation& o : scn.observations) conditionals.push_back(o.conditional);
  }

  std::optional<JointPmf> literal(std::size_t mi, int radius) const {
    const auto ext = extension(scn.messages[mi], radius, scn.domain);
    std::vector<double> cells(static_cast<std::size_t>(scn.domain.size()) * prior.observation_count(), 0.0);
    double total = 0.0;
    for (int v : ext) {
      for (std::size_t o = 0; o < prior.observation_count(); ++o) {
        cells[scn.domain.index_of(v) * prior.observation_count() + o] = prior.cell(v, o);
        total += prior.cell(v, o);
      }
    }
    if (!(total > 0.0)) return std::nullopt;
    for (double& c : cells) c /= total;
    return JointPmf(scn.domain, prior.observations(), std::move(cells));
  }

  double expected_log(const Pmf& po, const JointPmf& table, std::size_t obs, bool marginal) const {
    const Pmf xm = table.x_marginal();
    double sum = 0.0;
    for (std::size_t xi = 0; xi < po.size(); ++xi) {
      const double p = po.at_index(xi);
      if (p <= 0.0) continue;
      const double cell =
          marginal ? xm.at_index(xi) : table.cell(scn.domain.value_at(xi), obs);
      if (cell <= 0.0) return neg_infinity;
      sum += p * std::log(cell);
    }
    return sum;
  }

  // Full trace: per-radius S1 matrices, then marginal speakers per level.
  std::vector<std::vector<std::vector<double>>> run_speakers(int depth) const {
    const std::size_t n_msg = scn.messages.size();
    const std::size_t n_obs = scn.observations.size();
    const bool marginal = variant == lu::Variant::marginal_utility;

    std::vector<std::vector<std::vector<double>>> levels;  // [level][obs or obs*radius][msg]
    std::vector<std::vector<std::vector<double>>> s1;      // [radius][obs][msg]
    for (std::size_t ri = 0; ri < scn.radius_prior.size(); ++ri) {
      const int radius = scn.radius_prior.domain().value_at(ri);
      std::vector<std::vector<double>> mat;
      for (std::size_t j = 0; j < n_obs; ++j) {
        std::vector<double> u(n_msg, neg_infinity);
        for (std::size_t mi = 0; mi < n_msg; ++mi) {
          const auto lit = literal(mi, radius);
          if (!lit) continue;
          const double v = expected_log(conditionals[j], *lit, j, marginal);
          if (v != neg_infinity) u[mi] = v - scn.cost_of(mi);
        }
        const Pmf row = softmax(u, scn.lambda);
        mat.emplace_back(row.mass().begin(), row.mass().end());
      }
      s1.push_back(std::move(mat));
    }
    std::vector<std::vector<double>> flat_s1;
    for (const auto& mat : s1) {
      for (const auto& row : mat) flat_s1.push_back(row);
    }
    levels.push_back(std::move(flat_s1));

    // mixture over interpretations
    std::vector<std::vector<double>> effective(n_obs, std::vector<double>(n_msg, 0.0));
    for (std::size_t ri = 0; ri < scn.radius_prior.size(); ++ri) {
      for (std::size_t j = 0; j < n_obs; ++j) {
        for (std::size_t mi = 0; mi < n_msg; ++mi) {
          effective[j][mi] += scn.radius_prior.at_index(ri) * s1[ri][j][mi];
        }
      }
    }

    for (int level = 2; level <= depth; ++level) {
      // listener built from the effective speaker
      std::vector<std::optional<JointPmf>> listener(n_msg);
      for (std::size_t mi = 0; mi < n_msg; ++mi) {
        std::vector<double> cells(static_cast<std::size_t>(scn.domain.size()) * n_obs, 0.0);
        double total = 0.0;
        for (int x = scn.domain.lo; x <= scn.domain.hi; ++x) {
          for (std::size_t o = 0; o < n_obs; ++o) {
            const double c = prior.cell(x, o) * effective[o][mi];
            cells[scn.domain.index_of(x) * n_obs + o] = c;
            total += c;
          }
        }
        if (total > 0.0) {
          for (double& c : cells) c /= total;
          listener[mi] = JointPmf(scn.domain, prior.observations(), std::move(cells));
        }
      }
      std::vector<std::vector<double>> mat;
      for (std::size_t j = 0; j < n_obs; ++j) {
        std::vector<double> u(n_msg, neg_infinity);
        for (std::size_t mi = 0; mi < n_msg; ++mi) {
          if (!listener[mi]) continue;
          const double v = expected_log(conditionals[j], *listener[mi], j, marginal);
          if (v != neg_infinity) u[mi] = v - scn.cost_of(mi);
        }
        const Pmf row = softmax(u, scn.lambda);
        mat.emplace_back(row.mass().begin(), row.mass().end());
      }
      levels.push_back(mat);
      effective = std::move(mat);
    }
    return levels;
  }
};

Scenario lu_scenario(double lambda = 10.0) {
  Scenario scn = reference_scenario();
  scn.model = ModelKind::lu;
  scn.lambda = lambda;
  return scn;
}

}  // namespace

TEST_CASE("interpretation-relative literal listener") {
  const lu::Model model(lu_scenario());
  const JointPmf prior = model.prior();

  SECTION("around at a fixed radius conditions like a between-message") {
    const auto lit = model.literal(5, 2);  // around 4 at radius 2
    REQUIRE(lit.has_value());
    const auto via_between = model.literal(2, 0);  // between 2 and 6, radius ignored
    REQUIRE(via_between.has_value());
    for (int x = 0; x <= 8; ++x) {
      for (std::size_t o = 0; o < prior.observation_count(); ++o) {
        CHECK(lit->cell(x, o) == Catch::Approx(via_between->cell(x, o)).margin(1e-15));
      }
    }
  }

  SECTION("full-domain message leaves the prior unchanged") {
    const auto lit = model.literal(4, 0);  // between 0 and 8
    REQUIRE(lit.has_value());
    for (int x = 0; x <= 8; ++x) {
      for (std::size_t o = 0; o < prior.observation_count(); ++o) {
        CHECK(lit->cell(x, o) == Catch::Approx(prior.cell(x, o)).margin(1e-15));
      }
    }
  }
}

TEST_CASE("quality predicates") {
  const lu::Model model(lu_scenario());
  const std::size_t b_1_7 = 3, b_3_5 = 1, around_4 = 5;
  const std::size_t u_0_8 = 4, p_2_6 = 6;

  CHECK_FALSE(model.respects_quality(b_1_7, u_0_8, 0));
  CHECK_FALSE(model.respects_weak_quality(b_1_7, u_0_8));
  for (std::size_t obs = 0; obs < 9; ++obs) CHECK(model.respects_quality(around_4, obs, 4));
  CHECK_FALSE(model.respects_weak_quality(b_3_5, p_2_6));
}

TEST_CASE("level-1 speaker zeros exactly the quality violations") {
  for (const double lambda : {1.0, 10.0}) {
    const lu::Model model(lu_scenario(lambda));
    for (int radius = 0; radius <= 4; ++radius) {
      for (std::size_t obs = 0; obs < 9; ++obs) {
        const Pmf row = model.speaker1_row(obs, radius);
        for (std::size_t mi = 0; mi < 6; ++mi) {
          INFO("lambda " << lambda << " radius " << radius << " obs " << obs << " msg " << mi);
          CHECK((row.at_index(mi) == 0.0) == !model.respects_quality(mi, obs, radius));
        }
      }
    }
  }
}

TEST_CASE("level-1 speaker with a single admissible message") {
  Scenario scn = lu_scenario();
  scn.messages = {between(0, 8), between(3, 5)};
  scn.costs = {};
  const lu::Model model(scn);
  const std::size_t u_0_8 = 4;
  const Pmf row = model.speaker1_row(u_0_8, 0);
  CHECK(row.at_index(0) == 1.0);
  CHECK(row.at_index(1) == 0.0);
}

TEST_CASE("level-1 utilities: equal-support difference is constant") {
  const lu::Model model(lu_scenario());
  const JointPmf prior = model.prior();
  const auto pairs = checks::equal_support_pairs();
  for (const auto& [l1, l2] : pairs) {
    std::size_t o1 = 0, o2 = 0;
    for (std::size_t j = 0; j < 9; ++j) {
      if (model.scenario().observations[j].label == l1) o1 = j;
      if (model.scenario().observations[j].label == l2) o2 = j;
    }
    // Expected constant from the prior alone.
    double expected = 0.0;
    for (int w = 0; w <= 8; ++w) {
      const double p2 = model.scenario().observations[o2].conditional.at(w);
      const double p1 = model.scenario().observations[o1].conditional.at(w);
      if (p2 > 0.0) expected += p2 * std::log(prior.cell(w, o2));
      if (p1 > 0.0) expected -= p1 * std::log(prior.cell(w, o1));
    }
    for (std::size_t mi = 0; mi < 6; ++mi) {
      for (int radius = 0; radius <= 4; ++radius) {
        if (!model.respects_quality(mi, o1, radius)) continue;
        const double diff = model.utility_level1(mi, o2, radius) - model.utility_level1(mi, o1, radius);
        INFO("message " << mi << " radius " << radius);
        CHECK(diff == Catch::Approx(expected).margin(1e-9));
      }
    }
  }
}

TEST_CASE("decomposed recursion matches the transcribed equations") {
  for (const lu::Variant variant : {lu::Variant::standard, lu::Variant::marginal_utility}) {
    Scenario scn = lu_scenario();
    scn.costs = {0.0, 0.05, 0.1, 0.15, 0.2, 0.25};
    const NaiveLu oracle(scn, variant);
    const auto naive_levels = oracle.run_speakers(5);
    const lu::Trace trace = lu::Model(scn, variant).run(5);

    // Level 1, per radius.
    std::size_t flat = 0;
    for (std::size_t ri = 0; ri < trace.radii.size(); ++ri) {
      for (std::size_t j = 0; j < 9; ++j, ++flat) {
        for (std::size_t mi = 0; mi < 6; ++mi) {
          INFO("variant " << static_cast<int>(variant) << " radius " << ri << " obs " << j);
          CHECK(trace.s1_per_radius[ri].at(j, mi) ==
                Catch::Approx(naive_levels[0][flat][mi]).margin(1e-9));
        }
      }
    }
    for (int level = 2; level <= 5; ++level) {
      const rsa::SpeakerMatrix& s = trace.speaker_at(level);
      for (std::size_t j = 0; j < 9; ++j) {
        for (std::size_t mi = 0; mi < 6; ++mi) {
          INFO("variant " << static_cast<int>(variant) << " level " << level << " obs " << j);
          CHECK(s.at(j, mi) ==
                Catch::Approx(naive_levels[static_cast<std::size_t>(level) - 1][j][mi]).margin(1e-9));
        }
      }
    }
  }
}

TEST_CASE("weak-quality zeros at higher levels") {
  // Temperature low enough that no admissible entry underflows.
  Scenario scn = lu_scenario(1.0);
  const lu::Model model(scn);
  const lu::Trace trace = model.run(5);
  for (int level = 2; level <= 5; ++level) {
    const rsa::SpeakerMatrix& s = trace.speaker_at(level);
    for (std::size_t j = 0; j < 9; ++j) {
      for (std::size_t mi = 0; mi < 6; ++mi) {
        INFO("level " << level << " obs " << j << " msg " << mi);
        CHECK((s.at(j, mi) == 0.0) == !model.respects_weak_quality(mi, j));
      }
    }
  }
}

TEST_CASE("support theorem: equal-support rows are identical") {
  const auto pairs = checks::equal_support_pairs();
  for (const double lambda : {1.0, 10.0, 100.0}) {
    for (const bool with_costs : {false, true}) {
      Scenario scn = lu_scenario(lambda);
      if (with_costs) scn.costs = {0.3, 0.25, 0.2, 0.15, 0.1, 0.05};
      const lu::Trace trace = lu::run_lu(scn, 5);
      const auto report = lu::support_theorem_check(scn, trace, pairs, 1e-9);
      INFO("lambda " << lambda << " costs " << with_costs);
      CHECK(report.pass);
      CHECK(report.worst_gap <= 1e-9);
    }
  }
}

TEST_CASE("support theorem check rejects unequal supports") {
  Scenario scn = lu_scenario();
  const lu::Trace trace = lu::run_lu(scn, 2);
  CHECK_THROWS_AS(lu::support_theorem_check(scn, trace, {{"u_3_5", "p_2_6"}}), domain_mismatch);
}

TEST_CASE("marginal-utility variant breaks the support limitation") {
  const auto divergence = checks::lu_variant_divergence(100.0);
  CHECK(divergence.worst_gap > 0.01);
  // Level 1 is still support-only: the per-message utility decomposes there.
  Scenario scn = reference_scenario();
  scn.model = ModelKind::lu_marginal_utility;
  scn.lambda = 100.0;
  const lu::Trace trace = lu::run_lu(scn, 2);
  const auto level1 = lu::support_theorem_check(scn, trace, checks::equal_support_pairs(), 1e-9);
  double level1_worst = 0.0;
  for (const auto& e : level1.entries) {
    if (e.level == 1) level1_worst = std::max(level1_worst, e.max_gap);
  }
  CHECK(level1_worst <= 1e-12);
}

TEST_CASE("fully informed speaker converges on the exact message") {
  for (const lu::Variant variant : {lu::Variant::standard, lu::Variant::marginal_utility}) {
    Scenario scn = lu_scenario(100.0);
    const lu::Trace trace = lu::Model(scn, variant).run(5);
    const std::size_t eq4 = trace.s1_mixture.observation_index("=4");
    for (int level = 2; level <= 5; ++level) {
      CHECK(trace.speaker_at(level).at(eq4, 0) > 0.99);
    }
  }
}

TEST_CASE("lu level-1 listener favors central values after around") {
  const lu::Model model(lu_scenario());
  const auto l1 = model.listener1(5);  // around 4
  REQUIRE(l1.has_value());
  const Pmf marginal = l1->x_marginal();
  const Pmf prior_x = model.prior().x_marginal();
  CHECK(marginal.at(4) > prior_x.at(4));
  CHECK(marginal.at(0) < prior_x.at(0));
}

TEST_CASE("point-mass interpretation prior reduces to single-lexicon rsa") {
  // LU with the interpretation fixed at radius 2 against a plain recursion
  // where "around 4" is replaced by its fixed reading "between 2 and 6".
  Scenario scn_lu = reference_scenario();
  scn_lu.model = ModelKind::lu;
  scn_lu.radius_prior = point_mass(FiniteDomain{0, 4}, 2);
  const lu::Trace lu_trace = lu::run_lu(scn_lu, 1);

  Scenario scn_rsa = reference_scenario();
  scn_rsa.utility_kind = UtilityKind::joint_standard;
  scn_rsa.messages[5] = between(2, 6);
  const rsa::RecursionTrace rsa_trace = rsa::run_recursion(scn_rsa, 1);

  for (std::size_t j = 0; j < 9; ++j) {
    CHECK(max_abs_diff(lu_trace.s1_mixture.rows[j], rsa_trace.speakers[0].rows[j]) <= 1e-12);
  }
  for (std::size_t mi = 0; mi < 6; ++mi) {
    REQUIRE(lu_trace.listeners[0].x_marginals[mi].has_value());
    CHECK(max_abs_diff(*lu_trace.listeners[0].x_marginals[mi],
                       *rsa_trace.listeners[0].x_marginals[mi]) <= 1e-12);
  }
}
