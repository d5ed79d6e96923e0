#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "json.hpp"
#include "vague/rational.hpp"
#include "vague/reference_tables.hpp"
#include "vague/scenario.hpp"

using namespace vague;

TEST_CASE("uniform observations") {
  const FiniteDomain dom{0, 8};
  const Pmf full = uniform_obs(dom, 0, 8);
  for (int v = 0; v <= 8; ++v) CHECK(full.at(v) == Catch::Approx(1.0 / 9).epsilon(1e-12));

  const Pmf point = uniform_obs(dom, 4, 4);
  CHECK(point.at(4) == 1.0);

  const Pmf mid = uniform_obs(dom, 3, 5);
  CHECK(mid.at(2) == 0.0);
  CHECK(mid.at(3) == Catch::Approx(1.0 / 3).epsilon(1e-12));
  CHECK_THROWS_AS(uniform_obs(dom, 5, 3), domain_mismatch);
  CHECK_THROWS_AS(uniform_obs(dom, -1, 3), domain_mismatch);
}

TEST_CASE("binomial observations") {
  const FiniteDomain dom{0, 8};
  const Pmf p35 = binomial_peaked(dom, 3, 5);
  CHECK(p35.at(3) == Catch::Approx(0.25));
  CHECK(p35.at(4) == Catch::Approx(0.50));
  CHECK(p35.at(5) == Catch::Approx(0.25));

  const Pmf p26 = binomial_peaked(dom, 2, 6);
  CHECK(p26.at(2) == Catch::Approx(1.0 / 16));
  CHECK(p26.at(3) == Catch::Approx(4.0 / 16));
  CHECK(p26.at(4) == Catch::Approx(6.0 / 16));

  CHECK(binomial_peaked(dom, 4, 4).at(4) == 1.0);
}

TEST_CASE("binomial observations are exact and symmetric in rational mode") {
  const FiniteDomain dom{0, 20};
  for (int a = 0; a <= 6; ++a) {
    for (int b = a; b <= 14; ++b) {
      const RationalPmf p = binomial_peaked<rational>(dom, a, b);
      rational total(0);
      for (const rational& r : p.mass()) total += r;
      CHECK(total == rational(1));
      for (int j = 0; a + j <= b; ++j) CHECK(p.at(a + j) == p.at(b - j));
    }
  }
}

TEST_CASE("joint prior from weighted observations") {
  const Scenario scn = reference_scenario();
  const JointPmf joint = build_joint_prior(scn);

  const Pmf xm = joint.x_marginal();
  for (int v = 0; v <= 8; ++v) {
    CHECK(xm.at(v) == Catch::Approx(reference::prior_x[static_cast<std::size_t>(v)]).margin(0.005));
  }
  CHECK(joint.cell(4, 0) == Catch::Approx(1.0 / 426).epsilon(1e-12));

  // o-marginal recovers the normalized weights.
  const Pmf om = joint.obs_marginal();
  for (std::size_t o = 0; o < 9; ++o) {
    CHECK(om.at_index(o) == Catch::Approx(reference::observation_probabilities[o]).epsilon(1e-12));
  }

  SECTION("single observation") {
    const std::vector<Observation> one = {{"o", binomial_peaked(scn.domain, 2, 6), 7.0}};
    const JointPmf j = build_joint_prior(scn.domain, one);
    CHECK(max_abs_diff(j.x_marginal(), one[0].conditional) <= 1e-12);
  }

  SECTION("weight scaling does not change the joint") {
    std::vector<Observation> scaled = scn.observations;
    for (Observation& o : scaled) o.weight *= 17.5;
    const JointPmf j2 = build_joint_prior(scn.domain, scaled);
    for (int x = 0; x <= 8; ++x) {
      for (std::size_t o = 0; o < 9; ++o) {
        CHECK(j2.cell(x, o) == Catch::Approx(joint.cell(x, o)).margin(1e-15));
      }
    }
  }

  CHECK_THROWS_AS(build_joint_prior(scn.domain, {}), invalid_distribution);
}

TEST_CASE("reference scenario shape") {
  const Scenario scn = reference_scenario();
  CHECK(scn.lambda == 10.0);
  CHECK(scn.observations.size() == 9);
  CHECK(scn.messages.size() == 6);
  CHECK(scn.depth == 5);
  CHECK(scn.utility_kind == UtilityKind::marginal_kl);
  CHECK(scn.radius_prior.domain() == FiniteDomain{0, 4});
  CHECK_NOTHROW(validate_scenario(scn));
}

TEST_CASE("scenario json round trip") {
  const Scenario scn = reference_scenario();
  const nlohmann::json doc = scenario_to_json(scn);
  const Scenario back = load_scenario(doc);
  CHECK(back == scn);
}

TEST_CASE("scenario document parsing") {
  nlohmann::json doc = {
      {"domain", {{"lo", 0}, {"hi", 8}}},
      {"observations",
       {{{"label", "u"}, {"kind", "uniform"}, {"a", 1}, {"b", 7}, {"weight", 2.0}},
        {{"label", "p"}, {"kind", "binomial"}, {"a", 1}, {"b", 7}, {"weight", 1.0}},
        {{"label", "e"}, {"kind", "explicit"}, {"mass", {1, 1, 1, 1, 1, 1, 1, 1, 1}}, {"weight", 1.0}}}},
      {"messages", {"around 4", "between 1 and 7", "exactly 4"}},
      {"lambda", 10.0},
  };

  SECTION("defaults") {
    const Scenario scn = load_scenario(doc);
    CHECK(scn.depth == 5);
    CHECK(scn.model == ModelKind::main);
    CHECK(scn.utility_kind == UtilityKind::marginal_kl);
    // Radius prior defaults to uniform over radii that keep "around 4" in-domain.
    CHECK(scn.radius_prior.domain() == FiniteDomain{0, 4});
    CHECK(scn.observations[2].conditional == uniform_obs(FiniteDomain{0, 8}, 0, 8));
  }

  SECTION("costs by message text") {
    doc["costs"] = {{"around 4", 0.25}};
    const Scenario scn = load_scenario(doc);
    CHECK(scn.costs.size() == 3);
    CHECK(scn.cost_of(0) == 0.25);
    CHECK(scn.cost_of(1) == 0.0);
  }

  SECTION("all-zero costs normalize away, so save/load stays an identity") {
    doc["costs"] = {{"around 4", 0.0}};
    const Scenario scn = load_scenario(doc);
    CHECK(scn.costs.empty());
    CHECK(load_scenario(scenario_to_json(scn)) == scn);
  }

  SECTION("labels that would break csv output are rejected") {
    doc["observations"][0]["label"] = "a,b";
    CHECK_THROWS_AS(load_scenario(doc), config_error);
  }

  SECTION("zero weight is an invalid pmf") {
    doc["observations"][0]["weight"] = 0.0;
    try {
      load_scenario(doc);
      FAIL("expected config_error");
    } catch (const config_error& e) {
      CHECK(e.code() == ConfigCode::invalid_pmf);
      CHECK(e.field() == "observations[0].weight");
    }
  }

  SECTION("out-of-domain message") {
    doc["messages"][0] = "around 12";
    try {
      load_scenario(doc);
      FAIL("expected config_error");
    } catch (const config_error& e) {
      CHECK(e.code() == ConfigCode::message_out_of_domain);
    }
  }

  SECTION("non-positive lambda") {
    doc["lambda"] = 0.0;
    try {
      load_scenario(doc);
      FAIL("expected config_error");
    } catch (const config_error& e) {
      CHECK(e.code() == ConfigCode::invalid_lambda);
    }
  }

  SECTION("missing field names the path") {
    doc.erase("messages");
    try {
      load_scenario(doc);
      FAIL("expected config_error");
    } catch (const config_error& e) {
      CHECK(e.code() == ConfigCode::schema_violation);
      CHECK(e.field() == "messages");
    }
  }

  SECTION("duplicate observation labels rejected") {
    doc["observations"][1]["label"] = "u";
    CHECK_THROWS_AS(load_scenario(doc), config_error);
  }

  SECTION("depth cap enforced") {
    doc["depth"] = 51;
    CHECK_THROWS_AS(load_scenario(doc), config_error);
  }
}
