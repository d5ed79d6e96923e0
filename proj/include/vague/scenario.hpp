// Experiment descriptions: observation sets, the joint prior they induce,
// and (de)serialization of scenario documents.
//
// A scenario fixes everything a model run needs: the world-value domain, the
// observations the speaker may have made (each a conditional distribution
// over x plus a prior weight), the message set, the radius prior for
// "around", the SoftMax temperature, the recursion depth, the utility
// function, and which model family to run.

#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "vague/prob.hpp"
#include "vague/semantics.hpp"

namespace vague {

// Which utility the speaker maximizes.
//   marginal_kl:    -KL of the listener's x-marginal from the speaker's P(x|o)
//   joint_standard: expected log of the listener's joint (x, o) cell
enum class UtilityKind { marginal_kl, joint_standard };

enum class ModelKind { main, lu, lu_marginal_utility, alt_listener };

enum class ConfigCode {
  schema_violation,
  message_out_of_domain,
  invalid_pmf,
  invalid_lambda,
};

class config_error : public error {
 public:
  config_error(ConfigCode code, std::string field, const std::string& what)
      : error("config error at '" + field + "': " + what), code_(code), field_(std::move(field)) {}

  ConfigCode code() const { return code_; }
  const std::string& field() const { return field_; }

 private:
  ConfigCode code_;
  std::string field_;
};

struct Observation {
  std::string label;
  Pmf conditional;  // P(x | o)
  double weight = 1.0;

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct Scenario {
  FiniteDomain domain;
  std::vector<Observation> observations;
  std::vector<Message> messages;
  Pmf radius_prior = Pmf(FiniteDomain{0, 0}, {1.0});  // over radii {0, ..., y_max}
  double lambda = 10.0;
  int depth = 5;
  UtilityKind utility_kind = UtilityKind::marginal_kl;
  ModelKind model = ModelKind::main;
  std::vector<double> costs;  // per message; empty means all zero

  double cost_of(std::size_t msg_index) const {
    return costs.empty() ? 0.0 : costs.at(msg_index);
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

inline constexpr int max_recursion_depth = 50;

// Uniform conditional on [a, b] inside the domain.
template <class R = double>
basic_pmf<R> uniform_obs(FiniteDomain domain, int a, int b) {
  if (a > b || a < domain.lo || b > domain.hi) {
    throw domain_mismatch("uniform observation bounds outside domain");
  }
  std::vector<R> m(domain.size(), R(0));
  for (int v = a; v <= b; ++v) m[domain.index_of(v)] = R(1) / R(b - a + 1);
  return basic_pmf<R>(domain, std::move(m));
}

// Symmetric unimodal conditional on [a, b]: a binomial(b - a, 1/2) shifted
// onto the interval, mass C(b - a, j) / 2^(b - a) at a + j.
template <class R = double>
basic_pmf<R> binomial_peaked(FiniteDomain domain, int a, int b) {
  if (a > b || a < domain.lo || b > domain.hi) {
    throw domain_mismatch("binomial observation bounds outside domain");
  }
  const int n = b - a;
  if (n > 60) throw invalid_distribution("binomial interval too wide for exact coefficients");
  std::vector<R> m(domain.size(), R(0));
  const R denom = R(1LL << n);
  long long coeff = 1;
  for (int j = 0; j <= n; ++j) {
    m[domain.index_of(a + j)] = R(coeff) / denom;
    coeff = coeff * (n - j) / (j + 1);
  }
  return basic_pmf<R>(domain, std::move(m));
}

// Joint prior P(x, o) = P(x | o) * P(o), with P(o) the normalized weights.
inline JointPmf build_joint_prior(FiniteDomain domain, const std::vector<Observation>& obs) {
  if (obs.empty()) throw invalid_distribution("scenario needs at least one observation");
  double total_weight = 0.0;
  for (const Observation& o : obs) {
    if (!(o.weight > 0.0)) throw invalid_distribution("observation weight must be positive");
    if (o.conditional.domain() != domain) throw domain_mismatch("observation domain mismatch");
    total_weight += o.weight;
  }
  std::vector<std::string> labels;
  labels.reserve(obs.size());
  for (const Observation& o : obs) labels.push_back(o.label);
  std::vector<double> cells(static_cast<std::size_t>(domain.size()) * obs.size());
  for (std::size_t xi = 0; xi < static_cast<std::size_t>(domain.size()); ++xi) {
    for (std::size_t j = 0; j < obs.size(); ++j) {
      cells[xi * obs.size() + j] = obs[j].conditional.at_index(xi) * (obs[j].weight / total_weight);
    }
  }
  return JointPmf(domain, std::move(labels), std::move(cells));
}

inline JointPmf build_joint_prior(const Scenario& scn) {
  return build_joint_prior(scn.domain, scn.observations);
}

// The bundled reference configuration: x in [0, 8], nine observations
// (point, uniform and peaked on nested intervals centered on 4, with
// weights 4^i favoring wide supports), six messages centered on 4, uniform
// radius prior on 0..4, temperature 10, depth 5.
inline Scenario reference_scenario() {
  const FiniteDomain dom{0, 8};
  Scenario scn{
      .domain = dom,
      .observations = {},
      .messages = {exactly(4), between(3, 5), between(2, 6), between(1, 7), between(0, 8),
                   around(4)},
      .radius_prior = uniform_radius_prior(4),
      .lambda = 10.0,
      .depth = 5,
      .utility_kind = UtilityKind::marginal_kl,
      .model = ModelKind::main,
      .costs = {},
  };
  scn.observations = {
      {"=4", uniform_obs(dom, 4, 4), 1.0},    {"u_3_5", uniform_obs(dom, 3, 5), 4.0},
      {"u_2_6", uniform_obs(dom, 2, 6), 16.0}, {"u_1_7", uniform_obs(dom, 1, 7), 64.0},
      {"u_0_8", uniform_obs(dom, 0, 8), 256.0}, {"p_3_5", binomial_peaked(dom, 3, 5), 1.0},
      {"p_2_6", binomial_peaked(dom, 2, 6), 4.0}, {"p_1_7", binomial_peaked(dom, 1, 7), 16.0},
      {"p_0_8", binomial_peaked(dom, 0, 8), 64.0},
  };
  return scn;
}

namespace detail {

inline const char* to_label(UtilityKind k) {
  return k == UtilityKind::marginal_kl ? "marginal_kl" : "joint_standard";
}

inline const char* to_label(ModelKind m) {
  switch (m) {
    case ModelKind::main: return "main";
    case ModelKind::lu: return "lu";
    case ModelKind::lu_marginal_utility: return "lu_marginal_utility";
    case ModelKind::alt_listener: return "alt_listener";
  }
  return "main";
}

inline UtilityKind utility_kind_from(const std::string& s, const std::string& field) {
  if (s == "marginal_kl") return UtilityKind::marginal_kl;
  if (s == "joint_standard") return UtilityKind::joint_standard;
  throw config_error(ConfigCode::schema_violation, field, "unknown utility_kind '" + s + "'");
}

inline ModelKind model_kind_from(const std::string& s, const std::string& field) {
  if (s == "main") return ModelKind::main;
  if (s == "lu") return ModelKind::lu;
  if (s == "lu_marginal_utility") return ModelKind::lu_marginal_utility;
  if (s == "alt_listener") return ModelKind::alt_listener;
  throw config_error(ConfigCode::schema_violation, field, "unknown model '" + s + "'");
}

template <class T>
T require_field(const nlohmann::json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) {
    throw config_error(ConfigCode::schema_violation, where + key, "missing required field");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw config_error(ConfigCode::schema_violation, where + key, e.what());
  }
}

// Explicit mass vectors are taken verbatim when they already sum to 1, so a
// save/load cycle preserves every bit; anything else is treated as weights.
inline Pmf pmf_from_mass(FiniteDomain domain, std::vector<double> mass) {
  double total = 0.0;
  for (double v : mass) {
    if (v < 0.0) throw invalid_distribution("negative probability mass");
    total += v;
  }
  if (std::abs(total - 1.0) <= 1e-9) return Pmf(domain, std::move(mass));
  return normalize(domain, std::move(mass));
}

}  // namespace detail

// Checks every scenario invariant; throws config_error with a field path.
inline void validate_scenario(const Scenario& scn) {
  if (scn.domain.lo > scn.domain.hi) {
    throw config_error(ConfigCode::schema_violation, "domain", "lo must not exceed hi");
  }
  if (scn.observations.empty()) {
    throw config_error(ConfigCode::schema_violation, "observations", "at least one observation required");
  }
  std::map<std::string, int> seen;
  for (std::size_t i = 0; i < scn.observations.size(); ++i) {
    const std::string where = "observations[" + std::to_string(i) + "]";
    const Observation& o = scn.observations[i];
    if (o.label.empty()) throw config_error(ConfigCode::schema_violation, where + ".label", "empty label");
    if (o.label.find_first_of(",\"\n") != std::string::npos) {
      throw config_error(ConfigCode::schema_violation, where + ".label",
                         "label must not contain commas, quotes or newlines");
    }
    if (++seen[o.label] > 1) {
      throw config_error(ConfigCode::schema_violation, where + ".label", "duplicate label '" + o.label + "'");
    }
    if (!(o.weight > 0.0)) {
      throw config_error(ConfigCode::invalid_pmf, where + ".weight", "weight must be positive");
    }
    if (o.conditional.domain() != scn.domain) {
      throw config_error(ConfigCode::invalid_pmf, where + ".mass", "conditional domain mismatch");
    }
  }
  if (scn.messages.empty()) {
    throw config_error(ConfigCode::schema_violation, "messages", "at least one message required");
  }
  for (std::size_t i = 0; i < scn.messages.size(); ++i) {
    const std::string where = "messages[" + std::to_string(i) + "]";
    const Message& m = scn.messages[i];
    if (const auto* b = std::get_if<Between>(&m)) {
      if (!scn.domain.contains(b->lo) || !scn.domain.contains(b->hi)) {
        throw config_error(ConfigCode::message_out_of_domain, where,
                           "'" + to_string(m) + "' references values outside the domain");
      }
    } else if (!scn.domain.contains(std::get<Around>(m).center)) {
      throw config_error(ConfigCode::message_out_of_domain, where,
                         "'" + to_string(m) + "' references values outside the domain");
    }
  }
  if (scn.radius_prior.domain().lo != 0) {
    throw config_error(ConfigCode::invalid_pmf, "radius_prior", "radius values must start at 0");
  }
  if (!(scn.lambda > 0.0)) {
    throw config_error(ConfigCode::invalid_lambda, "lambda", "temperature must be positive");
  }
  if (scn.depth < 1 || scn.depth > max_recursion_depth) {
    throw config_error(ConfigCode::schema_violation, "depth",
                       "depth must be in 1.." + std::to_string(max_recursion_depth));
  }
  if (!scn.costs.empty()) {
    if (scn.costs.size() != scn.messages.size()) {
      throw config_error(ConfigCode::schema_violation, "costs", "one cost per message required");
    }
    for (double c : scn.costs) {
      if (!(c >= 0.0)) throw config_error(ConfigCode::schema_violation, "costs", "costs must be >= 0");
    }
  }
}

// Reads a scenario document. Observation kinds: "uniform" and "binomial"
// take bounds a, b; "explicit" takes a full mass vector. The radius prior is
// "uniform" with y_max, "explicit" with a mass vector, or omitted, in which
// case it is uniform up to the largest radius that keeps every
// around-message inside the domain.
inline Scenario load_scenario(const nlohmann::json& doc) {
  using detail::require_field;
  if (!doc.is_object()) {
    throw config_error(ConfigCode::schema_violation, "$", "scenario document must be an object");
  }
  Scenario scn;
  const nlohmann::json dom_j = require_field<nlohmann::json>(doc, "domain", "");
  scn.domain.lo = require_field<int>(dom_j, "lo", "domain.");
  scn.domain.hi = require_field<int>(dom_j, "hi", "domain.");
  if (scn.domain.lo > scn.domain.hi) {
    throw config_error(ConfigCode::schema_violation, "domain", "lo must not exceed hi");
  }

  const auto obs_j = require_field<std::vector<nlohmann::json>>(doc, "observations", "");
  for (std::size_t i = 0; i < obs_j.size(); ++i) {
    const std::string where = "observations[" + std::to_string(i) + "].";
    const nlohmann::json& oj = obs_j[i];
    Observation o{require_field<std::string>(oj, "label", where), uniform_pmf(scn.domain),
                  require_field<double>(oj, "weight", where)};
    const auto kind = require_field<std::string>(oj, "kind", where);
    try {
      if (kind == "uniform") {
        o.conditional = uniform_obs(scn.domain, require_field<int>(oj, "a", where),
                                    require_field<int>(oj, "b", where));
      } else if (kind == "binomial") {
        o.conditional = binomial_peaked(scn.domain, require_field<int>(oj, "a", where),
                                        require_field<int>(oj, "b", where));
      } else if (kind == "explicit") {
        o.conditional =
            detail::pmf_from_mass(scn.domain, require_field<std::vector<double>>(oj, "mass", where));
      } else {
        throw config_error(ConfigCode::schema_violation, where + "kind",
                           "unknown observation kind '" + kind + "'");
      }
    } catch (const config_error&) {
      throw;
    } catch (const error& e) {
      throw config_error(ConfigCode::invalid_pmf, where + "mass", e.what());
    }
    scn.observations.push_back(std::move(o));
  }

  const auto msg_j = require_field<std::vector<std::string>>(doc, "messages", "");
  for (std::size_t i = 0; i < msg_j.size(); ++i) {
    try {
      scn.messages.push_back(parse_message(msg_j[i]));
    } catch (const parse_error& e) {
      throw config_error(ConfigCode::schema_violation, "messages[" + std::to_string(i) + "]", e.what());
    }
  }

  if (doc.contains("radius_prior")) {
    const nlohmann::json& rj = doc.at("radius_prior");
    const auto kind = require_field<std::string>(rj, "kind", "radius_prior.");
    try {
      if (kind == "uniform") {
        scn.radius_prior = uniform_radius_prior(require_field<int>(rj, "y_max", "radius_prior."));
      } else if (kind == "explicit") {
        auto mass = require_field<std::vector<double>>(rj, "mass", "radius_prior.");
        const FiniteDomain radius_domain{0, static_cast<int>(mass.size()) - 1};
        scn.radius_prior = detail::pmf_from_mass(radius_domain, std::move(mass));
      } else {
        throw config_error(ConfigCode::schema_violation, "radius_prior.kind",
                           "unknown radius prior kind '" + kind + "'");
      }
    } catch (const config_error&) {
      throw;
    } catch (const error& e) {
      throw config_error(ConfigCode::invalid_pmf, "radius_prior", e.what());
    }
  } else {
    int y_max = 0;
    bool have_around = false;
    for (const Message& m : scn.messages) {
      if (const auto* a = std::get_if<Around>(&m)) {
        if (!scn.domain.contains(a->center)) {
          throw config_error(ConfigCode::message_out_of_domain, "messages",
                             "'" + to_string(m) + "' references values outside the domain");
        }
        const int r = default_max_radius(a->center, scn.domain);
        y_max = have_around ? std::min(y_max, r) : r;
        have_around = true;
      }
    }
    scn.radius_prior = uniform_radius_prior(y_max);
  }

  scn.lambda = require_field<double>(doc, "lambda", "");
  scn.depth = doc.contains("depth") ? require_field<int>(doc, "depth", "") : 5;
  scn.utility_kind =
      doc.contains("utility_kind")
          ? detail::utility_kind_from(require_field<std::string>(doc, "utility_kind", ""), "utility_kind")
          : UtilityKind::marginal_kl;
  scn.model = doc.contains("model")
                  ? detail::model_kind_from(require_field<std::string>(doc, "model", ""), "model")
                  : ModelKind::main;

  if (doc.contains("costs")) {
    const auto costs = require_field<std::map<std::string, double>>(doc, "costs", "");
    scn.costs.assign(scn.messages.size(), 0.0);
    for (const auto& [text, value] : costs) {
      const Message m = parse_message(text);
      bool found = false;
      for (std::size_t i = 0; i < scn.messages.size(); ++i) {
        if (scn.messages[i] == m) {
          scn.costs[i] = value;
          found = true;
        }
      }
      if (!found) {
        throw config_error(ConfigCode::schema_violation, "costs",
                           "cost given for unknown message '" + text + "'");
      }
    }
    if (std::all_of(scn.costs.begin(), scn.costs.end(), [](double c) { return c == 0.0; })) {
      scn.costs.clear();
    }
  }

  validate_scenario(scn);
  return scn;
}

inline Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error(ConfigCode::schema_violation, "$", "cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error(ConfigCode::schema_violation, "$", e.what());
  }
  return load_scenario(doc);
}

// Canonical serialization. Observation conditionals are written as explicit
// mass vectors so that a save/load round trip is exact.
inline nlohmann::json scenario_to_json(const Scenario& scn) {
  nlohmann::json doc;
  doc["domain"] = {{"lo", scn.domain.lo}, {"hi", scn.domain.hi}};
  doc["observations"] = nlohmann::json::array();
  for (const Observation& o : scn.observations) {
    doc["observations"].push_back({{"label", o.label},
                                   {"kind", "explicit"},
                                   {"mass", std::vector<double>(o.conditional.mass().begin(),
                                                                o.conditional.mass().end())},
                                   {"weight", o.weight}});
  }
  doc["messages"] = nlohmann::json::array();
  for (const Message& m : scn.messages) doc["messages"].push_back(to_string(m));
  doc["radius_prior"] = {{"kind", "explicit"},
                         {"mass", std::vector<double>(scn.radius_prior.mass().begin(),
                                                      scn.radius_prior.mass().end())}};
  doc["lambda"] = scn.lambda;
  doc["depth"] = scn.depth;
  doc["utility_kind"] = detail::to_label(scn.utility_kind);
  doc["model"] = detail::to_label(scn.model);
  if (!scn.costs.empty()) {
    nlohmann::json costs = nlohmann::json::object();
    for (std::size_t i = 0; i < scn.messages.size(); ++i) {
      if (scn.costs[i] != 0.0) costs[to_string(scn.messages[i])] = scn.costs[i];
    }
    if (!costs.empty()) doc["costs"] = costs;
  }
  return doc;
}

}  // namespace vague
