// The recursive speaker/listener tower.
//
// Level 0 is the literal listener (Bayesian by default, the alternative
// mixture listener when the scenario selects it). Level n+1 speakers choose
// messages by SoftMax over utilities computed against the level-n listener;
// level n listeners invert the level-n speaker by Bayes' rule over the joint
// (x, o) prior. Radius reasoning happens at level 0 only; higher levels never
// revisit it.
//
// Messages that no observation ever sends produce listener columns with zero
// normalizer. Those columns are kept as explicit "undefined" entries and
// yield -infinity utility at the next speaker level, which keeps the
// recursion total.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vague/prob.hpp"
#include "vague/scenario.hpp"
#include "vague/semantics.hpp"
#include "vague/variants.hpp"

namespace vague::rsa {

// Conditional choice probabilities S(m | o): one row per observation, each a
// distribution over the message list.
struct SpeakerMatrix {
  std::vector<std::string> observations;
  std::vector<Message> messages;
  std::vector<Pmf> rows;

  double at(std::size_t obs, std::size_t msg) const { return rows[obs].at_index(msg); }

  std::size_t observation_index(std::string_view label) const {
    for (std::size_t i = 0; i < observations.size(); ++i) {
      if (observations[i] == label) return i;
    }
    throw error("unknown observation label '" + std::string(label) + "'");
  }
};

// Largest per-entry difference between two matrices of identical shape.
inline double max_matrix_gap(const SpeakerMatrix& a, const SpeakerMatrix& b) {
  if (a.rows.size() != b.rows.size() || a.messages.size() != b.messages.size()) {
    throw domain_mismatch("speaker matrices have different shapes");
  }
  double worst = 0.0;
  for (std::size_t o = 0; o < a.rows.size(); ++o) {
    worst = std::max(worst, max_abs_diff(a.rows[o], b.rows[o]));
  }
  return worst;
}

// Largest per-message difference between two rows of one matrix.
inline double max_row_gap(const SpeakerMatrix& s, std::string_view obs1, std::string_view obs2) {
  return max_abs_diff(s.rows[s.observation_index(obs1)], s.rows[s.observation_index(obs2)]);
}

// Per-message joint posteriors at one listener level. A column is undefined
// when the message has zero evidence (level 0) or is never sent (level >= 1).
struct ListenerTable {
  std::vector<Message> messages;
  std::vector<std::optional<JointPmf>> joints;
  std::vector<std::optional<Pmf>> x_marginals;

  static ListenerTable from_joints(std::vector<Message> messages,
                                   std::vector<std::optional<JointPmf>> joints) {
    ListenerTable t{std::move(messages), std::move(joints), {}};
    t.x_marginals.reserve(t.joints.size());
    for (const auto& j : t.joints) {
      t.x_marginals.push_back(j ? std::optional<Pmf>(j->x_marginal()) : std::nullopt);
    }
    return t;
  }
};

// Levels 0..depth of one run: L0, then (S1, L1) ... (S_depth, L_depth).
struct RecursionTrace {
  ListenerTable literal;
  std::vector<SpeakerMatrix> speakers;
  std::vector<ListenerTable> listeners;
};

// Marginal-KL utility: -D_KL(P(.|o) || listener x-marginal).
inline Utility speaker_utility(const Pmf& obs_conditional, const Pmf& listener_x_marginal) {
  const double kl = kl_divergence(obs_conditional, listener_x_marginal);
  return std::isinf(kl) ? neg_infinity : -kl;
}

// Utility against a listener column; joint_standard scores the expected log
// of the joint cell at the speaker's own observation.
inline Utility speaker_utility(const Pmf& obs_conditional, const JointPmf& listener_joint,
                               std::size_t obs_index, UtilityKind kind) {
  if (kind == UtilityKind::marginal_kl) {
    return speaker_utility(obs_conditional, listener_joint.x_marginal());
  }
  double sum = 0.0;
  for (std::size_t xi = 0; xi < obs_conditional.size(); ++xi) {
    const double p = obs_conditional.at_index(xi);
    if (p <= 0.0) continue;
    const double cell = listener_joint.cell(obs_conditional.domain().value_at(xi), obs_index);
    if (cell <= 0.0) return neg_infinity;
    sum += p * std::log(cell);
  }
  return sum;
}

// One speaker level: SoftMax rows over per-message utilities against the
// previous listener. Undefined listener columns get -infinity utility.
inline SpeakerMatrix speaker_level(const ListenerTable& prev, const std::vector<Observation>& obs,
                                   double lambda, UtilityKind kind) {
  SpeakerMatrix s;
  s.messages = prev.messages;
  s.rows.reserve(obs.size());
  for (const Observation& o : obs) s.observations.push_back(o.label);
  for (std::size_t j = 0; j < obs.size(); ++j) {
    std::vector<Utility> u(prev.messages.size(), neg_infinity);
    for (std::size_t mi = 0; mi < prev.messages.size(); ++mi) {
      if (!prev.joints[mi]) continue;
      if (kind == UtilityKind::marginal_kl) {
        u[mi] = speaker_utility(obs[j].conditional, *prev.x_marginals[mi]);
      } else {
        u[mi] = speaker_utility(obs[j].conditional, *prev.joints[mi], j, kind);
      }
    }
    try {
      s.rows.push_back(softmax(u, lambda));
    } catch (const impossible_event&) {
      throw impossible_event("observation '" + obs[j].label + "' has no admissible message");
    }
  }
  return s;
}

// One listener level: per message, Bayes over the joint prior against the
// speaker's choice probabilities. Zero-normalizer columns become undefined.
inline ListenerTable listener_level(const JointPmf& prior, const SpeakerMatrix& s) {
  const FiniteDomain dom = prior.x_domain();
  const std::size_t n_obs = prior.observation_count();
  std::vector<std::optional<JointPmf>> joints;
  joints.reserve(s.messages.size());
  for (std::size_t mi = 0; mi < s.messages.size(); ++mi) {
    std::vector<double> cells(static_cast<std::size_t>(dom.size()) * n_obs);
    double total = 0.0;
    for (std::size_t xi = 0; xi < static_cast<std::size_t>(dom.size()); ++xi) {
      for (std::size_t o = 0; o < n_obs; ++o) {
        const double c = prior.cell(dom.value_at(xi), o) * s.at(o, mi);
        cells[xi * n_obs + o] = c;
        total += c;
      }
    }
    if (total > 0.0) {
      for (double& c : cells) c /= total;
      joints.emplace_back(JointPmf(dom, prior.observations(), std::move(cells)));
    } else {
      joints.emplace_back(std::nullopt);
    }
  }
  return ListenerTable::from_joints(s.messages, std::move(joints));
}

// Level-0 table for the scenario's literal listener. Messages incompatible
// with the entire prior become undefined columns.
inline ListenerTable literal_table(const Scenario& scn, const JointPmf& prior) {
  std::vector<std::optional<JointPmf>> joints;
  joints.reserve(scn.messages.size());
  for (const Message& m : scn.messages) {
    try {
      if (scn.model == ModelKind::alt_listener) {
        if (const auto* a = std::get_if<Around>(&m)) {
          joints.emplace_back(alt_literal_listener_joint(a->center, prior, scn.radius_prior));
          continue;
        }
      }
      joints.emplace_back(literal_listener(m, prior, scn.radius_prior));
    } catch (const impossible_event&) {
      joints.emplace_back(std::nullopt);
    }
  }
  return ListenerTable::from_joints(scn.messages, std::move(joints));
}

// Runs the full tower to the requested depth. Only the main and
// alt_listener models recurse this way; the lexical-uncertainty models live
// in lu.hpp.
inline RecursionTrace run_recursion(const Scenario& scn, int depth) {
  if (scn.model == ModelKind::lu || scn.model == ModelKind::lu_marginal_utility) {
    throw error("run_recursion does not handle lexical-uncertainty models");
  }
  if (depth < 1 || depth > max_recursion_depth) {
    throw error("recursion depth must be in 1.." + std::to_string(max_recursion_depth));
  }
  const JointPmf prior = build_joint_prior(scn);
  RecursionTrace trace;
  trace.literal = literal_table(scn, prior);
  const ListenerTable* prev = &trace.literal;
  for (int level = 1; level <= depth; ++level) {
    trace.speakers.push_back(speaker_level(*prev, scn.observations, scn.lambda, scn.utility_kind));
    trace.listeners.push_back(listener_level(prior, trace.speakers.back()));
    prev = &trace.listeners.back();
  }
  return trace;
}

inline RecursionTrace run_recursion(const Scenario& scn) { return run_recursion(scn, scn.depth); }

// Max-absolute difference between consecutive speaker matrices, one entry
// per level transition. Needs at least two speaker levels.
inline std::vector<double> convergence_gap(const RecursionTrace& trace) {
  if (trace.speakers.size() < 2) {
    throw error("convergence gap needs at least two speaker levels");
  }
  std::vector<double> gaps;
  gaps.reserve(trace.speakers.size() - 1);
  for (std::size_t i = 0; i + 1 < trace.speakers.size(); ++i) {
    gaps.push_back(max_matrix_gap(trace.speakers[i], trace.speakers[i + 1]));
  }
  return gaps;
}

}  // namespace vague::rsa
