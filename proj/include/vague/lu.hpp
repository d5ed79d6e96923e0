// The lexical-uncertainty (LU) recursion, in two flavours.
//
// Here the literal listener is relativized to a fixed interpretation: a
// radius i turns "around n" into the sharp interval [n-i, n+i], and every
// other message ignores i. Level-1 speakers are relativized the same way;
// interpretation uncertainty is resolved by the level-1 listener, which
// mixes S1(m|o,i) under the interpretation prior, and never reappears above.
//
//   standard:          U(m|o) scores the listener's joint (x, o) cell
//                      (the usual RSA utility).
//   marginal_utility:  U(m|o) scores the listener's x-marginal instead.
//
// Under the standard utility, speaker rows for equal-support observations
// are provably identical at every level. Speaker matrices are computed from
// the exact per-message decomposition of the utilities (the observation-only
// term cannot shift a SoftMax row), so that identity survives in floating
// point verbatim; utility_level1 keeps the generic expected-log form for
// reporting and for checks that need actual utility values.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "vague/prob.hpp"
#include "vague/rsa.hpp"
#include "vague/scenario.hpp"
#include "vague/semantics.hpp"

namespace vague::lu {

enum class Variant { standard, marginal_utility };

inline Variant variant_of(const Scenario& scn) {
  return scn.model == ModelKind::lu_marginal_utility ? Variant::marginal_utility : Variant::standard;
}

// Levels 1..depth of one LU run. Level 1 is per interpretation; levels >= 2
// are interpretation-free.
struct Trace {
  std::vector<Message> messages;
  std::vector<std::string> observations;
  std::vector<int> radii;                                // interpretation radius values
  std::vector<rsa::ListenerTable> literal_per_radius;    // L0(. | m, i)
  std::vector<rsa::SpeakerMatrix> s1_per_radius;         // S1(m | o, i)
  rsa::SpeakerMatrix s1_mixture;                         // sum_i P(i) S1(m | o, i)
  std::vector<rsa::SpeakerMatrix> speakers;              // S2 .. S_depth
  std::vector<rsa::ListenerTable> listeners;             // L1 .. L_depth

  int depth() const { return static_cast<int>(listeners.size()); }

  // Speaker matrix at a marginal level (>= 2).
  const rsa::SpeakerMatrix& speaker_at(int level) const {
    if (level < 2 || level > depth()) throw error("no marginal speaker at level " + std::to_string(level));
    return speakers[static_cast<std::size_t>(level - 2)];
  }
};

class Model {
 public:
  explicit Model(Scenario scn)
      : scn_(validated(std::move(scn))), prior_(build_joint_prior(scn_)),
        prior_x_(prior_.x_marginal()), variant_(variant_of(scn_)) {
    for (const Observation& o : scn_.observations) supports_.push_back(o.conditional.support());
  }

  Model(Scenario scn, Variant variant) : Model(set_variant(std::move(scn), variant)) {}

  const Scenario& scenario() const { return scn_; }
  const JointPmf& prior() const { return prior_; }
  Variant variant() const { return variant_; }

  std::size_t message_count() const { return scn_.messages.size(); }
  std::size_t observation_count() const { return scn_.observations.size(); }
  int max_radius() const { return scn_.radius_prior.domain().hi; }

  // Truth of "m never excludes a world the speaker considers possible",
  // relative to one interpretation.
  bool respects_quality(std::size_t msg, std::size_t obs, int radius) const {
    const auto ext = extension(scn_.messages[msg], radius, scn_.domain);
    for (int w : supports_[obs]) {
      if (std::find(ext.begin(), ext.end(), w) == ext.end()) return false;
    }
    return true;
  }

  // Quality under at least one positively weighted interpretation.
  bool respects_weak_quality(std::size_t msg, std::size_t obs) const {
    for (std::size_t ri = 0; ri < scn_.radius_prior.size(); ++ri) {
      if (scn_.radius_prior.at_index(ri) > 0.0 &&
          respects_quality(msg, obs, scn_.radius_prior.domain().value_at(ri))) {
        return true;
      }
    }
    return false;
  }

  // Interpretation-relative literal listener: the joint prior conditioned on
  // the extension. Undefined when the extension carries no prior mass.
  std::optional<JointPmf> literal(std::size_t msg, int radius) const {
    const auto ext = extension(scn_.messages[msg], radius, scn_.domain);
    const std::size_t n_obs = prior_.observation_count();
    std::vector<double> cells(static_cast<std::size_t>(scn_.domain.size()) * n_obs, 0.0);
    double total = 0.0;
    for (int v : ext) {
      for (std::size_t o = 0; o < n_obs; ++o) {
        const double c = prior_.cell(v, o);
        cells[scn_.domain.index_of(v) * n_obs + o] = c;
        total += c;
      }
    }
    if (!(total > 0.0)) return std::nullopt;
    for (double& c : cells) c /= total;
    return JointPmf(scn_.domain, prior_.observations(), std::move(cells));
  }

  // Level-1 utility in its generic expected-log form (standard scores the
  // joint cell, marginal_utility the x-marginal), minus the message cost.
  Utility utility_level1(std::size_t msg, std::size_t obs, int radius) const {
    const auto lit = literal(msg, radius);
    if (!lit) return neg_infinity;
    const Pmf marginal = lit->x_marginal();
    const Pmf& po = scn_.observations[obs].conditional;
    double sum = 0.0;
    for (std::size_t xi = 0; xi < po.size(); ++xi) {
      const double p = po.at_index(xi);
      if (p <= 0.0) continue;
      const double cell = variant_ == Variant::standard
                              ? lit->cell(scn_.domain.value_at(xi), obs)
                              : marginal.at_index(xi);
      if (cell <= 0.0) return neg_infinity;
      sum += p * std::log(cell);
    }
    return sum - scn_.cost_of(msg);
  }

  // S1(. | o, i): SoftMax over the per-message part of the level-1 utility,
  // -log P(extension) - c(m) for Quality-respecting messages. Identical for
  // both variants.
  Pmf speaker1_row(std::size_t obs, int radius) const {
    std::vector<Utility> u(message_count(), neg_infinity);
    for (std::size_t mi = 0; mi < message_count(); ++mi) {
      if (!respects_quality(mi, obs, radius)) continue;
      const auto ext = extension(scn_.messages[mi], radius, scn_.domain);
      double mass = 0.0;
      for (int v : ext) mass += prior_x_.at(v);
      u[mi] = -std::log(mass) - scn_.cost_of(mi);
    }
    try {
      return softmax(u, scn_.lambda);
    } catch (const impossible_event&) {
      throw impossible_event("observation '" + scn_.observations[obs].label +
                             "' has no admissible message at radius " + std::to_string(radius));
    }
  }

  Trace run(int depth) const;

  // L1 column for one message (interpretations marginalized out).
  std::optional<JointPmf> listener1(std::size_t msg) const { return run(1).listeners[0].joints[msg]; }

 private:
  static Scenario set_variant(Scenario scn, Variant v) {
    scn.model = v == Variant::marginal_utility ? ModelKind::lu_marginal_utility : ModelKind::lu;
    return scn;
  }

  static Scenario validated(Scenario scn) {
    validate_scenario(scn);
    return scn;
  }

  Scenario scn_;
  JointPmf prior_;
  Pmf prior_x_;
  Variant variant_;
  std::vector<std::vector<int>> supports_;
};

inline Trace Model::run(int depth) const {
  if (depth < 1 || depth > max_recursion_depth) {
    throw error("recursion depth must be in 1.." + std::to_string(max_recursion_depth));
  }
  Trace trace;
  trace.messages = scn_.messages;
  for (const Observation& o : scn_.observations) trace.observations.push_back(o.label);
  for (std::size_t ri = 0; ri < scn_.radius_prior.size(); ++ri) {
    trace.radii.push_back(scn_.radius_prior.domain().value_at(ri));
  }

  for (int radius : trace.radii) {
    std::vector<std::optional<JointPmf>> joints;
    for (std::size_t mi = 0; mi < message_count(); ++mi) joints.push_back(literal(mi, radius));
    trace.literal_per_radius.push_back(rsa::ListenerTable::from_joints(trace.messages, std::move(joints)));

    rsa::SpeakerMatrix s{trace.observations, trace.messages, {}};
    for (std::size_t j = 0; j < observation_count(); ++j) s.rows.push_back(speaker1_row(j, radius));
    trace.s1_per_radius.push_back(std::move(s));
  }

  // Effective level-1 choice probabilities: interpretation-prior mixture.
  trace.s1_mixture = rsa::SpeakerMatrix{trace.observations, trace.messages, {}};
  for (std::size_t j = 0; j < observation_count(); ++j) {
    std::vector<double> row(message_count(), 0.0);
    for (std::size_t ri = 0; ri < trace.radii.size(); ++ri) {
      const double py = scn_.radius_prior.at_index(ri);
      for (std::size_t mi = 0; mi < message_count(); ++mi) {
        row[mi] += py * trace.s1_per_radius[ri].rows[j].at_index(mi);
      }
    }
    trace.s1_mixture.rows.emplace_back(FiniteDomain{0, static_cast<int>(message_count()) - 1},
                                       std::move(row));
  }

  trace.listeners.push_back(rsa::listener_level(prior_, trace.s1_mixture));

  const Pmf obs_prior = prior_.obs_marginal();
  const rsa::SpeakerMatrix* effective = &trace.s1_mixture;
  for (int level = 2; level <= depth; ++level) {
    // alpha(m): total usage mass of each message under the effective speaker.
    std::vector<double> alpha(message_count(), 0.0);
    for (std::size_t mi = 0; mi < message_count(); ++mi) {
      for (std::size_t j = 0; j < observation_count(); ++j) {
        alpha[mi] += obs_prior.at_index(j) * effective->at(j, mi);
      }
    }
    const rsa::ListenerTable& prev_listener = trace.listeners.back();
    rsa::SpeakerMatrix s{trace.observations, trace.messages, {}};
    for (std::size_t j = 0; j < observation_count(); ++j) {
      std::vector<Utility> u(message_count(), neg_infinity);
      for (std::size_t mi = 0; mi < message_count(); ++mi) {
        if (variant_ == Variant::standard) {
          const double used = effective->at(j, mi);
          if (used > 0.0 && alpha[mi] > 0.0) {
            u[mi] = std::log(used) - std::log(alpha[mi]) - scn_.cost_of(mi);
          }
        } else {
          if (!prev_listener.x_marginals[mi]) continue;
          const Pmf& lm = *prev_listener.x_marginals[mi];
          const Pmf& po = scn_.observations[j].conditional;
          double sum = 0.0;
          bool ok = true;
          for (std::size_t xi = 0; xi < po.size(); ++xi) {
            const double p = po.at_index(xi);
            if (p <= 0.0) continue;
            if (lm.at_index(xi) <= 0.0) {
              ok = false;
              break;
            }
            sum += p * std::log(lm.at_index(xi));
          }
          if (ok) u[mi] = sum - scn_.cost_of(mi);
        }
      }
      try {
        s.rows.push_back(softmax(u, scn_.lambda));
      } catch (const impossible_event&) {
        throw impossible_event("observation '" + scn_.observations[j].label +
                               "' has no admissible message at level " + std::to_string(level));
      }
    }
    trace.speakers.push_back(std::move(s));
    trace.listeners.push_back(rsa::listener_level(prior_, trace.speakers.back()));
    effective = &trace.speakers.back();
  }
  return trace;
}

inline Trace run_lu(const Scenario& scn, int depth) { return Model(scn).run(depth); }

// Per-pair, per-level row gaps for equal-support observation pairs. Level 1
// reports the largest gap across interpretations.
struct SupportTheoremReport {
  struct Entry {
    std::string obs1, obs2;
    int level = 0;
    double max_gap = 0.0;
  };
  std::vector<Entry> entries;
  double worst_gap = 0.0;
  bool pass = false;
};

inline SupportTheoremReport support_theorem_check(
    const Scenario& scn, const Trace& trace,
    const std::vector<std::pair<std::string, std::string>>& pairs, double tol = 1e-9) {
  SupportTheoremReport report;
  for (const auto& [label1, label2] : pairs) {
    std::size_t i1 = trace.s1_mixture.observation_index(label1);
    std::size_t i2 = trace.s1_mixture.observation_index(label2);
    if (scn.observations[i1].conditional.support() != scn.observations[i2].conditional.support()) {
      throw domain_mismatch("observations '" + label1 + "' and '" + label2 +
                            "' do not have equal supports");
    }
    for (int level = 1; level <= trace.depth(); ++level) {
      double gap = 0.0;
      if (level == 1) {
        for (const rsa::SpeakerMatrix& s : trace.s1_per_radius) {
          gap = std::max(gap, max_abs_diff(s.rows[i1], s.rows[i2]));
        }
      } else {
        const rsa::SpeakerMatrix& s = trace.speaker_at(level);
        gap = max_abs_diff(s.rows[i1], s.rows[i2]);
      }
      report.entries.push_back({label1, label2, level, gap});
      report.worst_gap = std::max(report.worst_gap, gap);
    }
  }
  report.pass = report.worst_gap <= tol;
  return report;
}

}  // namespace vague::lu
