// The alternative (non-Bayesian) literal listener, and the posterior-mixture
// identity that separates it from the Bayesian one.
//
// The alternative listener mixes interval-conditioned priors with the PRIOR
// radius weights:
//     P'(x = k | around n) = sum_i P(x = k | x in [n-i, n+i]) * P(y = i)
// The Bayesian listener provably equals the same mixture taken with the
// POSTERIOR radius weights; posterior_mixture_check verifies that identity
// numerically, which makes it a useful cross-check oracle for the Bayesian
// update.

#pragma once

#include <cmath>
#include <vector>

#include "vague/prob.hpp"
#include "vague/semantics.hpp"

namespace vague {

namespace detail {

inline std::vector<int> clamped_interval(int n, int radius, FiniteDomain dom) {
  std::vector<int> out;
  for (int v = std::max(n - radius, dom.lo); v <= std::min(n + radius, dom.hi); ++v) out.push_back(v);
  return out;
}

}  // namespace detail

// Mixture of interval-conditioned priors under the prior radius weights.
// Every radius in the prior's support must select an interval with positive
// prior mass.
inline Pmf alt_literal_listener(int n, const Pmf& x_prior, const Pmf& radius_prior) {
  std::vector<double> acc(x_prior.size(), 0.0);
  for (std::size_t ri = 0; ri < radius_prior.size(); ++ri) {
    const double py = radius_prior.at_index(ri);
    if (py <= 0.0) continue;
    const int radius = radius_prior.domain().value_at(ri);
    const Pmf cond = condition(x_prior, detail::clamped_interval(n, radius, x_prior.domain()));
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += py * cond.at_index(i);
  }
  return Pmf(x_prior.domain(), std::move(acc));
}

// Same mixture applied to a joint (x, o) prior, for use as the level-0
// listener of a full recursion.
inline JointPmf alt_literal_listener_joint(int n, const JointPmf& prior, const Pmf& radius_prior) {
  const FiniteDomain dom = prior.x_domain();
  const std::size_t n_obs = prior.observation_count();
  std::vector<double> acc(static_cast<std::size_t>(dom.size()) * n_obs, 0.0);
  for (std::size_t ri = 0; ri < radius_prior.size(); ++ri) {
    const double py = radius_prior.at_index(ri);
    if (py <= 0.0) continue;
    const int radius = radius_prior.domain().value_at(ri);
    const auto interval = detail::clamped_interval(n, radius, dom);
    double z = 0.0;
    for (int v : interval) {
      for (std::size_t o = 0; o < n_obs; ++o) z += prior.cell(v, o);
    }
    if (!(z > 0.0)) throw impossible_event("interval with zero prior mass at radius " + std::to_string(radius));
    for (int v : interval) {
      for (std::size_t o = 0; o < n_obs; ++o) {
        acc[dom.index_of(v) * n_obs + o] += py * prior.cell(v, o) / z;
      }
    }
  }
  return JointPmf(dom, prior.observations(), std::move(acc));
}

struct MixtureReport {
  double max_abs_deviation = 0.0;
  bool pass = false;
};

// Checks that the Bayesian around-posterior equals the mixture of
// interval-conditioned priors weighted by the POSTERIOR radius distribution.
inline MixtureReport posterior_mixture_check(int n, const Pmf& x_prior, const Pmf& radius_prior,
                                             double tol = 1e-12) {
  const FiniteDomain dom = x_prior.domain();
  // Joint posterior over (x, y) given the around-message, by enumeration.
  std::vector<double> joint(x_prior.size() * radius_prior.size(), 0.0);
  double z = 0.0;
  for (std::size_t xi = 0; xi < x_prior.size(); ++xi) {
    const int k = dom.value_at(xi);
    for (std::size_t ri = 0; ri < radius_prior.size(); ++ri) {
      const int radius = radius_prior.domain().value_at(ri);
      if (std::abs(n - k) <= radius) {
        const double w = x_prior.at_index(xi) * radius_prior.at_index(ri);
        joint[xi * radius_prior.size() + ri] = w;
        z += w;
      }
    }
  }
  if (!(z > 0.0)) throw impossible_event("around-message incompatible with the entire prior");

  std::vector<double> posterior_y(radius_prior.size(), 0.0);
  std::vector<double> bayes_x(x_prior.size(), 0.0);
  for (std::size_t xi = 0; xi < x_prior.size(); ++xi) {
    for (std::size_t ri = 0; ri < radius_prior.size(); ++ri) {
      posterior_y[ri] += joint[xi * radius_prior.size() + ri];
      bayes_x[xi] += joint[xi * radius_prior.size() + ri];
    }
  }
  for (double& v : posterior_y) v /= z;
  for (double& v : bayes_x) v /= z;

  std::vector<double> mixture(x_prior.size(), 0.0);
  for (std::size_t ri = 0; ri < radius_prior.size(); ++ri) {
    if (posterior_y[ri] <= 0.0) continue;
    const int radius = radius_prior.domain().value_at(ri);
    const Pmf cond = condition(x_prior, detail::clamped_interval(n, radius, dom));
    for (std::size_t xi = 0; xi < mixture.size(); ++xi) {
      mixture[xi] += posterior_y[ri] * cond.at_index(xi);
    }
  }

  MixtureReport report;
  for (std::size_t xi = 0; xi < mixture.size(); ++xi) {
    report.max_abs_deviation = std::max(report.max_abs_deviation, std::abs(mixture[xi] - bayes_x[xi]));
  }
  report.pass = report.max_abs_deviation <= tol;
  return report;
}

}  // namespace vague
