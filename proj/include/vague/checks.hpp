// Seeded property sweeps behind the `check` command and the acceptance
// suite. The engine itself has no randomness; every sweep derives its inputs
// from an explicit seed and reports worst-case margins.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vague/lu.hpp"
#include "vague/prob.hpp"
#include "vague/rsa.hpp"
#include "vague/scenario.hpp"
#include "vague/semantics.hpp"
#include "vague/variants.hpp"

namespace vague::checks {

// Deterministic generator; mapping from raw 64-bit draws is spelled out here
// so results do not depend on the standard library's distribution code.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double real01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Full-support random pmf; entries bounded away from zero.
  Pmf positive_pmf(FiniteDomain domain) {
    std::vector<double> w(domain.size());
    for (double& v : w) v = 0.05 + real01();
    return normalize(domain, std::move(w));
  }

 private:
  std::mt19937_64 gen_;
};

struct RatioSweepResult {
  int trials = 0;
  long long pairs_checked = 0;
  long long strict_failures = 0;
  double min_margin = std::numeric_limits<double>::infinity();  // min posterior/prior ratio quotient - 1
  double max_between_deviation = 0.0;                           // control: |posterior - prior| ratio gap
  bool pass = false;
};

// Random full-support world and radius priors; every admissible
// (near, far) pair on both sides of the center must satisfy the strict ratio
// inequality, and a between-message control must leave ratios unchanged.
inline RatioSweepResult ratio_sweep(int trials, std::uint64_t seed) {
  Rng rng(seed);
  RatioSweepResult result;
  result.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const int size = rng.uniform_int(3, 12);
    const FiniteDomain dom{0, size - 1};
    const Pmf x_prior = rng.positive_pmf(dom);
    const int n = rng.uniform_int(0, size - 1);
    const int y_max = rng.uniform_int(1, size - 1);
    const Pmf radius_prior = rng.positive_pmf(FiniteDomain{0, y_max});

    for (int d1 = 0; d1 < y_max; ++d1) {
      for (int d2 = d1 + 1; d2 <= y_max; ++d2) {
        for (const int sign : {-1, +1}) {
          const int near_value = n - sign * d1;
          const int far_value = n - sign * d2;
          if (!dom.contains(near_value) || !dom.contains(far_value)) continue;
          if (near_value == far_value) continue;
          const RatioReport r =
              ratio_inequality_report(x_prior, radius_prior, n, near_value, far_value);
          ++result.pairs_checked;
          if (!r.preconditions_met || !r.strict_holds) ++result.strict_failures;
          result.min_margin = std::min(result.min_margin, r.posterior_ratio / r.prior_ratio - 1.0);

          const int a = std::min(near_value, far_value);
          const int b = std::max(near_value, far_value);
          const RatioReport ctl = between_ratio_report(x_prior, a, b, near_value, far_value);
          const double dev = std::abs(ctl.posterior_ratio - ctl.prior_ratio) /
                             std::max(1.0, std::abs(ctl.prior_ratio));
          result.max_between_deviation = std::max(result.max_between_deviation, dev);
        }
      }
    }
  }
  result.pass = result.strict_failures == 0 && result.max_between_deviation <= 1e-12;
  return result;
}

struct MixtureSweepResult {
  int trials = 0;
  double worst_deviation = 0.0;
  bool pass = false;
};

// Posterior-mixture identity on random full-support instances.
inline MixtureSweepResult mixture_sweep(int trials, std::uint64_t seed, double tol = 1e-12) {
  Rng rng(seed);
  MixtureSweepResult result;
  result.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const int size = rng.uniform_int(2, 14);
    const FiniteDomain dom{0, size - 1};
    const Pmf x_prior = rng.positive_pmf(dom);
    const int n = rng.uniform_int(0, size - 1);
    const int y_max = rng.uniform_int(0, size);
    std::vector<double> w(y_max + 1);
    for (double& v : w) v = rng.real01() < 0.25 ? 0.0 : 0.05 + rng.real01();
    w[rng.uniform_int(0, y_max)] += 0.5;  // keep at least one radius possible
    const Pmf radius_prior = normalize(FiniteDomain{0, y_max}, std::move(w));
    const MixtureReport rep = posterior_mixture_check(n, x_prior, radius_prior, tol);
    result.worst_deviation = std::max(result.worst_deviation, rep.max_abs_deviation);
  }
  result.pass = result.worst_deviation <= tol;
  return result;
}

inline std::vector<std::pair<std::string, std::string>> equal_support_pairs() {
  return {{"u_3_5", "p_3_5"}, {"u_2_6", "p_2_6"}, {"u_1_7", "p_1_7"}, {"u_0_8", "p_0_8"}};
}

struct LuSupportResult {
  struct Case {
    double lambda = 0.0;
    bool with_costs = false;
    double worst_gap = 0.0;
  };
  std::vector<Case> cases;
  double worst_gap = 0.0;
  double main_s1_gap = 0.0;  // main model contrast: u_1_7 vs p_1_7 rows of S1
  bool pass = false;
};

// Support-limitation theorem on the reference scenario: equal-support pairs
// must get identical LU speaker rows (tolerance tol) across temperatures and
// with a nonzero cost function, while the main model's S1 rows for
// u_1_7 / p_1_7 must differ.
inline LuSupportResult lu_support_check(double tol = 1e-9) {
  LuSupportResult result;
  Scenario scn = reference_scenario();
  scn.model = ModelKind::lu;
  const auto pairs = equal_support_pairs();
  for (const double lambda : {1.0, 10.0, 100.0}) {
    for (const bool with_costs : {false, true}) {
      Scenario s = scn;
      s.lambda = lambda;
      if (with_costs) {
        s.costs.assign(s.messages.size(), 0.0);
        for (std::size_t i = 0; i < s.costs.size(); ++i) s.costs[i] = 0.1 * static_cast<double>(i);
      }
      const lu::Trace trace = lu::run_lu(s, s.depth);
      const auto report = lu::support_theorem_check(s, trace, pairs, tol);
      result.cases.push_back({lambda, with_costs, report.worst_gap});
      result.worst_gap = std::max(result.worst_gap, report.worst_gap);
    }
  }
  const Scenario main_scn = reference_scenario();
  const rsa::RecursionTrace main_trace = rsa::run_recursion(main_scn, 1);
  const rsa::SpeakerMatrix& s1 = main_trace.speakers[0];
  std::size_t around_col = 0;
  for (std::size_t mi = 0; mi < main_scn.messages.size(); ++mi) {
    if (std::holds_alternative<Around>(main_scn.messages[mi])) around_col = mi;
  }
  result.main_s1_gap = std::abs(s1.at(s1.observation_index("u_1_7"), around_col) -
                                s1.at(s1.observation_index("p_1_7"), around_col));
  result.pass = result.worst_gap <= tol && result.main_s1_gap >= 0.4;
  return result;
}

struct VariantDivergenceResult {
  struct Entry {
    std::string obs1, obs2;
    int level = 0;
    double max_gap = 0.0;
  };
  std::vector<Entry> entries;
  double worst_gap = 0.0;
};

// How far equal-support pairs drift apart under the marginal-utility LU
// variant. Gap magnitudes are reported, not asserted against any reference.
inline VariantDivergenceResult lu_variant_divergence(double lambda = 100.0) {
  Scenario scn = reference_scenario();
  scn.model = ModelKind::lu_marginal_utility;
  scn.lambda = lambda;
  const lu::Trace trace = lu::run_lu(scn, scn.depth);
  const auto report = lu::support_theorem_check(scn, trace, equal_support_pairs(), 1e-9);
  VariantDivergenceResult out;
  for (const auto& e : report.entries) {
    out.entries.push_back({e.obs1, e.obs2, e.level, e.max_gap});
    out.worst_gap = std::max(out.worst_gap, e.max_gap);
  }
  return out;
}

}  // namespace vague::checks
