// Message meanings and the literal listener.
//
// Two message forms exist: "between a and b" denotes the sharp interval
// [a, b], and "around n" denotes an interval [n - y, n + y] whose radius y
// is a random variable for the listener. "exactly k" is "between k and k".
//
// The literal listener updates on truth conditions only. A between-message
// conditions the prior on its interval; an around-message reweights each
// world value k by the prior probability that the radius covers it,
// tail(|n - k|) = sum of the radius prior over i >= |n - k|.

#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vague/prob.hpp"
#include "vague/rational.hpp"

namespace vague {

class parse_error : public error {
  using error::error;
};

struct Between {
  int lo = 0;
  int hi = 0;
  friend constexpr bool operator==(const Between&, const Between&) = default;
};

struct Around {
  int center = 0;
  friend constexpr bool operator==(const Around&, const Around&) = default;
};

using Message = std::variant<Between, Around>;

inline Message between(int a, int b) {
  if (a > b) throw parse_error("between bounds out of order");
  return Between{a, b};
}

inline Message exactly(int k) { return Between{k, k}; }

inline Message around(int n) { return Around{n}; }

inline std::string to_string(const Message& m) {
  if (const auto* b = std::get_if<Between>(&m)) {
    if (b->lo == b->hi) return "exactly " + std::to_string(b->lo);
    return "between " + std::to_string(b->lo) + " and " + std::to_string(b->hi);
  }
  return "around " + std::to_string(std::get<Around>(m).center);
}

// Grammar (case-insensitive, whitespace-separated):
//   "around N" | "between A and B" | "exactly K"
inline Message parse_message(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  std::istringstream in(lower);
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(t);

  const auto as_int = [&](const std::string& t) -> int {
    try {
      std::size_t used = 0;
      const int v = std::stoi(t, &used);
      if (used != t.size()) throw parse_error("");
      return v;
    } catch (const std::exception&) {
      throw parse_error("expected an integer, got '" + t + "' in message '" + std::string(text) + "'");
    }
  };

  if (tok.size() == 2 && tok[0] == "around") return around(as_int(tok[1]));
  if (tok.size() == 2 && tok[0] == "exactly") return exactly(as_int(tok[1]));
  if (tok.size() == 4 && tok[0] == "between" && tok[2] == "and") {
    const int a = as_int(tok[1]);
    const int b = as_int(tok[3]);
    if (a > b) throw parse_error("between bounds out of order in '" + std::string(text) + "'");
    return between(a, b);
  }
  throw parse_error("cannot parse message '" + std::string(text) +
                    "' (expected \"around N\", \"between A and B\" or \"exactly K\")");
}

// Domain values a message covers under a fixed radius. Between ignores the
// radius; Around clamps [n - r, n + r] to the domain. May be empty.
inline std::vector<int> extension(const Message& m, int radius, FiniteDomain domain) {
  int a = 0;
  int b = -1;
  if (const auto* bt = std::get_if<Between>(&m)) {
    a = bt->lo;
    b = bt->hi;
  } else {
    const int n = std::get<Around>(m).center;
    a = n - radius;
    b = n + radius;
  }
  a = std::max(a, domain.lo);
  b = std::min(b, domain.hi);
  std::vector<int> out;
  for (int v = a; v <= b; ++v) out.push_back(v);
  return out;
}

// Largest radius whose interval around n still fits inside the domain.
inline int default_max_radius(int n, FiniteDomain domain) {
  if (!domain.contains(n)) throw domain_mismatch("center outside domain");
  return std::min(n - domain.lo, domain.hi - n);
}

// Uniform radius prior on {0, ..., y_max}.
template <class R = double>
basic_pmf<R> uniform_radius_prior(int y_max) {
  if (y_max < 0) throw invalid_distribution("negative maximum radius");
  return uniform_pmf<R>(FiniteDomain{0, y_max});
}

// P(y >= d) under the radius prior; 0 once d exceeds the prior's range.
template <class R>
R radius_tail(const basic_pmf<R>& radius_prior, int d) {
  R total(0);
  for (std::size_t i = 0; i < radius_prior.size(); ++i) {
    if (radius_prior.domain().value_at(i) >= d) total += radius_prior.at_index(i);
  }
  return total;
}

// Posterior over x after "around n": mass(k) proportional to
// prior(k) * P(y >= |n - k|).
template <class R>
basic_pmf<R> around_posterior(int n, const basic_pmf<R>& x_prior, const basic_pmf<R>& radius_prior) {
  std::vector<R> w(x_prior.size());
  R total(0);
  for (std::size_t i = 0; i < x_prior.size(); ++i) {
    const int k = x_prior.domain().value_at(i);
    w[i] = x_prior.at_index(i) * radius_tail(radius_prior, std::abs(n - k));
    total += w[i];
  }
  if (total <= R(0)) throw impossible_event("around-message incompatible with the entire prior");
  for (R& v : w) v /= total;
  return basic_pmf<R>(x_prior.domain(), std::move(w));
}

// Level-0 listener over the joint (x, o) prior. The message carries
// information about x only, so the reweighting factor is constant across
// observations for a fixed x.
inline JointPmf literal_listener(const Message& m, const JointPmf& prior, const Pmf& radius_prior) {
  const FiniteDomain dom = prior.x_domain();
  const std::size_t n_obs = prior.observation_count();
  std::vector<double> factor(dom.size(), 0.0);
  if (const auto* bt = std::get_if<Between>(&m)) {
    for (int v = std::max(bt->lo, dom.lo); v <= std::min(bt->hi, dom.hi); ++v) {
      factor[dom.index_of(v)] = 1.0;
    }
  } else {
    const int n = std::get<Around>(m).center;
    for (std::size_t i = 0; i < factor.size(); ++i) {
      factor[i] = radius_tail(radius_prior, std::abs(n - dom.value_at(i)));
    }
  }
  std::vector<double> cells(static_cast<std::size_t>(dom.size()) * n_obs);
  double total = 0.0;
  for (std::size_t xi = 0; xi < factor.size(); ++xi) {
    for (std::size_t o = 0; o < n_obs; ++o) {
      const double c = prior.cell(dom.value_at(xi), o) * factor[xi];
      cells[xi * n_obs + o] = c;
      total += c;
    }
  }
  if (!(total > 0.0)) {
    throw impossible_event("message '" + to_string(m) + "' incompatible with the entire prior");
  }
  for (double& c : cells) c /= total;
  return JointPmf(dom, prior.observations(), std::move(cells));
}

// Posterior P(x = k | "around n") for a uniform x-prior on [0, 2n] and a
// uniform radius prior on [0, n]:  (n - |n - k| + 1) / (n + 1)^2.
inline rational closed_form_uniform_around(int n, int k) {
  if (n < 0) throw domain_mismatch("negative center");
  if (k < 0 || k > 2 * n) throw domain_mismatch("value outside [0, 2n]");
  const long long num = n - std::abs(n - k) + 1;
  const long long den = static_cast<long long>(n + 1) * (n + 1);
  return rational(num, den);
}

// Posterior-to-prior ratio comparison between a nearer and a farther value.
struct RatioReport {
  double posterior_ratio = 0.0;
  double prior_ratio = 0.0;
  bool strict_holds = false;        // posterior_ratio > prior_ratio
  bool preconditions_met = false;   // radius mass both between the two distances and beyond the far one
};

// Ratios after "around n" for values near / far (|n - near| < |n - far|).
// Both values need positive prior mass, and the far value must keep positive
// posterior mass for the ratio to exist.
inline RatioReport ratio_inequality_report(const Pmf& x_prior, const Pmf& radius_prior, int n,
                                           int near_value, int far_value) {
  const int d_near = std::abs(n - near_value);
  const int d_far = std::abs(n - far_value);
  if (d_near >= d_far) throw domain_mismatch("near value is not strictly closer to the center");
  if (!(x_prior.at(near_value) > 0.0) || !(x_prior.at(far_value) > 0.0)) {
    throw impossible_event("ratio undefined: zero prior mass at a compared value");
  }
  const Pmf post = around_posterior(n, x_prior, radius_prior);
  if (!(post.at(far_value) > 0.0)) {
    throw impossible_event("ratio undefined: far value has zero posterior mass");
  }
  RatioReport r;
  r.posterior_ratio = post.at(near_value) / post.at(far_value);
  r.prior_ratio = x_prior.at(near_value) / x_prior.at(far_value);
  r.strict_holds = r.posterior_ratio > r.prior_ratio;
  const double mid = radius_tail(radius_prior, d_near) - radius_tail(radius_prior, d_far);
  r.preconditions_met = mid > 0.0 && radius_tail(radius_prior, d_far) > 0.0;
  return r;
}

// Control case: a between-message containing both values rescales uniformly,
// so posterior and prior ratios coincide.
inline RatioReport between_ratio_report(const Pmf& x_prior, int a, int b, int near_value,
                                        int far_value) {
  if (near_value < a || near_value > b || far_value < a || far_value > b) {
    throw domain_mismatch("compared values must lie inside the between-interval");
  }
  if (!(x_prior.at(near_value) > 0.0) || !(x_prior.at(far_value) > 0.0)) {
    throw impossible_event("ratio undefined: zero prior mass at a compared value");
  }
  std::vector<int> event;
  for (int v = a; v <= b; ++v) {
    if (x_prior.domain().contains(v)) event.push_back(v);
  }
  const Pmf post = condition(x_prior, event);
  RatioReport r;
  r.posterior_ratio = post.at(near_value) / post.at(far_value);
  r.prior_ratio = x_prior.at(near_value) / x_prior.at(far_value);
  r.strict_holds = r.posterior_ratio > r.prior_ratio;
  r.preconditions_met = false;
  return r;
}

}  // namespace vague
