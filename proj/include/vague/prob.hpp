// Exact discrete probability primitives over finite integer domains.
//
// Every distribution is a mass vector over a closed integer range [lo, hi].
// All operations are pure and return new values; nothing here mutates its
// inputs. The scalar type is a template parameter so the same algorithms run
// on doubles and on exact rationals (see rational.hpp).
//
// Conventions:
//   - masses are non-negative and sum to 1 (tolerance 1e-9 for floating
//     point, exact for rationals)
//   - utilities are extended reals: -infinity marks an impossible choice and
//     exponentiates to exactly 0
//   - 0 * log(0) counts as 0 in every expectation

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace vague {

class error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Weights that cannot form a distribution (negative entry, all zero, size
// mismatch, bad domain bounds).
class invalid_distribution : public error {
  using error::error;
};

// A well-formed query with no probability mass behind it (conditioning on a
// null event, softmax with no admissible option).
class impossible_event : public error {
  using error::error;
};

// Two distributions that were expected to share a domain do not.
class domain_mismatch : public error {
  using error::error;
};

using Utility = double;

inline constexpr Utility neg_infinity = -std::numeric_limits<double>::infinity();

// Inclusive integer range of world values.
struct FiniteDomain {
  int lo = 0;
  int hi = 0;

  constexpr int size() const { return hi - lo + 1; }
  constexpr bool contains(int v) const { return v >= lo && v <= hi; }
  constexpr std::size_t index_of(int v) const { return static_cast<std::size_t>(v - lo); }
  constexpr int value_at(std::size_t i) const { return lo + static_cast<int>(i); }

  friend constexpr bool operator==(const FiniteDomain&, const FiniteDomain&) = default;
};

namespace detail {

template <class R>
constexpr bool is_float_scalar = std::is_floating_point_v<R>;

template <class R>
bool sums_to_one(const R& total) {
  if constexpr (is_float_scalar<R>) {
    return std::abs(total - R(1)) <= R(1e-9);
  } else {
    return total == R(1);
  }
}

inline void require_valid_domain(const FiniteDomain& d) {
  if (d.lo > d.hi) {
    throw invalid_distribution("domain bounds out of order: [" + std::to_string(d.lo) + ", " +
                               std::to_string(d.hi) + "]");
  }
}

}  // namespace detail

// Probability mass function over a FiniteDomain. Immutable after
// construction; the constructor enforces non-negativity and unit total mass.
template <class R>
class basic_pmf {
 public:
  basic_pmf(FiniteDomain domain, std::vector<R> mass) : domain_(domain), mass_(std::move(mass)) {
    detail::require_valid_domain(domain_);
    if (mass_.size() != static_cast<std::size_t>(domain_.size())) {
      throw invalid_distribution("mass vector size " + std::to_string(mass_.size()) +
                                 " does not match domain size " + std::to_string(domain_.size()));
    }
    R total(0);
    for (const R& m : mass_) {
      if (m < R(0)) throw invalid_distribution("negative probability mass");
      total += m;
    }
    if (!detail::sums_to_one(total)) {
      throw invalid_distribution("probability mass does not sum to 1");
    }
  }

  const FiniteDomain& domain() const { return domain_; }
  std::size_t size() const { return mass_.size(); }
  std::span<const R> mass() const { return mass_; }

  // Mass at a domain value (not an index).
  const R& at(int value) const {
    if (!domain_.contains(value)) {
      throw domain_mismatch("value " + std::to_string(value) + " outside domain");
    }
    return mass_[domain_.index_of(value)];
  }

  const R& at_index(std::size_t i) const { return mass_[i]; }

  std::vector<int> support() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
      if (mass_[i] > R(0)) out.push_back(domain_.value_at(i));
    }
    return out;
  }

  friend bool operator==(const basic_pmf&, const basic_pmf&) = default;

 private:
  FiniteDomain domain_;
  std::vector<R> mass_;
};

using Pmf = basic_pmf<double>;

// Largest pointwise mass difference; the distributions must share a domain.
template <class R>
R max_abs_diff(const basic_pmf<R>& p, const basic_pmf<R>& q) {
  if (p.domain() != q.domain()) throw domain_mismatch("pmf domains differ");
  R worst(0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    R d = p.at_index(i) - q.at_index(i);
    if (d < R(0)) d = -d;
    if (d > worst) worst = d;
  }
  return worst;
}

// Scale non-negative weights to a distribution. At least one weight must be
// positive.
template <class R>
basic_pmf<R> normalize(FiniteDomain domain, std::vector<R> weights) {
  detail::require_valid_domain(domain);
  if (weights.size() != static_cast<std::size_t>(domain.size())) {
    throw invalid_distribution("weight vector size does not match domain size");
  }
  R total(0);
  for (const R& w : weights) {
    if (w < R(0)) throw invalid_distribution("negative weight");
    total += w;
  }
  if (total <= R(0)) throw invalid_distribution("all weights are zero");
  for (R& w : weights) w /= total;
  return basic_pmf<R>(domain, std::move(weights));
}

// Restrict to an event (a set of domain values) and renormalize. Values
// outside the event get mass 0; the event must carry positive mass.
template <class R>
basic_pmf<R> condition(const basic_pmf<R>& p, std::span<const int> event) {
  std::vector<R> kept(p.size(), R(0));
  R total(0);
  for (int v : event) {
    if (!p.domain().contains(v)) continue;
    const std::size_t i = p.domain().index_of(v);
    kept[i] = p.at_index(i);
    total += kept[i];
  }
  if (total <= R(0)) throw impossible_event("conditioning event has zero probability");
  for (R& m : kept) m /= total;
  return basic_pmf<R>(p.domain(), std::move(kept));
}

template <class R>
basic_pmf<R> condition(const basic_pmf<R>& p, const std::vector<int>& event) {
  return condition(p, std::span<const int>(event));
}

// Uniform distribution on the whole domain.
template <class R = double>
basic_pmf<R> uniform_pmf(FiniteDomain domain) {
  detail::require_valid_domain(domain);
  return basic_pmf<R>(domain, std::vector<R>(domain.size(), R(1) / R(domain.size())));
}

template <class R = double>
basic_pmf<R> point_mass(FiniteDomain domain, int value) {
  detail::require_valid_domain(domain);
  if (!domain.contains(value)) throw domain_mismatch("point mass outside domain");
  std::vector<R> m(domain.size(), R(0));
  m[domain.index_of(value)] = R(1);
  return basic_pmf<R>(domain, std::move(m));
}

// D_KL(p || q) in nats. Terms with p(k) = 0 contribute nothing; +infinity
// as soon as p puts mass where q has none.
inline double kl_divergence(const Pmf& p, const Pmf& q) {
  if (p.domain() != q.domain()) throw domain_mismatch("kl_divergence: pmf domains differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pk = p.at_index(i);
    if (pk <= 0.0) continue;
    const double qk = q.at_index(i);
    if (qk <= 0.0) return std::numeric_limits<double>::infinity();
    sum += pk * std::log(pk / qk);
  }
  return sum;
}

// SoftMax choice rule: entry i proportional to exp(lambda * u[i]), computed
// in log space with max subtraction. -infinity utilities map to exactly 0;
// at least one utility must be finite.
inline Pmf softmax(std::span<const Utility> utilities, double lambda) {
  if (!(lambda > 0.0)) throw invalid_distribution("softmax temperature must be positive");
  if (utilities.empty()) throw invalid_distribution("softmax over empty choice set");
  double best = neg_infinity;
  for (double u : utilities) {
    if (std::isnan(u)) throw invalid_distribution("softmax utility is NaN");
    best = std::max(best, u);
  }
  if (best == neg_infinity) throw impossible_event("softmax: no admissible option");
  std::vector<double> w(utilities.size());
  for (std::size_t i = 0; i < utilities.size(); ++i) {
    w[i] = utilities[i] == neg_infinity ? 0.0 : std::exp(lambda * (utilities[i] - best));
  }
  const FiniteDomain idx{0, static_cast<int>(utilities.size()) - 1};
  return normalize(idx, std::move(w));
}

inline Pmf softmax(const std::vector<Utility>& utilities, double lambda) {
  return softmax(std::span<const Utility>(utilities), lambda);
}

// Joint distribution over (world value x, observation label). Stored row
// major: cell(x, o) at [index_of(x) * n_obs + o].
class JointPmf {
 public:
  JointPmf(FiniteDomain x_domain, std::vector<std::string> observations, std::vector<double> cells)
      : x_domain_(x_domain), observations_(std::move(observations)), cells_(std::move(cells)) {
    detail::require_valid_domain(x_domain_);
    if (observations_.empty()) throw invalid_distribution("joint pmf needs at least one observation");
    if (cells_.size() != static_cast<std::size_t>(x_domain_.size()) * observations_.size()) {
      throw invalid_distribution("joint pmf cell count does not match domain x observations");
    }
    double total = 0.0;
    for (double c : cells_) {
      if (c < 0.0) throw invalid_distribution("negative joint probability mass");
      total += c;
    }
    if (!detail::sums_to_one(total)) throw invalid_distribution("joint mass does not sum to 1");
  }

  // Normalizes arbitrary non-negative cell weights; total must be positive.
  static JointPmf from_weights(FiniteDomain x_domain, std::vector<std::string> observations,
                               std::vector<double> cells) {
    double total = std::accumulate(cells.begin(), cells.end(), 0.0);
    if (!(total > 0.0)) throw impossible_event("joint weights have zero total mass");
    for (double& c : cells) c /= total;
    return JointPmf(x_domain, std::move(observations), std::move(cells));
  }

  const FiniteDomain& x_domain() const { return x_domain_; }
  const std::vector<std::string>& observations() const { return observations_; }
  std::size_t observation_count() const { return observations_.size(); }

  double cell(int x_value, std::size_t obs) const {
    return cells_[x_domain_.index_of(x_value) * observations_.size() + obs];
  }

  std::span<const double> cells() const { return cells_; }

  // Marginal over x (observations summed out).
  Pmf x_marginal() const {
    std::vector<double> m(x_domain_.size(), 0.0);
    for (std::size_t xi = 0; xi < m.size(); ++xi) {
      for (std::size_t o = 0; o < observations_.size(); ++o) {
        m[xi] += cells_[xi * observations_.size() + o];
      }
    }
    return normalize(x_domain_, std::move(m));
  }

  // Marginal over observations, indexed 0..n_obs-1 in label order.
  Pmf obs_marginal() const {
    std::vector<double> m(observations_.size(), 0.0);
    for (std::size_t xi = 0; xi < static_cast<std::size_t>(x_domain_.size()); ++xi) {
      for (std::size_t o = 0; o < observations_.size(); ++o) {
        m[o] += cells_[xi * observations_.size() + o];
      }
    }
    return normalize(FiniteDomain{0, static_cast<int>(observations_.size()) - 1}, std::move(m));
  }

  // Conditional over x given the observation column; the column must carry
  // positive mass.
  Pmf x_given_obs(std::size_t obs) const {
    std::vector<double> m(x_domain_.size());
    for (std::size_t xi = 0; xi < m.size(); ++xi) m[xi] = cells_[xi * observations_.size() + obs];
    const double total = std::accumulate(m.begin(), m.end(), 0.0);
    if (!(total > 0.0)) throw impossible_event("observation column has zero mass");
    for (double& v : m) v /= total;
    return Pmf(x_domain_, std::move(m));
  }

  friend bool operator==(const JointPmf&, const JointPmf&) = default;

 private:
  FiniteDomain x_domain_;
  std::vector<std::string> observations_;
  std::vector<double> cells_;
};

}  // namespace vague
