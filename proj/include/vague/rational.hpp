// Exact rational scalar for closed-form checks. The float engine is the
// workhorse; rational mode exists so that algebraic identities can be
// asserted with zero tolerance.

#pragma once

#include <boost/rational.hpp>

#include "vague/prob.hpp"

namespace vague {

using rational = boost::rational<long long>;

using RationalPmf = basic_pmf<rational>;

inline double to_double(const rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline Pmf to_double_pmf(const RationalPmf& p) {
  std::vector<double> m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m[i] = to_double(p.at_index(i));
  return normalize(p.domain(), std::move(m));
}

}  // namespace vague
