#ifndef POLYGF_PERMCYCLES_HPP
#define POLYGF_PERMCYCLES_HPP

#include <map>
#include <string>

#include "polygf/biseries.hpp"
#include "polygf/report.hpp"

namespace polygf {

/// Cycle type of a permutation of n elements: cycle length -> multiplicity,
/// a partition of n.
struct CycleType {
  std::map<unsigned, unsigned> multiplicities;

  unsigned total() const;
  std::string repr() const;  // e.g. "1^2 3^1"

  auto operator<=>(const CycleType&) const = default;
};

/// Decomposes all n! permutations into disjoint cycles and tallies the
/// types. Direct enumeration, not the counting formula, so the formula is
/// genuinely tested against it.
std::map<CycleType, BigInt> cycle_census(unsigned n);
std::map<CycleType, BigInt> cycle_census_serial(unsigned n);
std::map<CycleType, BigInt> cycle_census_parallel(unsigned n);

/// n! / prod_k (k^{m_k} m_k!).
BigInt cycle_type_count_formula(unsigned n, const CycleType& type);

/// Strings are ensembles of rings: exp(sum_{k>=1} x^k/k) = sum_{k>=0} x^k,
/// checked coefficientwise to the given order. Also checks the composition
/// route geometric(H).
CheckReport check_L_equals_E_of_H(unsigned order);

/// H = int_x L at the truncation.
CheckReport check_H_integral(unsigned order);

/// Univariate helpers on the x-only series (order_y = 0).
BiSeries geometric_series(unsigned order);      // L
BiSeries harmonic_series(unsigned order);       // H
BiSeries exponential_series(unsigned order);    // E

}  // namespace polygf

#endif
