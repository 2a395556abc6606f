#include "polygf/permcycles.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "polygf/desk_limits.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polygf {

unsigned CycleType::total() const {
  unsigned n = 0;
  for (const auto& [len, mult] : multiplicities) n += len * mult;
  return n;
}

std::string CycleType::repr() const {
  std::string out;
  for (const auto& [len, mult] : multiplicities) {
    if (!out.empty()) out += ' ';
    out += std::to_string(len) + "^" + std::to_string(mult);
  }
  return out.empty() ? "()" : out;
}

namespace {

CycleType type_of(const std::vector<unsigned>& perm) {
  CycleType type;
  std::vector<bool> seen(perm.size(), false);
  for (unsigned start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    unsigned len = 0, at = start;
    while (!seen[at]) {
      seen[at] = true;
      at = perm[at];
      ++len;
    }
    ++type.multiplicities[len];
  }
  return type;
}

void check_n(unsigned n) {
  if (n > limits::cycle_census_max())
    throw std::invalid_argument("cycle census: n beyond desk limit");
}

}  // namespace

std::map<CycleType, BigInt> cycle_census_serial(unsigned n) {
  check_n(n);
  std::map<CycleType, BigInt> census;
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    census[type_of(perm)] += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return census;
}

std::map<CycleType, BigInt> cycle_census_parallel(unsigned n) {
  check_n(n);
  if (n <= 1) return cycle_census_serial(n);
  // One block per image of element 0; suffix permutations enumerated with
  // next_permutation inside each block.
  std::vector<std::map<CycleType, BigInt>> partial(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int first = 0; first < static_cast<int>(n); ++first) {
    std::vector<unsigned> rest;
    for (unsigned v = 0; v < n; ++v)
      if (v != static_cast<unsigned>(first)) rest.push_back(v);
    std::vector<unsigned> perm(n);
    perm[0] = static_cast<unsigned>(first);
    do {
      std::copy(rest.begin(), rest.end(), perm.begin() + 1);
      partial[first][type_of(perm)] += 1;
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  std::map<CycleType, BigInt> census;
  for (const auto& p : partial)
    for (const auto& [type, count] : p) census[type] += count;
  return census;
}

std::map<CycleType, BigInt> cycle_census(unsigned n) {
#ifdef _OPENMP
  if (n >= 7 && omp_get_max_threads() > 1) return cycle_census_parallel(n);
#endif
  return cycle_census_serial(n);
}

BigInt cycle_type_count_formula(unsigned n, const CycleType& type) {
  BigInt denom = 1;
  for (const auto& [len, mult] : type.multiplicities) {
    BigInt p = 1;
    for (unsigned k = 0; k < mult; ++k) p *= len;
    denom *= p * factorial(mult);
  }
  return factorial(n) / denom;
}

BiSeries geometric_series(unsigned order) {
  BiSeries s(order, 0);
  for (unsigned k = 0; k <= order; ++k) s.set(k, 0, 1);
  return s;
}

BiSeries harmonic_series(unsigned order) {
  BiSeries s(order, 0);
  for (unsigned k = 1; k <= order; ++k) s.set(k, 0, rat(1, k));
  return s;
}

BiSeries exponential_series(unsigned order) {
  BiSeries s(order, 0);
  Rational inv_fact = 1;
  s.set(0, 0, 1);
  for (unsigned k = 1; k <= order; ++k) {
    inv_fact /= Rational(k);
    s.set(k, 0, inv_fact);
  }
  return s;
}

CheckReport check_L_equals_E_of_H(unsigned order) {
  CheckReport report;
  const BiSeries L = geometric_series(order);
  const BiSeries H = harmonic_series(order);

  const Rational d1 = max_abs_difference(exp_series(H), L, order, 0);
  report.entries.push_back({"exp(H) = L", d1 == 0,
                            "max |discrepancy| = " + to_string(d1)});

  std::vector<Rational> exp_coeffs;
  Rational inv_fact = 1;
  exp_coeffs.push_back(1);
  for (unsigned k = 1; k <= order; ++k) {
    inv_fact /= Rational(k);
    exp_coeffs.push_back(inv_fact);
  }
  const Rational d2 = max_abs_difference(compose(exp_coeffs, H), L, order, 0);
  report.entries.push_back({"E(H) = L via compose", d2 == 0,
                            "max |discrepancy| = " + to_string(d2)});
  return report;
}

CheckReport check_H_integral(unsigned order) {
  CheckReport report;
  const BiSeries L = geometric_series(order);
  const BiSeries H = harmonic_series(order);
  const Rational d = max_abs_difference(integral(L, Var::x), H, order, 0);
  report.entries.push_back({"H = int_x L", d == 0,
                            "max |discrepancy| = " + to_string(d)});
  return report;
}

}  // namespace polygf
