// Test-only oracles, kept independent of the library code paths they check.
#ifndef POLYGF_TESTS_ORACLES_HPP
#define POLYGF_TESTS_ORACLES_HPP

#include <functional>
#include <vector>

#include "polygf/biseries.hpp"
#include "polygf/rational.hpp"

namespace oracles {

// Dense schoolbook product; no sparsity, no early breaks.
inline polygf::BiSeries dense_mul(const polygf::BiSeries& a,
                                  const polygf::BiSeries& b) {
  const unsigned ox = std::min(a.order_x(), b.order_x());
  const unsigned oy = std::min(a.order_y(), b.order_y());
  std::vector<std::vector<polygf::Rational>> grid(
      ox + 1, std::vector<polygf::Rational>(oy + 1, polygf::Rational(0)));
  for (unsigned i = 0; i <= ox; ++i)
    for (unsigned j = 0; j <= oy; ++j)
      for (unsigned p = 0; p <= i; ++p)
        for (unsigned q = 0; q <= j; ++q) {
          if (p <= a.order_x() && q <= a.order_y() && i - p <= b.order_x() &&
              j - q <= b.order_y())
            grid[i][j] += a.coeff(p, q) * b.coeff(i - p, j - q);
        }
  polygf::BiSeries r(ox, oy);
  for (unsigned i = 0; i <= ox; ++i)
    for (unsigned j = 0; j <= oy; ++j) r.set(i, j, grid[i][j]);
  return r;
}

// All integer partitions of n, parts descending. Local recursion so series
// tests do not lean on the library's enumerator.
inline void partitions(unsigned n,
                       const std::function<void(const std::vector<unsigned>&)>& fn) {
  std::vector<unsigned> parts;
  const std::function<void(unsigned, unsigned)> rec = [&](unsigned rem,
                                                          unsigned maxp) {
    if (rem == 0) {
      fn(parts);
      return;
    }
    for (unsigned p = std::min(rem, maxp); p >= 1; --p) {
      parts.push_back(p);
      rec(rem - p, p);
      parts.pop_back();
    }
  };
  rec(n, n == 0 ? 1 : n);
}

// Weight of all multisets of chains with `atoms` atoms and `bonds` bonds:
// sum over partitions of prod 1/mult!. A chain of length L has L-1 bonds,
// so bonds = atoms - #parts.
inline polygf::Rational chain_ensemble_weight(unsigned atoms, unsigned bonds) {
  polygf::Rational total = 0;
  partitions(atoms, [&](const std::vector<unsigned>& parts) {
    if (atoms - parts.size() != bonds) return;
    polygf::Rational w = 1;
    unsigned run = 1;
    for (std::size_t k = 1; k <= parts.size(); ++k) {
      if (k < parts.size() && parts[k] == parts[k - 1]) {
        ++run;
      } else {
        w /= polygf::Rational(polygf::factorial(run));
        run = 1;
      }
    }
    total += w;
  });
  return total;
}

// Bisection on a monotone function; independent of the solver under test.
template <typename Fn>
double bisect(Fn&& fn, double lo, double hi, int iterations = 200) {
  for (int k = 0; k < iterations; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (fn(mid) < 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracles

#endif
