#include "polygf/ensemble.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <json.hpp>

#include "polygf/desk_limits.hpp"
#include "polygf/setpart.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polygf {

std::string SpeciesDescriptor::repr() const {
  return (shape == Shape::chain ? "chain" : "ring") + std::to_string(length);
}

unsigned EnsembleState::total_atoms() const {
  unsigned n = 0;
  for (const auto& [d, c] : counts) n += d.atoms() * c;
  return n;
}

unsigned EnsembleState::total_bonds() const {
  unsigned n = 0;
  for (const auto& [d, c] : counts) n += d.bonds() * c;
  return n;
}

unsigned EnsembleState::total_species() const {
  unsigned n = 0;
  for (const auto& [d, c] : counts) n += c;
  return n;
}

std::string EnsembleState::repr() const {
  if (counts.empty()) return "empty";
  std::string out;
  for (const auto& [d, c] : counts) {
    if (!out.empty()) out += '+';
    out += std::to_string(c) + "*" + d.repr();
  }
  return out;
}

Rational CanonicalTable::eval(const Rational& y) const {
  Rational total = 0;
  Rational power = 1;
  for (const auto& c : coeffs) {
    total += c * power;
    power *= y;
  }
  return total;
}

std::string CanonicalTable::to_json() const {
  nlohmann::ordered_json j;
  j["N"] = N;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : coeffs) arr.push_back(to_string(c));
  j["coeffs"] = arr;
  return j.dump();
}

BiSeries ensemble_gf(const BiSeries& F) { return exp_series(F); }

double closed_form_Z(SystemKind kind, double x, double y) {
  if (!(x * y < 1))
    throw std::domain_error("xy >= 1: Z diverges outside the physical regime");
  const double u = 1.0 - x * y;
  if (!kind.allows_rings()) return std::exp(x / u);
  // exp(F_l + F_r) with rings below min_ring_size subtracted back out of
  // the -ln(1-xy) tail.
  double small_rings = 0.0;
  double p = 1.0;
  for (unsigned i = 1; i < kind.min_ring_size; ++i) {
    p *= x * y;
    small_rings += p / i;
  }
  return std::exp(x / u - small_rings) / u;
}

void validate_state(SystemKind kind, const EnsembleState& state) {
  for (const auto& [d, c] : state.counts) {
    if (c < 1) throw std::invalid_argument("state counts must be >= 1");
    if (d.length < 1) throw std::invalid_argument("species length must be >= 1");
    if (d.shape == Shape::ring) {
      if (!kind.allows_rings())
        throw std::invalid_argument("ring species in a linear-system state");
      if (d.length < kind.min_ring_size)
        throw std::invalid_argument("ring below the minimum ring size");
    }
  }
}

std::vector<EnsembleState> enumerate_states(SystemKind kind, unsigned N) {
  if (N > limits::state_enumeration_max())
    throw std::invalid_argument("enumerate_states: N beyond desk limit");
  std::vector<EnsembleState> states;

  for_each_integer_partition(N, [&](const std::vector<unsigned>& parts) {
    // Distinct part values with multiplicities, descending.
    std::vector<std::pair<unsigned, unsigned>> groups;
    for (unsigned p : parts) {
      if (!groups.empty() && groups.back().first == p)
        ++groups.back().second;
      else
        groups.emplace_back(p, 1);
    }
    if (!kind.allows_rings()) {
      EnsembleState st;
      for (const auto& [len, mult] : groups)
        st.counts[{Shape::chain, len}] = mult;
      states.push_back(std::move(st));
      return;
    }
    // Each group of equal parts splits into some rings and some chains.
    std::vector<unsigned> ring_counts(groups.size(), 0);
    const std::function<void(unsigned)> assign = [&](unsigned g) {
      if (g == groups.size()) {
        EnsembleState st;
        for (unsigned k = 0; k < groups.size(); ++k) {
          const auto [len, mult] = groups[k];
          const unsigned rings = ring_counts[k];
          if (mult - rings > 0) st.counts[{Shape::chain, len}] = mult - rings;
          if (rings > 0) st.counts[{Shape::ring, len}] = rings;
        }
        states.push_back(std::move(st));
        return;
      }
      const auto [len, mult] = groups[g];
      const unsigned max_rings = len >= kind.min_ring_size ? mult : 0;
      for (unsigned r = 0; r <= max_rings; ++r) {
        ring_counts[g] = r;
        assign(g + 1);
      }
    };
    assign(0);
  });

  std::sort(states.begin(), states.end(),
            [](const EnsembleState& a, const EnsembleState& b) {
              const unsigned ba = a.total_bonds(), bb = b.total_bonds();
              if (ba != bb) return ba < bb;
              return a.repr() < b.repr();
            });
  return states;
}

StateMonomial state_monomial(const EnsembleState& state) {
  StateMonomial m;
  m.coeff = 1;
  for (const auto& [d, c] : state.counts) {
    m.atoms += d.atoms() * c;
    m.bonds += d.bonds() * c;
    if (d.shape == Shape::ring) {
      Rational sym = rat(1, d.length);
      for (unsigned k = 0; k < c; ++k) m.coeff *= sym;
    }
    m.coeff /= Rational(factorial(c));
  }
  return m;
}

namespace {

CanonicalTable make_table(unsigned N, std::vector<Rational> coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  return {N, std::move(coeffs)};
}

}  // namespace

CanonicalTable canonical_table_from_series(const BiSeries& Z, unsigned N) {
  if (N > Z.order_x() || N > Z.order_y())
    throw std::out_of_range("canonical table beyond the series truncation");
  std::vector<Rational> coeffs(N + 1, Rational(0));
  for (unsigned j = 0; j <= N; ++j) coeffs[j] = Z.coeff(N, j);
  return make_table(N, std::move(coeffs));
}

CanonicalTable canonical_Y(SystemKind kind, unsigned N) {
  const BiSeries Z = ensemble_gf(species(kind, N, N));
  return canonical_table_from_series(Z, N);
}

CanonicalTable state_sum_Y(SystemKind kind, unsigned N) {
  std::vector<Rational> coeffs(N + 1, Rational(0));
  for (const auto& st : enumerate_states(kind, N)) {
    const StateMonomial m = state_monomial(st);
    coeffs.at(m.bonds) += m.coeff;
  }
  return make_table(N, std::move(coeffs));
}

namespace {

using Poly = std::vector<Rational>;  // y-polynomial, degree capped at N

Poly poly_mul_capped(const Poly& a, const Poly& b, unsigned cap) {
  Poly r(std::min<std::size_t>(cap + 1, a.size() + b.size() - 1), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < r.size(); ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

void poly_add_into(Poly& into, const Poly& p) {
  if (into.size() < p.size()) into.resize(p.size(), Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i) into[i] += p[i];
}

// w[k] = F^(k)(0) = k! [x^k]F as a y-polynomial.
std::vector<Poly> block_weights(SystemKind kind, unsigned N) {
  std::vector<Poly> w(N + 1);
  for (unsigned k = 1; k <= N; ++k) {
    Poly p(k + 1, Rational(0));
    p[k - 1] = 1;  // chain of k atoms
    if (kind.allows_rings() && k >= kind.min_ring_size)
      p[k] += rat(1, k);  // ring of k atoms
    const Rational kf(factorial(k));
    for (auto& c : p) c *= kf;
    w[k] = std::move(p);
  }
  return w;
}

// Sums prod_B w[|B|] over all set partitions of `mask`, sharing running
// products across partitions with a common prefix of blocks. Each block is
// the one containing the smallest remaining element, so every partition is
// visited exactly once.
void faa_rec(std::uint64_t mask, const Poly& running,
             const std::vector<Poly>& w, unsigned cap, Poly& acc) {
  if (mask == 0) {
    poly_add_into(acc, running);
    return;
  }
  const std::uint64_t low = mask & (~mask + 1);
  const std::uint64_t rest = mask ^ low;
  // Subsets of `rest` joining the lowest element's block.
  std::uint64_t t = rest;
  while (true) {
    const unsigned size = static_cast<unsigned>(std::popcount(t)) + 1;
    faa_rec(rest ^ t, poly_mul_capped(running, w[size], cap), w, cap, acc);
    if (t == 0) break;
    t = (t - 1) & rest;
  }
}

CanonicalTable faa_finish(unsigned N, Poly acc) {
  const Rational inv_nf = Rational(1) / Rational(factorial(N));
  acc.resize(N + 1, Rational(0));
  for (auto& c : acc) c *= inv_nf;
  return make_table(N, std::move(acc));
}

}  // namespace

CanonicalTable faa_di_bruno_Y_serial(SystemKind kind, unsigned N) {
  if (N > limits::faa_di_bruno_max())
    throw std::invalid_argument("faa_di_bruno_Y: N beyond desk limit");
  if (N == 0) return {0, {Rational(1)}};
  const auto w = block_weights(kind, N);
  Poly acc(N + 1, Rational(0));
  for_each_set_partition(N, [&](const std::vector<unsigned>& rgs,
                                unsigned num_blocks) {
    std::vector<unsigned> sizes(num_blocks, 0);
    for (unsigned b : rgs) ++sizes[b];
    Poly prod{Rational(1)};
    for (unsigned b = 0; b < num_blocks; ++b)
      prod = poly_mul_capped(prod, w[sizes[b]], N);
    poly_add_into(acc, prod);
  });
  return faa_finish(N, std::move(acc));
}

CanonicalTable faa_di_bruno_Y(SystemKind kind, unsigned N) {
  if (N > limits::faa_di_bruno_max())
    throw std::invalid_argument("faa_di_bruno_Y: N beyond desk limit");
  if (N == 0) return {0, {Rational(1)}};
  if (N > 64) throw std::invalid_argument("faa_di_bruno_Y: N > 64 unsupported");
  const auto w = block_weights(kind, N);

  // Branch on the block containing element 0, then recurse on the rest.
  const std::uint64_t rest0 =
      N == 1 ? 0 : ((~std::uint64_t{0}) >> (64 - N)) & ~std::uint64_t{1};
  std::vector<std::uint64_t> first_blocks;
  std::uint64_t t = rest0;
  while (true) {
    first_blocks.push_back(t);
    if (t == 0) break;
    t = (t - 1) & rest0;
  }

  int nthreads = 1;
#ifdef _OPENMP
  nthreads = omp_get_max_threads();
#endif
  std::vector<Poly> accs(nthreads, Poly(N + 1, Rational(0)));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::size_t idx = 0; idx < first_blocks.size(); ++idx) {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    const std::uint64_t block_rest = first_blocks[idx];
    const unsigned size = static_cast<unsigned>(std::popcount(block_rest)) + 1;
    faa_rec(rest0 ^ block_rest, w[size], w, N, accs[tid]);
  }

  Poly acc(N + 1, Rational(0));
  for (const auto& a : accs) poly_add_into(acc, a);
  return faa_finish(N, std::move(acc));
}

double grand_probability(SystemKind kind, const EnsembleState& state, double x,
                         double y) {
  validate_state(kind, state);
  if (!(x >= 0) || !(y >= 0) || !(x * y < 1))
    throw std::domain_error("grand probability needs x >= 0, y >= 0, xy < 1");
  const StateMonomial m = state_monomial(state);
  const double weight =
      m.coeff.get_d() * std::pow(x, m.atoms) * std::pow(y, m.bonds);
  return weight / closed_form_Z(kind, x, y);
}

Rational canonical_probability(const EnsembleState& state, const Rational& y,
                               const CanonicalTable& table) {
  const StateMonomial m = state_monomial(state);
  if (m.atoms != table.N)
    throw std::invalid_argument("state has a different atom count than Y_N");
  const Rational norm = table.eval(y);
  if (norm == 0) throw std::domain_error("Y_N(y) = 0: probabilities undefined");
  Rational ypow = 1;
  for (unsigned k = 0; k < m.bonds; ++k) ypow *= y;
  return m.coeff * ypow / norm;
}

Rational canonical_probability(SystemKind kind, const EnsembleState& state,
                               const Rational& y) {
  validate_state(kind, state);
  return canonical_probability(state, y, canonical_Y(kind, state.total_atoms()));
}

CheckReport ensemble_recursion_check(SystemKind kind, unsigned order_x,
                                     unsigned order_y) {
  if (order_x < 2 || order_y < 1)
    throw std::invalid_argument("recursion check needs orders >= (2, 1)");
  CheckReport report;
  const BiSeries F = species(kind, order_x, order_y);
  const BiSeries Z = ensemble_gf(F);
  const BiSeries ex =
      exp_series(BiSeries::monomial(order_x, order_y, 1, 0, 1));

  const auto entry = [&](const std::string& name, const Rational& worst) {
    report.entries.push_back(
        {name, worst == 0,
         "max |discrepancy| = " + to_string(worst)});
  };

  if (!kind.allows_rings()) {
    const BiSeries zf2 = mul(Z, mul(F, F));
    entry("dZ/dy = Z*F^2",
          max_abs_difference(derivative(Z, Var::y), zf2, order_x,
                             order_y - 1));
    entry("Z = e^x + int_y(Z*F^2)",
          max_abs_difference(Z, add(ex, integral(zf2, Var::y)), order_x,
                             order_y));
  } else {
    // Removing a bond hits either a minimum-size ring (leaving a bare
    // chain of n atoms) or anything else (two freed atoms): for min ring
    // size n the identity is dZ/dy = x^n y^(n-1) Z + x^2 dZ/dx, the n = 1
    // case being the familiar xZ + x^2 dZ/dx.
    const unsigned n = kind.min_ring_size;
    if (n > order_x || n - 1 > order_y)
      throw std::invalid_argument("orders too small for the min ring size");
    const BiSeries ring_base = BiSeries::monomial(order_x, order_y, n, n - 1, 1);
    const BiSeries x2 = BiSeries::monomial(order_x, order_y, 2, 0, 1);
    const BiSeries rhs =
        add(mul(ring_base, Z), mul(x2, derivative(Z, Var::x)));
    const std::string base_term =
        n == 1 ? "x" : "x^" + std::to_string(n) + " y^" + std::to_string(n - 1);
    entry("dZ/dy = " + base_term + "*Z + x^2*dZ/dx",
          max_abs_difference(derivative(Z, Var::y), rhs, order_x - 1,
                             order_y - 1));
    entry("Z = e^x + int_y(" + base_term + "*Z + x^2*dZ/dx)",
          max_abs_difference(Z, add(ex, integral(rhs, Var::y)), order_x - 1,
                             order_y));
  }
  return report;
}

}  // namespace polygf
