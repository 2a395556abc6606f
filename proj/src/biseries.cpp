#include "polygf/biseries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polygf {

namespace {

const Rational kZero = 0;

// Term-count product above which mul() switches to the OpenMP kernel.
constexpr std::size_t kParallelMulWork = 4096;

}  // namespace

BiSeries BiSeries::one(unsigned ox, unsigned oy) {
  return monomial(ox, oy, 0, 0, 1);
}

BiSeries BiSeries::monomial(unsigned ox, unsigned oy, unsigned i, unsigned j,
                            const Rational& c) {
  BiSeries s(ox, oy);
  s.set(i, j, c);
  return s;
}

const Rational& BiSeries::coeff(unsigned i, unsigned j) const {
  if (i > order_x_ || j > order_y_)
    throw std::out_of_range("coefficient query beyond truncation orders");
  const auto it = terms_.find({i, j});
  return it == terms_.end() ? kZero : it->second;
}

void BiSeries::set(unsigned i, unsigned j, Rational c) {
  if (i > order_x_ || j > order_y_)
    throw std::out_of_range("coefficient set beyond truncation orders");
  if (c == 0)
    terms_.erase({i, j});
  else
    terms_[{i, j}] = std::move(c);
}

void BiSeries::accumulate(unsigned i, unsigned j, const Rational& c) {
  if (i > order_x_ || j > order_y_ || c == 0) return;
  auto [it, inserted] = terms_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BiSeries add(const BiSeries& a, const BiSeries& b) {
  BiSeries r(std::min(a.order_x(), b.order_x()),
             std::min(a.order_y(), b.order_y()));
  for (const auto& [k, c] : a.terms()) r.accumulate(k.first, k.second, c);
  for (const auto& [k, c] : b.terms()) r.accumulate(k.first, k.second, c);
  return r;
}

BiSeries sub(const BiSeries& a, const BiSeries& b) {
  return add(a, scale(b, -1));
}

BiSeries scale(const BiSeries& a, const Rational& c) {
  BiSeries r(a.order_x(), a.order_y());
  if (c == 0) return r;
  for (const auto& [k, v] : a.terms()) r.set(k.first, k.second, v * c);
  return r;
}

BiSeries mul_serial(const BiSeries& a, const BiSeries& b) {
  BiSeries r(std::min(a.order_x(), b.order_x()),
             std::min(a.order_y(), b.order_y()));
  for (const auto& [ka, ca] : a.terms()) {
    if (ka.first > r.order_x() || ka.second > r.order_y()) continue;
    for (const auto& [kb, cb] : b.terms()) {
      const unsigned i = ka.first + kb.first;
      const unsigned j = ka.second + kb.second;
      if (i > r.order_x()) break;  // b terms sorted by x exponent
      r.accumulate(i, j, ca * cb);
    }
  }
  return r;
}

BiSeries mul_parallel(const BiSeries& a, const BiSeries& b) {
  const unsigned ox = std::min(a.order_x(), b.order_x());
  const unsigned oy = std::min(a.order_y(), b.order_y());

  struct Term {
    unsigned i, j;
    const Rational* c;
  };
  std::vector<Term> at;
  at.reserve(a.terms().size());
  for (const auto& [k, c] : a.terms())
    if (k.first <= ox && k.second <= oy) at.push_back({k.first, k.second, &c});

  // b's terms bucketed by x exponent so each result row only scans matches.
  std::vector<std::vector<std::pair<unsigned, const Rational*>>> bx(ox + 1);
  for (const auto& [k, c] : b.terms())
    if (k.first <= ox && k.second <= oy) bx[k.first].push_back({k.second, &c});

  // Each thread owns complete result rows; no write sharing.
  std::vector<std::map<unsigned, Rational>> rows(ox + 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i <= static_cast<int>(ox); ++i) {
    auto& row = rows[i];
    for (const auto& ta : at) {
      if (ta.i > static_cast<unsigned>(i)) continue;
      for (const auto& [jb, cb] : bx[i - ta.i]) {
        const unsigned j = ta.j + jb;
        if (j > oy) continue;
        auto [it, inserted] = row.try_emplace(j, *ta.c * *cb);
        if (!inserted) it->second += *ta.c * *cb;
      }
    }
  }

  BiSeries r(ox, oy);
  for (unsigned i = 0; i <= ox; ++i)
    for (auto& [j, c] : rows[i])
      if (c != 0) r.set(i, j, std::move(c));
  return r;
}

BiSeries mul(const BiSeries& a, const BiSeries& b) {
#ifdef _OPENMP
  if (a.terms().size() * b.terms().size() >= kParallelMulWork &&
      omp_get_max_threads() > 1)
    return mul_parallel(a, b);
#endif
  return mul_serial(a, b);
}

BiSeries derivative(const BiSeries& s, Var v) {
  if (v == Var::x) {
    BiSeries r(s.order_x() == 0 ? 0 : s.order_x() - 1, s.order_y());
    for (const auto& [k, c] : s.terms())
      if (k.first >= 1) r.set(k.first - 1, k.second, c * k.first);
    return r;
  }
  BiSeries r(s.order_x(), s.order_y() == 0 ? 0 : s.order_y() - 1);
  for (const auto& [k, c] : s.terms())
    if (k.second >= 1) r.set(k.first, k.second - 1, c * k.second);
  return r;
}

BiSeries integral(const BiSeries& s, Var v) {
  BiSeries r(s.order_x(), s.order_y());
  if (v == Var::x) {
    for (const auto& [k, c] : s.terms())
      if (k.first + 1 <= r.order_x())
        r.set(k.first + 1, k.second, c / Rational(k.first + 1));
  } else {
    for (const auto& [k, c] : s.terms())
      if (k.second + 1 <= r.order_y())
        r.set(k.first, k.second + 1, c / Rational(k.second + 1));
  }
  return r;
}

namespace {

void require_zero_constant(const BiSeries& s, const char* op) {
  if (s.coeff(0, 0) != 0)
    throw std::domain_error(std::string(op) +
                            " requires a zero constant term (formal series "
                            "composition is ill-defined otherwise)");
}

}  // namespace

BiSeries exp_series(const BiSeries& s) {
  require_zero_constant(s, "exp");
  BiSeries r = BiSeries::one(s.order_x(), s.order_y());
  BiSeries power = r;
  Rational inv_fact = 1;
  // Every term of s has total degree >= 1, so s^k dies past ox + oy.
  const unsigned kmax = s.order_x() + s.order_y();
  for (unsigned k = 1; k <= kmax; ++k) {
    power = mul(power, s);
    if (power.is_zero()) break;
    inv_fact /= Rational(k);
    r = add(r, scale(power, inv_fact));
  }
  return r;
}

BiSeries neg_log_one_minus(const BiSeries& s) {
  require_zero_constant(s, "neg_log_one_minus");
  BiSeries r = BiSeries::zero(s.order_x(), s.order_y());
  BiSeries power = BiSeries::one(s.order_x(), s.order_y());
  const unsigned kmax = s.order_x() + s.order_y();
  for (unsigned k = 1; k <= kmax; ++k) {
    power = mul(power, s);
    if (power.is_zero()) break;
    r = add(r, scale(power, rat(1, k)));
  }
  return r;
}

BiSeries compose(const std::vector<Rational>& outer, const BiSeries& inner) {
  require_zero_constant(inner, "compose");
  BiSeries r = BiSeries::zero(inner.order_x(), inner.order_y());
  if (outer.empty()) return r;
  r = scale(BiSeries::one(inner.order_x(), inner.order_y()), outer[0]);
  BiSeries power = BiSeries::one(inner.order_x(), inner.order_y());
  const unsigned kmax = inner.order_x() + inner.order_y();
  for (unsigned k = 1; k < outer.size() && k <= kmax; ++k) {
    power = mul(power, inner);
    if (power.is_zero()) break;
    if (outer[k] != 0) r = add(r, scale(power, outer[k]));
  }
  return r;
}

BiSeries pointing(const BiSeries& s) {
  BiSeries r(s.order_x(), s.order_y());
  for (const auto& [k, c] : s.terms())
    if (k.first >= 1) r.set(k.first, k.second, c * k.first);
  return r;
}

Rational coefficient(const BiSeries& s, unsigned i, unsigned j) {
  return s.coeff(i, j);
}

double evaluate(const BiSeries& s, double x0, double y0) {
  double total = 0.0;
  for (const auto& [k, c] : s.terms())
    total += c.get_d() * std::pow(x0, k.first) * std::pow(y0, k.second);
  return total;
}

BiSeries truncate(const BiSeries& s, unsigned ox, unsigned oy) {
  BiSeries r(ox, oy);
  for (const auto& [k, c] : s.terms())
    if (k.first <= ox && k.second <= oy) r.set(k.first, k.second, c);
  return r;
}

bool equal_through(const BiSeries& a, const BiSeries& b, unsigned ox,
                   unsigned oy) {
  return max_abs_difference(a, b, ox, oy) == 0;
}

Rational max_abs_difference(const BiSeries& a, const BiSeries& b, unsigned ox,
                            unsigned oy) {
  if (ox > a.order_x() || ox > b.order_x() || oy > a.order_y() ||
      oy > b.order_y())
    throw std::out_of_range("comparison region exceeds truncation guarantees");
  Rational worst = 0;
  for (unsigned i = 0; i <= ox; ++i)
    for (unsigned j = 0; j <= oy; ++j) {
      Rational d = a.coeff(i, j) - b.coeff(i, j);
      if (d < 0) d = -d;
      if (d > worst) worst = d;
    }
  return worst;
}

std::string to_text(const BiSeries& s) {
  std::ostringstream out;
  for (const auto& [k, c] : s.terms())
    out << k.first << ' ' << k.second << ' ' << to_string(c) << '\n';
  return out.str();
}

BiSeries from_text(const std::string& text, unsigned ox, unsigned oy) {
  BiSeries r(ox, oy);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    unsigned i, j;
    std::string coeff_str;
    if (!(ls >> i >> j >> coeff_str))
      throw std::invalid_argument("malformed series line: " + line);
    r.set(i, j, rational_from_string(coeff_str));
  }
  return r;
}

}  // namespace polygf
