#ifndef POLYGF_BISERIES_HPP
#define POLYGF_BISERIES_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polygf/rational.hpp"

namespace polygf {

enum class Var { x, y };

/// Truncated bivariate formal power series in x and y over exact rationals.
///
/// Sparse storage: absent coefficient means zero, and a coefficient is never
/// stored as an explicit zero, so the term map is canonical and equality is
/// plain map equality. Coefficients beyond the truncation orders are never
/// stored. Values are treated as immutable once built; every operation below
/// is a pure function returning a fresh series.
///
/// Truncation contract: each operation documents which result coefficients
/// are exact. add/mul/pointing keep every retained coefficient exact at the
/// componentwise minimum of the input orders. derivative lowers the order in
/// its variable by one; integral keeps the order and drops the generated
/// top-degree term.
class BiSeries {
 public:
  using Key = std::pair<unsigned, unsigned>;  // (x exponent, y exponent)
  using TermMap = std::map<Key, Rational>;

  BiSeries(unsigned order_x, unsigned order_y)
      : order_x_(order_x), order_y_(order_y) {}

  static BiSeries zero(unsigned ox, unsigned oy) { return BiSeries(ox, oy); }
  static BiSeries one(unsigned ox, unsigned oy);
  static BiSeries monomial(unsigned ox, unsigned oy, unsigned i, unsigned j,
                           const Rational& c);

  unsigned order_x() const { return order_x_; }
  unsigned order_y() const { return order_y_; }

  /// Nonzero terms, sorted by (i, j).
  const TermMap& terms() const { return terms_; }

  /// Coefficient lookup inside the truncation region; zero when absent.
  /// Queries beyond the retained orders throw (never silently zero).
  const Rational& coeff(unsigned i, unsigned j) const;

  /// Sets a coefficient; zero erases. Throws beyond the truncation orders.
  void set(unsigned i, unsigned j, Rational c);

  /// Adds into a coefficient, silently dropping out-of-order terms. This is
  /// the truncating accumulate used by the arithmetic kernels.
  void accumulate(unsigned i, unsigned j, const Rational& c);

  bool is_zero() const { return terms_.empty(); }

  bool operator==(const BiSeries& other) const {
    return order_x_ == other.order_x_ && order_y_ == other.order_y_ &&
           terms_ == other.terms_;
  }

 private:
  unsigned order_x_;
  unsigned order_y_;
  TermMap terms_;
};

/// Coefficientwise sum at the common truncation (min of each order).
BiSeries add(const BiSeries& a, const BiSeries& b);
BiSeries sub(const BiSeries& a, const BiSeries& b);
BiSeries scale(const BiSeries& a, const Rational& c);

/// Cauchy product truncated to the common orders; all retained coefficients
/// exact. Dispatches to the OpenMP kernel when the term count warrants it.
BiSeries mul(const BiSeries& a, const BiSeries& b);
BiSeries mul_serial(const BiSeries& a, const BiSeries& b);
BiSeries mul_parallel(const BiSeries& a, const BiSeries& b);

/// Termwise d/dv. The order in v drops by one (combinatorially: one unit of
/// v removed/marked); other coefficients stay exact.
BiSeries derivative(const BiSeries& s, Var v);

/// Termwise left-applied integral: x^i y^j -> x^i y^(j+1)/(j+1) for v = y.
/// The result has no constant-in-v part; the order in v is kept and the
/// generated top-degree term is dropped.
BiSeries integral(const BiSeries& s, Var v);

/// exp(s) = sum s^k/k!. Requires a zero constant term.
BiSeries exp_series(const BiSeries& s);

/// -ln(1-s) = sum_{k>=1} s^k/k. Requires a zero constant term.
BiSeries neg_log_one_minus(const BiSeries& s);

/// sum_k outer[k] * inner^k. Requires inner to have a zero constant term.
BiSeries compose(const std::vector<Rational>& outer, const BiSeries& inner);

/// x d/dx: multiplies the (i, j) coefficient by i. Orders unchanged.
BiSeries pointing(const BiSeries& s);

/// Exact coefficient; throws on out-of-truncation queries.
Rational coefficient(const BiSeries& s, unsigned i, unsigned j);

/// Truncated polynomial evaluation in binary64.
double evaluate(const BiSeries& s, double x0, double y0);

BiSeries truncate(const BiSeries& s, unsigned ox, unsigned oy);

/// Exact comparison of all coefficients with i <= ox, j <= oy. Throws if the
/// requested region exceeds either operand's guarantees.
bool equal_through(const BiSeries& a, const BiSeries& b, unsigned ox, unsigned oy);

/// Largest |a(i,j) - b(i,j)| over the region; exact rational.
Rational max_abs_difference(const BiSeries& a, const BiSeries& b, unsigned ox,
                            unsigned oy);

/// Canonical text form: one line "i j num/den" per nonzero term, sorted by
/// (i, j). Used by the CLI dump and golden-file tests.
std::string to_text(const BiSeries& s);
BiSeries from_text(const std::string& text, unsigned ox, unsigned oy);

}  // namespace polygf

#endif
