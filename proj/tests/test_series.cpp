#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "polygf/biseries.hpp"
#include "polygf/species.hpp"

#include "oracles.hpp"

using namespace polygf;

namespace {

BiSeries random_series(unsigned ox, unsigned oy, std::mt19937& rng,
                       bool zero_constant = false) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  std::uniform_int_distribution<int> keep(0, 2);
  BiSeries s(ox, oy);
  for (unsigned i = 0; i <= ox; ++i)
    for (unsigned j = 0; j <= oy; ++j) {
      if (zero_constant && i == 0 && j == 0) continue;
      if (keep(rng) == 0) s.set(i, j, rat(num(rng), den(rng)));
    }
  return s;
}

}  // namespace

TEST_CASE("add basics") {
  const BiSeries x = BiSeries::monomial(4, 4, 1, 0, 1);
  CHECK(add(x, x) == BiSeries::monomial(4, 4, 1, 0, 2));

  const BiSeries zero = BiSeries::zero(4, 4);
  const BiSeries fl = linear_species(4, 4);
  CHECK(add(fl, zero) == fl);

  // F_l + F_r by hand to degree 2: x + x^2 y + xy + x^2 y^2 / 2 + ...
  const BiSeries f = add(linear_species(4, 4), ring_species(4, 4, 1));
  CHECK(f.coeff(2, 1) == 1);
  CHECK(f.coeff(2, 2) == rat(1, 2));
}

TEST_CASE("add truncates to common orders") {
  const BiSeries a = BiSeries::monomial(6, 3, 5, 2, 1);
  const BiSeries b = BiSeries::monomial(4, 8, 2, 2, 1);
  const BiSeries r = add(a, b);
  CHECK(r.order_x() == 4);
  CHECK(r.order_y() == 3);
  CHECK(r.coeff(2, 2) == 1);
}

TEST_CASE("mul basics") {
  const BiSeries x = BiSeries::monomial(6, 6, 1, 0, 1);
  const BiSeries xy = BiSeries::monomial(6, 6, 1, 1, 1);
  CHECK(mul(x, xy) == BiSeries::monomial(6, 6, 2, 1, 1));

  BiSeries s(6, 6);
  s.set(1, 0, 1);
  s.set(2, 1, 1);
  BiSeries expected(6, 6);
  expected.set(2, 0, 1);
  expected.set(3, 1, 2);
  expected.set(4, 2, 1);
  CHECK(mul(s, s) == expected);
}

TEST_CASE("pair rule: dF/dy = F^2") {
  const BiSeries fl = linear_species(6, 6);
  CHECK(equal_through(derivative(fl, Var::y), mul(fl, fl), 6, 5));
}

TEST_CASE("mul agrees with the dense oracle") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const BiSeries a = random_series(7, 5, rng);
    const BiSeries b = random_series(5, 7, rng);
    CHECK(mul(a, b) == oracles::dense_mul(a, b));
  }
}

TEST_CASE("derivative removes one unit") {
  CHECK(derivative(BiSeries::monomial(6, 6, 4, 3, 1), Var::x) ==
        BiSeries::monomial(5, 6, 3, 3, 4));

  // ensembles: d(x^5/5!)/dx = x^4/4!
  const BiSeries e5 = BiSeries::monomial(6, 6, 5, 0, rat(1, 120));
  CHECK(derivative(e5, Var::x) == BiSeries::monomial(5, 6, 4, 0, rat(1, 24)));

  CHECK(derivative(BiSeries::one(6, 6), Var::y).is_zero());
}

TEST_CASE("derivative lowers the truncation order in its variable") {
  const BiSeries s = linear_species(6, 6);
  CHECK(derivative(s, Var::x).order_x() == 5);
  CHECK(derivative(s, Var::x).order_y() == 6);
  CHECK(derivative(s, Var::y).order_y() == 5);
}

TEST_CASE("integral attaches an undistinguished unit") {
  CHECK(integral(BiSeries::monomial(6, 6, 4, 3, 1), Var::y) ==
        BiSeries::monomial(6, 6, 4, 4, rat(1, 4)));

  // fundamental theorem: int_y dF/dy = F - x
  const BiSeries fl = linear_species(8, 8);
  const BiSeries lhs = integral(derivative(fl, Var::y), Var::y);
  BiSeries fl_minus_x = fl;
  fl_minus_x.set(1, 0, 0);
  CHECK(equal_through(lhs, fl_minus_x, 8, 7));

  // int_y F_l = F_r at the common truncation
  CHECK(integral(linear_species(8, 8), Var::y) == ring_species(8, 8, 1));
}

TEST_CASE("integral keeps the order and drops the top term") {
  const BiSeries top = BiSeries::monomial(4, 4, 2, 4, 1);
  CHECK(integral(top, Var::y).is_zero());
  const BiSeries inside = BiSeries::monomial(4, 4, 2, 3, 1);
  CHECK(integral(inside, Var::y) == BiSeries::monomial(4, 4, 2, 4, rat(1, 4)));
}

TEST_CASE("exp basics") {
  CHECK(exp_series(BiSeries::zero(5, 5)) == BiSeries::one(5, 5));

  const BiSeries x = BiSeries::monomial(6, 0, 1, 0, 1);
  const BiSeries ex = exp_series(x);
  Rational inv_fact = 1;
  for (unsigned i = 1; i <= 6; ++i) {
    inv_fact /= Rational(i);
    CHECK(ex.coeff(i, 0) == inv_fact);
  }

  CHECK_THROWS_AS(exp_series(BiSeries::one(4, 4)), std::domain_error);
}

TEST_CASE("exp of the linear species counts chain multisets") {
  const BiSeries z = exp_series(linear_species(8, 8));
  // Two-part splits of six atoms with four bonds: (5,1), (4,2) weight 1 and
  // (3,3) weight 1/2.
  CHECK(z.coeff(6, 4) == rat(5, 2));
  // Full slice against the independent partition oracle.
  for (unsigned atoms = 0; atoms <= 8; ++atoms)
    for (unsigned bonds = 0; bonds <= atoms; ++bonds)
      CHECK(z.coeff(atoms, bonds) ==
            oracles::chain_ensemble_weight(atoms, bonds));
}

TEST_CASE("neg_log_one_minus") {
  const BiSeries xy = BiSeries::monomial(6, 6, 1, 1, 1);
  const BiSeries fr = neg_log_one_minus(xy);
  CHECK(fr == ring_species(6, 6, 1));
  CHECK(neg_log_one_minus(BiSeries::zero(4, 4)).is_zero());
  // removing a bond from a ring leaves a chain
  CHECK(equal_through(derivative(fr, Var::y), linear_species(6, 6), 6, 5));
  CHECK_THROWS_AS(neg_log_one_minus(BiSeries::one(4, 4)), std::domain_error);
}

TEST_CASE("compose") {
  std::vector<Rational> exp_coeffs;
  Rational inv_fact = 1;
  exp_coeffs.push_back(1);
  for (unsigned k = 1; k <= 16; ++k) {
    inv_fact /= Rational(k);
    exp_coeffs.push_back(inv_fact);
  }

  // E(H) = L: a string is an ensemble of rings
  BiSeries h(10, 0);
  for (unsigned k = 1; k <= 10; ++k) h.set(k, 0, rat(1, k));
  const BiSeries composed = compose(exp_coeffs, h);
  for (unsigned k = 0; k <= 10; ++k) CHECK(composed.coeff(k, 0) == 1);

  const BiSeries s = linear_species(5, 5);
  const std::vector<Rational> identity{Rational(0), Rational(1)};
  CHECK(compose(identity, s) == s);

  CHECK(compose(exp_coeffs, s) == exp_series(s));

  CHECK_THROWS_AS(compose(exp_coeffs, BiSeries::one(4, 4)), std::domain_error);
}

TEST_CASE("pointing") {
  const BiSeries fl = linear_species(6, 6);
  const BiSeries pointed = pointing(fl);
  for (unsigned i = 1; i <= 6; ++i) CHECK(pointed.coeff(i, i - 1) == i);
  CHECK(pointing(BiSeries::one(4, 4)).is_zero());
  CHECK(pointing(BiSeries::monomial(4, 4, 3, 2, 1)) ==
        BiSeries::monomial(4, 4, 3, 2, 3));
}

TEST_CASE("coefficient and evaluate") {
  CHECK(coefficient(linear_species(6, 6), 3, 2) == 1);
  CHECK(coefficient(ring_species(6, 6, 1), 4, 4) == rat(1, 4));
  CHECK_THROWS_AS(coefficient(linear_species(6, 6), 7, 0), std::out_of_range);
  CHECK_THROWS_AS(coefficient(linear_species(6, 6), 0, 7), std::out_of_range);

  const BiSeries x = BiSeries::monomial(3, 3, 1, 0, 1);
  CHECK(evaluate(x, 0.5, 0.9) == doctest::Approx(0.5));
}

TEST_CASE("ring and field laws on random series") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    const BiSeries a = random_series(6, 6, rng);
    const BiSeries b = random_series(6, 6, rng);
    const BiSeries c = random_series(6, 6, rng);
    CHECK(add(a, b) == add(b, a));
    CHECK(mul(a, b) == mul(b, a));
    CHECK(add(add(a, b), c) == add(a, add(b, c)));
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
  }
}

TEST_CASE("fundamental theorem and chain rule on random series") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    const BiSeries s = random_series(6, 6, rng);
    for (Var v : {Var::x, Var::y}) {
      BiSeries nonconst(6, 6);
      for (const auto& [k, c] : s.terms())
        if ((v == Var::x ? k.first : k.second) > 0)
          nonconst.set(k.first, k.second, c);
      const unsigned rx = v == Var::x ? 5 : 6;
      const unsigned ry = v == Var::y ? 5 : 6;
      CHECK(equal_through(integral(derivative(s, v), v), nonconst, rx, ry));
      CHECK(equal_through(derivative(integral(s, v), v), s, rx, ry));
    }

    const BiSeries z = random_series(5, 5, rng, /*zero_constant=*/true);
    const BiSeries ez = exp_series(z);
    CHECK(equal_through(derivative(ez, Var::y), mul(ez, derivative(z, Var::y)),
                        5, 4));
  }
}

TEST_CASE("exp inverts neg_log_one_minus onto the geometric series") {
  for (const auto& [i, j] : {std::pair{1u, 0u}, std::pair{1u, 1u}}) {
    const BiSeries u = BiSeries::monomial(9, 9, i, j, 1);
    BiSeries geom(9, 9);
    for (unsigned k = 0; i * k <= 9 && j * k <= 9; ++k) geom.set(i * k, j * k, 1);
    CHECK(exp_series(neg_log_one_minus(u)) == geom);
  }
}

TEST_CASE("text form round-trips and is canonical") {
  const BiSeries f = species_with_rings(6, 6, 1);
  const std::string text = to_text(f);
  CHECK(from_text(text, 6, 6) == f);
  CHECK(text.find("3 2 1/1") != std::string::npos);
  CHECK(to_text(BiSeries::zero(3, 3)).empty());

  std::mt19937 rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    const BiSeries s = random_series(5, 5, rng);
    CHECK(from_text(to_text(s), 5, 5) == s);
  }
}

TEST_CASE("equality ignores stored-zero versus absent") {
  BiSeries a(4, 4);
  a.set(1, 1, 1);
  BiSeries b(4, 4);
  b.set(1, 1, 1);
  b.set(2, 2, 1);
  b.set(2, 2, 0);  // erased again
  CHECK(a == b);
}

TEST_CASE("rational invariants") {
  CHECK(rat(2, 4) == rat(1, 2));
  CHECK(rat(1, -2) == rat(-1, 2));
  CHECK(rat(1, -2).get_den() == 2);
  CHECK(to_string(rat(5, 2)) == "5/2");
  CHECK(to_string(rat(3)) == "3/1");
  CHECK(rational_from_string("5/2") == rat(5, 2));
  CHECK(rational_from_string("-7") == rat(-7));
  CHECK(rational_from_string("4/6") == rat(2, 3));
  CHECK_THROWS_AS(rat(1, 0), std::domain_error);
}
