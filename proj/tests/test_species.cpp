#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "polygf/species.hpp"

using namespace polygf;

TEST_CASE("linear species coefficients") {
  const BiSeries f = linear_species(8, 8);
  CHECK(f.coeff(1, 0) == 1);
  CHECK(f.coeff(5, 4) == 1);
  CHECK(f.coeff(3, 1) == 0);
  CHECK(f.coeff(0, 0) == 0);
}

TEST_CASE("ring species coefficients") {
  CHECK(ring_species(6, 6, 1).coeff(2, 2) == rat(1, 2));
  CHECK(ring_species(6, 6, 3).coeff(2, 2) == 0);
  CHECK(ring_species(6, 6, 1).coeff(3, 2) == 0);
  CHECK(ring_species(6, 6, 1) ==
        neg_log_one_minus(BiSeries::monomial(6, 6, 1, 1, 1)));
  CHECK_THROWS_AS(ring_species(6, 6, 0), std::invalid_argument);
}

TEST_CASE("combined species") {
  const BiSeries f = species_with_rings(6, 6, 1);
  CHECK(f.coeff(1, 1) == 1);   // size-1 ring
  CHECK(f.coeff(2, 2) == rat(1, 2));
  CHECK(f.coeff(2, 1) == 1);   // dimer chain
  CHECK(species(SystemKind::linear(), 6, 6) == linear_species(6, 6));
  CHECK(species(SystemKind::with_rings(2), 6, 6) ==
        species_with_rings(6, 6, 2));
}

TEST_CASE("fixpoint of F -> x + xyF") {
  // first pass from zero gives the bare atom
  const BiSeries x = BiSeries::monomial(12, 12, 1, 0, 1);
  const BiSeries xy = BiSeries::monomial(12, 12, 1, 1, 1);
  BiSeries f = BiSeries::zero(12, 12);
  f = add(x, mul(xy, f));
  CHECK(f == x);
  f = add(x, mul(xy, f));
  f = add(x, mul(xy, f));
  CHECK(f.coeff(3, 2) == 1);

  CHECK(fixpoint_linear(12, 12) == linear_species(12, 12));
}

TEST_CASE("fixpoint of F -> x + int_y F^2") {
  const BiSeries x = BiSeries::monomial(10, 10, 1, 0, 1);
  BiSeries f = BiSeries::zero(10, 10);
  f = add(x, integral(mul(f, f), Var::y));
  CHECK(f == x);
  f = add(x, integral(mul(f, f), Var::y));
  BiSeries expected(10, 10);
  expected.set(1, 0, 1);
  expected.set(2, 1, 1);
  CHECK(f == expected);

  CHECK(fixpoint_join(10, 10) == linear_species(10, 10));
}

TEST_CASE("one pass of the rings recursion through the public ops") {
  // From zero: x + xy. From there, int_y x^2 d(x+xy)/dx = int_y(x^2 + x^2 y)
  // contributes x^2 y + x^2 y^2 / 2.
  const BiSeries x = BiSeries::monomial(6, 6, 1, 0, 1);
  const BiSeries x2 = BiSeries::monomial(6, 6, 2, 0, 1);
  const BiSeries ring1 = BiSeries::monomial(6, 6, 1, 1, 1);
  const auto pass = [&](const BiSeries& f) {
    return add(add(x, ring1),
               integral(mul(x2, derivative(f, Var::x)), Var::y));
  };
  const BiSeries first = pass(BiSeries::zero(6, 6));
  CHECK(equal_through(first, add(x, ring1), 5, 6));
  const BiSeries second = pass(first);
  CHECK(second.coeff(2, 2) == rat(1, 2));
  CHECK(second.coeff(2, 1) == 1);
}

TEST_CASE("fixpoint of the rings recursion") {
  CHECK(fixpoint_rings(10, 10, 1) == species_with_rings(10, 10, 1));
  CHECK(fixpoint_rings(10, 10, 2) == species_with_rings(10, 10, 2));
  CHECK(fixpoint_rings(10, 10, 4) == species_with_rings(10, 10, 4));
  CHECK(fixpoint_rings(10, 10, 1).coeff(2, 2) == rat(1, 2));
  CHECK_THROWS_AS(fixpoint_rings(8, 8, 0), std::invalid_argument);
}

TEST_CASE("both linear recursions generate the same polymers") {
  CHECK(fixpoint_linear(10, 10) == fixpoint_join(10, 10));
}

TEST_CASE("ring/chain derivative bridge") {
  const BiSeries fl = linear_species(10, 10);
  const BiSeries fr = ring_species(10, 10, 1);
  CHECK(equal_through(derivative(fr, Var::y), fl, 10, 9));
  CHECK(integral(fl, Var::y) == fr);
}

TEST_CASE("mixed derivative relation for rings") {
  const BiSeries f = species_with_rings(10, 10, 1);
  const BiSeries rhs =
      add(BiSeries::monomial(10, 10, 1, 0, 1),
          mul(BiSeries::monomial(10, 10, 2, 0, 1), derivative(f, Var::x)));
  CHECK(equal_through(derivative(f, Var::y), rhs, 9, 9));
}

TEST_CASE("count_structures") {
  const auto linear3 = count_structures(SystemKind::linear(), 3);
  REQUIRE(linear3.size() == 1);
  CHECK(linear3[0].shape == "chain");
  CHECK(linear3[0].bonds == 2);
  CHECK(linear3[0].labeled_count == 6);
  CHECK(linear3[0].automorphisms_per_class == 1);

  const auto rings4 = count_structures(SystemKind::with_rings(1), 4);
  REQUIRE(rings4.size() == 2);
  CHECK(rings4[1].shape == "ring");
  CHECK(rings4[1].automorphisms_per_class == 4);
  CHECK(rings4[1].labeled_count == 6);  // (4-1)!
  CHECK(Rational(rings4[1].iso_classes) /
            Rational(rings4[1].automorphisms_per_class) ==
        rat(1, 4));

  const auto rings2min3 = count_structures(SystemKind::with_rings(3), 2);
  REQUIRE(rings2min3.size() == 1);
  CHECK(rings2min3[0].shape == "chain");

  CHECK_THROWS_AS(count_structures(SystemKind::linear(), 0),
                  std::invalid_argument);
}

TEST_CASE("class contributions match series coefficients") {
  for (const SystemKind kind :
       {SystemKind::linear(), SystemKind::with_rings(1), SystemKind::with_rings(3)}) {
    const BiSeries f = species(kind, 10, 10);
    for (unsigned n = 1; n <= 10; ++n) {
      Rational from_classes = 0;
      Rational from_labeled = 0;
      for (const auto& sc : count_structures(kind, n)) {
        from_classes +=
            Rational(sc.iso_classes) / Rational(sc.automorphisms_per_class);
        from_labeled += Rational(sc.labeled_count) / Rational(factorial(n));
        CHECK(f.coeff(sc.size, sc.bonds) >=
              Rational(sc.iso_classes) / Rational(sc.automorphisms_per_class));
      }
      Rational from_series = 0;
      for (unsigned j = 0; j <= 10; ++j) from_series += f.coeff(n, j);
      CHECK(from_classes == from_series);
      CHECK(from_labeled == from_series);
    }
  }
}
