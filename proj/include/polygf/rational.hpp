#ifndef POLYGF_RATIONAL_HPP
#define POLYGF_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace polygf {

// Exact rational arithmetic. GMP keeps values in lowest terms with a
// positive denominator; no rounding anywhere in the series layer.
using Rational = mpq_class;
using BigInt = mpz_class;

// mpq_class(num, den) does not canonicalize on its own, so every value
// built from a raw pair goes through here.
Rational rat(long num, long den = 1);

BigInt factorial(unsigned n);

// Canonical "num/den" form with the denominator always present: "5/2",
// "1/1", "-3/4". Used by the series text dump and the JSON encoders.
std::string to_string(const Rational& q);

// Accepts "num/den" or a bare integer "num".
Rational rational_from_string(const std::string& s);

}  // namespace polygf

#endif
