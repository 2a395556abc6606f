#include "polygf/rational.hpp"

#include <stdexcept>

namespace polygf {

Rational rat(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
  const auto slash = s.find('/');
  Rational q;
  if (slash == std::string::npos) {
    q = Rational(mpz_class(s));
  } else {
    const mpz_class num(s.substr(0, slash));
    const mpz_class den(s.substr(slash + 1));
    if (den == 0) throw std::domain_error("rational with zero denominator: " + s);
    q = Rational(num) / Rational(den);
  }
  q.canonicalize();
  return q;
}

}  // namespace polygf
