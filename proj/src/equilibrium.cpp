#include "polygf/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

namespace polygf {

namespace {

// Below this y the closed forms lose digits to cancellation; bisection plus
// Newton takes over.
constexpr double kSmallY = 1e-6;

double mass_linear(double x, double y) {
  const double u = 1.0 - x * y;
  return x / (u * u);
}

double dmass_linear(double x, double y) {
  const double u = 1.0 - x * y;
  return (1.0 + x * y) / (u * u * u);
}

double mass_rings(double x, double y) {
  const double u = 1.0 - x * y;
  return x / (u * u) + x * y / u;
}

double dmass_rings(double x, double y) {
  const double u = 1.0 - x * y;
  return (1.0 + x * y) / (u * u * u) + y / (u * u);
}

using MassFn = double (*)(double, double);

double newton_polish(double x, double c, double y, MassFn mass, MassFn dmass) {
  const double hi = y > 0 ? 1.0 / y : 0.0;
  for (int it = 0; it < 64; ++it) {
    const double f = mass(x, y) - c;
    if (std::abs(f) < 1e-15 * std::max(1.0, c)) break;
    const double d = dmass(x, y);
    if (!(d > 0)) break;
    double next = x - f / d;
    if (!(next > 0)) next = x / 2;
    if (y > 0 && !(next < hi)) next = (x + hi) / 2;
    if (next == x) break;
    x = next;
  }
  return x;
}

double bisect(double c, double y, MassFn mass) {
  // mass is strictly increasing on (0, 1/y) with mass(0) = 0 and a pole at
  // xy = 1, so a sign change always brackets the root.
  double lo = 0.0;
  double hi = y > 0 ? std::min(c, (1.0 - 1e-12) / y) : c;
  while (mass(hi, y) < c) hi = y > 0 ? (hi + 1.0 / y) / 2 : hi * 2;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (mass(mid, y) < c)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

EquilibriumSolution finish(double x, double c, double y, MassFn mass,
                           MassFn dmass) {
  const auto bad = [&](double v) {
    return !(v > 0) || !(v * y < 1) || !std::isfinite(v) ||
           std::abs(mass(v, y) - c) > kResidualTolerance;
  };
  x = newton_polish(x, c, y, mass, dmass);
  if (bad(x)) x = newton_polish(bisect(c, y, mass), c, y, mass, dmass);
  if (!(x > 0) || !(x * y < 1) || !std::isfinite(x))
    throw std::runtime_error("no root in (0, 1/y): conservation equation "
                             "unsolvable for these inputs");
  const double residual = std::abs(mass(x, y) - c);
  return {x, residual, residual <= kResidualTolerance};
}

void check_inputs(double c, double y) {
  if (!(c > 0) || !std::isfinite(c))
    throw std::domain_error("total concentration c must be positive");
  if (!(y >= 0) || !std::isfinite(y))
    throw std::domain_error("bond factor y must be non-negative");
}

}  // namespace

EquilibriumSolution solve_linear(double c, double y) {
  check_inputs(c, y);
  if (y == 0) return {c, 0.0, true};
  double x;
  if (y < kSmallY) {
    x = bisect(c, y, mass_linear);
  } else {
    // (1 - sqrt(1+4cy)) is negative; squaring makes the sign immaterial.
    const double t = (std::sqrt(1.0 + 4.0 * c * y) - 1.0) / (2.0 * y);
    x = t * t / c;
  }
  return finish(x, c, y, mass_linear, dmass_linear);
}

EquilibriumSolution solve_rings(double c, double y) {
  check_inputs(c, y);
  if (y == 0) return {c, 0.0, true};
  double x;
  if (y < kSmallY) {
    x = bisect(c, y, mass_rings);
  } else {
    const double disc = (y - 1.0) * (y - 1.0) + 4.0 * (c + 1.0) * y;
    x = ((2.0 * c + 1.0) * y + 1.0 - std::sqrt(disc)) /
        (2.0 * (c + 1.0) * y * y);
  }
  return finish(x, c, y, mass_rings, dmass_rings);
}

EquilibriumSolution solve(SystemKind kind, double c, double y) {
  return kind.allows_rings() ? solve_rings(c, y) : solve_linear(c, y);
}

double chain_concentration(double x, double y, unsigned n) {
  if (n == 0) throw std::invalid_argument("chain length must be >= 1");
  double cn = x;
  for (unsigned k = 1; k < n; ++k) cn *= x * y;
  return cn;
}

double ring_concentration(double x, double y, unsigned n) {
  if (n == 0) throw std::invalid_argument("ring length must be >= 1");
  double rn = x * y;
  for (unsigned k = 1; k < n; ++k) rn *= x * y;
  return rn / n;
}

double closed_form_mass(SystemKind kind, double x, double y) {
  if (!(x * y < 1))
    throw std::domain_error("xy >= 1: outside the physical regime, the mass "
                            "series diverges");
  return kind.allows_rings() ? mass_rings(x, y) : mass_linear(x, y);
}

double conservation_residual(double x, double y, SystemKind kind, double c) {
  return std::abs(closed_form_mass(kind, x, y) - c);
}

}  // namespace polygf
