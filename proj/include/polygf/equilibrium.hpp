#ifndef POLYGF_EQUILIBRIUM_HPP
#define POLYGF_EQUILIBRIUM_HPP

#include "polygf/species.hpp"

namespace polygf {

/// Monomer activity solving the mass-conservation equation for the given
/// (c, y, kind), with the conservation residual achieved. Always satisfies
/// 0 < x and x*y < 1 (inside the radius of convergence).
struct EquilibriumSolution {
  double x = 0.0;
  double residual = 0.0;
  bool converged = false;
};

// Solver tolerance on |mass(x) - c|.
inline constexpr double kResidualTolerance = 1e-12;

/// Solves x/(1-xy)^2 = c. Closed form x = (1/c)((1-sqrt(1+4cy))/(2y))^2 for
/// moderate y, bisection plus Newton polish below the cancellation threshold
/// and whenever the closed form misbehaves numerically.
EquilibriumSolution solve_linear(double c, double y);

/// Solves x/(1-xy)^2 + xy/(1-xy) = c via the quadratic closed form
/// x = ((2c+1)y + 1 - sqrt((y-1)^2 + 4(c+1)y)) / (2(c+1)y^2), with the same
/// small-y fallback (the formula is 0/0 at y = 0).
EquilibriumSolution solve_rings(double c, double y);

EquilibriumSolution solve(SystemKind kind, double c, double y);

/// c_n = x^n y^(n-1). Throws for n = 0.
double chain_concentration(double x, double y, unsigned n);

/// r_n = x^n y^n / n. Throws for n = 0.
double ring_concentration(double x, double y, unsigned n);

/// Total atom concentration in closed form: x/(1-xy)^2 for linear chains,
/// plus xy/(1-xy) when rings are allowed. Throws when xy >= 1 (outside the
/// physical regime; the series diverges).
double closed_form_mass(SystemKind kind, double x, double y);

/// |closed_form_mass(x, y) - c|.
double conservation_residual(double x, double y, SystemKind kind, double c);

}  // namespace polygf

#endif
