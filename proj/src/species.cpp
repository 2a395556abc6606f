#include "polygf/species.hpp"

#include <algorithm>
#include <stdexcept>

#include "polygf/desk_limits.hpp"

namespace polygf {

SystemKind SystemKind::with_rings(unsigned min_size) {
  if (min_size < 1) throw std::invalid_argument("min_ring_size must be >= 1");
  return {Family::with_rings, min_size};
}

std::string SystemKind::name() const {
  if (family == Family::linear) return "linear";
  return "rings(min=" + std::to_string(min_ring_size) + ")";
}

BiSeries linear_species(unsigned order_x, unsigned order_y) {
  BiSeries f(order_x, order_y);
  for (unsigned i = 1; i <= order_x; ++i) {
    if (i - 1 > order_y) break;
    f.set(i, i - 1, 1);
  }
  return f;
}

BiSeries ring_species(unsigned order_x, unsigned order_y, unsigned min_size) {
  if (min_size < 1) throw std::invalid_argument("min_ring_size must be >= 1");
  BiSeries f(order_x, order_y);
  for (unsigned i = min_size; i <= std::min(order_x, order_y); ++i)
    f.set(i, i, rat(1, i));
  return f;
}

BiSeries species_with_rings(unsigned order_x, unsigned order_y,
                            unsigned min_size) {
  return add(linear_species(order_x, order_y),
             ring_species(order_x, order_y, min_size));
}

BiSeries species(SystemKind kind, unsigned order_x, unsigned order_y) {
  if (kind.allows_rings())
    return species_with_rings(order_x, order_y, kind.min_ring_size);
  return linear_species(order_x, order_y);
}

namespace {

// Iterates next = step(current) from zero until stationary. Each pass fixes
// at least one more x-degree, so `max_iter` passes suffice; anything else is
// an internal error.
template <typename Step>
BiSeries iterate_to_fixpoint(unsigned order_x, unsigned order_y, Step step,
                             unsigned max_iter) {
  BiSeries f = BiSeries::zero(order_x, order_y);
  for (unsigned it = 0; it < max_iter; ++it) {
    BiSeries next = step(f);
    if (next == f) return f;
    f = std::move(next);
  }
  if (step(f) == f) return f;
  throw std::logic_error("species fixed point failed to converge");
}

}  // namespace

BiSeries fixpoint_linear(unsigned order_x, unsigned order_y) {
  if (order_x == 0) return BiSeries::zero(order_x, order_y);
  const BiSeries x = BiSeries::monomial(order_x, order_y, 1, 0, 1);
  const BiSeries xy = BiSeries::monomial(order_x, order_y, 1, 1, 1);
  return iterate_to_fixpoint(
      order_x, order_y,
      [&](const BiSeries& f) { return add(x, mul(xy, f)); }, order_x + 2);
}

BiSeries fixpoint_join(unsigned order_x, unsigned order_y) {
  if (order_x == 0) return BiSeries::zero(order_x, order_y);
  const BiSeries x = BiSeries::monomial(order_x, order_y, 1, 0, 1);
  return iterate_to_fixpoint(
      order_x, order_y,
      [&](const BiSeries& f) { return add(x, integral(mul(f, f), Var::y)); },
      order_x + 2);
}

BiSeries fixpoint_rings(unsigned order_x, unsigned order_y,
                        unsigned min_size) {
  if (min_size < 1) throw std::invalid_argument("min_ring_size must be >= 1");
  // One step of F -> x + x^n y^n / n + integral_y(x^2 dF/dx), applied as an
  // exact coefficient map on the fixed working grid: the chained public ops
  // would shed an x-order of bookkeeping per pass even though every read the
  // recursion needs, (i-1, j-1), stays inside the grid.
  if (order_x == 0) return BiSeries::zero(order_x, order_y);
  const auto step = [&](const BiSeries& f) {
    BiSeries next(order_x, order_y);
    next.set(1, 0, 1);
    if (min_size <= order_x && min_size <= order_y)
      next.set(min_size, min_size, rat(1, min_size));
    for (const auto& [k, c] : f.terms()) {
      const auto [i, j] = k;
      if (i + 1 > order_x || j + 1 > order_y || i == 0) continue;
      next.accumulate(i + 1, j + 1, c * Rational(i) / Rational(j + 1));
    }
    return next;
  };
  return iterate_to_fixpoint(order_x, order_y, step,
                             std::min(order_x, order_y) + 3);
}

std::vector<StructureCount> count_structures(SystemKind kind, unsigned n) {
  if (n == 0) throw std::invalid_argument("count_structures requires n >= 1");
  if (n > limits::structure_count_max())
    throw std::invalid_argument("count_structures: n beyond desk limit");

  std::vector<StructureCount> classes;
  // One chain class: asymmetric, so the only automorphism is trivial and
  // every one of the n! labelings is distinct.
  classes.push_back({"chain", n, n - 1, 1, 1, factorial(n)});
  if (kind.allows_rings() && n >= kind.min_ring_size) {
    // One ring class: the n rotations act freely, (n-1)! labeled rings.
    classes.push_back({"ring", n, n, 1, n, factorial(n - 1)});
  }
  return classes;
}

}  // namespace polygf
