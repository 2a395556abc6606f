#ifndef POLYGF_SPECIES_HPP
#define POLYGF_SPECIES_HPP

#include <string>
#include <vector>

#include "polygf/biseries.hpp"

namespace polygf {

/// Which assembly system a computation refers to: rigid linear chains, or
/// flexible chains that may close into rings of at least min_ring_size atoms.
struct SystemKind {
  enum class Family { linear, with_rings };

  Family family = Family::linear;
  unsigned min_ring_size = 1;  // meaningful for with_rings only; >= 1

  static SystemKind linear() { return {Family::linear, 1}; }
  static SystemKind with_rings(unsigned min_size = 1);

  bool allows_rings() const { return family == Family::with_rings; }
  std::string name() const;

  bool operator==(const SystemKind&) const = default;
};

/// One isomorphism class of connected assemblies on `size` atoms. The series
/// coefficient contribution is iso_classes / automorphisms_per_class, which
/// equals labeled_count / size!.
struct StructureCount {
  std::string shape;  // "chain" or "ring"
  unsigned size = 0;
  unsigned bonds = 0;
  BigInt iso_classes;
  BigInt automorphisms_per_class;
  BigInt labeled_count;
};

/// F = sum_{i>=1} x^i y^(i-1): one chain class per size, trivial symmetry.
BiSeries linear_species(unsigned order_x, unsigned order_y);

/// F_r = sum_{i>=min_size} x^i y^i / i: rings carry their rotation symmetry.
BiSeries ring_species(unsigned order_x, unsigned order_y, unsigned min_size);

/// F = F_l + F_r for the chains-with-rings system.
BiSeries species_with_rings(unsigned order_x, unsigned order_y,
                            unsigned min_size);

/// Species series for either system kind.
BiSeries species(SystemKind kind, unsigned order_x, unsigned order_y);

/// Least fixed point of F -> x + xyF, iterated from zero. Equals
/// linear_species exactly; non-convergence indicates a bug and throws.
BiSeries fixpoint_linear(unsigned order_x, unsigned order_y);

/// Least fixed point of F -> x + integral_y(F^2). Also equals linear_species.
BiSeries fixpoint_join(unsigned order_x, unsigned order_y);

/// Least fixed point of F -> x + x^n y^n / n + integral_y(x^2 dF/dx) with
/// n = min_size. Equals species_with_rings on the working grid.
BiSeries fixpoint_rings(unsigned order_x, unsigned order_y, unsigned min_size);

/// Isomorphism classes of connected assemblies on exactly n atoms, with
/// automorphism and labeled counts. Oracle for the species coefficients.
std::vector<StructureCount> count_structures(SystemKind kind, unsigned n);

}  // namespace polygf

#endif
