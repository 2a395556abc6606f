#ifndef POLYGF_ENSEMBLE_HPP
#define POLYGF_ENSEMBLE_HPP

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "polygf/biseries.hpp"
#include "polygf/report.hpp"
#include "polygf/species.hpp"

namespace polygf {

enum class Shape { chain, ring };

/// One species of connected assembly: a chain or a ring of a given length.
struct SpeciesDescriptor {
  Shape shape = Shape::chain;
  unsigned length = 1;

  unsigned atoms() const { return length; }
  unsigned bonds() const { return shape == Shape::chain ? length - 1 : length; }
  std::string repr() const;

  auto operator<=>(const SpeciesDescriptor&) const = default;
};

/// A finite multiset of assemblies: species -> copy count (counts >= 1).
struct EnsembleState {
  std::map<SpeciesDescriptor, unsigned> counts;

  unsigned total_atoms() const;
  unsigned total_bonds() const;
  unsigned total_species() const;
  std::string repr() const;  // canonical, e.g. "2*chain1+1*ring3"

  bool operator==(const EnsembleState&) const = default;
};

/// Monomial of a state: x^atoms y^bonds times the symmetry coefficient
/// prod_species (1/length)^count / count!  (ring factor only; chains are
/// asymmetric).
struct StateMonomial {
  unsigned atoms = 0;
  unsigned bonds = 0;
  Rational coeff;
};

/// Y_N as an exact polynomial in y: coeffs[j] is the weight of states with
/// exactly j bonds. Trailing zero coefficients are trimmed, degree <= N.
struct CanonicalTable {
  unsigned N = 0;
  std::vector<Rational> coeffs;

  Rational eval(const Rational& y) const;
  std::string to_json() const;  // {"N": n, "coeffs": ["num/den", ...]}
};

/// Z = e^F at the truncation of F. Requires F(0,0) = 0.
BiSeries ensemble_gf(const BiSeries& F);

/// Closed-form Z(x, y) in binary64; throws when xy >= 1.
double closed_form_Z(SystemKind kind, double x, double y);

/// All states with exactly N atoms, sorted by (bonds, repr). For the linear
/// system these biject with the integer partitions of N; with rings each
/// part is independently a chain or a ring (rings >= min_ring_size).
std::vector<EnsembleState> enumerate_states(SystemKind kind, unsigned N);

StateMonomial state_monomial(const EnsembleState& state);

/// Throws unless every species in the state is admissible for the kind.
void validate_state(SystemKind kind, const EnsembleState& state);

/// Y_N extracted as the x^N slice of exp(species(kind)).
CanonicalTable canonical_Y(SystemKind kind, unsigned N);

/// Extraction from a prebuilt ensemble series; throws if N exceeds its
/// x-truncation.
CanonicalTable canonical_table_from_series(const BiSeries& Z, unsigned N);

/// Y_N = (1/N!) sum over set partitions of [N] of prod_B F^(|B|)(0), with
/// F^(k)(0) = k! [x^k]F read off the exact species series. Enumerates actual
/// set partitions (parallel over the block containing the first element).
CanonicalTable faa_di_bruno_Y(SystemKind kind, unsigned N);

/// Reference route: plain restricted-growth-string enumeration, serial.
CanonicalTable faa_di_bruno_Y_serial(SystemKind kind, unsigned N);

/// Oracle route: direct sum of state_monomial over enumerate_states.
CanonicalTable state_sum_Y(SystemKind kind, unsigned N);

/// Grand-canonical probability of a state at activities (x, y), using the
/// closed-form Z. Requires xy < 1.
double grand_probability(SystemKind kind, const EnsembleState& state, double x,
                         double y);

/// Canonical probability at exact rational y; exact, sums to 1 over all
/// states of N atoms.
Rational canonical_probability(SystemKind kind, const EnsembleState& state,
                               const Rational& y);
Rational canonical_probability(const EnsembleState& state, const Rational& y,
                               const CanonicalTable& table);

/// Verifies the ensemble bond-erasure identity and its integrated form on
/// the guaranteed truncation region: dZ/dy = Z F^2 and Z = e^x + int_y Z F^2
/// for linear; dZ/dy = xZ + x^2 dZ/dx and its integral form with rings.
CheckReport ensemble_recursion_check(SystemKind kind, unsigned order_x,
                                     unsigned order_y);

}  // namespace polygf

#endif
