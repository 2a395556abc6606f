#ifndef POLYGF_BONDSYS_HPP
#define POLYGF_BONDSYS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polygf/report.hpp"
#include "polygf/species.hpp"

namespace polygf {

/// Finite presentation of a bond system: bonds, containment arrows between
/// them, an identity arrow per bond, and an explicit composition table on
/// composable pairs (first arrow applied first: for c: x->y and c': y->z the
/// entry is (c, c') -> cc': x->z).
struct BondSystem {
  struct Containment {
    std::string id, src, dst;
  };

  std::vector<std::string> bonds;
  std::vector<Containment> containments;            // identities included
  std::map<std::string, std::string> identities;    // bond -> containment id
  std::map<std::pair<std::string, std::string>, std::string> composition;

  const Containment* find(const std::string& id) const;
  bool is_identity(const std::string& id) const;
};

/// A concrete structure over a bond system: instance sets per bond and, per
/// containment c: x->y, a function from x-instances to y-instances.
struct BondStructure {
  std::map<std::string, std::vector<std::string>> instances;
  // containment id -> (source instance -> target instance)
  std::map<std::string, std::map<std::string, std::string>> maps;
};

/// Exhaustive axiom check over the finite presentation: composition-table
/// closure, identity laws, associativity, anti-symmetry, left cancellation.
/// Failures carry a concrete witness.
CheckReport check_axioms(const BondSystem& sys);

/// 0 for atoms (bonds containing nothing but themselves), else 1 + max order
/// over strictly contained bonds.
unsigned bond_order(const BondSystem& sys, const std::string& bond);

/// Verifies the structure maps: totality into the right instance sets,
/// injectivity per containment, functoriality across the composition table,
/// identity arrows acting as identity functions.
CheckReport check_structure(const BondSystem& sys, const BondStructure& st);

/// Connectivity of the instance graph, edge directions ignored.
bool is_connected(const BondSystem& sys, const BondStructure& st);

/// Validity over the shared two-bond polymer system: the structure checks
/// pass, the structure is non-empty and connected, and the cycle rule for
/// the kind holds (no cycles for linear; rings of at least min_ring_size
/// otherwise).
bool is_valid_assembly(SystemKind kind, const BondStructure& st);

/// The two-bond presentation both polymer systems share: an atom b0, a bond
/// b1, and containments i, j: b1 -> b0.
BondSystem linear_polymers_system();
/// One bond, identity only.
BondSystem single_atom_system();
/// Three-level containment chain; the top bond has order 2.
BondSystem nested_demo_system();
/// Two parallel arrows collapsed by a third: left cancellation fails.
BondSystem left_cancellation_counterexample();

/// Chain of n atoms / ring of n atoms over linear_polymers_system().
BondStructure chain_structure(unsigned n);
BondStructure ring_structure(unsigned n);

/// JSON loaders for the external document format.
BondSystem bond_system_from_json(const std::string& json_text);
BondStructure bond_structure_from_json(const std::string& json_text);

/// Number of valid connected assemblies on atoms labeled 1..n, counted by
/// exhaustive enumeration of slot assignments. Oracle for n! [x^n] F.
BigInt enumerate_labeled_assemblies(SystemKind kind, unsigned n);

/// Same enumeration refined by bond count: j -> count of valid connected
/// assemblies with j bonds. Equals n! [x^n y^j] F.
std::map<unsigned, BigInt> labeled_connected_census(SystemKind kind, unsigned n);
std::map<unsigned, BigInt> labeled_connected_census_serial(SystemKind kind,
                                                           unsigned n);

/// All labeled structures whose components are each valid (disconnected
/// permitted), refined by bond count. Equals n! [x^n y^j] Z.
std::map<unsigned, BigInt> labeled_structure_census(SystemKind kind, unsigned n);
std::map<unsigned, BigInt> labeled_structure_census_serial(SystemKind kind,
                                                           unsigned n);

/// Connected census grouped into isomorphism classes (shape, length); used
/// to cross-check count_structures.
std::map<std::pair<std::string, unsigned>, BigInt> labeled_iso_census(
    SystemKind kind, unsigned n);

}  // namespace polygf

#endif
