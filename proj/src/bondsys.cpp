#include "polygf/bondsys.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "polygf/desk_limits.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polygf {

const BondSystem::Containment* BondSystem::find(const std::string& id) const {
  for (const auto& c : containments)
    if (c.id == id) return &c;
  return nullptr;
}

bool BondSystem::is_identity(const std::string& id) const {
  for (const auto& [bond, ident] : identities)
    if (ident == id) return true;
  return false;
}

namespace {

void fail(CheckReport& report, const std::string& axiom,
          const std::string& witness) {
  for (auto& e : report.entries)
    if (e.name == axiom && !e.pass) return;  // keep the first witness
  for (auto& e : report.entries)
    if (e.name == axiom) {
      e.pass = false;
      e.detail = witness;
      return;
    }
}

void add_axiom(CheckReport& report, const std::string& axiom) {
  report.entries.push_back({axiom, true, ""});
}

}  // namespace

CheckReport check_axioms(const BondSystem& sys) {
  CheckReport report;
  add_axiom(report, "well-formed");
  add_axiom(report, "closure");
  add_axiom(report, "identity-laws");
  add_axiom(report, "associativity");
  add_axiom(report, "anti-symmetry");
  add_axiom(report, "left-cancellation");

  const std::set<std::string> bond_set(sys.bonds.begin(), sys.bonds.end());
  for (const auto& c : sys.containments) {
    if (!bond_set.count(c.src) || !bond_set.count(c.dst))
      fail(report, "well-formed",
           "containment " + c.id + " references an unknown bond");
  }
  for (const auto& b : sys.bonds) {
    const auto it = sys.identities.find(b);
    if (it == sys.identities.end()) {
      fail(report, "well-formed", "bond " + b + " has no identity containment");
      continue;
    }
    const auto* arrow = sys.find(it->second);
    if (!arrow || arrow->src != b || arrow->dst != b)
      fail(report, "well-formed",
           "identity of " + b + " is not an arrow " + b + " -> " + b);
  }

  const auto composite = [&](const std::string& f,
                             const std::string& g) -> const std::string* {
    const auto it = sys.composition.find({f, g});
    return it == sys.composition.end() ? nullptr : &it->second;
  };

  // Closure: every composable pair has a well-typed entry.
  for (const auto& c : sys.containments)
    for (const auto& d : sys.containments) {
      if (c.dst != d.src) continue;
      const auto* r = composite(c.id, d.id);
      if (!r) {
        fail(report, "closure",
             "no composite for " + c.id + " ; " + d.id);
        continue;
      }
      const auto* arrow = sys.find(*r);
      if (!arrow || arrow->src != c.src || arrow->dst != d.dst)
        fail(report, "closure",
             "composite " + c.id + " ; " + d.id + " = " + *r +
                 " is not an arrow " + c.src + " -> " + d.dst);
    }

  // Identity laws: 1_x c = c = c 1_y for every c: x -> y.
  for (const auto& c : sys.containments) {
    const auto ix = sys.identities.find(c.src);
    const auto iy = sys.identities.find(c.dst);
    if (ix != sys.identities.end()) {
      const auto* r = composite(ix->second, c.id);
      if (r && *r != c.id)
        fail(report, "identity-laws",
             ix->second + " ; " + c.id + " = " + *r + ", expected " + c.id);
    }
    if (iy != sys.identities.end()) {
      const auto* r = composite(c.id, iy->second);
      if (r && *r != c.id)
        fail(report, "identity-laws",
             c.id + " ; " + iy->second + " = " + *r + ", expected " + c.id);
    }
  }

  // Associativity over all composable triples.
  for (const auto& c : sys.containments)
    for (const auto& d : sys.containments) {
      if (c.dst != d.src) continue;
      const auto* cd = composite(c.id, d.id);
      if (!cd) continue;
      for (const auto& e : sys.containments) {
        if (d.dst != e.src) continue;
        const auto* de = composite(d.id, e.id);
        if (!de) continue;
        const auto* lhs = composite(*cd, e.id);
        const auto* rhs = composite(c.id, *de);
        if (lhs && rhs && *lhs != *rhs)
          fail(report, "associativity",
               "(" + c.id + ";" + d.id + ");" + e.id + " = " + *lhs +
                   " but " + c.id + ";(" + d.id + ";" + e.id + ") = " + *rhs);
      }
    }

  // Anti-symmetry: arrows both ways force equal bonds.
  for (const auto& c : sys.containments)
    for (const auto& d : sys.containments)
      if (c.src == d.dst && c.dst == d.src && c.src != c.dst)
        fail(report, "anti-symmetry",
             c.id + ": " + c.src + " -> " + c.dst + " and " + d.id +
                 " run in both directions between distinct bonds");

  // Left cancellation: c c'' = c' c'' implies c = c'.
  for (const auto& c : sys.containments)
    for (const auto& d : sys.containments) {
      if (c.id == d.id || c.src != d.src || c.dst != d.dst) continue;
      for (const auto& e : sys.containments) {
        if (e.src != c.dst) continue;
        const auto* ce = composite(c.id, e.id);
        const auto* de = composite(d.id, e.id);
        if (ce && de && *ce == *de)
          fail(report, "left-cancellation",
               c.id + " ; " + e.id + " = " + d.id + " ; " + e.id + " = " +
                   *ce + " but " + c.id + " != " + d.id);
      }
    }

  return report;
}

unsigned bond_order(const BondSystem& sys, const std::string& bond) {
  std::map<std::string, unsigned> memo;
  std::set<std::string> in_progress;
  const std::function<unsigned(const std::string&)> order =
      [&](const std::string& b) -> unsigned {
    if (const auto it = memo.find(b); it != memo.end()) return it->second;
    if (!in_progress.insert(b).second)
      throw std::logic_error("containment cycle at bond " + b);
    unsigned result = 0;
    for (const auto& c : sys.containments)
      if (c.src == b && c.dst != b) result = std::max(result, order(c.dst) + 1);
    in_progress.erase(b);
    memo[b] = result;
    return result;
  };
  return order(bond);
}

CheckReport check_structure(const BondSystem& sys, const BondStructure& st) {
  CheckReport report;
  add_axiom(report, "totality");
  add_axiom(report, "injectivity");
  add_axiom(report, "identity-maps");
  add_axiom(report, "functoriality");

  const auto instances_of = [&](const std::string& bond)
      -> const std::vector<std::string>& {
    static const std::vector<std::string> empty;
    const auto it = st.instances.find(bond);
    return it == st.instances.end() ? empty : it->second;
  };

  // Identity arrows act as the identity function when given explicitly;
  // absent identity maps are implicitly the identity.
  const auto apply = [&](const std::string& arrow_id,
                         const std::string& inst) -> const std::string* {
    if (sys.is_identity(arrow_id)) {
      const auto mit = st.maps.find(arrow_id);
      if (mit == st.maps.end()) return &inst;
      const auto it = mit->second.find(inst);
      return it == mit->second.end() ? &inst : &it->second;
    }
    const auto mit = st.maps.find(arrow_id);
    if (mit == st.maps.end()) return nullptr;
    const auto it = mit->second.find(inst);
    return it == mit->second.end() ? nullptr : &it->second;
  };

  for (const auto& c : sys.containments) {
    const auto& src_insts = instances_of(c.src);
    const auto& dst_insts = instances_of(c.dst);
    std::map<std::string, std::string> seen_target;  // target -> source
    for (const auto& inst : src_insts) {
      const std::string* target = apply(c.id, inst);
      if (!target) {
        fail(report, "totality",
             c.id + " undefined on instance " + inst + " of " + c.src);
        continue;
      }
      if (std::find(dst_insts.begin(), dst_insts.end(), *target) ==
          dst_insts.end()) {
        fail(report, "totality",
             c.id + "(" + inst + ") = " + *target + " is not an instance of " +
                 c.dst);
        continue;
      }
      if (sys.is_identity(c.id) && *target != inst)
        fail(report, "identity-maps",
             c.id + "(" + inst + ") = " + *target + ", expected " + inst);
      const auto [it, inserted] = seen_target.try_emplace(*target, inst);
      if (!inserted)
        fail(report, "injectivity",
             c.id + " sends both " + it->second + " and " + inst + " to " +
                 *target);
    }
  }

  for (const auto& [pair, result] : sys.composition) {
    const auto* first = sys.find(pair.first);
    if (!first) continue;
    for (const auto& inst : instances_of(first->src)) {
      const std::string* mid = apply(pair.first, inst);
      if (!mid) continue;
      const std::string* lhs = apply(pair.second, *mid);
      const std::string* rhs = apply(result, inst);
      if (lhs && rhs && *lhs != *rhs)
        fail(report, "functoriality",
             "(" + pair.first + ";" + pair.second + ")(" + inst + ") = " +
                 *lhs + " but " + result + "(" + inst + ") = " + *rhs);
    }
  }

  return report;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

bool is_connected(const BondSystem& sys, const BondStructure& st) {
  std::vector<std::string> nodes;
  std::map<std::string, int> index;
  for (const auto& [bond, insts] : st.instances)
    for (const auto& inst : insts) {
      index.emplace(bond + ":" + inst, static_cast<int>(nodes.size()));
      nodes.push_back(bond + ":" + inst);
    }
  if (nodes.size() <= 1) return true;

  UnionFind uf(nodes.size());
  for (const auto& [arrow_id, fn] : st.maps) {
    const auto* arrow = sys.find(arrow_id);
    if (!arrow || sys.is_identity(arrow_id)) continue;
    for (const auto& [src, dst] : fn) {
      const auto a = index.find(arrow->src + ":" + src);
      const auto b = index.find(arrow->dst + ":" + dst);
      if (a != index.end() && b != index.end()) uf.unite(a->second, b->second);
    }
  }
  const int root = uf.find(0);
  for (std::size_t k = 1; k < nodes.size(); ++k)
    if (uf.find(static_cast<int>(k)) != root) return false;
  return true;
}

bool is_valid_assembly(SystemKind kind, const BondStructure& st) {
  const BondSystem sys = linear_polymers_system();

  // Only the two-bond polymer presentation is admitted here.
  for (const auto& [bond, insts] : st.instances)
    if (!insts.empty() && bond != "b0" && bond != "b1") return false;

  const auto atoms_it = st.instances.find("b0");
  const std::size_t n_atoms =
      atoms_it == st.instances.end() ? 0 : atoms_it->second.size();
  if (n_atoms == 0) return false;  // assemblies contain at least one atom

  if (!check_structure(sys, st).all_pass()) return false;
  if (!is_connected(sys, st)) return false;

  // Directed edges i-atom -> j-atom; components are paths or cycles since
  // both slot maps are injective.
  std::map<std::string, int> atom_index;
  for (std::size_t k = 0; k < atoms_it->second.size(); ++k)
    atom_index[atoms_it->second[k]] = static_cast<int>(k);

  UnionFind uf(n_atoms);
  std::vector<unsigned> edges_at_root(n_atoms, 0);
  const auto bonds_it = st.instances.find("b1");
  const std::size_t n_bonds =
      bonds_it == st.instances.end() ? 0 : bonds_it->second.size();
  const auto map_i = st.maps.find("i");
  const auto map_j = st.maps.find("j");
  if (n_bonds > 0 && (map_i == st.maps.end() || map_j == st.maps.end()))
    return false;
  for (std::size_t k = 0; k < n_bonds; ++k) {
    const auto& b = bonds_it->second[k];
    const int a = atom_index.at(map_i->second.at(b));
    const int c = atom_index.at(map_j->second.at(b));
    uf.unite(a, c);
  }
  for (std::size_t k = 0; k < n_bonds; ++k) {
    const auto& b = bonds_it->second[k];
    ++edges_at_root[uf.find(atom_index.at(map_i->second.at(b)))];
  }
  std::vector<unsigned> size_at_root(n_atoms, 0);
  for (std::size_t k = 0; k < n_atoms; ++k)
    ++size_at_root[uf.find(static_cast<int>(k))];

  for (std::size_t r = 0; r < n_atoms; ++r) {
    if (size_at_root[r] == 0) continue;
    const bool cycle = edges_at_root[r] == size_at_root[r];
    if (cycle) {
      if (!kind.allows_rings()) return false;
      if (size_at_root[r] < kind.min_ring_size) return false;
    }
  }
  return true;
}

namespace {

BondSystem two_bond_system() {
  BondSystem sys;
  sys.bonds = {"b0", "b1"};
  sys.containments = {{"1_b0", "b0", "b0"},
                      {"1_b1", "b1", "b1"},
                      {"i", "b1", "b0"},
                      {"j", "b1", "b0"}};
  sys.identities = {{"b0", "1_b0"}, {"b1", "1_b1"}};
  sys.composition = {{{"1_b0", "1_b0"}, "1_b0"}, {{"1_b1", "1_b1"}, "1_b1"},
                     {{"1_b1", "i"}, "i"},       {{"i", "1_b0"}, "i"},
                     {{"1_b1", "j"}, "j"},       {{"j", "1_b0"}, "j"}};
  return sys;
}

}  // namespace

BondSystem linear_polymers_system() { return two_bond_system(); }

BondSystem single_atom_system() {
  BondSystem sys;
  sys.bonds = {"b0"};
  sys.containments = {{"1_b0", "b0", "b0"}};
  sys.identities = {{"b0", "1_b0"}};
  sys.composition = {{{"1_b0", "1_b0"}, "1_b0"}};
  return sys;
}

BondSystem nested_demo_system() {
  // b2 contains b1 (via k), b1 contains b0 (via i, j); composites ki, kj.
  BondSystem sys;
  sys.bonds = {"b0", "b1", "b2"};
  sys.containments = {{"1_b0", "b0", "b0"}, {"1_b1", "b1", "b1"},
                      {"1_b2", "b2", "b2"}, {"i", "b1", "b0"},
                      {"j", "b1", "b0"},    {"k", "b2", "b1"},
                      {"ki", "b2", "b0"},   {"kj", "b2", "b0"}};
  sys.identities = {{"b0", "1_b0"}, {"b1", "1_b1"}, {"b2", "1_b2"}};
  sys.composition = {
      {{"1_b0", "1_b0"}, "1_b0"}, {{"1_b1", "1_b1"}, "1_b1"},
      {{"1_b2", "1_b2"}, "1_b2"}, {{"1_b1", "i"}, "i"},
      {{"i", "1_b0"}, "i"},       {{"1_b1", "j"}, "j"},
      {{"j", "1_b0"}, "j"},       {{"1_b2", "k"}, "k"},
      {{"k", "1_b1"}, "k"},       {{"1_b2", "ki"}, "ki"},
      {{"ki", "1_b0"}, "ki"},     {{"1_b2", "kj"}, "kj"},
      {{"kj", "1_b0"}, "kj"},     {{"k", "i"}, "ki"},
      {{"k", "j"}, "kj"}};
  return sys;
}

BondSystem left_cancellation_counterexample() {
  // Two parallel arrows x -> y collapsed by y -> z: c1 d = c2 d but c1 != c2.
  BondSystem sys;
  sys.bonds = {"x", "y", "z"};
  sys.containments = {{"1_x", "x", "x"}, {"1_y", "y", "y"}, {"1_z", "z", "z"},
                      {"c1", "x", "y"},  {"c2", "x", "y"},  {"d", "y", "z"},
                      {"e", "x", "z"}};
  sys.identities = {{"x", "1_x"}, {"y", "1_y"}, {"z", "1_z"}};
  sys.composition = {
      {{"1_x", "1_x"}, "1_x"}, {{"1_y", "1_y"}, "1_y"}, {{"1_z", "1_z"}, "1_z"},
      {{"1_x", "c1"}, "c1"},   {{"c1", "1_y"}, "c1"},   {{"1_x", "c2"}, "c2"},
      {{"c2", "1_y"}, "c2"},   {{"1_y", "d"}, "d"},     {{"d", "1_z"}, "d"},
      {{"1_x", "e"}, "e"},     {{"e", "1_z"}, "e"},     {{"c1", "d"}, "e"},
      {{"c2", "d"}, "e"}};
  return sys;
}

BondStructure chain_structure(unsigned n) {
  if (n == 0) throw std::invalid_argument("chain needs at least one atom");
  BondStructure st;
  for (unsigned k = 1; k <= n; ++k)
    st.instances["b0"].push_back("a" + std::to_string(k));
  for (unsigned k = 1; k + 1 <= n; ++k) {
    const std::string b = "B" + std::to_string(k);
    st.instances["b1"].push_back(b);
    st.maps["i"][b] = "a" + std::to_string(k);
    st.maps["j"][b] = "a" + std::to_string(k + 1);
  }
  return st;
}

BondStructure ring_structure(unsigned n) {
  if (n == 0) throw std::invalid_argument("ring needs at least one atom");
  BondStructure st;
  for (unsigned k = 1; k <= n; ++k)
    st.instances["b0"].push_back("a" + std::to_string(k));
  for (unsigned k = 1; k <= n; ++k) {
    const std::string b = "B" + std::to_string(k);
    st.instances["b1"].push_back(b);
    st.maps["i"][b] = "a" + std::to_string(k);
    st.maps["j"][b] = "a" + std::to_string(k % n + 1);
  }
  return st;
}

BondSystem bond_system_from_json(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  BondSystem sys;
  for (const auto& b : j.at("bonds")) sys.bonds.push_back(b.get<std::string>());
  for (const auto& c : j.at("containments"))
    sys.containments.push_back({c.at("id").get<std::string>(),
                                c.at("src").get<std::string>(),
                                c.at("dst").get<std::string>()});
  for (const auto& [bond, ident] : j.at("identities").items())
    sys.identities[bond] = ident.get<std::string>();
  if (j.contains("composition"))
    for (const auto& t : j.at("composition")) {
      if (!t.is_array() || t.size() != 3)
        throw std::invalid_argument("composition entries must be triples");
      sys.composition[{t[0].get<std::string>(), t[1].get<std::string>()}] =
          t[2].get<std::string>();
    }
  // Identity composites default to the identity laws unless stated.
  for (const auto& c : sys.containments) {
    const auto ix = sys.identities.find(c.src);
    const auto iy = sys.identities.find(c.dst);
    if (ix != sys.identities.end())
      sys.composition.try_emplace({ix->second, c.id}, c.id);
    if (iy != sys.identities.end())
      sys.composition.try_emplace({c.id, iy->second}, c.id);
  }
  return sys;
}

BondStructure bond_structure_from_json(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  BondStructure st;
  for (const auto& [bond, insts] : j.at("instances").items())
    for (const auto& inst : insts)
      st.instances[bond].push_back(inst.get<std::string>());
  if (j.contains("maps"))
    for (const auto& [arrow, fn] : j.at("maps").items())
      for (const auto& [src, dst] : fn.items())
        st.maps[arrow][src] = dst.get<std::string>();
  return st;
}

namespace {

// Slot-assignment enumeration. targets[a] is the atom whose j-slot receives
// the bond whose i-slot is a, or -1. Distinct targets keep F[j] injective;
// one outgoing bond per atom keeps F[i] injective. Components of the
// resulting functional graph are paths and cycles.
struct CensusAccumulator {
  std::map<unsigned, BigInt> connected;      // bonds -> count
  std::map<unsigned, BigInt> all_valid;      // bonds -> count
  std::map<std::pair<std::string, unsigned>, BigInt> iso;  // connected only
};

void classify(const std::vector<int>& targets, SystemKind kind,
              CensusAccumulator& acc) {
  const unsigned n = static_cast<unsigned>(targets.size());
  UnionFind uf(n);
  unsigned edges = 0;
  for (unsigned a = 0; a < n; ++a)
    if (targets[a] >= 0) {
      uf.unite(static_cast<int>(a), targets[a]);
      ++edges;
    }
  std::vector<unsigned> size_at(n, 0), edges_at(n, 0);
  for (unsigned a = 0; a < n; ++a) {
    ++size_at[uf.find(static_cast<int>(a))];
    if (targets[a] >= 0) ++edges_at[uf.find(static_cast<int>(a))];
  }
  unsigned components = 0;
  bool valid = true;
  for (unsigned r = 0; r < n && valid; ++r) {
    if (size_at[r] == 0) continue;
    ++components;
    const bool cycle = edges_at[r] == size_at[r];
    if (cycle &&
        (!kind.allows_rings() || size_at[r] < kind.min_ring_size))
      valid = false;
  }
  if (!valid) return;
  acc.all_valid[edges] += 1;
  if (components == 1) {
    acc.connected[edges] += 1;
    acc.iso[{edges == n ? "ring" : "chain", n}] += 1;
  }
}

void enumerate_from(unsigned atom, std::vector<int>& targets,
                    unsigned used_heads, SystemKind kind,
                    CensusAccumulator& acc) {
  const unsigned n = static_cast<unsigned>(targets.size());
  if (atom == n) {
    classify(targets, kind, acc);
    return;
  }
  targets[atom] = -1;
  enumerate_from(atom + 1, targets, used_heads, kind, acc);
  for (unsigned h = 0; h < n; ++h) {
    if (used_heads & (1u << h)) continue;
    targets[atom] = static_cast<int>(h);
    enumerate_from(atom + 1, targets, used_heads | (1u << h), kind, acc);
  }
  targets[atom] = -1;
}

void merge(CensusAccumulator& into, const CensusAccumulator& from) {
  for (const auto& [k, v] : from.connected) into.connected[k] += v;
  for (const auto& [k, v] : from.all_valid) into.all_valid[k] += v;
  for (const auto& [k, v] : from.iso) into.iso[k] += v;
}

CensusAccumulator census_serial(SystemKind kind, unsigned n) {
  CensusAccumulator acc;
  std::vector<int> targets(n, -1);
  enumerate_from(0, targets, 0, kind, acc);
  return acc;
}

CensusAccumulator census_parallel(SystemKind kind, unsigned n) {
  if (n == 0) return census_serial(kind, n);
  // Branch on atom 0's choice; branches are independent.
  const int branches = static_cast<int>(n) + 1;
  std::vector<CensusAccumulator> partial(branches);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int br = 0; br < branches; ++br) {
    std::vector<int> targets(n, -1);
    unsigned used = 0;
    if (br > 0) {
      targets[0] = br - 1;
      used = 1u << (br - 1);
    }
    enumerate_from(1, targets, used, kind, partial[br]);
  }
  CensusAccumulator acc;
  for (const auto& p : partial) merge(acc, p);
  return acc;
}

unsigned checked_census_n(unsigned n) {
  if (n > limits::labeled_enumeration_max())
    throw std::invalid_argument("labeled enumeration: n beyond desk limit");
  if (n > 20)
    throw std::invalid_argument("labeled enumeration: n > 20 unsupported");
  return n;
}

}  // namespace

std::map<unsigned, BigInt> labeled_connected_census(SystemKind kind,
                                                    unsigned n) {
  return census_parallel(kind, checked_census_n(n)).connected;
}

std::map<unsigned, BigInt> labeled_connected_census_serial(SystemKind kind,
                                                           unsigned n) {
  return census_serial(kind, checked_census_n(n)).connected;
}

std::map<unsigned, BigInt> labeled_structure_census(SystemKind kind,
                                                    unsigned n) {
  return census_parallel(kind, checked_census_n(n)).all_valid;
}

std::map<unsigned, BigInt> labeled_structure_census_serial(SystemKind kind,
                                                           unsigned n) {
  return census_serial(kind, checked_census_n(n)).all_valid;
}

std::map<std::pair<std::string, unsigned>, BigInt> labeled_iso_census(
    SystemKind kind, unsigned n) {
  return census_parallel(kind, checked_census_n(n)).iso;
}

BigInt enumerate_labeled_assemblies(SystemKind kind, unsigned n) {
  BigInt total = 0;
  for (const auto& [bonds, count] : labeled_connected_census(kind, n))
    total += count;
  return total;
}

}  // namespace polygf
