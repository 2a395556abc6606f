#include "polygf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "polygf/biseries.hpp"
#include "polygf/bondsys.hpp"
#include "polygf/desk_limits.hpp"
#include "polygf/ensemble.hpp"
#include "polygf/equilibrium.hpp"
#include "polygf/permcycles.hpp"
#include "polygf/setpart.hpp"
#include "polygf/species.hpp"

namespace polygf {

namespace {

struct Context {
  unsigned ox, oy;
  std::vector<VerifyResult>* out;

  void check(const std::string& id, bool pass, const std::string& detail = "") {
    out->push_back({id, pass, pass ? "" : detail});
  }
};

BiSeries random_series(unsigned ox, unsigned oy, std::mt19937& rng,
                       bool zero_constant = false) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  std::uniform_int_distribution<int> keep(0, 2);
  BiSeries s(ox, oy);
  for (unsigned i = 0; i <= ox; ++i)
    for (unsigned j = 0; j <= oy; ++j) {
      if (zero_constant && i == 0 && j == 0) continue;
      if (keep(rng) == 0) s.set(i, j, rat(num(rng), den(rng)));
    }
  return s;
}

void verify_series(Context& ctx) {
  std::mt19937 rng(20240101);
  const unsigned ox = std::min(ctx.ox, 8u), oy = std::min(ctx.oy, 8u);

  bool ring_axioms = true;
  bool fundamental = true;
  bool deriv_integral = true;
  std::string witness;
  for (int trial = 0; trial < 8 && ring_axioms; ++trial) {
    const BiSeries a = random_series(ox, oy, rng);
    const BiSeries b = random_series(ox, oy, rng);
    const BiSeries c = random_series(ox, oy, rng);
    if (!(add(a, b) == add(b, a)) || !(mul(a, b) == mul(b, a)) ||
        !(add(add(a, b), c) == add(a, add(b, c))) ||
        !(mul(mul(a, b), c) == mul(a, mul(b, c))) ||
        !(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)))) {
      ring_axioms = false;
      witness = "trial " + std::to_string(trial);
    }
  }
  ctx.check("series.ring_axioms", ring_axioms, witness);

  for (int trial = 0; trial < 8; ++trial) {
    const BiSeries s = random_series(ox, oy, rng);
    for (Var v : {Var::x, Var::y}) {
      // s minus its part constant in v.
      BiSeries nonconst(s.order_x(), s.order_y());
      for (const auto& [k, cc] : s.terms())
        if ((v == Var::x ? k.first : k.second) > 0)
          nonconst.set(k.first, k.second, cc);
      const unsigned rx = v == Var::x ? ox - 1 : ox;
      const unsigned ry = v == Var::y ? oy - 1 : oy;
      if (!equal_through(integral(derivative(s, v), v), nonconst, rx, ry))
        fundamental = false;
      if (!equal_through(derivative(integral(s, v), v), s, rx, ry))
        deriv_integral = false;
    }
  }
  ctx.check("series.fundamental_theorem", fundamental);
  ctx.check("series.derivative_of_integral", deriv_integral);

  bool chain_rule = true;
  for (int trial = 0; trial < 4; ++trial) {
    const BiSeries s = random_series(6, 6, rng, /*zero_constant=*/true);
    const BiSeries es = exp_series(s);
    for (Var v : {Var::x, Var::y}) {
      const unsigned rx = v == Var::x ? 5 : 6;
      const unsigned ry = v == Var::y ? 5 : 6;
      if (!equal_through(derivative(es, v), mul(es, derivative(s, v)), rx, ry))
        chain_rule = false;
    }
  }
  ctx.check("series.exp_chain_rule", chain_rule);

  bool exp_log = true;
  for (const auto& [i, j] : {std::pair{1u, 0u}, std::pair{1u, 1u}}) {
    const BiSeries u = BiSeries::monomial(ctx.ox, ctx.oy, i, j, 1);
    BiSeries geom(ctx.ox, ctx.oy);
    for (unsigned k = 0; i * k <= ctx.ox && j * k <= ctx.oy; ++k)
      geom.set(i * k, j * k, 1);
    if (!(exp_series(neg_log_one_minus(u)) == geom)) exp_log = false;
  }
  ctx.check("series.exp_log_geometric", exp_log);
}

void verify_species(Context& ctx) {
  const unsigned ox = ctx.ox, oy = ctx.oy;
  const BiSeries fl = linear_species(ox, oy);

  ctx.check("species.fixpoint_linear", fixpoint_linear(ox, oy) == fl);
  ctx.check("species.fixpoint_join", fixpoint_join(ox, oy) == fl);

  bool rings_fix = true;
  for (unsigned m : {1u, 2u, 3u})
    if (!(fixpoint_rings(ox, oy, m) == species_with_rings(ox, oy, m)))
      rings_fix = false;
  ctx.check("species.fixpoint_rings", rings_fix);

  const BiSeries fr = ring_species(ox, oy, 1);
  ctx.check("species.ring_bridge_derivative",
            equal_through(derivative(fr, Var::y), fl, ox, oy - 1));
  ctx.check("species.ring_bridge_integral",
            equal_through(integral(fl, Var::y), fr, ox, oy));
  ctx.check("species.pair_rule",
            equal_through(derivative(fl, Var::y), mul(fl, fl), ox, oy - 1));

  const BiSeries fwr = species_with_rings(ox, oy, 1);
  const BiSeries rhs = add(BiSeries::monomial(ox, oy, 1, 0, 1),
                           mul(BiSeries::monomial(ox, oy, 2, 0, 1),
                               derivative(fwr, Var::x)));
  ctx.check("species.mixed_derivative",
            equal_through(derivative(fwr, Var::y), rhs, ox - 1, oy - 1));

  bool counts_ok = true;
  std::string witness;
  for (const SystemKind kind : {SystemKind::linear(), SystemKind::with_rings(1),
                                SystemKind::with_rings(3)}) {
    const BiSeries f = species(kind, 10, 10);
    for (unsigned n = 1; n <= 10 && counts_ok; ++n) {
      Rational from_classes = 0, from_labeled = 0;
      for (const auto& sc : count_structures(kind, n)) {
        from_classes += Rational(sc.iso_classes) /
                        Rational(sc.automorphisms_per_class);
        from_labeled += Rational(sc.labeled_count) / Rational(factorial(n));
        if (Rational(sc.labeled_count) / Rational(factorial(n)) !=
            Rational(sc.iso_classes) / Rational(sc.automorphisms_per_class))
          counts_ok = false;
      }
      Rational from_series = 0;
      for (unsigned j = 0; j <= 10; ++j) from_series += f.coeff(n, j);
      if (from_classes != from_series || from_labeled != from_series) {
        counts_ok = false;
        witness = kind.name() + " n=" + std::to_string(n);
      }
    }
  }
  ctx.check("species.count_structures_match", counts_ok, witness);
}

void verify_equilibrium(Context& ctx) {
  std::mt19937 rng(7041776);
  std::uniform_real_distribution<double> cdist(1e-9, 5.0);
  std::uniform_real_distribution<double> ydist(0.0, 3.0);

  for (const SystemKind kind : {SystemKind::linear(), SystemKind::with_rings(1)}) {
    bool roundtrip = true;
    bool regime = true;
    std::string witness;
    for (int trial = 0; trial < 250; ++trial) {
      const double c = cdist(rng), y = ydist(rng);
      const auto sol = solve(kind, c, y);
      if (!(sol.x > 0) || !(sol.x * y < 1)) regime = false;
      if (conservation_residual(sol.x, y, kind, c) >= 1e-12 || !sol.converged) {
        roundtrip = false;
        std::ostringstream os;
        os << "c=" << c << " y=" << y << " residual=" << sol.residual;
        witness = os.str();
      }
    }
    const std::string tag =
        kind.allows_rings() ? ".rings" : ".linear";
    ctx.check("equilibrium.roundtrip" + tag, roundtrip, witness);
    ctx.check("equilibrium.physical_regime" + tag, regime);
  }

  // In exact arithmetic the ratio c_{i+j}/(c_i c_j) collapses to y
  // identically; the floating-point version must stay within 1e-14.
  bool exact_balance = true;
  {
    const Rational xq = rat(3, 10), yq = rat(7, 4);
    const auto cq = [&](unsigned n) {
      Rational v = xq;
      for (unsigned k = 1; k < n; ++k) v *= xq * yq;
      return v;
    };
    for (unsigned i = 1; i <= 20 && exact_balance; ++i)
      for (unsigned j = 1; j <= 20; ++j)
        if (cq(i + j) / (cq(i) * cq(j)) != yq) exact_balance = false;
  }
  ctx.check("equilibrium.detailed_balance_exact", exact_balance);

  bool balance = true;
  std::string witness;
  for (const auto& [c, y] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5},
                             std::pair{0.5, 2.0}}) {
    const auto sol = solve_linear(c, y);
    for (unsigned i = 1; i <= 20 && balance; ++i)
      for (unsigned j = 1; j <= 20; ++j) {
        const double ratio =
            chain_concentration(sol.x, y, i + j) /
            (chain_concentration(sol.x, y, i) * chain_concentration(sol.x, y, j));
        if (std::abs(ratio - y) > 1e-14) {
          balance = false;
          std::ostringstream os;
          os << "c=" << c << " y=" << y << " i=" << i << " j=" << j
             << " ratio=" << ratio;
          witness = os.str();
          break;
        }
      }
  }
  ctx.check("equilibrium.detailed_balance", balance, witness);

  bool monotone = true;
  for (const SystemKind kind : {SystemKind::linear(), SystemKind::with_rings(1)})
    for (double c : {0.25, 1.0, 5.0}) {
      double prev = solve(kind, c, 0.0).x;
      for (double y = 0.25; y <= 3.01; y += 0.25) {
        const double x = solve(kind, c, y).x;
        if (!(x < prev)) monotone = false;
        prev = x;
      }
    }
  ctx.check("equilibrium.monotone_x_in_y", monotone);
}

void verify_ensemble(Context& ctx) {
  bool triple = true;
  std::string witness;
  const unsigned nmax = std::min(10u, limits::faa_di_bruno_max());
  for (const SystemKind kind : {SystemKind::linear(), SystemKind::with_rings(1)}) {
    for (unsigned N = 0; N <= nmax && triple; ++N) {
      const CanonicalTable a = canonical_Y(kind, N);
      const CanonicalTable b = faa_di_bruno_Y(kind, N);
      const CanonicalTable c = state_sum_Y(kind, N);
      if (a.coeffs != b.coeffs || a.coeffs != c.coeffs) {
        triple = false;
        witness = kind.name() + " N=" + std::to_string(N);
      }
    }
  }
  ctx.check("ensemble.triple_agreement", triple, witness);

  bool recursion = true;
  for (const SystemKind kind : {SystemKind::linear(), SystemKind::with_rings(1),
                                SystemKind::with_rings(2)}) {
    const auto report = ensemble_recursion_check(kind, ctx.ox, ctx.oy);
    if (!report.all_pass()) recursion = false;
  }
  ctx.check("ensemble.recursion_identities", recursion);

  bool nonneg = true;
  for (const SystemKind kind : {SystemKind::linear(), SystemKind::with_rings(1)})
    for (unsigned N = 0; N <= 12; ++N)
      for (const auto& c : canonical_Y(kind, N).coeffs)
        if (c < 0) nonneg = false;
  ctx.check("ensemble.y_coefficients_nonnegative", nonneg);

  // Grand probabilities: partial sums over states with <= cutoff atoms rise
  // monotonically toward 1 against the closed-form Z.
  bool partial_sums = true;
  for (const SystemKind kind : {SystemKind::linear(), SystemKind::with_rings(1)}) {
    const double x = 0.2, y = 0.8;
    double prev = 0.0;
    for (unsigned cutoff = 0; cutoff <= 9; ++cutoff) {
      double total = 0.0;
      for (unsigned N = 0; N <= cutoff; ++N)
        for (const auto& st : enumerate_states(kind, N))
          total += grand_probability(kind, st, x, y);
      if (total < prev - 1e-12 || total > 1.0 + 1e-9) partial_sums = false;
      prev = total;
    }
    if (1.0 - prev > 0.05) partial_sums = false;  // geometric tail at xy=.16
  }
  ctx.check("ensemble.grand_partial_sums", partial_sums);

  bool expform = true;
  std::string ewitness;
  const unsigned emax = std::min(8u, limits::labeled_enumeration_max());
  for (const SystemKind kind : {SystemKind::linear(), SystemKind::with_rings(1)}) {
    for (unsigned n = 0; n <= emax && expform; ++n) {
      const CanonicalTable y = canonical_Y(kind, n);
      BigInt total = 0;
      for (const auto& [bonds, count] : labeled_structure_census(kind, n))
        total += count;
      const Rational lhs = y.eval(1) * Rational(factorial(n));
      if (lhs != Rational(total)) {
        expform = false;
        ewitness = kind.name() + " n=" + std::to_string(n);
      }
    }
  }
  ctx.check("ensemble.exponential_formula", expform, ewitness);

  bool cprob = true;
  for (const SystemKind kind : {SystemKind::linear(), SystemKind::with_rings(1)})
    for (unsigned N = 1; N <= 8; ++N) {
      const CanonicalTable table = canonical_Y(kind, N);
      for (const Rational& y : {rat(1), rat(2, 3), rat(0)}) {
        Rational total = 0;
        for (const auto& st : enumerate_states(kind, N))
          total += canonical_probability(st, y, table);
        if (total != 1) cprob = false;
      }
    }
  ctx.check("ensemble.canonical_probability_normalized", cprob);
}

void verify_bondsys(Context& ctx) {
  ctx.check("bondsys.axioms_linear_polymers",
            check_axioms(linear_polymers_system()).all_pass());
  ctx.check("bondsys.axioms_single_atom",
            check_axioms(single_atom_system()).all_pass());
  ctx.check("bondsys.axioms_nested_demo",
            check_axioms(nested_demo_system()).all_pass());

  const auto counterexample = check_axioms(left_cancellation_counterexample());
  bool cancel_fails = false;
  std::string cancel_witness;
  for (const auto& e : counterexample.entries)
    if (e.name == "left-cancellation" && !e.pass) {
      cancel_fails = true;
      cancel_witness = e.detail;
    }
  ctx.check("bondsys.counterexample_left_cancellation",
            cancel_fails && !cancel_witness.empty(),
            "expected a left-cancellation failure with a witness");

  const auto sys = linear_polymers_system();
  ctx.check("bondsys.bond_orders",
            bond_order(sys, "b0") == 0 && bond_order(sys, "b1") == 1 &&
                bond_order(nested_demo_system(), "b2") == 2);

  bool structures = check_structure(sys, chain_structure(5)).all_pass() &&
                    check_structure(sys, ring_structure(4)).all_pass() &&
                    is_connected(sys, chain_structure(5));
  ctx.check("bondsys.structure_checks", structures);

  bool validity = is_valid_assembly(SystemKind::linear(), chain_structure(3)) &&
                  !is_valid_assembly(SystemKind::linear(), ring_structure(3)) &&
                  is_valid_assembly(SystemKind::with_rings(1), ring_structure(3)) &&
                  is_valid_assembly(SystemKind::with_rings(3), ring_structure(3)) &&
                  !is_valid_assembly(SystemKind::with_rings(4), ring_structure(3));
  ctx.check("bondsys.validity_rules", validity);

  const unsigned omax = std::min(8u, limits::labeled_enumeration_max());
  bool oracle_f = true;
  std::string fwitness;
  for (const SystemKind kind : {SystemKind::linear(), SystemKind::with_rings(1),
                                SystemKind::with_rings(3)}) {
    const BiSeries f = species(kind, omax, omax);
    for (unsigned n = 1; n <= omax && oracle_f; ++n) {
      const auto census = labeled_connected_census(kind, n);
      for (unsigned j = 0; j <= n && oracle_f; ++j) {
        BigInt expected(0);
        if (const auto it = census.find(j); it != census.end())
          expected = it->second;
        if (j <= omax &&
            Rational(expected) != f.coeff(n, j) * Rational(factorial(n))) {
          oracle_f = false;
          fwitness = kind.name() + " n=" + std::to_string(n) +
                     " j=" + std::to_string(j);
        }
      }
    }
  }
  ctx.check("bondsys.oracle_species_coefficients", oracle_f, fwitness);

  bool oracle_z = true;
  std::string zwitness;
  const unsigned zmax = std::min(7u, limits::labeled_enumeration_max());
  for (const SystemKind kind : {SystemKind::linear(), SystemKind::with_rings(1)}) {
    const BiSeries z = ensemble_gf(species(kind, zmax, zmax));
    for (unsigned n = 0; n <= zmax && oracle_z; ++n) {
      const auto census = labeled_structure_census(kind, n);
      for (unsigned j = 0; j <= n && oracle_z; ++j) {
        BigInt expected(0);
        if (const auto it = census.find(j); it != census.end())
          expected = it->second;
        if (Rational(expected) != z.coeff(n, j) * Rational(factorial(n))) {
          oracle_z = false;
          zwitness = kind.name() + " n=" + std::to_string(n) +
                     " j=" + std::to_string(j);
        }
      }
    }
  }
  ctx.check("bondsys.oracle_ensemble_coefficients", oracle_z, zwitness);

  bool iso = true;
  for (const SystemKind kind : {SystemKind::linear(), SystemKind::with_rings(1)})
    for (unsigned n = 1; n <= std::min(6u, omax) && iso; ++n) {
      const auto census = labeled_iso_census(kind, n);
      for (const auto& sc : count_structures(kind, n)) {
        BigInt counted(0);
        if (const auto it = census.find({sc.shape, n}); it != census.end())
          counted = it->second;
        if (counted != sc.labeled_count) iso = false;
      }
    }
  ctx.check("bondsys.iso_class_counts", iso);
}

void verify_permcycles(Context& ctx) {
  const unsigned nmax = std::min(8u, limits::cycle_census_max());
  bool census_ok = true;
  std::string witness;
  for (unsigned n = 1; n <= nmax && census_ok; ++n) {
    const auto census = cycle_census(n);
    BigInt total = 0;
    for (const auto& [type, count] : census) {
      if (type.total() != n ||
          count != cycle_type_count_formula(n, type)) {
        census_ok = false;
        witness = "n=" + std::to_string(n) + " type " + type.repr();
      }
      total += count;
    }
    if (total != factorial(n)) {
      census_ok = false;
      witness = "n=" + std::to_string(n) + " total " + total.get_str();
    }
  }
  ctx.check("permcycles.census_matches_formula", census_ok, witness);

  ctx.check("permcycles.L_equals_E_of_H",
            check_L_equals_E_of_H(std::max(ctx.ox, 12u)).all_pass());
  ctx.check("permcycles.H_equals_integral_of_L",
            check_H_integral(std::max(ctx.ox, 10u)).all_pass());

  // Stirling-cycle refinement: n! [x^n] H^r / r! counts permutations with
  // exactly r cycles.
  bool stirling = true;
  const unsigned smax = std::min(7u, nmax);
  for (unsigned n = 1; n <= smax && stirling; ++n) {
    const auto census = cycle_census(n);
    const BiSeries H = harmonic_series(n);
    BiSeries power = BiSeries::one(n, 0);
    Rational inv_fact = 1;
    for (unsigned r = 1; r <= n; ++r) {
      power = mul(power, H);
      inv_fact /= Rational(r);
      BigInt by_cycles = 0;
      for (const auto& [type, count] : census) {
        unsigned cycles = 0;
        for (const auto& [len, mult] : type.multiplicities) cycles += mult;
        if (cycles == r) by_cycles += count;
      }
      if (power.coeff(n, 0) * inv_fact * Rational(factorial(n)) !=
          Rational(by_cycles))
        stirling = false;
    }
  }
  ctx.check("permcycles.stirling_cycle_refinement", stirling);
}

void verify_cli(Context& ctx) {
  // The CLI's determinism rests on the canonical serializations and the
  // stable state ordering implemented here in the library.
  bool stable = true;
  for (const SystemKind kind : {SystemKind::linear(), SystemKind::with_rings(1)}) {
    const auto once = enumerate_states(kind, 7);
    const auto again = enumerate_states(kind, 7);
    if (!(once == again)) stable = false;
    for (std::size_t k = 1; k < once.size(); ++k) {
      const auto &a = once[k - 1], &b = once[k];
      if (a.total_bonds() > b.total_bonds() ||
          (a.total_bonds() == b.total_bonds() && !(a.repr() < b.repr())))
        stable = false;
    }
  }
  ctx.check("cli.state_ordering_stable", stable);

  const BiSeries f = species_with_rings(8, 8, 1);
  const auto table = canonical_Y(SystemKind::with_rings(1), 6);
  ctx.check("cli.serialization_deterministic",
            to_text(f) == to_text(species_with_rings(8, 8, 1)) &&
                table.to_json() ==
                    canonical_Y(SystemKind::with_rings(1), 6).to_json() &&
                from_text(to_text(f), 8, 8) == f);
}

void verify_parallel(Context& ctx) {
  std::mt19937 rng(5550123);
  bool mul_match = true;
  for (int trial = 0; trial < 3; ++trial) {
    const BiSeries a = random_series(24, 24, rng);
    const BiSeries b = random_series(24, 24, rng);
    if (!(mul_serial(a, b) == mul_parallel(a, b))) mul_match = false;
  }
  ctx.check("parallel.mul_matches_serial", mul_match);

  bool census_match = true;
  for (const SystemKind kind : {SystemKind::linear(), SystemKind::with_rings(1)}) {
    if (!(labeled_connected_census_serial(kind, 6) ==
          labeled_connected_census(kind, 6)) ||
        !(labeled_structure_census_serial(kind, 6) ==
          labeled_structure_census(kind, 6)))
      census_match = false;
  }
  ctx.check("parallel.labeled_census_matches_serial", census_match);

  ctx.check("parallel.cycle_census_matches_serial",
            cycle_census_serial(7) == cycle_census_parallel(7));

  bool faa_match = true;
  for (const SystemKind kind : {SystemKind::linear(), SystemKind::with_rings(1)})
    if (!(faa_di_bruno_Y_serial(kind, 9).coeffs ==
          faa_di_bruno_Y(kind, 9).coeffs))
      faa_match = false;
  ctx.check("parallel.faa_di_bruno_matches_serial", faa_match);
}

}  // namespace

std::vector<VerifyResult> run_verification(
    unsigned order_x, unsigned order_y,
    const std::vector<std::string>& modules) {
  std::vector<VerifyResult> results;
  Context ctx{std::max(order_x, 4u), std::max(order_y, 4u), &results};

  const auto wants = [&](const std::string& module) {
    if (modules.empty()) return true;
    return std::find(modules.begin(), modules.end(), module) != modules.end();
  };

  if (wants("series")) verify_series(ctx);
  if (wants("species")) verify_species(ctx);
  if (wants("equilibrium")) verify_equilibrium(ctx);
  if (wants("ensemble")) verify_ensemble(ctx);
  if (wants("bondsys")) verify_bondsys(ctx);
  if (wants("permcycles")) verify_permcycles(ctx);
  if (wants("cli")) verify_cli(ctx);
  if (wants("parallel")) verify_parallel(ctx);

  return results;
}

}  // namespace polygf
