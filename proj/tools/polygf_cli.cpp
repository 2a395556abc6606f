#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polygf/biseries.hpp"
#include "polygf/bondsys.hpp"
#include "polygf/desk_limits.hpp"
#include "polygf/ensemble.hpp"
#include "polygf/equilibrium.hpp"
#include "polygf/permcycles.hpp"
#include "polygf/species.hpp"
#include "polygf/verify.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitNumeric = 3;

struct CommonOpts {
  std::string kind = "linear";
  unsigned min_ring_size = 1;
  std::string output;
  std::string format = "text";
};

polygf::SystemKind parse_kind(const CommonOpts& opts) {
  if (opts.kind == "linear") return polygf::SystemKind::linear();
  if (opts.kind == "rings")
    return polygf::SystemKind::with_rings(opts.min_ring_size);
  throw CLI::ValidationError("--kind must be 'linear' or 'rings'");
}

// Atomic when a path is given: write to a temp file, then rename over.
void emit(const std::string& content, const std::string& path) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_series(const CommonOpts& opts, const std::string& what,
               const std::vector<unsigned>& orders) {
  const auto kind = parse_kind(opts);
  const unsigned ox = orders[0], oy = orders[1];
  polygf::BiSeries s(ox, oy);
  if (what == "F") {
    s = polygf::species(kind, ox, oy);
  } else if (what == "Fl") {
    s = polygf::linear_species(ox, oy);
  } else if (what == "Fr") {
    s = polygf::ring_species(ox, oy, kind.allows_rings() ? kind.min_ring_size : 1);
  } else if (what == "Z") {
    s = polygf::ensemble_gf(polygf::species(kind, ox, oy));
  } else {
    throw CLI::ValidationError("--what must be one of F, Fl, Fr, Z");
  }

  std::string out;
  if (opts.format == "text") {
    out = polygf::to_text(s);
  } else if (opts.format == "json") {
    ordered_json j;
    j["what"] = what;
    j["kind"] = kind.name();
    j["order_x"] = s.order_x();
    j["order_y"] = s.order_y();
    auto terms = ordered_json::array();
    for (const auto& [k, c] : s.terms())
      terms.push_back({{"i", k.first}, {"j", k.second}, {"c", polygf::to_string(c)}});
    j["terms"] = terms;
    out = j.dump() + "\n";
  } else if (opts.format == "csv") {
    std::ostringstream ss;
    ss << "i,j,coefficient\n";
    for (const auto& [k, c] : s.terms())
      ss << k.first << ',' << k.second << ',' << polygf::to_string(c) << '\n';
    out = ss.str();
  } else {
    throw CLI::ValidationError("--format must be text, json or csv");
  }
  emit(out, opts.output);
  return kExitOk;
}

int run_equilibrium(const CommonOpts& opts, double c, double y, int n_max) {
  const auto kind = parse_kind(opts);
  const auto sol = polygf::solve(kind, c, y);

  std::ostringstream ss;
  ordered_json j;
  j["kind"] = kind.name();
  j["c"] = c;
  j["y"] = y;
  j["x"] = sol.x;
  j["residual"] = sol.residual;
  j["converged"] = sol.converged;
  ss << j.dump() << '\n';

  if (n_max > 0) {
    ss << "n,kind,concentration\n";
    for (int n = 1; n <= n_max; ++n) {
      ss << n << ",chain,"
         << format_double(polygf::chain_concentration(sol.x, y, n)) << '\n';
    }
    if (kind.allows_rings()) {
      for (int n = static_cast<int>(kind.min_ring_size); n <= n_max; ++n)
        ss << n << ",ring,"
           << format_double(polygf::ring_concentration(sol.x, y, n)) << '\n';
    }
  }
  emit(ss.str(), opts.output);
  return kExitOk;
}

int run_partition(const CommonOpts& opts, unsigned N, const std::string& route) {
  const auto kind = parse_kind(opts);
  polygf::CanonicalTable table;
  if (route == "series") {
    table = polygf::canonical_Y(kind, N);
  } else if (route == "faa") {
    table = polygf::faa_di_bruno_Y(kind, N);
  } else if (route == "states") {
    table = polygf::state_sum_Y(kind, N);
  } else {
    throw CLI::ValidationError("--route must be series, faa or states");
  }
  emit(table.to_json() + "\n", opts.output);
  return kExitOk;
}

int run_probability(const CommonOpts& opts, unsigned N, double y,
                    const std::string& ensemble, double x) {
  const auto kind = parse_kind(opts);

  std::ostringstream ss;
  if (ensemble == "canonical") {
    const auto table = polygf::canonical_Y(kind, N);
    const polygf::Rational yq(y);  // binary64 -> exact rational
    polygf::Rational total = 0;
    ss << "state,atoms,bonds,weight,probability,probability_float\n";
    for (const auto& st : polygf::enumerate_states(kind, N)) {
      const auto m = polygf::state_monomial(st);
      polygf::Rational ypow = 1;
      for (unsigned k = 0; k < m.bonds; ++k) ypow *= yq;
      const polygf::Rational weight = m.coeff * ypow;
      const polygf::Rational p = polygf::canonical_probability(st, yq, table);
      total += p;
      ss << st.repr() << ',' << m.atoms << ',' << m.bonds << ','
         << polygf::to_string(weight) << ',' << polygf::to_string(p) << ','
         << format_double(p.get_d()) << '\n';
    }
    ss << "total,,,," << polygf::to_string(total) << ','
       << format_double(total.get_d()) << '\n';
  } else if (ensemble == "grand") {
    double total = 0.0;
    ss << "state,atoms,bonds,probability\n";
    for (unsigned atoms = 0; atoms <= N; ++atoms) {
      for (const auto& st : polygf::enumerate_states(kind, atoms)) {
        const auto m = polygf::state_monomial(st);
        const double p = polygf::grand_probability(kind, st, x, y);
        total += p;
        ss << st.repr() << ',' << m.atoms << ',' << m.bonds << ','
           << format_double(p) << '\n';
      }
    }
    ss << "total(atoms<=" << N << "),,," << format_double(total) << '\n';
  } else {
    throw CLI::ValidationError("--ensemble must be canonical or grand");
  }
  emit(ss.str(), opts.output);
  return kExitOk;
}

int run_verify(const std::vector<std::string>& modules,
               const std::vector<unsigned>& orders, const std::string& output) {
  const auto results = polygf::run_verification(orders[0], orders[1], modules);
  std::ostringstream ss;
  unsigned failed = 0;
  for (const auto& r : results) {
    ss << (r.pass ? "[PASS] " : "[FAIL] ") << r.id;
    if (!r.pass && !r.detail.empty()) ss << ": " << r.detail;
    ss << '\n';
    if (!r.pass) ++failed;
  }
  ss << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed")
     << " (" << results.size() << " total)\n";
  emit(ss.str(), output);
  return failed == 0 ? kExitOk : kExitVerification;
}

int run_bondsys(const CommonOpts& opts, const std::string& system_path,
                const std::string& structure_path) {
  const auto sys = polygf::bond_system_from_json(read_file(system_path));
  std::ostringstream ss;
  const auto report = polygf::check_axioms(sys);
  bool ok = true;
  for (const auto& e : report.entries) {
    ss << (e.pass ? "[PASS] " : "[FAIL] ") << "axiom " << e.name;
    if (!e.pass) ss << ": " << e.detail;
    ss << '\n';
    if (!e.pass) ok = false;
  }
  for (const auto& b : sys.bonds)
    ss << "order(" << b << ") = " << polygf::bond_order(sys, b) << '\n';

  if (!structure_path.empty()) {
    const auto st = polygf::bond_structure_from_json(read_file(structure_path));
    const auto sreport = polygf::check_structure(sys, st);
    for (const auto& e : sreport.entries) {
      ss << (e.pass ? "[PASS] " : "[FAIL] ") << "structure " << e.name;
      if (!e.pass) ss << ": " << e.detail;
      ss << '\n';
      if (!e.pass) ok = false;
    }
    ss << "connected: " << (polygf::is_connected(sys, st) ? "yes" : "no") << '\n';
    const auto kind = parse_kind(opts);
    ss << "valid assembly (" << kind.name() << "): "
       << (polygf::is_valid_assembly(kind, st) ? "yes" : "no") << '\n';
  }
  emit(ss.str(), opts.output);
  return ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "polygf: species and ensemble generating functions, equilibrium "
      "concentrations and ensemble probabilities for linear and ring-forming "
      "polymer systems"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::vector<unsigned> orders{10, 10};

  auto add_common = [&](CLI::App* cmd, bool with_format = true) {
    cmd->add_option("--kind", opts.kind, "Assembly system: linear or rings")
        ->capture_default_str();
    cmd->add_option("--min-ring-size", opts.min_ring_size,
                    "Minimum ring size for --kind rings")
        ->capture_default_str();
    cmd->add_option("--output", opts.output,
                    "Write output to this path (atomic: temp file + rename)");
    if (with_format)
      cmd->add_option("--format", opts.format, "Output format: text, json, csv")
          ->capture_default_str();
  };

  // series
  auto* series_cmd =
      app.add_subcommand("series", "Dump a species or ensemble series");
  std::string what = "F";
  add_common(series_cmd);
  series_cmd->add_option("--what", what, "F, Fl, Fr or Z")->capture_default_str();
  series_cmd->add_option("--orders", orders, "Truncation orders: ORDER_X ORDER_Y")
      ->expected(2);

  // equilibrium
  auto* eq_cmd = app.add_subcommand(
      "equilibrium", "Solve mass conservation for the monomer activity x");
  double c_total = 0.0, y_bond = 0.0;
  int n_max = 0;
  add_common(eq_cmd, /*with_format=*/false);
  eq_cmd->add_option("--c", c_total, "Total atom concentration (> 0)")
      ->required();
  eq_cmd->add_option("--y", y_bond, "Bond Boltzmann factor (>= 0)")->required();
  eq_cmd->add_option("--n-max", n_max,
                     "Also emit a CSV table of concentrations up to this size");

  // partition
  auto* part_cmd = app.add_subcommand(
      "partition", "Canonical partition coefficients Y_N as a JSON table");
  unsigned part_N = 0;
  std::string route = "series";
  add_common(part_cmd, /*with_format=*/false);
  part_cmd->add_option("--N", part_N, "Number of atoms")->required();
  part_cmd->add_option("--route", route,
                       "Computation route: series, faa or states")
      ->capture_default_str();

  // probability
  auto* prob_cmd = app.add_subcommand(
      "probability", "Per-state probabilities in an ensemble");
  unsigned prob_N = 0;
  double prob_y = 1.0, prob_x = 0.1;
  std::string ensemble = "canonical";
  add_common(prob_cmd, /*with_format=*/false);
  prob_cmd->add_option("--N", prob_N, "Atom count (canonical) or cutoff (grand)")
      ->required();
  prob_cmd->add_option("--y", prob_y, "Bond factor")->capture_default_str();
  prob_cmd->add_option("--x", prob_x, "Monomer activity (grand only)")
      ->capture_default_str();
  prob_cmd->add_option("--ensemble", ensemble, "canonical or grand")
      ->capture_default_str();

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "Run the identity and oracle suite; nonzero exit on failure");
  bool verify_all = false;
  std::vector<std::string> verify_modules;
  std::string verify_output;
  verify_cmd->add_flag("--all", verify_all, "Run every module (default)");
  verify_cmd->add_option("--module", verify_modules,
                         "Restrict to modules (repeatable): series, species, "
                         "equilibrium, ensemble, bondsys, permcycles, cli, "
                         "parallel");
  verify_cmd->add_option("--orders", orders, "Series orders for the checks")
      ->expected(2);
  verify_cmd->add_option("--output", verify_output, "Write the matrix here");

  // bondsys
  auto* bond_cmd = app.add_subcommand(
      "bondsys", "Check bond-system axioms and structures from JSON");
  std::string system_path, structure_path;
  add_common(bond_cmd, /*with_format=*/false);
  bond_cmd->add_option("--system", system_path, "Bond system JSON document")
      ->required();
  bond_cmd->add_option("--structure", structure_path,
                       "Bond structure JSON document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (series_cmd->parsed()) return run_series(opts, what, orders);
    if (eq_cmd->parsed()) return run_equilibrium(opts, c_total, y_bond, n_max);
    if (part_cmd->parsed()) return run_partition(opts, part_N, route);
    if (prob_cmd->parsed())
      return run_probability(opts, prob_N, prob_y, ensemble, prob_x);
    if (verify_cmd->parsed()) {
      if (verify_all) verify_modules.clear();
      return run_verify(verify_modules, orders, verify_output);
    }
    if (bond_cmd->parsed()) return run_bondsys(opts, system_path, structure_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}
