// folipers command-line interface.
//
// Subcommands:
//   diagram     persistence diagram (CSV + SVG) of one input, native 1-D or
//               reduced along a chosen leaf
//   match       matching distance between two 1-D inputs or diagram CSVs
//   mdmatch     sampled multidimensional matching distance of two inputs
//   invariance  cross-scheme invariance report (the main-theorem harness)
//   oracle      cross-check of rank oracle / persistence pairs / diagram
//
// Exit codes: 0 success, 1 property violation, 2 input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "folipers/io.hpp"
#include "folipers/multidist.hpp"
#include "folipers/random_inputs.hpp"

using namespace folipers;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInputError = 2;

struct Options {
  std::vector<std::string> inputs;
  std::string mode = "float";
  std::string scheme = "ladm";  // comma-separated list for invariance
  std::string grid = "32x16";
  double offset_bound = 0;  // 0 = derive from the inputs
  unsigned k = 0;
  std::uint32_t field = 2;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  std::string out;
  std::string svg;
  std::string pair_spec;
  std::string point_spec;
  std::string diagram_csv;  // oracle cross-check file
  unsigned probes = 100;
  unsigned random_count = 0;
  unsigned threads = 0;
  bool timings = false;
  bool k_given = false;  // --k explicitly set (CSV rows are filtered only then)
};

template <class T>
std::vector<T> parse_components(const std::string& text) {
  std::vector<T> out;
  std::string field;
  std::istringstream ss(text);
  while (std::getline(ss, field, ','))
    out.push_back(scalar_from_string<T>(detail::trim(field)));
  if (out.empty()) throw IoError("empty vector: '" + text + "'");
  return out;
}

template <class T>
std::pair<std::vector<T>, std::vector<T>> parse_two_vectors(const std::string& text,
                                                            const char* what) {
  auto sep = text.find(';');
  if (sep == std::string::npos)
    throw IoError(std::string(what) + " must look like \"x1,x2;y1,y2\"");
  return {parse_components<T>(text.substr(0, sep)), parse_components<T>(text.substr(sep + 1))};
}

GridSpec parse_grid(const Options& opt, double auto_bound) {
  GridSpec grid;
  auto x = opt.grid.find('x');
  if (x == std::string::npos) throw IoError("--grid must look like <dirs>x<offsets>");
  grid.direction_resolution = static_cast<unsigned>(std::stoul(opt.grid.substr(0, x)));
  grid.offset_resolution = static_cast<unsigned>(std::stoul(opt.grid.substr(x + 1)));
  grid.offset_bound = opt.offset_bound > 0 ? opt.offset_bound : auto_bound;
  if (grid.direction_resolution < 1 || grid.offset_resolution < 1)
    throw IoError("--grid resolutions must be >= 1");
  return grid;
}

// "path.json" or "mesh.off:values.csv"
template <class T>
ComplexInput<T> load_input(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    std::string off = spec.substr(0, colon), csv = spec.substr(colon + 1);
    if (!off.ends_with(".off"))
      throw IoError("combined input must be <mesh.off>:<values.csv>, got " + spec);
    return load_complex_off<T>(off, csv);
  }
  if (spec.ends_with(".json")) return load_complex_json<T>(spec);
  if (spec.ends_with(".off"))
    throw IoError(spec + ": OFF input needs per-vertex values, use <mesh.off>:<values.csv>");
  throw IoError("unrecognized input format: " + spec);
}

std::vector<Scheme> parse_schemes(const std::string& list) {
  std::vector<Scheme> out;
  std::string name;
  std::istringstream ss(list);
  while (std::getline(ss, name, ',')) out.push_back(parse_scheme(detail::trim(name)));
  if (out.empty()) throw IoError("no schemes given");
  return out;
}

template <class T>
ordered_json json_value(const T& x) {
  if constexpr (is_rational_v<T>)
    return ordered_json(to_double(x));
  else
    return ordered_json(x);
}

template <class T>
ordered_json json_extended(const Extended<T>& x) {
  if (x.is_inf()) return ordered_json("inf");
  return json_value(x.value());
}

template <class T>
void attach_exact(ordered_json& j, const std::string& key, const Extended<T>& x) {
  if constexpr (is_rational_v<T>) {
    j[key + "_exact"] = x.is_inf() ? "inf" : scalar_to_string(x.value());
  }
}

void emit(const ordered_json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
}

template <class T>
ordered_json pair_to_json(const AdmissiblePair<T>& pair) {
  ordered_json j;
  j["scheme"] = pair.scheme.name();
  j["direction"] = ordered_json::array();
  j["offset"] = ordered_json::array();
  for (const T& l : pair.direction) j["direction"].push_back(json_value(l));
  for (const T& b : pair.offset) j["offset"].push_back(json_value(b));
  if constexpr (is_rational_v<T>) {
    j["direction_exact"] = ordered_json::array();
    j["offset_exact"] = ordered_json::array();
    for (const T& l : pair.direction) j["direction_exact"].push_back(scalar_to_string(l));
    for (const T& b : pair.offset) j["offset_exact"].push_back(scalar_to_string(b));
  }
  return j;
}

// --- diagram ---------------------------------------------------------------

template <class T>
int cmd_diagram(const Options& opt) {
  if (opt.inputs.size() != 1) throw IoError("diagram expects exactly one input");
  auto input = load_input<T>(opt.inputs[0]);
  const auto& [K, phi] = input;
  if (K.empty()) throw IoError("empty complex");

  ScalarFiltration<T> F;
  if (phi.components == 1) {
    std::vector<T> vertex_values;
    for (const auto& row : phi.values) vertex_values.push_back(row[0]);
    F = extend_by_max(K, vertex_values);
  } else if (!opt.pair_spec.empty()) {
    auto [lambda, beta] = parse_two_vectors<T>(opt.pair_spec, "--pair");
    AdmissiblePair<T> pair{lambda, beta, parse_scheme(opt.scheme)};
    check_admissible(pair);
    F = reduce_function(K, phi, pair);
  } else if (!opt.point_spec.empty()) {
    auto [u, v] = parse_two_vectors<T>(opt.point_spec, "--point");
    auto pair = leaf_through(parse_scheme(opt.scheme), u, v).first;
    F = reduce_function(K, phi, pair);
  } else {
    throw IoError("n > 1 input needs --pair or --point to pick a leaf");
  }

  auto D = diagram_of(K, F, opt.k, FieldSpec{opt.field});
  std::string csv_path = opt.out.empty() ? "diagram.csv" : opt.out;
  std::string svg_path =
      opt.svg.empty() ? std::filesystem::path(csv_path).replace_extension(".svg").string()
                      : opt.svg;
  write_diagram_csv(csv_path, D);
  write_diagram_svg(svg_path, D);

  ordered_json j;
  j["csv"] = csv_path;
  j["svg"] = svg_path;
  j["degree"] = D.degree;
  j["proper_points"] = D.proper_count();
  j["essential_points"] = D.essential_count();
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

// --- match -------------------------------------------------------------------

template <class T>
PersistenceDiagram<T> diagram_from_any(const std::string& spec, const Options& opt) {
  if (spec.ends_with(".csv"))
    return read_diagram_csv<T>(spec, opt.k_given ? std::optional<unsigned>(opt.k) : std::nullopt);
  auto input = load_input<T>(spec);
  if (input.filtration.components != 1)
    throw IoError(spec + ": match needs a 1-D input (n = 1) or a diagram CSV");
  std::vector<T> vertex_values;
  for (const auto& row : input.filtration.values) vertex_values.push_back(row[0]);
  return diagram_of(input.complex, extend_by_max(input.complex, vertex_values), opt.k,
                    FieldSpec{opt.field});
}

template <class T>
int cmd_match(const Options& opt) {
  if (opt.inputs.size() != 2) throw IoError("match expects exactly two inputs");
  auto D1 = diagram_from_any<T>(opt.inputs[0], opt);
  auto D2 = diagram_from_any<T>(opt.inputs[1], opt);
  auto d = d_match(D1, D2);  // essential-count mismatch emits "inf", not an error
  ordered_json j;
  j["distance"] = json_extended(d);
  attach_exact(j, "distance", d);
  emit(j, opt.out);
  return kExitOk;
}

// --- mdmatch -----------------------------------------------------------------

template <class T>
int cmd_mdmatch(const Options& opt) {
  if (opt.inputs.size() != 2) throw IoError("mdmatch expects exactly two inputs");
  auto X = load_input<T>(opt.inputs[0]);
  auto Y = load_input<T>(opt.inputs[1]);
  if (X.filtration.components != Y.filtration.components)
    throw IoError("inputs have different filtration dimensions");
  GridSpec grid = parse_grid(opt, default_offset_bound(X.filtration, Y.filtration));
  auto sup = dmatch_nd(X.complex, X.filtration, Y.complex, Y.filtration, opt.k,
                       parse_scheme(opt.scheme), grid, FieldSpec{opt.field}, opt.threads);
  ordered_json j;
  j["value"] = json_extended(sup.value);
  attach_exact(j, "value", sup.value);
  j["argmax_pair"] = pair_to_json(sup.argmax);
  j["grid"] = {{"direction_resolution", grid.direction_resolution},
               {"offset_resolution", grid.offset_resolution},
               {"offset_bound", grid.offset_bound},
               {"leaves", sup.leaves_evaluated}};
  j["lower_bound"] = true;  // sampled value never exceeds the true sup
  if (opt.timings) j["elapsed_ms"] = sup.elapsed_ms;
  emit(j, opt.out);
  return kExitOk;
}

// --- invariance ----------------------------------------------------------------

template <class T>
int cmd_invariance(const Options& opt) {
  if (opt.inputs.size() != 2) throw IoError("invariance expects exactly two inputs");
  auto X = load_input<T>(opt.inputs[0]);
  auto Y = load_input<T>(opt.inputs[1]);
  if (X.filtration.components != Y.filtration.components)
    throw IoError("inputs have different filtration dimensions");
  unsigned n = X.filtration.components;
  auto schemes = parse_schemes(opt.scheme);

  Rng rng(opt.seed);
  std::vector<std::pair<std::vector<T>, std::vector<T>>> probes;
  for (unsigned i = 0; i < opt.probes; ++i) probes.push_back(random_probe<T>(rng, n));

  GridSpec grid = parse_grid(opt, default_offset_bound(X.filtration, Y.filtration));
  auto report = invariance_report(X.complex, X.filtration, Y.complex, Y.filtration, opt.k,
                                  schemes, probes, grid, FieldSpec{opt.field}, opt.threads);

  ordered_json j;
  j["schemes"] = report.scheme_names;
  j["probe_count"] = report.probes.size();
  j["max_probe_discrepancy"] = report.max_probe_discrepancy;
  j["grid_discrepancy"] = report.grid_discrepancy;
  j["max_discrepancy"] = report.max_discrepancy();
  j["tolerance"] = opt.tol;
  j["grid"] = {{"direction_resolution", report.grid_spec.direction_resolution},
               {"offset_resolution", report.grid_spec.offset_resolution},
               {"offset_bound", report.grid_spec.offset_bound}};
  j["probes"] = ordered_json::array();
  for (const auto& row : report.probes) {
    ordered_json r;
    r["u"] = row.u;
    r["v"] = row.v;
    r["values"] = ordered_json::array();
    for (double v : row.values)
      r["values"].push_back(std::isinf(v) ? ordered_json("inf") : ordered_json(v));
    r["discrepancy"] = row.discrepancy;
    j["probes"].push_back(std::move(r));
  }
  j["grid_sup"] = ordered_json::array();
  for (const auto& row : report.grid) {
    ordered_json r;
    r["scheme"] = row.scheme;
    r["value"] = std::isinf(row.value) ? ordered_json("inf") : ordered_json(row.value);
    r["argmax_direction"] = row.argmax_direction;
    r["argmax_offset"] = row.argmax_offset;
    r["leaves"] = row.leaves;
    if (opt.timings) r["elapsed_ms"] = row.elapsed_ms;
    j["grid_sup"].push_back(std::move(r));
  }
  bool ok = report.max_discrepancy() <= opt.tol;
  j["within_tolerance"] = ok;
  emit(j, opt.out);
  return ok ? kExitOk : kExitViolation;
}

// --- oracle --------------------------------------------------------------------

template <class T>
struct OracleOutcome {
  std::size_t rank_checks = 0;
  std::size_t multiplicity_checks = 0;
  std::vector<std::string> disagreements;
};

// Triple agreement on the critical grid: quadrant counting from the diagram,
// the epsilon multiplicity formulas, and the direct rank oracle must tell
// one story.
template <class T>
OracleOutcome<T> oracle_check(const SimplicialComplex& K, const VectorFiltration<T>& phi,
                              unsigned k, const FieldSpec& field) {
  OracleOutcome<T> outcome;
  std::vector<T> vertex_values;
  for (const auto& row : phi.values) vertex_values.push_back(row[0]);
  auto F = extend_by_max(K, vertex_values);
  auto D = diagram_of(K, F, k, field);
  auto rank = [&](const T& u, const T& v) { return rank_oracle(K, F, k, u, v, field); };

  std::vector<T> criticals;
  for (const auto& level : F.values)
    for (const T& v : level) criticals.push_back(v);
  std::sort(criticals.begin(), criticals.end());
  criticals.erase(std::unique(criticals.begin(), criticals.end()), criticals.end());
  T eps = default_epsilon(criticals);

  for (const T& u : criticals) {
    for (const T& v : criticals) {
      if (!(u + eps < v - eps)) continue;
      unsigned stored = 0;
      for (const auto& p : D.proper)
        if (p.birth == u && p.death == v) stored = p.multiplicity;
      unsigned measured = multiplicity_proper<T>(rank, u, v, eps);
      ++outcome.multiplicity_checks;
      if (measured != stored)
        outcome.disagreements.push_back(
            "multiplicity at (" + scalar_to_string(u) + "," + scalar_to_string(v) + "): diagram " +
            std::to_string(stored) + " vs oracle " + std::to_string(measured));
    }
    unsigned stored = 0;
    for (const auto& e : D.essential)
      if (e.birth == u) stored = e.multiplicity;
    unsigned measured = multiplicity_infinity<T>(rank, u, eps);
    ++outcome.multiplicity_checks;
    if (measured != stored)
      outcome.disagreements.push_back("multiplicity at (" + scalar_to_string(u) +
                                      ",inf): diagram " + std::to_string(stored) + " vs oracle " +
                                      std::to_string(measured));
  }

  std::vector<T> grid_points{criticals.front() - T(1)};
  for (std::size_t i = 1; i < criticals.size(); ++i)
    grid_points.push_back((criticals[i - 1] + criticals[i]) / T(2));
  grid_points.push_back(criticals.back() + T(1));
  for (std::size_t i = 0; i < grid_points.size(); ++i)
    for (std::size_t j = i + 1; j < grid_points.size(); ++j) {
      unsigned via_diagram = rank_from_diagram(D, grid_points[i], grid_points[j]);
      unsigned via_oracle = rank(grid_points[i], grid_points[j]);
      ++outcome.rank_checks;
      if (via_diagram != via_oracle)
        outcome.disagreements.push_back(
            "rank at (" + scalar_to_string(grid_points[i]) + "," +
            scalar_to_string(grid_points[j]) + "): diagram " + std::to_string(via_diagram) +
            " vs oracle " + std::to_string(via_oracle));
    }
  return outcome;
}

template <class T>
int cmd_oracle(const Options& opt) {
  FieldSpec field{opt.field};
  ordered_json j;
  j["degree"] = opt.k;
  std::size_t rank_checks = 0, multiplicity_checks = 0;
  std::vector<std::string> disagreements;

  if (opt.random_count > 0) {
    Rng rng(opt.seed);
    for (unsigned i = 0; i < opt.random_count; ++i) {
      Rng sub = rng.fork(i);
      auto K = random_clique_complex(sub);
      auto phi = random_filtration<T>(sub, K, 1, 8);
      auto outcome = oracle_check(K, phi, opt.k, field);
      rank_checks += outcome.rank_checks;
      multiplicity_checks += outcome.multiplicity_checks;
      for (const auto& d : outcome.disagreements)
        disagreements.push_back("random[" + std::to_string(i) + "] " + d);
    }
    j["complexes"] = opt.random_count;
    j["seed"] = opt.seed;
  } else {
    if (opt.inputs.size() != 1) throw IoError("oracle expects one input (or --random N)");
    auto input = load_input<T>(opt.inputs[0]);
    if (input.filtration.components != 1)
      throw IoError("oracle requires a 1-component filtration");
    auto outcome = oracle_check(input.complex, input.filtration, opt.k, field);
    rank_checks = outcome.rank_checks;
    multiplicity_checks = outcome.multiplicity_checks;
    disagreements = outcome.disagreements;
    j["complexes"] = 1;

    if (!opt.diagram_csv.empty()) {
      std::vector<T> vertex_values;
      for (const auto& row : input.filtration.values) vertex_values.push_back(row[0]);
      auto computed =
          diagram_of(input.complex, extend_by_max(input.complex, vertex_values), opt.k, field);
      auto claimed = read_diagram_csv<T>(opt.diagram_csv, opt.k);
      double tol = is_rational_v<T> ? 0 : 1e-12;
      if (!diagrams_match(computed, claimed, tol))
        disagreements.push_back("diagram file " + opt.diagram_csv +
                                " does not match the computed diagram");
      j["diagram_checked"] = opt.diagram_csv;
    }
  }

  j["rank_checks"] = rank_checks;
  j["multiplicity_checks"] = multiplicity_checks;
  j["disagreements"] = disagreements;
  emit(j, opt.out);
  return disagreements.empty() ? kExitOk : kExitViolation;
}

template <class Fn>
int run_with_mode(const std::string& mode, Fn&& fn) {
  if (mode == "rational") return fn(std::type_identity<Rational>{});
  return fn(std::type_identity<double>{});
}

void add_common_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--mode", opt.mode, "numeric mode")
      ->check(CLI::IsMember({"rational", "float"}));
  cmd->add_option("--k", opt.k, "homology degree");
  cmd->add_option("--field", opt.field, "field characteristic (prime)");
  cmd->add_option("--seed", opt.seed, "random seed");
  cmd->add_option("--tol", opt.tol, "tolerance for property checks");
  cmd->add_option("--out", opt.out, "output path (default: stdout)");
  cmd->add_option("--threads", opt.threads, "worker threads (0 = auto)");
  cmd->add_flag("--timings", opt.timings, "include wall-clock timings in reports");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multidimensional persistent homology rank invariants, matching distances, and "
               "foliation invariance checks"};
  app.require_subcommand(1);
  Options opt;

  auto* diagram = app.add_subcommand("diagram", "persistence diagram CSV + SVG of one input");
  diagram->add_option("input", opt.inputs, "complex input (.json or mesh.off:values.csv)")
      ->expected(1);
  diagram->add_option("--scheme", opt.scheme, "scheme for --pair/--point (adm|ladm|pnorm:<p>)");
  diagram->add_option("--pair", opt.pair_spec, "admissible pair \"l1,l2;b1,b2\"");
  diagram->add_option("--point", opt.point_spec, "point of Delta+ \"u1,u2;v1,v2\"");
  diagram->add_option("--svg", opt.svg, "SVG output path (default: CSV path with .svg)");
  add_common_flags(diagram, opt);

  auto* match = app.add_subcommand("match", "matching distance between two inputs");
  match->add_option("inputs", opt.inputs, "two 1-D inputs or diagram CSVs")->expected(2);
  add_common_flags(match, opt);

  auto* mdmatch = app.add_subcommand("mdmatch", "sampled multidimensional matching distance");
  mdmatch->add_option("inputs", opt.inputs, "two complex inputs")->expected(2);
  mdmatch->add_option("--scheme", opt.scheme, "scheme (adm|ladm|pnorm:<p>)");
  mdmatch->add_option("--grid", opt.grid, "leaf grid <dirs>x<offsets>");
  mdmatch->add_option("--offset-bound", opt.offset_bound, "offset bound (default: value range)");
  add_common_flags(mdmatch, opt);

  auto* invariance = app.add_subcommand("invariance", "cross-scheme invariance report");
  invariance->add_option("inputs", opt.inputs, "two complex inputs")->expected(2);
  invariance->add_option("--scheme", opt.scheme, "comma-separated schemes, e.g. adm,ladm");
  invariance->add_option("--grid", opt.grid, "leaf grid <dirs>x<offsets>");
  invariance->add_option("--offset-bound", opt.offset_bound,
                         "offset bound (default: value range)");
  invariance->add_option("--probes", opt.probes, "number of random probe points");
  add_common_flags(invariance, opt);

  auto* oracle = app.add_subcommand("oracle", "rank/pairs/diagram cross-check");
  oracle->add_option("input", opt.inputs, "1-D complex input")->expected(0, 1);
  oracle->add_option("--diagram", opt.diagram_csv, "diagram CSV to verify against the input");
  oracle->add_option("--random", opt.random_count, "check N seeded random complexes instead");
  add_common_flags(oracle, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;  // exit-code contract: bad usage is 2
  }
  for (CLI::App* cmd : {diagram, match, mdmatch, invariance, oracle})
    if (cmd->parsed() && cmd->count("--k") > 0) opt.k_given = true;

  try {
    if (*diagram)
      return run_with_mode(opt.mode, [&](auto tag) {
        return cmd_diagram<typename decltype(tag)::type>(opt);
      });
    if (*match)
      return run_with_mode(opt.mode, [&](auto tag) {
        return cmd_match<typename decltype(tag)::type>(opt);
      });
    if (*mdmatch)
      return run_with_mode(opt.mode, [&](auto tag) {
        return cmd_mdmatch<typename decltype(tag)::type>(opt);
      });
    if (*invariance)
      return run_with_mode(opt.mode, [&](auto tag) {
        return cmd_invariance<typename decltype(tag)::type>(opt);
      });
    if (*oracle)
      return run_with_mode(opt.mode, [&](auto tag) {
        return cmd_oracle<typename decltype(tag)::type>(opt);
      });
  } catch (const IoError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
