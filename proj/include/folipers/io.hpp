// File formats: complex+filtration inputs (JSON, or OFF mesh + CSV values),
// diagram CSV with an "inf" token, and a static SVG rendering of a diagram.
#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "folipers/diagram.hpp"
#include "folipers/scalar.hpp"

namespace folipers {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
struct ComplexInput {
  SimplicialComplex complex;
  VectorFiltration<T> filtration;
};

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T>
T scalar_from_json(const nlohmann::json& j) {
  if (j.is_string()) return scalar_from_string<T>(j.get<std::string>());
  if (j.is_number_integer()) return scalar_from_int<T>(j.get<long long>());
  if (j.is_number()) return scalar_from_double<T>(j.get<double>());
  throw IoError("expected a number or numeric string in input");
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  return out;
}

inline std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace detail

/// {"n": ..., "vertex_values": [[...],...], "simplices": [[...],...]}
/// Values may be JSON numbers or strings ("1/3", "0.25") — strings keep
/// rational mode exact for non-dyadic inputs.
template <class T>
ComplexInput<T> load_complex_json(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::slurp(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
  if (!j.contains("n") || !j.contains("vertex_values") || !j.contains("simplices"))
    throw IoError(path + ": need fields n, vertex_values, simplices");
  ComplexInput<T> input;
  std::vector<Simplex> simplices;
  for (const auto& js : j["simplices"]) {
    Simplex s;
    for (const auto& v : js) s.push_back(v.get<VertexId>());
    simplices.push_back(std::move(s));
  }
  try {
    input.complex = build_complex(simplices);
  } catch (const std::invalid_argument& e) {
    throw IoError(path + ": " + e.what());
  }
  input.filtration.components = j["n"].get<unsigned>();
  for (const auto& row : j["vertex_values"]) {
    std::vector<T> values;
    for (const auto& x : row) values.push_back(detail::scalar_from_json<T>(x));
    input.filtration.values.push_back(std::move(values));
  }
  try {
    check_filtration(input.complex, input.filtration);
  } catch (const std::invalid_argument& e) {
    throw IoError(path + ": " + e.what());
  }
  return input;
}

/// OFF mesh (vertex coordinates ignored) paired with a CSV of per-vertex
/// function values, one row per vertex, n columns.
template <class T>
ComplexInput<T> load_complex_off(const std::string& off_path, const std::string& values_path) {
  std::istringstream in(detail::slurp(off_path));
  std::string token;
  auto next = [&]() -> std::string {
    while (in >> token) {
      if (token[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return token;
    }
    throw IoError(off_path + ": truncated OFF file");
  };
  if (next() != "OFF") throw IoError(off_path + ": missing OFF header");
  std::size_t nv = std::stoull(next());
  std::size_t nf = std::stoull(next());
  next();  // edge count, unused
  for (std::size_t i = 0; i < nv * 3; ++i) next();
  std::vector<Simplex> simplices;
  for (VertexId v = 0; v < nv; ++v) simplices.push_back({v});
  for (std::size_t f = 0; f < nf; ++f) {
    std::size_t arity = std::stoull(next());
    Simplex s;
    for (std::size_t i = 0; i < arity; ++i)
      s.push_back(static_cast<VertexId>(std::stoul(next())));
    simplices.push_back(std::move(s));
  }

  ComplexInput<T> input;
  try {
    input.complex = build_complex(simplices);
  } catch (const std::invalid_argument& e) {
    throw IoError(off_path + ": " + e.what());
  }
  std::istringstream values_in(detail::slurp(values_path));
  std::string line;
  while (std::getline(values_in, line)) {
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<T> row;
    for (const std::string& field : detail::split(line, ','))
      row.push_back(scalar_from_string<T>(detail::trim(field)));
    input.filtration.values.push_back(std::move(row));
  }
  if (input.filtration.values.empty()) throw IoError(values_path + ": no value rows");
  input.filtration.components = static_cast<unsigned>(input.filtration.values.front().size());
  try {
    check_filtration(input.complex, input.filtration);
  } catch (const std::invalid_argument& e) {
    throw IoError(values_path + ": " + e.what());
  }
  return input;
}

// --- diagram CSV ---------------------------------------------------------

template <class T>
void write_diagram_csv(std::ostream& out, const PersistenceDiagram<T>& D) {
  out << "u,v,multiplicity,degree\n";
  for (const auto& p : D.proper)
    out << scalar_to_string(p.birth) << ',' << scalar_to_string(p.death) << ','
        << p.multiplicity << ',' << D.degree << '\n';
  for (const auto& e : D.essential)
    out << scalar_to_string(e.birth) << ",inf," << e.multiplicity << ',' << D.degree << '\n';
}

template <class T>
void write_diagram_csv(const std::string& path, const PersistenceDiagram<T>& D) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_diagram_csv(out, D);
}

/// Reads a diagram CSV. With `degree` set, keeps only that degree's rows;
/// otherwise requires the file to hold a single degree.
template <class T>
PersistenceDiagram<T> read_diagram_csv(const std::string& path,
                                       std::optional<unsigned> degree = std::nullopt) {
  std::istringstream in(detail::slurp(path));
  std::string line;
  PersistenceDiagram<T> D;
  bool degree_seen = false;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!header_skipped) {
      header_skipped = true;
      if (line.rfind("u,", 0) == 0) continue;  // header row
    }
    auto fields = detail::split(line, ',');
    if (fields.size() != 4) throw IoError(path + ": expected 4 columns, got: " + line);
    unsigned row_degree = static_cast<unsigned>(std::stoul(detail::trim(fields[3])));
    if (degree && row_degree != *degree) continue;
    if (!degree) {
      if (degree_seen && row_degree != D.degree)
        throw IoError(path + ": multiple degrees present; pass --k to select one");
      D.degree = row_degree;
      degree_seen = true;
    } else {
      D.degree = *degree;
    }
    T birth = scalar_from_string<T>(detail::trim(fields[0]));
    unsigned mult = static_cast<unsigned>(std::stoul(detail::trim(fields[2])));
    std::string death = detail::trim(fields[1]);
    if (death == "inf")
      D.essential.push_back({std::move(birth), mult});
    else {
      T d = scalar_from_string<T>(death);
      if (!(birth < d)) throw IoError(path + ": birth >= death in row: " + line);
      D.proper.push_back({std::move(birth), std::move(d), mult});
    }
  }
  // canonical form: sorted, duplicate rows merged into multiplicity
  std::sort(D.essential.begin(), D.essential.end(),
            [](const auto& a, const auto& b) { return a.birth < b.birth; });
  std::sort(D.proper.begin(), D.proper.end(), [](const auto& a, const auto& b) {
    return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
  });
  std::vector<ProperPoint<T>> proper;
  for (auto& p : D.proper) {
    if (!proper.empty() && proper.back().birth == p.birth && proper.back().death == p.death)
      proper.back().multiplicity += p.multiplicity;
    else
      proper.push_back(std::move(p));
  }
  D.proper = std::move(proper);
  std::vector<EssentialLine<T>> essential;
  for (auto& e : D.essential) {
    if (!essential.empty() && essential.back().birth == e.birth)
      essential.back().multiplicity += e.multiplicity;
    else
      essential.push_back(std::move(e));
  }
  D.essential = std::move(essential);
  return D;
}

// --- SVG plot -------------------------------------------------------------

// Static plot of Delta+: proper cornerpoints as dots, cornerpoints at
// infinity as vertical rays, diagonal dashed.
template <class T>
std::string diagram_svg(const PersistenceDiagram<T>& D) {
  double lo = 0, hi = 1;
  bool any = false;
  auto stretch = [&](double x) {
    lo = any ? std::min(lo, x) : x;
    hi = any ? std::max(hi, x) : x;
    any = true;
  };
  for (const auto& p : D.proper) {
    stretch(to_double(p.birth));
    stretch(to_double(p.death));
  }
  for (const auto& e : D.essential) stretch(to_double(e.birth));
  double pad = (hi - lo) < 1e-9 ? 1.0 : (hi - lo) * 0.15;
  lo -= pad;
  hi += pad;
  const double size = 420, margin = 40;
  double scale = (size - 2 * margin) / (hi - lo);
  auto px = [&](double u) { return margin + (u - lo) * scale; };
  auto py = [&](double v) { return size - margin - (v - lo) * scale; };
  auto fmt = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return std::string(buf);
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << fmt(px(lo)) << "\" y1=\"" << fmt(py(lo)) << "\" x2=\"" << fmt(px(hi))
      << "\" y2=\"" << fmt(py(hi)) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  for (const auto& e : D.essential) {
    double u = to_double(e.birth);
    svg << "<line x1=\"" << fmt(px(u)) << "\" y1=\"" << fmt(py(u)) << "\" x2=\"" << fmt(px(u))
        << "\" y2=\"" << fmt(margin / 2) << "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << fmt(px(u) + 4) << "\" y=\"" << fmt(margin) << "\" font-size=\"11\">x"
        << e.multiplicity << "</text>\n";
  }
  for (const auto& p : D.proper) {
    svg << "<circle cx=\"" << fmt(px(to_double(p.birth))) << "\" cy=\""
        << fmt(py(to_double(p.death))) << "\" r=\"4\" fill=\"#1f77b4\"/>\n";
    if (p.multiplicity > 1)
      svg << "<text x=\"" << fmt(px(to_double(p.birth)) + 6) << "\" y=\""
          << fmt(py(to_double(p.death)) - 6) << "\" font-size=\"11\">x" << p.multiplicity
          << "</text>\n";
  }
  svg << "<text x=\"" << fmt(size / 2) << "\" y=\"" << fmt(size - 8)
      << "\" font-size=\"12\" text-anchor=\"middle\">degree " << D.degree << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

template <class T>
void write_diagram_svg(const std::string& path, const PersistenceDiagram<T>& D) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << diagram_svg(D);
}

}  // namespace folipers
