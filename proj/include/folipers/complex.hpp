// Finite simplicial complexes with vector-valued vertex filtrations and the
// sublevel machinery built on the componentwise-max (lower-star) extension.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "folipers/scalar.hpp"

namespace folipers {

using VertexId = std::uint32_t;
using Simplex = std::vector<VertexId>;  // sorted, duplicate-free

// Immutable face-closed complex; simplices are grouped by dimension and kept
// lexicographically sorted so indices are deterministic.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  SimplicialComplex(std::size_t vertex_count, std::vector<std::vector<Simplex>> by_dim)
      : vertex_count_(vertex_count), by_dim_(std::move(by_dim)) {}

  std::size_t vertex_count() const { return vertex_count_; }

  // Largest dimension holding any simplex; -1 for the empty complex.
  int top_dimension() const {
    for (int d = static_cast<int>(by_dim_.size()) - 1; d >= 0; --d)
      if (!by_dim_[static_cast<std::size_t>(d)].empty()) return d;
    return -1;
  }

  const std::vector<Simplex>& simplices(unsigned dim) const {
    static const std::vector<Simplex> empty;
    return dim < by_dim_.size() ? by_dim_[dim] : empty;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& level : by_dim_) n += level.size();
    return n;
  }
  bool empty() const { return size() == 0; }

  std::optional<std::size_t> index_of(const Simplex& sigma) const {
    if (sigma.empty()) return std::nullopt;
    unsigned dim = static_cast<unsigned>(sigma.size() - 1);
    if (dim >= by_dim_.size()) return std::nullopt;
    const auto& level = by_dim_[dim];
    auto it = std::lower_bound(level.begin(), level.end(), sigma);
    if (it != level.end() && *it == sigma) return static_cast<std::size_t>(it - level.begin());
    return std::nullopt;
  }
  bool contains(const Simplex& sigma) const { return index_of(sigma).has_value(); }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    int ta = a.top_dimension(), tb = b.top_dimension();
    if (ta != tb) return false;
    for (int d = 0; d <= ta; ++d)
      if (a.simplices(static_cast<unsigned>(d)) != b.simplices(static_cast<unsigned>(d))) return false;
    return true;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<std::vector<Simplex>> by_dim_;
};

// All codimension-1 faces of sigma, each sorted (input is sorted).
inline std::vector<Simplex> facets(const Simplex& sigma) {
  std::vector<Simplex> out;
  if (sigma.size() < 2) return out;
  out.reserve(sigma.size());
  for (std::size_t skip = 0; skip < sigma.size(); ++skip) {
    Simplex face;
    face.reserve(sigma.size() - 1);
    for (std::size_t i = 0; i < sigma.size(); ++i)
      if (i != skip) face.push_back(sigma[i]);
    out.push_back(std::move(face));
  }
  return out;
}

/// Builds a face-closed complex from maximal (or arbitrary) simplices.
/// Missing faces are added, duplicates merged. Throws on an empty input list,
/// an empty simplex, or a repeated vertex inside one simplex.
inline SimplicialComplex build_complex(const std::vector<Simplex>& simplices) {
  if (simplices.empty()) throw std::invalid_argument("build_complex: empty simplex list");
  std::set<Simplex> closed;
  VertexId max_vertex = 0;
  for (const Simplex& raw : simplices) {
    if (raw.empty()) throw std::invalid_argument("build_complex: empty simplex");
    Simplex sigma = raw;
    std::sort(sigma.begin(), sigma.end());
    if (std::adjacent_find(sigma.begin(), sigma.end()) != sigma.end())
      throw std::invalid_argument("build_complex: repeated vertex in simplex");
    max_vertex = std::max(max_vertex, sigma.back());
    // close under faces: walk down one dimension at a time
    std::vector<Simplex> frontier{sigma};
    while (!frontier.empty()) {
      std::vector<Simplex> next;
      for (Simplex& s : frontier) {
        auto [it, inserted] = closed.insert(std::move(s));
        if (inserted)
          for (Simplex& f : facets(*it)) next.push_back(std::move(f));
      }
      frontier = std::move(next);
    }
  }
  std::vector<std::vector<Simplex>> by_dim;
  for (const Simplex& s : closed) {
    unsigned dim = static_cast<unsigned>(s.size() - 1);
    if (dim >= by_dim.size()) by_dim.resize(dim + 1);
    by_dim[dim].push_back(s);
  }
  for (auto& level : by_dim) std::sort(level.begin(), level.end());
  return SimplicialComplex(static_cast<std::size_t>(max_vertex) + 1, std::move(by_dim));
}

// n-component vertex filtration; one value vector per vertex.
template <class T>
struct VectorFiltration {
  unsigned components = 1;                // n >= 1
  std::vector<std::vector<T>> values;     // [vertex][component]
};

template <class T>
void check_filtration(const SimplicialComplex& K, const VectorFiltration<T>& phi) {
  if (phi.components < 1) throw std::invalid_argument("filtration needs n >= 1 components");
  if (phi.values.size() != K.vertex_count())
    throw std::invalid_argument("filtration must assign exactly one value vector per vertex");
  for (const auto& v : phi.values) {
    if (v.size() != phi.components)
      throw std::invalid_argument("filtration value with wrong component count");
    if constexpr (!is_rational_v<T>)
      for (const T& x : v)
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite filtration value");
  }
}

template <class T>
bool leq_componentwise(const std::vector<T>& a, const std::vector<T>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] <= b[i])) return false;
  return true;
}

template <class T>
bool lt_strict_componentwise(const std::vector<T>& a, const std::vector<T>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] < b[i])) return false;
  return true;
}

/// Componentwise max of phi over the vertices of sigma. Throws if sigma is
/// not a simplex of K.
template <class T>
std::vector<T> simplex_value(const SimplicialComplex& K, const VectorFiltration<T>& phi,
                             const Simplex& sigma) {
  if (!K.contains(sigma)) throw std::invalid_argument("simplex_value: simplex not in complex");
  std::vector<T> out = phi.values.at(sigma.front());
  for (std::size_t i = 1; i < sigma.size(); ++i) {
    const auto& v = phi.values.at(sigma[i]);
    for (unsigned c = 0; c < phi.components; ++c)
      if (out[c] < v[c]) out[c] = v[c];
  }
  return out;
}

// Per-simplex scalar values aligned with the complex's (dim, index) layout.
template <class T>
struct ScalarFiltration {
  std::vector<std::vector<T>> values;  // [dim][simplex index]

  const T& at(unsigned dim, std::size_t index) const { return values.at(dim).at(index); }
};

/// Extends per-vertex scalar values to all simplices by max over vertices;
/// the result is monotone by construction.
template <class T>
ScalarFiltration<T> extend_by_max(const SimplicialComplex& K, const std::vector<T>& vertex_values) {
  if (vertex_values.size() != K.vertex_count())
    throw std::invalid_argument("extend_by_max: one value per vertex required");
  ScalarFiltration<T> F;
  int top = K.top_dimension();
  F.values.resize(top < 0 ? 0 : static_cast<std::size_t>(top) + 1);
  for (int d = 0; d <= top; ++d) {
    const auto& level = K.simplices(static_cast<unsigned>(d));
    F.values[static_cast<std::size_t>(d)].reserve(level.size());
    for (const Simplex& s : level) {
      T m = vertex_values[s.front()];
      for (std::size_t i = 1; i < s.size(); ++i)
        if (m < vertex_values[s[i]]) m = vertex_values[s[i]];
      F.values[static_cast<std::size_t>(d)].push_back(std::move(m));
    }
  }
  return F;
}

/// value(face) <= value(coface) for every codimension-1 incidence.
template <class T>
bool is_monotone(const SimplicialComplex& K, const ScalarFiltration<T>& F) {
  int top = K.top_dimension();
  for (int d = 1; d <= top; ++d) {
    const auto& level = K.simplices(static_cast<unsigned>(d));
    for (std::size_t i = 0; i < level.size(); ++i)
      for (const Simplex& f : facets(level[i])) {
        auto idx = K.index_of(f);
        if (!idx) return false;  // not face-closed
        if (!(F.at(static_cast<unsigned>(d) - 1, *idx) <= F.at(static_cast<unsigned>(d), i)))
          return false;
      }
  }
  return true;
}

namespace detail {

inline SimplicialComplex from_kept(const SimplicialComplex& K,
                                   const std::vector<std::vector<char>>& keep) {
  std::vector<std::vector<Simplex>> by_dim(keep.size());
  for (std::size_t d = 0; d < keep.size(); ++d) {
    const auto& level = K.simplices(static_cast<unsigned>(d));
    for (std::size_t i = 0; i < keep[d].size(); ++i)
      if (keep[d][i]) by_dim[d].push_back(level[i]);
  }
  return SimplicialComplex(K.vertex_count(), std::move(by_dim));
}

}  // namespace detail

// Membership masks of the sublevel complex X<phi <= u>, aligned with K.
template <class T>
std::vector<std::vector<char>> sublevel_mask(const SimplicialComplex& K,
                                             const VectorFiltration<T>& phi,
                                             const std::vector<T>& u) {
  check_filtration(K, phi);
  if (u.size() != phi.components) throw std::invalid_argument("sublevel: threshold size != n");
  int top = K.top_dimension();
  std::vector<char> vertex_in(K.vertex_count(), 0);
  for (std::size_t v = 0; v < K.vertex_count(); ++v)
    vertex_in[v] = leq_componentwise(phi.values[v], u) ? 1 : 0;
  std::vector<std::vector<char>> keep(top < 0 ? 0 : static_cast<std::size_t>(top) + 1);
  for (int d = 0; d <= top; ++d) {
    const auto& level = K.simplices(static_cast<unsigned>(d));
    keep[static_cast<std::size_t>(d)].resize(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) {
      bool in = true;
      for (VertexId v : level[i]) in = in && vertex_in[v];
      keep[static_cast<std::size_t>(d)][i] = in ? 1 : 0;
    }
  }
  return keep;
}

template <class T>
std::vector<std::vector<char>> sublevel_mask(const SimplicialComplex& K,
                                             const ScalarFiltration<T>& F, const T& s) {
  int top = K.top_dimension();
  std::vector<std::vector<char>> keep(top < 0 ? 0 : static_cast<std::size_t>(top) + 1);
  for (int d = 0; d <= top; ++d) {
    const auto& vals = F.values.at(static_cast<std::size_t>(d));
    keep[static_cast<std::size_t>(d)].resize(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i)
      keep[static_cast<std::size_t>(d)][i] = vals[i] <= s ? 1 : 0;
  }
  return keep;
}

/// The subcomplex of all simplices with simplex_value <= u (componentwise);
/// equivalently the full subcomplex on vertices with phi(v) <= u.
template <class T>
SimplicialComplex sublevel(const SimplicialComplex& K, const VectorFiltration<T>& phi,
                           const std::vector<T>& u) {
  return detail::from_kept(K, sublevel_mask(K, phi, u));
}

/// Sublevel of a monotone per-simplex filtration at level s.
template <class T>
SimplicialComplex sublevel(const SimplicialComplex& K, const ScalarFiltration<T>& F, const T& s) {
  return detail::from_kept(K, sublevel_mask(K, F, s));
}

}  // namespace folipers
