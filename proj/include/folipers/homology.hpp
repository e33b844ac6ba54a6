// Simplicial homology over GF(p): Betti numbers, persistence pairs of a
// monotone scalar filtration, and a rank oracle that evaluates the rank of
// the inclusion-induced map H_k(K_u) -> H_k(K_v) directly from cycle and
// boundary spaces, with no persistence algorithm in the loop.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "folipers/complex.hpp"
#include "folipers/field.hpp"

namespace folipers {

template <class T>
struct PersistencePairs {
  unsigned degree = 0;
  std::vector<std::pair<T, T>> finite;  // (birth, death), birth < death
  std::vector<T> essential;             // births of essential classes
};

namespace detail {

// Boundary of K.simplices(dim)[idx] as (row, positive_sign) pairs, rows given
// by `row_of`. Vertices are sorted, so the facet omitting position i carries
// sign (-1)^i.
template <class RowOf>
std::vector<std::pair<std::size_t, bool>> boundary_rows(const SimplicialComplex& K, unsigned dim,
                                                        std::size_t idx, RowOf row_of) {
  std::vector<std::pair<std::size_t, bool>> out;
  if (dim == 0) return out;
  const Simplex& sigma = K.simplices(dim)[idx];
  bool positive = true;
  for (const Simplex& f : facets(sigma)) {
    auto fi = K.index_of(f);
    if (!fi) throw std::logic_error("complex is not face-closed");
    out.emplace_back(row_of(dim - 1, *fi), positive);
    positive = !positive;
  }
  return out;
}

template <class Col, class MakeCol>
std::size_t boundary_rank(const SimplicialComplex& K, unsigned dim, std::uint32_t p,
                          MakeCol make_col) {
  // rank of the map C_dim -> C_{dim-1}
  if (dim == 0 || static_cast<int>(dim) > K.top_dimension()) return 0;
  std::size_t rows = K.simplices(dim - 1).size();
  std::vector<Col> cols;
  cols.reserve(K.simplices(dim).size());
  for (std::size_t j = 0; j < K.simplices(dim).size(); ++j) {
    Col c = make_col(rows);
    for (auto [row, positive] : boundary_rows(K, dim, j, [](unsigned, std::size_t i) { return i; }))
      c.set(row, positive ? 1 : p - 1);
    cols.push_back(std::move(c));
  }
  return column_rank(std::move(cols));
}

template <class Col, class MakeCol>
unsigned betti_impl(const SimplicialComplex& K, unsigned k, std::uint32_t p, MakeCol make_col) {
  if (static_cast<int>(k) > K.top_dimension()) return 0;
  std::size_t cycles = K.simplices(k).size() - boundary_rank<Col>(K, k, p, make_col);
  std::size_t boundaries = boundary_rank<Col>(K, k + 1, p, make_col);
  return static_cast<unsigned>(cycles - boundaries);
}

// Rank of H_k(K_u) -> H_k(K_v) for sublevel masks K_u <= K_v of K:
// dim(Z_k(K_u) + B_k(K_v)) - dim B_k(K_v), all in the global C_k of K.
template <class Col, class MakeCol>
unsigned rank_between_impl(const SimplicialComplex& K,
                           const std::vector<std::vector<char>>& mask_u,
                           const std::vector<std::vector<char>>& mask_v, unsigned k,
                           std::uint32_t p, MakeCol make_col) {
  auto in_mask = [](const std::vector<std::vector<char>>& m, unsigned dim, std::size_t i) {
    return dim < m.size() && m[dim][i];
  };
  std::size_t k_rows = K.simplices(k).size();

  // cycle space of K_u in degree k
  std::vector<std::size_t> u_cells;
  for (std::size_t i = 0; i < k_rows; ++i)
    if (in_mask(mask_u, k, i)) u_cells.push_back(i);

  std::vector<Col> joint;  // Z columns followed by B columns
  if (k == 0) {
    for (std::size_t i : u_cells) {  // every vertex chain is a cycle
      Col c = make_col(k_rows);
      c.set(i, 1);
      joint.push_back(std::move(c));
    }
  } else if (!u_cells.empty()) {
    std::size_t face_rows = K.simplices(k - 1).size();
    std::vector<Col> boundary;
    boundary.reserve(u_cells.size());
    for (std::size_t i : u_cells) {
      Col c = make_col(face_rows);
      for (auto [row, positive] :
           boundary_rows(K, k, i, [](unsigned, std::size_t f) { return f; }))
        c.set(row, positive ? 1 : p - 1);
      boundary.push_back(std::move(c));
    }
    for (const Col& ker : kernel_basis(std::move(boundary), make_col)) {
      Col c = make_col(k_rows);  // re-embed local kernel coordinates
      for (std::size_t local = 0; local < u_cells.size(); ++local)
        if (auto coeff = ker.at(local)) c.set(u_cells[local], coeff);
      joint.push_back(std::move(c));
    }
  }

  std::vector<Col> bv;  // boundaries of (k+1)-simplices of K_v
  for (std::size_t j = 0; j < K.simplices(k + 1).size(); ++j)
    if (in_mask(mask_v, k + 1, j)) {
      Col c = make_col(k_rows);
      for (auto [row, positive] :
           boundary_rows(K, k + 1, j, [](unsigned, std::size_t f) { return f; }))
        c.set(row, positive ? 1 : p - 1);
      bv.push_back(std::move(c));
    }

  std::size_t rank_b = column_rank(bv);  // copy: joint still needs the columns
  for (Col& c : bv) joint.push_back(std::move(c));
  return static_cast<unsigned>(column_rank(std::move(joint)) - rank_b);
}

template <class Col, class T, class MakeCol>
PersistencePairs<T> persistence_pairs_impl(const SimplicialComplex& K,
                                           const ScalarFiltration<T>& F, unsigned k,
                                           std::uint32_t p, MakeCol make_col) {
  struct Cell {
    unsigned dim;
    std::size_t idx;
  };
  PersistencePairs<T> out;
  out.degree = k;
  std::vector<Cell> order;
  int top = K.top_dimension();
  if (top < 0) return out;
  for (int d = 0; d <= top; ++d)
    for (std::size_t i = 0; i < K.simplices(static_cast<unsigned>(d)).size(); ++i)
      order.push_back({static_cast<unsigned>(d), i});
  // total order refining F: (value, dimension, lexicographic vertex list)
  std::sort(order.begin(), order.end(), [&](const Cell& a, const Cell& b) {
    const T& fa = F.at(a.dim, a.idx);
    const T& fb = F.at(b.dim, b.idx);
    if (fa != fb) return fa < fb;
    if (a.dim != b.dim) return a.dim < b.dim;
    return K.simplices(a.dim)[a.idx] < K.simplices(b.dim)[b.idx];
  });
  std::vector<std::vector<std::size_t>> position(static_cast<std::size_t>(top) + 1);
  for (int d = 0; d <= top; ++d)
    position[static_cast<std::size_t>(d)].resize(K.simplices(static_cast<unsigned>(d)).size());
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    position[order[pos].dim][order[pos].idx] = pos;

  std::size_t m = order.size();
  std::vector<Col> cols;
  cols.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    Col c = make_col(m);
    for (auto [row, positive] :
         boundary_rows(K, order[j].dim, order[j].idx,
                       [&](unsigned dim, std::size_t i) { return position[dim][i]; }))
      c.set(row, positive ? 1 : p - 1);
    cols.push_back(std::move(c));
  }

  std::vector<std::optional<std::size_t>> pivot_owner(m);
  std::vector<char> paired(m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    auto lo = cols[j].low();
    while (lo && pivot_owner[*lo]) {
      const Col& owner = cols[*pivot_owner[*lo]];
      cols[j].axpy(cols[j].elimination_factor(cols[j].at(*lo), owner.at(*lo)), owner);
      lo = cols[j].low();
    }
    if (lo) {
      pivot_owner[*lo] = j;
      paired[*lo] = paired[j] = 1;
      const Cell& birth = order[*lo];
      if (birth.dim == k) {
        const T& b = F.at(birth.dim, birth.idx);
        const T& d = F.at(order[j].dim, order[j].idx);
        if (b < d) out.finite.emplace_back(b, d);  // zero-persistence pairs dropped
      }
    }
  }
  for (std::size_t j = 0; j < m; ++j)
    if (!paired[j] && order[j].dim == k) out.essential.push_back(F.at(order[j].dim, order[j].idx));
  std::sort(out.finite.begin(), out.finite.end());
  std::sort(out.essential.begin(), out.essential.end());
  return out;
}

template <class Fn>
auto with_field(const FieldSpec& field, Fn&& fn) {
  check_field(field);
  if (field.characteristic == 2)
    return fn([](std::size_t rows) { return Gf2Column(rows); });
  return fn([p = field.characteristic](std::size_t rows) { return GfpColumn(rows, p); });
}

}  // namespace detail

/// dim H_k(K) over the given field.
inline unsigned betti(const SimplicialComplex& K, unsigned k, const FieldSpec& field = {}) {
  return detail::with_field(field, [&](auto make_col) {
    using Col = decltype(make_col(std::size_t(0)));
    return detail::betti_impl<Col>(K, k, field.characteristic, make_col);
  });
}

/// Persistence pairs in degree k of a monotone per-simplex filtration,
/// reduced over a deterministic total order refining F. Zero-persistence
/// pairs are discarded.
template <class T>
PersistencePairs<T> persistence_pairs(const SimplicialComplex& K, const ScalarFiltration<T>& F,
                                      unsigned k, const FieldSpec& field = {}) {
  if (!is_monotone(K, F))
    throw std::invalid_argument("persistence_pairs: filtration is not monotone");
  return detail::with_field(field, [&](auto make_col) {
    using Col = decltype(make_col(std::size_t(0)));
    return detail::persistence_pairs_impl<Col, T>(K, F, k, field.characteristic, make_col);
  });
}

/// Rank invariant rho_{(K,phi),k}(u, v) for u strictly below v componentwise.
template <class T>
unsigned rank_oracle(const SimplicialComplex& K, const VectorFiltration<T>& phi, unsigned k,
                     const std::vector<T>& u, const std::vector<T>& v,
                     const FieldSpec& field = {}) {
  if (u.size() != phi.components || v.size() != phi.components)
    throw std::invalid_argument("rank_oracle: point size != n");
  if (!lt_strict_componentwise(u, v))
    throw std::invalid_argument("rank_oracle: u must be strictly below v in every coordinate");
  auto mask_u = sublevel_mask(K, phi, u);
  auto mask_v = sublevel_mask(K, phi, v);
  return detail::with_field(field, [&](auto make_col) {
    using Col = decltype(make_col(std::size_t(0)));
    return detail::rank_between_impl<Col>(K, mask_u, mask_v, k, field.characteristic, make_col);
  });
}

/// Same rank, for sublevels of a monotone per-simplex filtration at s < t.
template <class T>
unsigned rank_oracle(const SimplicialComplex& K, const ScalarFiltration<T>& F, unsigned k,
                     const T& s, const T& t, const FieldSpec& field = {}) {
  if (!(s < t)) throw std::invalid_argument("rank_oracle: s < t required");
  if (!is_monotone(K, F)) throw std::invalid_argument("rank_oracle: filtration is not monotone");
  auto mask_s = sublevel_mask(K, F, s);
  auto mask_t = sublevel_mask(K, F, t);
  return detail::with_field(field, [&](auto make_col) {
    using Col = decltype(make_col(std::size_t(0)));
    return detail::rank_between_impl<Col>(K, mask_s, mask_t, k, field.characteristic, make_col);
  });
}

}  // namespace folipers
