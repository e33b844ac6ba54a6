// Per-leaf matching distance, the sampled multidimensional matching
// distance (a lower bound for the sup over all leaves), and the
// cross-scheme invariance harness.
//
// Leaves are always sampled in sum-one coordinates and re-represented per
// scheme through leaf_through, so two schemes evaluated on the same grid
// see exactly the same half-planes; any discrepancy is then a failure of
// invariance, not of sampling.
#pragma once

#include <chrono>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "folipers/foliation.hpp"
#include "folipers/matching.hpp"

namespace folipers {

struct GridSpec {
  unsigned direction_resolution = 32;  // granularity of the open direction simplex
  unsigned offset_resolution = 16;     // per-axis granularity of the offset hyperplane
  double offset_bound = 1.0;           // max-norm cap on sampled offsets
};

// max |value| over both filtrations, floored at 1: offsets beyond the value
// range only reproduce sublevel behavior already sampled.
template <class T>
double default_offset_bound(const VectorFiltration<T>& phi, const VectorFiltration<T>& psi) {
  double bound = 1.0;
  for (const auto* f : {&phi, &psi})
    for (const auto& row : f->values)
      for (const T& x : row) bound = std::max(bound, std::abs(to_double(x)));
  return bound;
}

namespace detail {

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// Integer compositions a_1 + ... + a_n = r with a_i >= 1, emitted in
// lexicographic order; directions are a/r.
inline std::vector<std::vector<unsigned>> compositions(unsigned n, unsigned r) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> current(n, 1);
  auto rec = [&](auto&& self, unsigned index, unsigned remaining) -> void {
    if (index + 1 == n) {
      current[index] = remaining;
      out.push_back(current);
      return;
    }
    for (unsigned a = 1; a + (n - index - 1) <= remaining; ++a) {
      current[index] = a;
      self(self, index + 1, remaining - a);
    }
  };
  if (r >= n) rec(rec, 0, r);
  return out;
}

}  // namespace detail

// A sampled leaf in sum-one coordinates: direction on the open simplex,
// offset on the zero-sum hyperplane.
template <class T>
struct LeafSample {
  std::vector<T> direction;
  std::vector<T> offset;
};

/// Deterministic leaf grid. Directions are a/r over integer compositions of
/// r = direction_resolution (min coordinate 1/r, inside the open simplex
/// with margin 1/(2r)); offsets grid the first n-1 coordinates of the
/// zero-sum hyperplane over [-bound, bound] and keep only points with
/// max-norm <= bound. Doubling either resolution yields a superset, which
/// makes the sampled sup monotone under refinement.
template <class T>
std::vector<LeafSample<T>> sample_leaves(unsigned n, const GridSpec& grid) {
  if (n < 1) throw std::invalid_argument("sample_leaves: n >= 1 required");
  if (grid.direction_resolution < 1 || grid.offset_resolution < 1 || grid.offset_bound <= 0)
    throw std::invalid_argument("sample_leaves: bad grid spec");
  std::vector<std::vector<T>> directions;
  unsigned r = grid.direction_resolution;
  if (n == 1) {
    directions.push_back({T(1)});
  } else {
    for (const auto& a : detail::compositions(n, std::max(r, n))) {
      std::vector<T> lambda(n);
      for (unsigned i = 0; i < n; ++i) lambda[i] = T(static_cast<int>(a[i])) / T(static_cast<int>(std::max(r, n)));
      directions.push_back(std::move(lambda));
    }
  }

  std::vector<std::vector<T>> offsets;
  if (n == 1) {
    offsets.push_back({T(0)});
  } else {
    T bound = scalar_from_double<T>(grid.offset_bound);
    unsigned m = grid.offset_resolution;
    std::vector<T> axis;
    for (unsigned i = 0; i <= m; ++i)
      axis.push_back(bound * (T(2 * static_cast<int>(i)) - T(static_cast<int>(m))) /
                     T(static_cast<int>(m)));
    std::vector<unsigned> idx(n - 1, 0);
    while (true) {
      std::vector<T> beta(n);
      T sum(0);
      for (unsigned i = 0; i + 1 < n; ++i) {
        beta[i] = axis[idx[i]];
        sum += beta[i];
      }
      beta[n - 1] = -sum;
      if (!(abs_value<T>(beta[n - 1]) > bound)) offsets.push_back(std::move(beta));
      unsigned carry = 0;
      while (carry < idx.size() && ++idx[carry] > m) idx[carry++] = 0;
      if (carry == idx.size()) break;
    }
  }

  std::vector<LeafSample<T>> leaves;
  leaves.reserve(directions.size() * offsets.size());
  for (const auto& lambda : directions)
    for (const auto& beta : offsets) leaves.push_back({lambda, beta});
  return leaves;
}

// The scheme's representative of a sampled leaf, recovered from the leaf's
// point at coordinates (s, t) = (0, 1).
template <class T>
AdmissiblePair<T> leaf_representative(const Scheme& scheme, const LeafSample<T>& leaf) {
  std::size_t n = leaf.direction.size();
  std::vector<T> u(leaf.offset), v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = leaf.direction[i] + leaf.offset[i];
  return leaf_through(scheme, u, v).first;
}

/// The per-leaf distance min_i lambda_i * d_match of the two reduced
/// diagrams in degree k.
template <class T>
Extended<T> leaf_distance(const SimplicialComplex& KX, const VectorFiltration<T>& phi,
                          const SimplicialComplex& KY, const VectorFiltration<T>& psi, unsigned k,
                          const AdmissiblePair<T>& pair, const FieldSpec& field = {}) {
  if (phi.components != psi.components)
    throw std::invalid_argument("leaf_distance: filtrations have different component counts");
  if (pair.direction.size() != phi.components)
    throw std::invalid_argument("leaf_distance: pair dimension != component count");
  auto DX = diagram_of(KX, reduce_function(KX, phi, pair), k, field);
  auto DY = diagram_of(KY, reduce_function(KY, psi, pair), k, field);
  T min_lambda = pair.direction[0];
  for (const T& l : pair.direction)
    if (l < min_lambda) min_lambda = l;
  return scale(min_lambda, d_match(DX, DY));
}

template <class T>
struct SupResult {
  Extended<T> value{T(0)};
  AdmissiblePair<T> argmax;
  std::size_t leaves_evaluated = 0;
  double elapsed_ms = 0;
};

/// Sampled multidimensional matching distance: the max of leaf_distance
/// over the grid, a lower bound for the true sup. Leaf evaluations run in
/// parallel; the reduction is a deterministic scan, so the result (value
/// and argmax) does not depend on thread scheduling.
template <class T>
SupResult<T> dmatch_nd(const SimplicialComplex& KX, const VectorFiltration<T>& phi,
                       const SimplicialComplex& KY, const VectorFiltration<T>& psi, unsigned k,
                       const Scheme& scheme, const GridSpec& grid, const FieldSpec& field = {},
                       unsigned threads = 0) {
  if (phi.components != psi.components)
    throw std::invalid_argument("dmatch_nd: filtrations have different component counts");
  auto start = std::chrono::steady_clock::now();
  auto leaves = sample_leaves<T>(phi.components, grid);
  std::vector<AdmissiblePair<T>> pairs(leaves.size());
  std::vector<Extended<T>> values(leaves.size(), Extended<T>(T(0)));
  detail::parallel_for(leaves.size(), threads, [&](std::size_t i) {
    pairs[i] = leaf_representative(scheme, leaves[i]);
    values[i] = leaf_distance(KX, phi, KY, psi, k, pairs[i], field);
  });
  SupResult<T> out;
  if (!leaves.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
      if (values[best] < values[i]) best = i;  // first maximizer wins
    out.value = values[best];
    out.argmax = pairs[best];
  }
  out.leaves_evaluated = leaves.size();
  out.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// |a - b| as a double, with inf - inf = 0.
template <class T>
double extended_discrepancy(const Extended<T>& a, const Extended<T>& b) {
  if (a.is_inf() && b.is_inf()) return 0;
  if (a.is_inf() || b.is_inf()) return std::numeric_limits<double>::infinity();
  return std::abs(to_double(a.value() - b.value()));
}

struct InvarianceReport {
  struct ProbeRow {
    std::vector<double> u, v;
    std::vector<double> values;  // per scheme, +inf when extended
    double discrepancy = 0;      // max pairwise difference (inf vs inf is 0)
  };
  struct GridRow {
    std::string scheme;
    double value = 0;
    std::vector<double> argmax_direction, argmax_offset;
    std::size_t leaves = 0;
    double elapsed_ms = 0;
  };

  std::vector<std::string> scheme_names;
  std::vector<ProbeRow> probes;
  double max_probe_discrepancy = 0;
  std::vector<GridRow> grid;
  double grid_discrepancy = 0;
  GridSpec grid_spec;

  double max_discrepancy() const { return std::max(max_probe_discrepancy, grid_discrepancy); }
};

/// The main-theorem harness: evaluates the per-leaf distance at every probe
/// point under every scheme's representative of the probe's leaf, and
/// compares the grid-sampled sup across schemes on the shared leaf grid.
template <class T>
InvarianceReport invariance_report(
    const SimplicialComplex& KX, const VectorFiltration<T>& phi, const SimplicialComplex& KY,
    const VectorFiltration<T>& psi, unsigned k, const std::vector<Scheme>& schemes,
    const std::vector<std::pair<std::vector<T>, std::vector<T>>>& probe_points,
    const GridSpec& grid, const FieldSpec& field = {}, unsigned threads = 0) {
  if (schemes.empty()) throw std::invalid_argument("invariance_report: need at least one scheme");
  InvarianceReport report;
  report.grid_spec = grid;
  for (const Scheme& s : schemes) report.scheme_names.push_back(s.name());

  report.probes.resize(probe_points.size());
  detail::parallel_for(probe_points.size(), threads, [&](std::size_t i) {
    const auto& [u, v] = probe_points[i];
    InvarianceReport::ProbeRow row;
    for (const T& x : u) row.u.push_back(to_double(x));
    for (const T& x : v) row.v.push_back(to_double(x));
    std::vector<Extended<T>> values;
    for (const Scheme& scheme : schemes) {
      auto pair = leaf_through(scheme, u, v).first;
      values.push_back(leaf_distance(KX, phi, KY, psi, k, pair, field));
    }
    for (const auto& val : values) row.values.push_back(val.as_double());
    for (std::size_t p = 0; p < values.size(); ++p)
      for (std::size_t q = p + 1; q < values.size(); ++q)
        row.discrepancy = std::max(row.discrepancy, extended_discrepancy(values[p], values[q]));
    report.probes[i] = std::move(row);
  });
  for (const auto& row : report.probes)
    report.max_probe_discrepancy = std::max(report.max_probe_discrepancy, row.discrepancy);

  std::vector<Extended<T>> sups;
  for (const Scheme& scheme : schemes) {
    auto sup = dmatch_nd(KX, phi, KY, psi, k, scheme, grid, field, threads);
    InvarianceReport::GridRow row;
    row.scheme = scheme.name();
    row.value = sup.value.as_double();
    for (const T& x : sup.argmax.direction) row.argmax_direction.push_back(to_double(x));
    for (const T& x : sup.argmax.offset) row.argmax_offset.push_back(to_double(x));
    row.leaves = sup.leaves_evaluated;
    row.elapsed_ms = sup.elapsed_ms;
    report.grid.push_back(std::move(row));
    sups.push_back(sup.value);
  }
  for (std::size_t p = 0; p < sups.size(); ++p)
    for (std::size_t q = p + 1; q < sups.size(); ++q)
      report.grid_discrepancy =
          std::max(report.grid_discrepancy, extended_discrepancy(sups[p], sups[q]));
  return report;
}

}  // namespace folipers
