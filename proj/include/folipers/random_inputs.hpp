// Seeded generators for replayable random inputs: Erdos-Renyi-style clique
// complexes with uniform vertex values, admissible pairs, and probe points.
// All draws go through Rng so a fixed seed reproduces a run bit-for-bit on
// any platform.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "folipers/complex.hpp"
#include "folipers/foliation.hpp"

namespace folipers {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // uniform in [0, 1) with 53 random bits; avoids std::uniform_real_distribution,
  // whose output is implementation-defined
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  std::uint64_t below(std::uint64_t n) { return n ? gen_() % n : 0; }

  long long int_in(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // derived stream, stable under reordering of sibling draws
  Rng fork(std::uint64_t tag) {
    std::uint64_t s = gen_() ^ (tag * 0x9e3779b97f4a7c15ULL);
    return Rng(s ^ (s >> 31));
  }

 private:
  std::mt19937_64 gen_;
};

// k/denominator with k uniform in [lo*denominator, hi*denominator]; exact in
// both numeric modes.
template <class T>
T random_scalar(Rng& rng, long long lo, long long hi, long long denominator = 64) {
  long long k = rng.int_in(lo * denominator, hi * denominator);
  return T(k) / T(denominator);
}

struct CliqueComplexOptions {
  unsigned min_vertices = 4;
  unsigned max_vertices = 9;
  double edge_probability_min = 0.3;
  double edge_probability_max = 0.7;
  unsigned max_dimension = 3;
  std::size_t max_simplices = 40;
};

/// Random Erdos-Renyi graph expanded to its clique complex up to
/// max_dimension. If the complex exceeds max_simplices the draw is retried
/// with fewer vertices, deterministically.
inline SimplicialComplex random_clique_complex(Rng& rng, const CliqueComplexOptions& options = {}) {
  for (unsigned attempt = 0;; ++attempt) {
    unsigned shrink = std::min(attempt, options.max_vertices - options.min_vertices);
    unsigned nv = static_cast<unsigned>(
        rng.int_in(options.min_vertices, options.max_vertices - shrink));
    double p = options.edge_probability_min +
               (options.edge_probability_max - options.edge_probability_min) * rng.unit();
    std::vector<std::vector<char>> adjacent(nv, std::vector<char>(nv, 0));
    std::vector<Simplex> simplices;
    for (VertexId v = 0; v < nv; ++v) simplices.push_back({v});
    for (VertexId a = 0; a < nv; ++a)
      for (VertexId b = a + 1; b < nv; ++b)
        if (rng.unit() < p) {
          adjacent[a][b] = adjacent[b][a] = 1;
          simplices.push_back({a, b});
        }
    // grow cliques one vertex at a time
    std::vector<Simplex> frontier;
    for (const Simplex& s : simplices)
      if (s.size() == 2) frontier.push_back(s);
    for (unsigned dim = 2; dim <= options.max_dimension && !frontier.empty(); ++dim) {
      std::vector<Simplex> next;
      for (const Simplex& clique : frontier)
        for (VertexId v = clique.back() + 1; v < nv; ++v) {
          bool joined = true;
          for (VertexId u : clique) joined = joined && adjacent[u][v];
          if (joined) {
            Simplex bigger = clique;
            bigger.push_back(v);
            next.push_back(bigger);
            simplices.push_back(std::move(bigger));
          }
        }
      frontier = std::move(next);
    }
    if (simplices.size() <= options.max_simplices) return build_complex(simplices);
  }
}

template <class T>
VectorFiltration<T> random_filtration(Rng& rng, const SimplicialComplex& K, unsigned n,
                                      long long denominator = 64) {
  VectorFiltration<T> phi;
  phi.components = n;
  phi.values.resize(K.vertex_count());
  for (auto& row : phi.values) {
    row.reserve(n);
    for (unsigned c = 0; c < n; ++c) row.push_back(random_scalar<T>(rng, 0, 1, denominator));
  }
  return phi;
}

/// Random sum-one admissible pair with rational-exact entries.
template <class T>
AdmissiblePair<T> random_admissible_pair(Rng& rng, unsigned n, long long denominator = 16) {
  std::vector<T> lambda(n), beta(n);
  T lambda_sum(0), beta_sum(0);
  for (unsigned i = 0; i < n; ++i) {
    lambda[i] = T(rng.int_in(1, denominator));
    lambda_sum += lambda[i];
    beta[i] = random_scalar<T>(rng, -1, 1, denominator);
    beta_sum += beta[i];
  }
  for (unsigned i = 0; i < n; ++i) {
    lambda[i] = lambda[i] / lambda_sum;
    beta[i] = beta[i] - beta_sum / T(static_cast<int>(n));
  }
  return {std::move(lambda), std::move(beta), Scheme::sum_one()};
}

/// Random probe point (u, v) in Delta+ with coordinates in roughly [-1, 3].
template <class T>
std::pair<std::vector<T>, std::vector<T>> random_probe(Rng& rng, unsigned n,
                                                       long long denominator = 64) {
  std::vector<T> u(n), v(n);
  for (unsigned i = 0; i < n; ++i) {
    u[i] = random_scalar<T>(rng, -1, 1, denominator);
    T gap = random_scalar<T>(rng, 0, 2, denominator) + T(1) / T(denominator);
    v[i] = u[i] + gap;
  }
  return {std::move(u), std::move(v)};
}

}  // namespace folipers
