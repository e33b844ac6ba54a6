#include <doctest.h>

#include "folipers/homology.hpp"
#include "test_helpers.hpp"

using namespace folipers;
using folipers::testing::PiecewiseLinearMap;

namespace {

// two vertices at 0 joined by an edge at 1, given per-simplex
struct EdgeExample {
  SimplicialComplex K = build_complex({{0, 1}});
  ScalarFiltration<double> F{{{0.0, 0.0}, {1.0}}};
};

// plain union-find over the 1-skeleton; no linear algebra anywhere
struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

UnionFind components_of(const SimplicialComplex& K) {
  UnionFind uf(K.vertex_count());
  for (const Simplex& e : K.simplices(1)) uf.unite(e[0], e[1]);
  return uf;
}

// Representation count from pairs: classes born by u and still alive at v.
template <class T>
unsigned rank_from_pairs(const PersistencePairs<T>& pairs, const T& u, const T& v) {
  unsigned rank = 0;
  for (const auto& [birth, death] : pairs.finite)
    if (birth <= u && v < death) ++rank;
  for (const T& birth : pairs.essential)
    if (birth <= u) ++rank;
  return rank;
}

}  // namespace

TEST_SUITE_BEGIN("homology");

TEST_CASE("betti numbers of small complexes") {
  CHECK(betti(build_complex({{0}}), 0) == 1);
  CHECK(betti(build_complex({{0}, {1}}), 0) == 2);
  auto hollow = build_complex({{0, 1}, {1, 2}, {0, 2}});
  CHECK(betti(hollow, 0) == 1);
  CHECK(betti(hollow, 1) == 1);
  auto filled = build_complex({{0, 1, 2}});
  CHECK(betti(filled, 1) == 0);
  // boundary of the tetrahedron is a 2-sphere
  auto sphere = build_complex({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  CHECK(betti(sphere, 0) == 1);
  CHECK(betti(sphere, 1) == 0);
  CHECK(betti(sphere, 2) == 1);
  CHECK(betti(sphere, 3) == 0);
}

TEST_CASE("betti over odd characteristic") {
  FieldSpec gf5{5};
  auto hollow = build_complex({{0, 1}, {1, 2}, {0, 2}});
  CHECK(betti(hollow, 1, gf5) == 1);
  auto sphere = build_complex({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  CHECK(betti(sphere, 2, gf5) == 1);
  CHECK_THROWS_AS(betti(hollow, 0, FieldSpec{4}), std::invalid_argument);
}

TEST_CASE("alternating betti sum equals the Euler characteristic") {
  Rng rng(5);
  for (FieldSpec field : {FieldSpec{2}, FieldSpec{3}, FieldSpec{7}})
    for (int trial = 0; trial < 8; ++trial) {
      auto K = random_clique_complex(rng);
      long long chi = 0, betti_chi = 0;
      for (int d = 0; d <= K.top_dimension(); ++d) {
        long long sign = d % 2 == 0 ? 1 : -1;
        chi += sign * static_cast<long long>(K.simplices(static_cast<unsigned>(d)).size());
        betti_chi += sign * static_cast<long long>(betti(K, static_cast<unsigned>(d), field));
      }
      CHECK(chi == betti_chi);
    }
}

TEST_CASE("persistence pairs of the two-vertex edge") {
  EdgeExample ex;
  auto pairs = persistence_pairs(ex.K, ex.F, 0);
  REQUIRE(pairs.finite.size() == 1);
  CHECK(pairs.finite[0] == std::pair<double, double>{0.0, 1.0});
  REQUIRE(pairs.essential.size() == 1);
  CHECK(pairs.essential[0] == 0.0);
}

TEST_CASE("hollow triangle at level zero has one essential 1-cycle") {
  auto K = build_complex({{0, 1}, {1, 2}, {0, 2}});
  auto F = extend_by_max(K, std::vector<double>{0, 0, 0});
  auto pairs = persistence_pairs(K, F, 1);
  CHECK(pairs.finite.empty());
  REQUIRE(pairs.essential.size() == 1);
  CHECK(pairs.essential[0] == 0.0);
}

TEST_CASE("degrees above the top dimension are empty") {
  EdgeExample ex;
  auto pairs = persistence_pairs(ex.K, ex.F, 5);
  CHECK(pairs.finite.empty());
  CHECK(pairs.essential.empty());
}

TEST_CASE("non-monotone filtrations are rejected") {
  EdgeExample ex;
  ex.F.values[1][0] = -1.0;  // edge below its vertices
  CHECK_THROWS_AS(persistence_pairs(ex.K, ex.F, 0), std::invalid_argument);
}

TEST_CASE("essential count matches betti of the full complex") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto K = random_clique_complex(rng);
    std::vector<double> values;
    for (std::size_t i = 0; i < K.vertex_count(); ++i) values.push_back(rng.unit());
    auto F = extend_by_max(K, values);
    for (unsigned k = 0; k < 3; ++k)
      CHECK(persistence_pairs(K, F, k).essential.size() == betti(K, k));
  }
}

TEST_CASE("rank oracle on the two-vertex edge") {
  EdgeExample ex;
  CHECK(rank_oracle(ex.K, ex.F, 0, 0.5, 1.5) == 1);   // components merged
  CHECK(rank_oracle(ex.K, ex.F, 0, 0.25, 0.75) == 2); // both alive
  CHECK(rank_oracle(ex.K, ex.F, 0, -1.0, 2.0) == 0);  // nothing born yet
  CHECK_THROWS_AS(rank_oracle(ex.K, ex.F, 0, 1.5, 0.5), std::invalid_argument);
}

TEST_CASE("rank oracle at saturated thresholds equals betti") {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    auto K = random_clique_complex(rng);
    unsigned n = static_cast<unsigned>(rng.int_in(1, 3));
    auto phi = random_filtration<double>(rng, K, n);
    std::vector<double> u(n, 1.5), v(n, 2.5);  // beyond every value in [0,1]
    for (unsigned k = 0; k < 3; ++k) CHECK(rank_oracle(K, phi, k, u, v) == betti(K, k));
  }
}

TEST_CASE("rank oracle rejects non-strict points") {
  auto K = build_complex({{0, 1}});
  VectorFiltration<double> phi{2, {{0, 0}, {1, 1}}};
  CHECK_THROWS_AS(rank_oracle(K, phi, 0, {0.5, 0.5}, {0.5, 1.5}), std::invalid_argument);
}

TEST_CASE("degree-0 homology agrees with union-find components") {
  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    auto K = random_clique_complex(rng);
    auto uf = components_of(K);
    std::size_t components = 0;
    for (const Simplex& v : K.simplices(0))
      if (uf.find(v[0]) == v[0]) ++components;
    CHECK(betti(K, 0) == components);
    CHECK(betti(K, 0, FieldSpec{5}) == components);

    // rank of H_0(K_u) -> H_0(K_v): K_v-components meeting K_u
    unsigned n = static_cast<unsigned>(rng.int_in(1, 3));
    auto phi = random_filtration<double>(rng, K, n);
    for (int probe = 0; probe < 5; ++probe) {
      std::vector<double> u(n), v(n);
      for (unsigned c = 0; c < n; ++c) {
        u[c] = rng.unit() * 1.5 - 0.25;
        v[c] = u[c] + rng.unit() + 0.01;
      }
      auto Ku = sublevel(K, phi, u);
      auto Kv = sublevel(K, phi, v);
      auto uf_v = components_of(Kv);
      std::set<std::size_t> reached;
      for (const Simplex& vert : Ku.simplices(0)) reached.insert(uf_v.find(vert[0]));
      CHECK(rank_oracle(K, phi, 0, u, v) == reached.size());
    }
  }
}

TEST_CASE("pairs agree with the rank oracle across the critical grid") {
  Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    auto K = random_clique_complex(rng);
    std::vector<double> values;
    for (std::size_t i = 0; i < K.vertex_count(); ++i)
      values.push_back(static_cast<double>(rng.int_in(0, 8)) / 8.0);
    auto F = extend_by_max(K, values);

    std::vector<double> criticals;
    for (const auto& level : F.values)
      for (double v : level) criticals.push_back(v);
    std::sort(criticals.begin(), criticals.end());
    criticals.erase(std::unique(criticals.begin(), criticals.end()), criticals.end());
    std::vector<double> probes{criticals.front() - 0.5};
    for (std::size_t i = 1; i < criticals.size(); ++i)
      probes.push_back((criticals[i - 1] + criticals[i]) / 2);
    probes.push_back(criticals.back() + 0.5);

    for (unsigned k = 0; k < 2; ++k) {
      auto pairs = persistence_pairs(K, F, k);
      for (std::size_t i = 0; i < probes.size(); ++i)
        for (std::size_t j = i + 1; j < probes.size(); ++j)
          CHECK(rank_from_pairs(pairs, probes[i], probes[j]) ==
                rank_oracle(K, F, k, probes[i], probes[j]));
    }
  }
}

TEST_CASE("pairs agree with the oracle over GF(3) as well") {
  Rng rng(19);
  FieldSpec gf3{3};
  for (int trial = 0; trial < 10; ++trial) {
    auto K = random_clique_complex(rng);
    std::vector<double> values;
    for (std::size_t i = 0; i < K.vertex_count(); ++i)
      values.push_back(static_cast<double>(rng.int_in(0, 4)) / 4.0);
    auto F = extend_by_max(K, values);
    auto pairs = persistence_pairs(K, F, 1, gf3);
    for (double u : {0.1, 0.3, 0.6})
      for (double v : {0.65, 0.9, 1.2})
        CHECK(rank_from_pairs(pairs, u, v) == rank_oracle(K, F, 1, u, v, gf3));
  }
}

TEST_CASE("diagram does not depend on the tie-breaking refinement") {
  // relabeling vertices permutes the lexicographic tie-break among equal
  // values; the multiset of pairs must not move
  Rng rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    auto K = random_clique_complex(rng);
    std::vector<double> values;
    for (std::size_t i = 0; i < K.vertex_count(); ++i)
      values.push_back(static_cast<double>(rng.int_in(0, 3)) / 3.0);  // many ties
    auto F = extend_by_max(K, values);

    std::vector<VertexId> relabel(K.vertex_count());
    for (std::size_t i = 0; i < relabel.size(); ++i) relabel[i] = static_cast<VertexId>(i);
    for (std::size_t i = relabel.size(); i > 1; --i)
      std::swap(relabel[i - 1], relabel[rng.below(i)]);
    std::vector<Simplex> renamed;
    for (int d = 0; d <= K.top_dimension(); ++d)
      for (const Simplex& s : K.simplices(static_cast<unsigned>(d))) {
        Simplex r;
        for (VertexId v : s) r.push_back(relabel[v]);
        std::sort(r.begin(), r.end());
        renamed.push_back(std::move(r));
      }
    auto K2 = build_complex(renamed);
    std::vector<double> values2(K2.vertex_count());
    for (std::size_t i = 0; i < values.size(); ++i) values2[relabel[i]] = values[i];
    auto F2 = extend_by_max(K2, values2);

    for (unsigned k = 0; k < 2; ++k) {
      auto a = persistence_pairs(K, F, k);
      auto b = persistence_pairs(K2, F2, k);
      CHECK(a.finite == b.finite);
      CHECK(a.essential == b.essential);
    }
  }
}

TEST_CASE("strictly increasing reparameterization preserves ranks") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    auto K = random_clique_complex(rng);
    auto phi = random_filtration<Rational>(rng, K, 1, 16);
    PiecewiseLinearMap<Rational> f(rng);
    VectorFiltration<Rational> mapped{1, {}};
    for (const auto& row : phi.values) mapped.values.push_back({f(row[0])});

    for (int probe = 0; probe < 5; ++probe) {
      Rational u = random_scalar<Rational>(rng, -1, 1, 16);
      Rational v = u + random_scalar<Rational>(rng, 0, 1, 16) + Rational(1, 16);
      for (unsigned k = 0; k < 2; ++k)
        CHECK(rank_oracle(K, phi, k, {u}, {v}) == rank_oracle(K, mapped, k, {f(u)}, {f(v)}));
    }
  }
}

TEST_SUITE_END();
