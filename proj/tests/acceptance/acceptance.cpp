// Acceptance suite: one self-contained check per criterion, one PASS/FAIL
// line each. Exit code is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "folipers/io.hpp"
#include "folipers/multidist.hpp"
#include "folipers/random_inputs.hpp"

using namespace folipers;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <class T>
unsigned rank_from_pairs(const PersistencePairs<T>& pairs, const T& u, const T& v) {
  unsigned rank = 0;
  for (const auto& [birth, death] : pairs.finite)
    if (birth <= u && v < death) ++rank;
  for (const T& birth : pairs.essential)
    if (birth <= u) ++rank;
  return rank;
}

template <class T>
PersistenceDiagram<T> random_diagram(Rng& rng, std::size_t max_proper, std::size_t essentials) {
  PersistencePairs<T> pairs;
  std::size_t points = rng.below(max_proper + 1);
  for (std::size_t i = 0; i < points; ++i) {
    T birth = random_scalar<T>(rng, 0, 4, 8);
    T death = birth + random_scalar<T>(rng, 0, 2, 8) + T(1) / T(8);
    pairs.finite.emplace_back(std::move(birth), std::move(death));
  }
  for (std::size_t i = 0; i < essentials; ++i)
    pairs.essential.push_back(random_scalar<T>(rng, 0, 4, 8));
  return diagram_from_pairs(pairs);
}

// ---- criterion 1: Reduction Theorem ---------------------------------------

void criterion_1() {
  auto start = std::chrono::steady_clock::now();
  Rng rng(1001);
  std::size_t checks = 0, mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Rng sub = rng.fork(static_cast<std::uint64_t>(trial));
    auto K = random_clique_complex(sub);
    unsigned n = static_cast<unsigned>(sub.int_in(2, 3));
    unsigned k = static_cast<unsigned>(sub.int_in(0, 1));
    auto phi = random_filtration<Rational>(sub, K, n, 8);
    for (int p = 0; p < 5; ++p) {
      auto pair = random_admissible_pair<Rational>(sub, n);
      auto pairs = persistence_pairs(K, reduce_function(K, phi, pair), k);
      for (int q = 0; q < 5; ++q) {
        Rational s = random_scalar<Rational>(sub, -1, 2, 16);
        Rational t = s + random_scalar<Rational>(sub, 0, 2, 16) + Rational(1, 16);
        std::vector<Rational> u(n), v(n);
        for (unsigned i = 0; i < n; ++i) {
          u[i] = s * pair.direction[i] + pair.offset[i];
          v[i] = t * pair.direction[i] + pair.offset[i];
        }
        ++checks;
        if (rank_oracle(K, phi, k, u, v) != rank_from_pairs(pairs, s, t)) ++mismatches;
      }
    }
  }
  double elapsed = seconds_since(start);
  report(1, mismatches == 0 && elapsed < 60,
         "Reduction Theorem: oracle rank equals reduced 1-D rank",
         std::to_string(checks) + " checks, " + std::to_string(mismatches) + " mismatches, " +
             std::to_string(elapsed) + " s");
}

// ---- criterion 2: Representation Theorem triple agreement ------------------

void criterion_2() {
  Rng rng(1002);
  std::size_t checks = 0, mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng sub = rng.fork(static_cast<std::uint64_t>(trial));
    auto K = random_clique_complex(sub);
    std::vector<Rational> values;
    for (std::size_t i = 0; i < K.vertex_count(); ++i)
      values.push_back(random_scalar<Rational>(sub, 0, 1, 8));
    auto F = extend_by_max(K, values);
    unsigned k = static_cast<unsigned>(sub.int_in(0, 1));
    auto D = diagram_of(K, F, k);
    auto rank = [&](const Rational& u, const Rational& v) { return rank_oracle(K, F, k, u, v); };

    std::vector<Rational> criticals;
    for (const auto& level : F.values)
      for (const Rational& v : level) criticals.push_back(v);
    std::sort(criticals.begin(), criticals.end());
    criticals.erase(std::unique(criticals.begin(), criticals.end()), criticals.end());
    Rational eps = default_epsilon(criticals);

    for (const Rational& u : criticals) {
      for (const Rational& v : criticals) {
        if (!(u + eps < v - eps)) continue;
        unsigned stored = 0;
        for (const auto& p : D.proper)
          if (p.birth == u && p.death == v) stored = p.multiplicity;
        ++checks;
        if (multiplicity_proper<Rational>(rank, u, v, eps) != stored) ++mismatches;
      }
      unsigned stored = 0;
      for (const auto& e : D.essential)
        if (e.birth == u) stored = e.multiplicity;
      ++checks;
      if (multiplicity_infinity<Rational>(rank, u, eps) != stored) ++mismatches;
    }
    std::vector<Rational> probes{criticals.front() - Rational(1)};
    for (std::size_t i = 1; i < criticals.size(); ++i)
      probes.push_back((criticals[i - 1] + criticals[i]) / Rational(2));
    probes.push_back(criticals.back() + Rational(1));
    for (std::size_t i = 0; i < probes.size(); ++i)
      for (std::size_t j = i + 1; j < probes.size(); ++j) {
        ++checks;
        if (rank_from_diagram(D, probes[i], probes[j]) != rank(probes[i], probes[j]))
          ++mismatches;
      }
  }
  report(2, mismatches == 0, "Representation Theorem: oracle, multiplicities, diagram agree",
         std::to_string(checks) + " checks, " + std::to_string(mismatches) + " mismatches");
}

// ---- criterion 3: bottleneck oracle equivalence ----------------------------

void criterion_3() {
  Rng rng(1003);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t essentials = rng.below(3);
    auto A = random_diagram<Rational>(rng, 4, essentials);
    auto B = random_diagram<Rational>(rng, 4, rng.below(2) ? essentials : rng.below(3));
    if (!(d_match(A, B) == brute_force_bottleneck(A, B))) ++mismatches;
  }
  report(3, mismatches == 0, "d_match equals the brute-force bottleneck oracle",
         "500 random diagram pairs, " + std::to_string(mismatches) + " mismatches");
}

// ---- criterion 4: affine equivariance (Prop 3) ------------------------------

void criterion_4() {
  Rng rng(1004);
  std::size_t exact_bad = 0, float_bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t essentials = rng.below(3);
    auto A = random_diagram<Rational>(rng, 5, essentials);
    auto B = random_diagram<Rational>(rng, 5, essentials);
    Rational a = random_scalar<Rational>(rng, 0, 3, 8) + Rational(1, 8);
    Rational b = random_scalar<Rational>(rng, -2, 2, 8);
    auto apply = [&](PersistenceDiagram<Rational> D) {
      for (auto& p : D.proper) {
        p.birth = a * p.birth + b;
        p.death = a * p.death + b;
      }
      for (auto& e : D.essential) e.birth = a * e.birth + b;
      return D;
    };
    auto lhs = d_match(apply(A), apply(B));
    auto rhs = scale(a, d_match(A, B));
    if (!(lhs == rhs)) ++exact_bad;

    // float lane within 1e-9 relative
    auto to_float = [](const PersistenceDiagram<Rational>& D) {
      PersistenceDiagram<double> out;
      out.degree = D.degree;
      for (const auto& p : D.proper)
        out.proper.push_back({to_double(p.birth), to_double(p.death), p.multiplicity});
      for (const auto& e : D.essential) out.essential.push_back({to_double(e.birth), e.multiplicity});
      return out;
    };
    auto fl = d_match(to_float(apply(A)), to_float(apply(B)));
    auto fr = scale(to_double(a), d_match(to_float(A), to_float(B)));
    double x = fl.is_inf() ? -1 : fl.value();
    double y = fr.is_inf() ? -1 : fr.value();
    if (std::abs(x - y) > 1e-9 * std::max(1.0, std::abs(y))) ++float_bad;
  }
  report(4, exact_bad == 0 && float_bad == 0,
         "affine maps scale d_match by the slope",
         "100 trials, exact mismatches " + std::to_string(exact_bad) + ", float over 1e-9 " +
             std::to_string(float_bad));
}

// ---- criterion 5: monotone reparameterization (Props 1-2) ------------------

template <class T>
class PiecewiseLinear {
 public:
  explicit PiecewiseLinear(Rng& rng) {
    long long breaks = rng.int_in(2, 5);
    T x = random_scalar<T>(rng, -2, 0, 16);
    T y = random_scalar<T>(rng, -2, 0, 16);
    for (long long i = 0; i <= breaks; ++i) {
      xs_.push_back(x);
      ys_.push_back(y);
      x += random_scalar<T>(rng, 0, 2, 16) + T(1) / T(16);
      y += random_scalar<T>(rng, 0, 2, 16) + T(1) / T(16);
    }
  }
  T operator()(const T& x) const {
    std::size_t seg = 0;
    while (seg + 2 < xs_.size() && xs_[seg + 1] <= x) ++seg;
    return ys_[seg] + (ys_[seg + 1] - ys_[seg]) / (xs_[seg + 1] - xs_[seg]) * (x - xs_[seg]);
  }

 private:
  std::vector<T> xs_, ys_;
};

void criterion_5() {
  Rng rng(1005);
  std::size_t rank_bad = 0, diagram_bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng sub = rng.fork(static_cast<std::uint64_t>(trial));
    auto K = random_clique_complex(sub);
    std::vector<Rational> values;
    for (std::size_t i = 0; i < K.vertex_count(); ++i)
      values.push_back(random_scalar<Rational>(sub, 0, 1, 8));
    PiecewiseLinear<Rational> f(sub);
    std::vector<Rational> mapped;
    for (const Rational& v : values) mapped.push_back(f(v));
    unsigned k = static_cast<unsigned>(sub.int_in(0, 1));

    VectorFiltration<Rational> phi{1, {}}, fphi{1, {}};
    for (std::size_t i = 0; i < values.size(); ++i) {
      phi.values.push_back({values[i]});
      fphi.values.push_back({mapped[i]});
    }
    for (int probe = 0; probe < 5; ++probe) {
      Rational u = random_scalar<Rational>(sub, -1, 1, 16);
      Rational v = u + random_scalar<Rational>(sub, 0, 1, 16) + Rational(1, 16);
      if (rank_oracle(K, phi, k, {u}, {v}) != rank_oracle(K, fphi, k, {f(u)}, {f(v)}))
        ++rank_bad;
    }

    auto D = diagram_of(K, extend_by_max(K, values), k);
    auto Df = diagram_of(K, extend_by_max(K, mapped), k);
    bool same = D.proper.size() == Df.proper.size() && D.essential.size() == Df.essential.size();
    if (same) {
      for (std::size_t i = 0; i < D.proper.size(); ++i)
        same = same && Df.proper[i].birth == f(D.proper[i].birth) &&
               Df.proper[i].death == f(D.proper[i].death) &&
               Df.proper[i].multiplicity == D.proper[i].multiplicity;
      for (std::size_t i = 0; i < D.essential.size(); ++i)
        same = same && Df.essential[i].birth == f(D.essential[i].birth) &&
               Df.essential[i].multiplicity == D.essential[i].multiplicity;
    }
    if (!same) ++diagram_bad;
  }
  report(5, rank_bad == 0 && diagram_bad == 0,
         "strictly increasing maps preserve ranks and cornerpoints",
         "100 trials, rank mismatches " + std::to_string(rank_bad) + ", diagram mismatches " +
             std::to_string(diagram_bad));
}

// ---- criterion 6: one-dimensional stability ---------------------------------

void criterion_6() {
  Rng rng(1006);
  std::size_t violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng sub = rng.fork(static_cast<std::uint64_t>(trial));
    auto K = random_clique_complex(sub);
    std::vector<double> f, g;
    double gap = 0;
    for (std::size_t i = 0; i < K.vertex_count(); ++i) {
      f.push_back(sub.unit());
      g.push_back(f.back() + (sub.unit() - 0.5));
      gap = std::max(gap, std::abs(f.back() - g.back()));
    }
    unsigned k = static_cast<unsigned>(sub.int_in(0, 1));
    auto d = d_match(diagram_of(K, extend_by_max(K, f), k), diagram_of(K, extend_by_max(K, g), k));
    if (d.is_inf() || d.value() > gap + 1e-9) ++violations;
  }
  report(6, violations == 0, "d_match is bounded by the sup-norm perturbation",
         "100 perturbation pairs, " + std::to_string(violations) + " violations");
}

// ---- criterion 7: main theorem (scheme invariance) --------------------------

void criterion_7() {
  auto start = std::chrono::steady_clock::now();
  Rng rng(1007);
  std::vector<Scheme> schemes{Scheme::unit_norm(), Scheme::sum_one(), Scheme::pnorm(1),
                              Scheme::pnorm(3)};
  double worst_probe = 0, worst_grid = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Rng sub = rng.fork(static_cast<std::uint64_t>(trial));
    unsigned n = static_cast<unsigned>(sub.int_in(2, 3));
    auto KX = random_clique_complex(sub);
    auto phi = random_filtration<double>(sub, KX, n);
    SimplicialComplex KY;
    VectorFiltration<double> psi;
    if (trial % 2 == 0) {  // perturbation pair: finite distances
      KY = KX;
      psi = phi;
      for (auto& row : psi.values)
        for (double& x : row) x += (sub.unit() - 0.5) / 2;
    } else {  // independent pair: may legitimately be infinite
      KY = random_clique_complex(sub);
      psi = random_filtration<double>(sub, KY, n);
    }

    std::vector<std::pair<std::vector<double>, std::vector<double>>> probes;
    for (int i = 0; i < 100; ++i) probes.push_back(random_probe<double>(sub, n));
    GridSpec grid{8, 4, default_offset_bound(phi, psi)};
    unsigned k = static_cast<unsigned>(trial % 2);
    auto report_i = invariance_report(KX, phi, KY, psi, k, schemes, probes, grid);
    worst_probe = std::max(worst_probe, report_i.max_probe_discrepancy);
    worst_grid = std::max(worst_grid, report_i.grid_discrepancy);
  }
  double elapsed = seconds_since(start);
  bool ok = worst_probe <= 1e-9 && worst_grid <= 1e-9 && elapsed < 300;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "20 input pairs x 100 probes x 4 schemes, per-leaf %.3g, grid sup %.3g, %.1f s",
                worst_probe, worst_grid, elapsed);
  report(7, ok, "matching distance is invariant under the parameterization scheme", detail);
}

// ---- criterion 8: figure-style curve ----------------------------------------

void criterion_8() {
  std::vector<double> heights{0, 6, 2, 5, 1, 7, 3, 5.5, 1.5};  // 5 minima, 4 maxima
  std::vector<Simplex> edges;
  for (VertexId v = 0; v + 1 < heights.size(); ++v)
    edges.push_back({v, static_cast<VertexId>(v + 1)});
  auto K = build_complex(edges);
  auto D = diagram_of(K, extend_by_max(K, heights), 0);
  VectorFiltration<double> phi{1, {}};
  for (double h : heights) phi.values.push_back({h});
  unsigned rank_at_probe = rank_oracle(K, phi, 0, {1.6}, {6.2});
  bool ok = D.essential_count() == 1 && D.proper_count() == 4 && rank_at_probe == 2 &&
            rank_from_diagram(D, 1.6, 6.2) == 2;
  report(8, ok, "five-minima curve: 1 essential + 4 proper cornerpoints, interior rank 2",
         "essential " + std::to_string(D.essential_count()) + ", proper " +
             std::to_string(D.proper_count()) + ", rank " + std::to_string(rank_at_probe));
}

// ---- criterion 9: foliation validity -----------------------------------------

void criterion_9() {
  Rng rng(1009);
  bool all_ok = true;
  std::string detail;
  for (Scheme scheme : {Scheme::unit_norm(), Scheme::sum_one(), Scheme::pnorm(3)}) {
    std::vector<std::pair<std::vector<double>, std::vector<double>>> samples;
    for (int i = 0; i < 1000; ++i) {
      unsigned n = static_cast<unsigned>(rng.int_in(2, 4));
      samples.push_back(random_probe<double>(rng, n));
    }
    auto result = validate_scheme(scheme, samples, 1e-9);
    all_ok = all_ok && result.ok();
    detail += scheme.name() + " failures " + std::to_string(result.failures) + "; ";
  }
  report(9, all_ok, "foliation contract holds for all scheme families on 1000 points", detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", failures);
  return failures;
}
