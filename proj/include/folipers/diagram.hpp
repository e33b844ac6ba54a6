// Persistence diagrams: cornerpoints with multiplicity, the epsilon-limit
// multiplicity formulas, and rank reconstruction from the diagram.
#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "folipers/homology.hpp"
#include "folipers/scalar.hpp"

namespace folipers {

template <class T>
struct ProperPoint {
  T birth;
  T death;  // birth < death
  unsigned multiplicity = 1;
};

template <class T>
struct EssentialLine {
  T birth;  // cornerpoint at infinity (birth, inf)
  unsigned multiplicity = 1;
};

template <class T>
struct PersistenceDiagram {
  unsigned degree = 0;
  std::vector<ProperPoint<T>> proper;       // sorted by (birth, death)
  std::vector<EssentialLine<T>> essential;  // sorted by birth

  std::size_t proper_count() const {  // expanded by multiplicity
    std::size_t n = 0;
    for (const auto& p : proper) n += p.multiplicity;
    return n;
  }
  std::size_t essential_count() const {
    std::size_t n = 0;
    for (const auto& e : essential) n += e.multiplicity;
    return n;
  }
  bool empty() const { return proper.empty() && essential.empty(); }
};

/// Collates persistence pairs into a diagram: equal pairs merge into one
/// cornerpoint with multiplicity, essential births become cornerpoints at
/// infinity.
template <class T>
PersistenceDiagram<T> diagram_from_pairs(const PersistencePairs<T>& pairs) {
  PersistenceDiagram<T> D;
  D.degree = pairs.degree;
  std::map<std::pair<T, T>, unsigned> proper;
  for (const auto& pr : pairs.finite) {
    if (!(pr.first < pr.second))
      throw std::invalid_argument("diagram_from_pairs: birth < death violated");
    ++proper[pr];
  }
  for (const auto& [pt, mult] : proper) D.proper.push_back({pt.first, pt.second, mult});
  std::map<T, unsigned> essential;
  for (const T& b : pairs.essential) ++essential[b];
  for (const auto& [b, mult] : essential) D.essential.push_back({b, mult});
  return D;
}

/// Multiplicity of the proper point p = (u, v): the alternating four-corner
/// count rho(u+e,v-e) - rho(u-e,v-e) - rho(u+e,v+e) + rho(u-e,v+e).
/// The caller must pick eps below the resolution of the critical values so
/// the minimum over eps is already attained (see default_epsilon).
template <class T, class RankFn>
unsigned multiplicity_proper(RankFn&& rank, const T& u, const T& v, const T& eps) {
  if (!(eps > T(0)) || !(u + eps < v - eps))
    throw std::invalid_argument("multiplicity_proper: need eps > 0 with u+eps < v-eps");
  long long m = static_cast<long long>(rank(u + eps, v - eps)) -
                static_cast<long long>(rank(u - eps, v - eps)) -
                static_cast<long long>(rank(u + eps, v + eps)) +
                static_cast<long long>(rank(u - eps, v + eps));
  return static_cast<unsigned>(m < 0 ? 0 : m);
}

/// Multiplicity of the cornerpoint at infinity (u_bar, inf):
/// rho(u_bar+e, 1/e) - rho(u_bar-e, 1/e), with 1/e beyond every critical value.
template <class T, class RankFn>
unsigned multiplicity_infinity(RankFn&& rank, const T& u_bar, const T& eps) {
  if (!(eps > T(0)) || !(u_bar + eps < T(1) / eps))
    throw std::invalid_argument("multiplicity_infinity: need eps > 0 with u_bar+eps < 1/eps");
  T horizon = T(1) / eps;
  long long m = static_cast<long long>(rank(u_bar + eps, horizon)) -
                static_cast<long long>(rank(u_bar - eps, horizon));
  return static_cast<unsigned>(m < 0 ? 0 : m);
}

/// An eps meeting both multiplicity preconditions for this critical set:
/// a quarter of the minimum gap between distinct critical values, and small
/// enough that 1/eps clears every critical value.
template <class T>
T default_epsilon(std::vector<T> critical_values) {
  std::sort(critical_values.begin(), critical_values.end());
  critical_values.erase(std::unique(critical_values.begin(), critical_values.end()),
                        critical_values.end());
  T eps = T(1) / T(2);
  for (std::size_t i = 1; i < critical_values.size(); ++i) {
    T quarter_gap = (critical_values[i] - critical_values[i - 1]) / T(4);
    if (quarter_gap < eps) eps = quarter_gap;
  }
  if (!critical_values.empty()) {
    T bound = abs_value<T>(critical_values.front());
    if (bound < abs_value<T>(critical_values.back())) bound = abs_value<T>(critical_values.back());
    T cap = T(1) / (bound + T(2));  // 1/eps >= |c|+2 > every critical value
    if (cap < eps) eps = cap;
  }
  return eps;
}

/// Representation Theorem count: the rank at (u_bar, v_bar) is the total
/// multiplicity of cornerpoints with u <= u_bar and v > v_bar (points at
/// infinity always satisfy v > v_bar).
template <class T>
unsigned rank_from_diagram(const PersistenceDiagram<T>& D, const T& u_bar, const T& v_bar) {
  if (!(u_bar < v_bar)) throw std::invalid_argument("rank_from_diagram: u < v required");
  unsigned total = 0;
  for (const auto& p : D.proper)
    if (p.birth <= u_bar && p.death > v_bar) total += p.multiplicity;
  for (const auto& e : D.essential)
    if (e.birth <= u_bar) total += e.multiplicity;
  return total;
}

/// Convenience: degree-k diagram of a monotone scalar filtration.
template <class T>
PersistenceDiagram<T> diagram_of(const SimplicialComplex& K, const ScalarFiltration<T>& F,
                                 unsigned k, const FieldSpec& field = {}) {
  return diagram_from_pairs(persistence_pairs(K, F, k, field));
}

/// Multiset equality on (u, v, multiplicity): exact when tol is 0,
/// coordinatewise within tol otherwise.
template <class T>
bool diagrams_match(const PersistenceDiagram<T>& a, const PersistenceDiagram<T>& b,
                    double tol = 0) {
  if (a.proper.size() != b.proper.size() || a.essential.size() != b.essential.size())
    return false;
  auto close = [tol](const T& x, const T& y) {
    if (tol == 0) return x == y;
    return std::abs(to_double(x) - to_double(y)) <= tol;
  };
  for (std::size_t i = 0; i < a.proper.size(); ++i)
    if (!close(a.proper[i].birth, b.proper[i].birth) ||
        !close(a.proper[i].death, b.proper[i].death) ||
        a.proper[i].multiplicity != b.proper[i].multiplicity)
      return false;
  for (std::size_t i = 0; i < a.essential.size(); ++i)
    if (!close(a.essential[i].birth, b.essential[i].birth) ||
        a.essential[i].multiplicity != b.essential[i].multiplicity)
      return false;
  return true;
}

}  // namespace folipers
