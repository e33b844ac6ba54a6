// The d-tilde pseudodistance on diagram points, the bottleneck matching
// distance between persistence diagrams, and an exhaustive oracle for small
// diagrams.
//
// d_match splits into two independent assignments: cornerpoints at infinity
// can only be matched among themselves (any other pairing costs infinity
// under the conventions), and that one-dimensional bottleneck problem is
// solved by matching both birth sequences in sorted order. Proper points are
// matched by binary search over the finite candidate set, testing
// feasibility with an augmenting-path bipartite matcher on the
// diagonal-augmented graph, so the result is always exactly one of the
// candidate values.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "folipers/diagram.hpp"
#include "folipers/scalar.hpp"

namespace folipers {

// A point of Delta*: finite death for proper points, infinite for
// cornerpoints at infinity.
template <class T>
struct MatchPoint {
  T birth;
  Extended<T> death;

  static MatchPoint proper(T u, T v) { return {std::move(u), Extended<T>(std::move(v))}; }
  static MatchPoint at_infinity(T u) { return {std::move(u), Extended<T>::infinity()}; }
};

/// Cost of moving both points onto the diagonal is bounded by the larger
/// half-persistence; moving one onto the other costs the max-norm of the
/// difference. d-tilde is the better of the two.
template <class T>
Extended<T> dtilde(const MatchPoint<T>& p, const MatchPoint<T>& q) {
  Extended<T> move = max(abs_diff(Extended<T>(p.birth), Extended<T>(q.birth)),
                         abs_diff(p.death, q.death));
  Extended<T> to_diagonal = max(abs_diff(p.death, Extended<T>(p.birth)).half(),
                                abs_diff(q.death, Extended<T>(q.birth)).half());
  return min(move, to_diagonal);
}

/// (v - u)/2, infinite for cornerpoints at infinity.
template <class T>
Extended<T> diagonal_cost(const MatchPoint<T>& p) {
  return abs_diff(p.death, Extended<T>(p.birth)).half();
}

namespace detail {

template <class T>
void expand_diagram(const PersistenceDiagram<T>& D, std::vector<MatchPoint<T>>& propers,
                    std::vector<T>& essentials) {
  for (const auto& p : D.proper)
    for (unsigned i = 0; i < p.multiplicity; ++i)
      propers.push_back(MatchPoint<T>::proper(p.birth, p.death));
  for (const auto& e : D.essential)
    for (unsigned i = 0; i < e.multiplicity; ++i) essentials.push_back(e.birth);
}

// Bottleneck assignment between equal-size sorted birth sequences on the
// line: the order-preserving matching is optimal.
template <class T>
Extended<T> essential_bottleneck(std::vector<T> a, std::vector<T> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  Extended<T> worst(T(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = max(worst, Extended<T>(abs_value<T>(a[i] - b[i])));
  return worst;
}

// Kuhn's augmenting-path matcher on an adjacency list; returns the size of a
// maximum matching.
class BipartiteMatcher {
 public:
  explicit BipartiteMatcher(std::vector<std::vector<std::size_t>> adjacency, std::size_t right_size)
      : adj_(std::move(adjacency)), match_right_(right_size, kNone) {}

  std::size_t max_matching() {
    std::size_t matched = 0;
    std::vector<char> visited(adj_.size());
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      std::fill(visited.begin(), visited.end(), 0);
      if (try_augment(u, visited)) ++matched;
    }
    return matched;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  bool try_augment(std::size_t u, std::vector<char>& visited) {
    if (visited[u]) return false;
    visited[u] = 1;
    for (std::size_t v : adj_[u])
      if (match_right_[v] == kNone || try_augment(match_right_[v], visited)) {
        match_right_[v] = u;
        return true;
      }
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_right_;
};

// Is there a multi-bijection of the proper points (diagonal allowed) whose
// worst cost is <= c? Each side is padded with one diagonal slot per point
// of the other side; diagonal-diagonal pairings are free.
template <class T>
bool proper_matching_feasible(const std::vector<MatchPoint<T>>& a,
                              const std::vector<MatchPoint<T>>& b, const Extended<T>& c) {
  std::size_t la = a.size(), lb = b.size();
  std::size_t left = la + lb, right = lb + la;
  std::vector<std::vector<std::size_t>> adj(left);
  for (std::size_t i = 0; i < la; ++i) {
    for (std::size_t j = 0; j < lb; ++j)
      if (dtilde(a[i], b[j]) <= c) adj[i].push_back(j);
    if (diagonal_cost(a[i]) <= c)
      for (std::size_t j = lb; j < right; ++j) adj[i].push_back(j);
  }
  for (std::size_t i = la; i < left; ++i) {
    std::size_t j = i - la;  // the real point this diagonal slot shadows
    if (diagonal_cost(b[j]) <= c) adj[i].push_back(j);
    for (std::size_t k = lb; k < right; ++k) adj[i].push_back(k);  // diagonal-diagonal
  }
  return BipartiteMatcher(std::move(adj), right).max_matching() == left;
}

}  // namespace detail

/// Bottleneck matching distance between two diagrams of the same degree.
/// Infinite exactly when the essential (cornerpoint-at-infinity) counts
/// differ.
template <class T>
Extended<T> d_match(const PersistenceDiagram<T>& D1, const PersistenceDiagram<T>& D2) {
  std::vector<MatchPoint<T>> a, b;
  std::vector<T> ea, eb;
  detail::expand_diagram(D1, a, ea);
  detail::expand_diagram(D2, b, eb);
  if (ea.size() != eb.size()) return Extended<T>::infinity();
  Extended<T> essential_part = detail::essential_bottleneck(std::move(ea), std::move(eb));

  if (a.empty() && b.empty()) return essential_part;
  std::vector<Extended<T>> candidates;
  candidates.reserve(a.size() * b.size() + a.size() + b.size());
  for (const auto& p : a) {
    for (const auto& q : b) candidates.push_back(dtilde(p, q));
    candidates.push_back(diagonal_cost(p));
  }
  for (const auto& q : b) candidates.push_back(diagonal_cost(q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // smallest feasible candidate; feasibility is monotone in c
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (detail::proper_matching_feasible(a, b, candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return max(essential_part, candidates[lo]);
}

/// Exhaustive bottleneck distance for diagrams with at most 8 expanded
/// points each. Enumerates every injection of one proper multiset into the
/// other (the rest going to the diagonal) and every essential bijection.
template <class T>
Extended<T> brute_force_bottleneck(const PersistenceDiagram<T>& D1,
                                   const PersistenceDiagram<T>& D2) {
  std::vector<MatchPoint<T>> a, b;
  std::vector<T> ea, eb;
  detail::expand_diagram(D1, a, ea);
  detail::expand_diagram(D2, b, eb);
  if (a.size() + ea.size() > 8 || b.size() + eb.size() > 8)
    throw std::invalid_argument("brute_force_bottleneck: more than 8 expanded points");
  if (ea.size() != eb.size()) return Extended<T>::infinity();

  Extended<T> best_essential(T(0));
  if (!ea.empty()) {
    std::vector<std::size_t> perm(eb.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    bool first = true;
    do {
      Extended<T> worst(T(0));
      for (std::size_t i = 0; i < ea.size(); ++i)
        worst = max(worst, Extended<T>(abs_value<T>(ea[i] - eb[perm[i]])));
      best_essential = first ? worst : min(best_essential, worst);
      first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  Extended<T> best_proper = Extended<T>::infinity();
  std::vector<char> used(b.size(), 0);
  // assign a[i] to an unused b point or to the diagonal; leftovers of b end
  // on the diagonal
  auto recurse = [&](auto&& self, std::size_t i, const Extended<T>& worst_so_far) -> void {
    if (i == a.size()) {
      Extended<T> worst = worst_so_far;
      for (std::size_t j = 0; j < b.size(); ++j)
        if (!used[j]) worst = max(worst, diagonal_cost(b[j]));
      best_proper = min(best_proper, worst);
      return;
    }
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!used[j]) {
        used[j] = 1;
        self(self, i + 1, max(worst_so_far, dtilde(a[i], b[j])));
        used[j] = 0;
      }
    self(self, i + 1, max(worst_so_far, diagonal_cost(a[i])));
  };
  recurse(recurse, 0, Extended<T>(T(0)));
  return max(best_essential, best_proper);
}

}  // namespace folipers
