// Half-plane foliation of Delta+: parameterization schemes, leaf location,
// the reduction of a vector filtration to a scalar one along a leaf, and the
// normalization maps between schemes.
//
// A leaf is the half-plane {(s*l + b, t*l + b) : s < t} for a direction l
// with positive entries and an offset b with zero coordinate sum. Schemes
// differ only in how the direction is normalized: unit Euclidean norm
// (adm), unit coordinate sum (ladm), or unit p-norm. Rescaling the
// direction never changes the leaf, which is why every scheme's
// representative can be recovered from any point of the leaf.
#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "folipers/complex.hpp"
#include "folipers/scalar.hpp"

namespace folipers {

enum class SchemeKind { UnitNorm, SumOne, PNorm };

struct Scheme {
  SchemeKind kind = SchemeKind::SumOne;
  unsigned p = 1;  // only for PNorm

  static Scheme unit_norm() { return {SchemeKind::UnitNorm, 2}; }
  static Scheme sum_one() { return {SchemeKind::SumOne, 1}; }
  static Scheme pnorm(unsigned p) {
    if (p == 0) throw std::invalid_argument("pnorm scheme needs p >= 1");
    return {SchemeKind::PNorm, p};
  }

  // Exactly representable with rational inputs (no roots involved).
  bool rational_exact() const {
    return kind == SchemeKind::SumOne || (kind == SchemeKind::PNorm && p == 1);
  }

  std::string name() const {
    switch (kind) {
      case SchemeKind::UnitNorm: return "adm";
      case SchemeKind::SumOne: return "ladm";
      case SchemeKind::PNorm: return "pnorm:" + std::to_string(p);
    }
    return "?";
  }

  friend bool operator==(const Scheme& a, const Scheme& b) {
    return a.kind == b.kind && (a.kind != SchemeKind::PNorm || a.p == b.p);
  }
};

// "adm" | "ladm" | "pnorm:<p>"
inline Scheme parse_scheme(const std::string& text) {
  if (text == "adm") return Scheme::unit_norm();
  if (text == "ladm") return Scheme::sum_one();
  if (text.rfind("pnorm:", 0) == 0) {
    int p = std::stoi(text.substr(6));
    if (p < 1) throw std::invalid_argument("bad scheme: " + text);
    return Scheme::pnorm(static_cast<unsigned>(p));
  }
  throw std::invalid_argument("unknown scheme '" + text + "' (adm|ladm|pnorm:<p>)");
}

template <class T>
struct AdmissiblePair {
  std::vector<T> direction;  // lambda, every entry > 0
  std::vector<T> offset;     // beta, entries sum to 0
  Scheme scheme;
};

template <class T>
struct LeafCoordinates {
  T s;
  T t;  // s < t
};

namespace detail {

inline std::optional<boost::multiprecision::cpp_int> exact_nth_root(
    const boost::multiprecision::cpp_int& x, unsigned p) {
  using Int = boost::multiprecision::cpp_int;
  if (x < 0) return std::nullopt;
  if (x == 0 || x == 1 || p == 1) return x;
  Int lo = 0, hi = x;
  while (lo < hi) {  // smallest r with r^p >= x
    Int mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, p) < x)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (boost::multiprecision::pow(lo, p) == x) return lo;
  return std::nullopt;
}

// x^(1/p): closed for doubles, exact-or-throw for rationals.
template <class T>
T nth_root(const T& x, unsigned p) {
  if constexpr (is_rational_v<T>) {
    auto num = exact_nth_root(numerator(x), p);
    auto den = exact_nth_root(denominator(x), p);
    if (!num || !den)
      throw std::invalid_argument(
          "scheme normalization is irrational for this input; use float mode");
    return Rational(*num, *den);
  } else {
    return p == 1 ? x : (p == 2 ? std::sqrt(x) : std::pow(x, 1.0 / p));
  }
}

template <class T>
T pow_small(const T& x, unsigned p) {
  T out(1);
  for (unsigned i = 0; i < p; ++i) out *= x;
  return out;
}

}  // namespace detail

// The scheme's norm of a positive vector: sum, Euclidean norm, or p-norm.
template <class T>
T scheme_norm(const Scheme& scheme, const std::vector<T>& v) {
  unsigned p = scheme.kind == SchemeKind::SumOne ? 1
               : scheme.kind == SchemeKind::UnitNorm ? 2
                                                     : scheme.p;
  T sum(0);
  for (const T& x : v) sum += detail::pow_small(x, p);
  return detail::nth_root(sum, p);
}

template <class T>
void check_admissible(const AdmissiblePair<T>& pair, double tol = 1e-12) {
  if (pair.direction.empty() || pair.direction.size() != pair.offset.size())
    throw std::invalid_argument("admissible pair: mismatched direction/offset sizes");
  for (const T& l : pair.direction)
    if (!(l > T(0))) throw std::invalid_argument("admissible pair: direction entries must be > 0");
  T beta_sum(0);
  for (const T& b : pair.offset) beta_sum += b;
  T norm = scheme_norm(pair.scheme, pair.direction);
  if constexpr (is_rational_v<T>) {
    if (beta_sum != T(0)) throw std::invalid_argument("admissible pair: offset sum must be 0");
    if (norm != T(1)) throw std::invalid_argument("admissible pair: direction not normalized");
  } else {
    if (std::abs(beta_sum) > tol)
      throw std::invalid_argument("admissible pair: offset sum must be 0");
    if (std::abs(norm - 1.0) > tol)
      throw std::invalid_argument("admissible pair: direction not normalized");
  }
}

/// The unique admissible pair under `scheme` whose leaf passes through
/// (u, v), together with the leaf coordinates: direction = (v-u)
/// renormalized, s = sum(u)/sum(lambda), beta = u - s*lambda (so beta sums
/// to 0 automatically), t = s + sum(v-u)/sum(lambda).
template <class T>
std::pair<AdmissiblePair<T>, LeafCoordinates<T>> leaf_through(const Scheme& scheme,
                                                              const std::vector<T>& u,
                                                              const std::vector<T>& v) {
  if (u.empty() || u.size() != v.size())
    throw std::invalid_argument("leaf_through: mismatched point sizes");
  if (!lt_strict_componentwise(u, v))
    throw std::invalid_argument("leaf_through: u must be strictly below v in every coordinate");
  std::size_t n = u.size();
  std::vector<T> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = v[i] - u[i];
  T norm = scheme_norm(scheme, d);
  std::vector<T> lambda(n);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = d[i] / norm;

  T lambda_sum(0), u_sum(0), d_sum(0);
  for (std::size_t i = 0; i < n; ++i) {
    lambda_sum += lambda[i];
    u_sum += u[i];
    d_sum += d[i];
  }
  T s = u_sum / lambda_sum;
  T t = s + d_sum / lambda_sum;
  std::vector<T> beta(n);
  for (std::size_t i = 0; i < n; ++i) beta[i] = u[i] - s * lambda[i];
  return {AdmissiblePair<T>{std::move(lambda), std::move(beta), scheme},
          LeafCoordinates<T>{std::move(s), std::move(t)}};
}

/// Per-vertex reduction F(x) = max_i (phi_i(x) - beta_i) / lambda_i of the
/// Reduction Theorem, extended to simplices by max.
template <class T>
ScalarFiltration<T> reduce_function(const SimplicialComplex& K, const VectorFiltration<T>& phi,
                                    const AdmissiblePair<T>& pair) {
  check_filtration(K, phi);
  if (pair.direction.size() != phi.components)
    throw std::invalid_argument("reduce_function: pair dimension != filtration components");
  for (const T& l : pair.direction)
    if (!(l > T(0))) throw std::invalid_argument("reduce_function: direction entries must be > 0");
  std::vector<T> vertex_values;
  vertex_values.reserve(K.vertex_count());
  for (const auto& values : phi.values) {
    T best = (values[0] - pair.offset[0]) / pair.direction[0];
    for (unsigned c = 1; c < phi.components; ++c) {
      T candidate = (values[c] - pair.offset[c]) / pair.direction[c];
      if (best < candidate) best = candidate;
    }
    vertex_values.push_back(std::move(best));
  }
  return extend_by_max(K, vertex_values);
}

/// Rescales the direction to unit Euclidean norm, offset untouched. In
/// rational mode this succeeds only when the norm is exactly rational.
template <class T>
AdmissiblePair<T> unit_normalize(const AdmissiblePair<T>& pair) {
  for (const T& l : pair.direction)
    if (!(l > T(0))) throw std::invalid_argument("unit_normalize: direction entries must be > 0");
  T norm = scheme_norm(Scheme::unit_norm(), pair.direction);
  AdmissiblePair<T> out = pair;
  for (T& l : out.direction) l = l / norm;
  out.scheme = Scheme::unit_norm();
  return out;
}

/// The map of Proposition-style normalization onto Adm_n: for a unit-norm
/// direction, shift the offset by -(sum(beta)/sum(lambda)) * lambda so it
/// sums to zero. Surjective onto the admissible pairs.
template <class T>
AdmissiblePair<T> to_adm(const AdmissiblePair<T>& pair, double tol = 1e-9) {
  T norm = scheme_norm(Scheme::unit_norm(), pair.direction);
  if constexpr (is_rational_v<T>) {
    if (norm != T(1)) throw std::invalid_argument("to_adm: direction must have unit norm");
  } else {
    if (std::abs(norm - 1.0) > tol)
      throw std::invalid_argument("to_adm: direction must have unit norm");
  }
  for (const T& l : pair.direction)
    if (!(l > T(0))) throw std::invalid_argument("to_adm: direction entries must be > 0");
  T beta_sum(0), lambda_sum(0);
  for (std::size_t i = 0; i < pair.direction.size(); ++i) {
    beta_sum += pair.offset[i];
    lambda_sum += pair.direction[i];
  }
  T shift = beta_sum / lambda_sum;
  AdmissiblePair<T> out = pair;
  for (std::size_t i = 0; i < out.offset.size(); ++i)
    out.offset[i] = pair.offset[i] - shift * pair.direction[i];
  out.scheme = Scheme::unit_norm();
  return out;
}

struct SchemeValidation {
  std::size_t samples = 0;
  std::size_t failures = 0;
  double max_roundtrip_error = 0;   // worst |point - reconstruction| (max-norm)
  double max_uniqueness_error = 0;  // worst pair discrepancy from a second leaf point
  std::vector<std::string> notes;   // one line per failed sample

  bool ok() const { return failures == 0; }
};

/// Exercises the foliation contract on explicit samples from Delta+:
/// leaf positivity, parametric round-trip, uniqueness of the pair when
/// rederived from a second point of the same leaf, and leaf containment in
/// Delta+. Samples must satisfy u strictly below v.
template <class T>
SchemeValidation validate_scheme(const Scheme& scheme,
                                 const std::vector<std::pair<std::vector<T>, std::vector<T>>>& samples,
                                 double tol = 1e-9) {
  SchemeValidation report;
  for (const auto& [u, v] : samples) {
    ++report.samples;
    bool bad = false;
    std::ostringstream note;
    try {
      auto [pair, coords] = leaf_through(scheme, u, v);
      for (const T& l : pair.direction)
        if (!(l > T(0))) {
          bad = true;
          note << "non-positive direction entry; ";
        }
      double roundtrip = 0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        roundtrip = std::max(roundtrip, std::abs(to_double(coords.s * pair.direction[i] +
                                                           pair.offset[i] - u[i])));
        roundtrip = std::max(roundtrip, std::abs(to_double(coords.t * pair.direction[i] +
                                                           pair.offset[i] - v[i])));
      }
      report.max_roundtrip_error = std::max(report.max_roundtrip_error, roundtrip);
      if (roundtrip > tol) {
        bad = true;
        note << "round-trip error " << roundtrip << "; ";
      }

      // rederive from a second point of the same leaf
      T span = coords.t - coords.s;
      T s2 = coords.s + span / T(3);
      T t2 = coords.t + span;
      std::vector<T> u2(u.size()), v2(v.size());
      for (std::size_t i = 0; i < u.size(); ++i) {
        u2[i] = s2 * pair.direction[i] + pair.offset[i];
        v2[i] = t2 * pair.direction[i] + pair.offset[i];
      }
      auto [pair2, coords2] = leaf_through(scheme, u2, v2);
      double pair_err = 0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        pair_err = std::max(pair_err,
                            std::abs(to_double(pair.direction[i] - pair2.direction[i])));
        pair_err = std::max(pair_err, std::abs(to_double(pair.offset[i] - pair2.offset[i])));
      }
      report.max_uniqueness_error = std::max(report.max_uniqueness_error, pair_err);
      if (pair_err > tol) {
        bad = true;
        note << "pair not unique across leaf points (err " << pair_err << "); ";
      }

      // arbitrary points of the leaf stay inside Delta+
      for (auto [ls, lt] : {std::pair<T, T>{coords.s - span, coords.s},
                            std::pair<T, T>{coords.t, coords.t + T(2) * span}}) {
        std::vector<T> lu(u.size()), lv(v.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
          lu[i] = ls * pair.direction[i] + pair.offset[i];
          lv[i] = lt * pair.direction[i] + pair.offset[i];
        }
        if (!lt_strict_componentwise(lu, lv)) {
          bad = true;
          note << "leaf point outside Delta+; ";
        }
      }
    } catch (const std::exception& e) {
      bad = true;
      note << "exception: " << e.what();
    }
    if (bad) {
      ++report.failures;
      report.notes.push_back(note.str());
    }
  }
  return report;
}

}  // namespace folipers
