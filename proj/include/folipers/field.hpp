// Dense column-major linear algebra over GF(p): bit-packed columns for
// characteristic 2, byte-per-entry columns for other small primes. Desk-scale
// complexes need nothing sparser.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace folipers {

struct FieldSpec {
  std::uint32_t characteristic = 2;
};

inline bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void check_field(const FieldSpec& field) {
  if (!is_prime(field.characteristic))
    throw std::invalid_argument("field characteristic must be prime");
}

// Bit-packed GF(2) column. low() is the largest nonzero row, the pivot used
// by both rank computation and persistence reduction.
class Gf2Column {
 public:
  using Coeff = std::uint32_t;

  explicit Gf2Column(std::size_t rows = 0) : rows_(rows), words_((rows + 63) / 64, 0) {}

  std::size_t rows() const { return rows_; }

  void set(std::size_t row, Coeff c = 1) {
    if (c % 2) words_[row >> 6] ^= std::uint64_t(1) << (row & 63);
  }
  Coeff at(std::size_t row) const {
    return (words_[row >> 6] >> (row & 63)) & 1;
  }
  bool is_zero() const {
    for (std::uint64_t w : words_)
      if (w) return false;
    return true;
  }
  std::optional<std::size_t> low() const {
    for (std::size_t i = words_.size(); i-- > 0;)
      if (words_[i]) {
        std::size_t bit = 63;
        while (!(words_[i] >> bit & 1)) --bit;
        return (i << 6) + bit;
      }
    return std::nullopt;
  }
  // this += factor * other; over GF(2) any nonzero factor is 1.
  void axpy(Coeff factor, const Gf2Column& other) {
    if (factor % 2 == 0) return;
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  }
  // factor that cancels `pivot_coeff` against our coefficient at the pivot row
  static Coeff elimination_factor(Coeff own, Coeff /*pivot*/) { return own; }

 private:
  std::size_t rows_;
  std::vector<std::uint64_t> words_;
};

// Dense column over GF(p), p an odd prime small enough for 64-bit products.
class GfpColumn {
 public:
  using Coeff = std::uint32_t;

  explicit GfpColumn(std::size_t rows = 0, Coeff p = 3) : p_(p), v_(rows, 0) {}

  std::size_t rows() const { return v_.size(); }
  Coeff modulus() const { return p_; }

  void set(std::size_t row, Coeff c) { v_[row] = c % p_; }
  Coeff at(std::size_t row) const { return v_[row]; }
  bool is_zero() const {
    for (Coeff c : v_)
      if (c) return false;
    return true;
  }
  std::optional<std::size_t> low() const {
    for (std::size_t i = v_.size(); i-- > 0;)
      if (v_[i]) return i;
    return std::nullopt;
  }
  void axpy(Coeff factor, const GfpColumn& other) {
    factor %= p_;
    if (!factor) return;
    for (std::size_t i = 0; i < v_.size(); ++i)
      v_[i] = static_cast<Coeff>((v_[i] + std::uint64_t(factor) * other.v_[i]) % p_);
  }
  Coeff elimination_factor(Coeff own, Coeff pivot) const {
    // own + factor * pivot == 0 (mod p)
    return static_cast<Coeff>(std::uint64_t(p_ - own) * inverse(pivot) % p_);
  }

 private:
  Coeff inverse(Coeff a) const {  // extended Euclid, p prime
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a % p_;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      t -= q * new_t;
      std::swap(t, new_t);
      r -= q * new_r;
      std::swap(r, new_r);
    }
    return static_cast<Coeff>(t < 0 ? t + p_ : t);
  }

  Coeff p_;
  std::vector<Coeff> v_;
};

// Column-echelon rank. Destroys `cols`.
template <class Col>
std::size_t column_rank(std::vector<Col> cols) {
  std::size_t rank = 0;
  std::vector<std::optional<std::size_t>> pivot_owner;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto lo = cols[j].low();
    while (lo) {
      if (pivot_owner.size() <= *lo) pivot_owner.resize(*lo + 1);
      if (!pivot_owner[*lo]) break;
      const Col& owner = cols[*pivot_owner[*lo]];
      cols[j].axpy(cols[j].elimination_factor(cols[j].at(*lo), owner.at(*lo)), owner);
      lo = cols[j].low();
    }
    if (lo) {
      pivot_owner[*lo] = j;
      ++rank;
    }
  }
  return rank;
}

// Basis of the kernel of the linear map whose matrix columns are `cols`.
// Kernel vectors live in the column-index space (length cols.size()).
template <class Col, class MakeCol>
std::vector<Col> kernel_basis(std::vector<Col> cols, MakeCol make_column) {
  std::vector<Col> v;  // running record of column operations, starts as identity
  v.reserve(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    Col e = make_column(cols.size());
    e.set(j, 1);
    v.push_back(std::move(e));
  }
  std::vector<std::optional<std::size_t>> pivot_owner;
  std::vector<Col> kernel;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto lo = cols[j].low();
    while (lo) {
      if (pivot_owner.size() <= *lo) pivot_owner.resize(*lo + 1);
      if (!pivot_owner[*lo]) break;
      std::size_t owner = *pivot_owner[*lo];
      auto factor = cols[j].elimination_factor(cols[j].at(*lo), cols[owner].at(*lo));
      cols[j].axpy(factor, cols[owner]);
      v[j].axpy(factor, v[owner]);
      lo = cols[j].low();
    }
    if (lo)
      pivot_owner[*lo] = j;
    else
      kernel.push_back(v[j]);
  }
  return kernel;
}

}  // namespace folipers
