#pragma once

// Univariate polynomials over GF(2), packed 64 coefficients per word, lowest
// degree first.

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "symbol.hpp"

namespace legdga {

class UPoly2 {
 public:
  UPoly2() = default;

  static UPoly2 one() { return monomial(0); }
  static UPoly2 x() { return monomial(1); }
  static UPoly2 monomial(int k) {
    UPoly2 p;
    p.set(k, true);
    return p;
  }
  // From the exponents with coefficient 1; repeated exponents cancel.
  static UPoly2 from_exponents(std::initializer_list<int> exps) {
    UPoly2 p;
    for (int e : exps) p.flip(e);
    return p;
  }

  bool is_zero() const { return bits_.empty(); }
  bool is_one() const { return bits_.size() == 1 && bits_[0] == 1; }
  // -1 for the zero polynomial.
  int degree() const {
    if (bits_.empty()) return -1;
    return static_cast<int>(64 * (bits_.size() - 1) + 63 - std::countl_zero(bits_.back()));
  }
  bool coeff(int k) const {
    std::size_t w = static_cast<std::size_t>(k) / 64;
    return w < bits_.size() && ((bits_[w] >> (k % 64)) & 1u);
  }
  void set(int k, bool v) {
    if (coeff(k) != v) flip(k);
  }
  void flip(int k) {
    std::size_t w = static_cast<std::size_t>(k) / 64;
    if (w >= bits_.size()) bits_.resize(w + 1, 0);
    bits_[w] ^= std::uint64_t{1} << (k % 64);
    trim();
  }
  // Value at x = 0 or x = 1.
  bool eval(bool at) const {
    if (!at) return coeff(0);
    int parity = 0;
    for (auto w : bits_) parity ^= std::popcount(w) & 1;
    return parity;
  }

  friend UPoly2 operator+(UPoly2 a, const UPoly2& b) {
    if (a.bits_.size() < b.bits_.size()) a.bits_.resize(b.bits_.size(), 0);
    for (std::size_t i = 0; i < b.bits_.size(); ++i) a.bits_[i] ^= b.bits_[i];
    a.trim();
    return a;
  }
  UPoly2& operator+=(const UPoly2& b) { return *this = *this + b; }

  friend UPoly2 operator*(const UPoly2& a, const UPoly2& b) {
    UPoly2 r;
    if (a.is_zero() || b.is_zero()) return r;
    r.bits_.assign(a.bits_.size() + b.bits_.size(), 0);
    for (int i = 0; i <= a.degree(); ++i) {
      if (!a.coeff(i)) continue;
      // r += b << i
      std::size_t ws = static_cast<std::size_t>(i) / 64;
      int bs = i % 64;
      for (std::size_t j = 0; j < b.bits_.size(); ++j) {
        r.bits_[j + ws] ^= b.bits_[j] << bs;
        if (bs) r.bits_[j + ws + 1] ^= b.bits_[j] >> (64 - bs);
      }
    }
    r.trim();
    return r;
  }
  UPoly2& operator*=(const UPoly2& b) { return *this = *this * b; }

  UPoly2 shifted(int k) const { return *this * monomial(k); }

  // Quotient and remainder; throws on division by zero.
  friend std::pair<UPoly2, UPoly2> divmod(const UPoly2& a, const UPoly2& b) {
    if (b.is_zero()) throw DomainError("UPoly2: division by zero");
    UPoly2 q, r = a;
    const int db = b.degree();
    while (r.degree() >= db) {
      int s = r.degree() - db;
      q.flip(s);
      r += b.shifted(s);
    }
    return {q, r};
  }
  friend UPoly2 operator%(const UPoly2& a, const UPoly2& b) { return divmod(a, b).second; }
  friend UPoly2 operator/(const UPoly2& a, const UPoly2& b) { return divmod(a, b).first; }

  friend bool operator==(const UPoly2&, const UPoly2&) = default;

  // e.g. "1 + x + x^2"; "0" for zero.
  std::string to_string(char var = 'x') const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = 0; k <= degree(); ++k) {
      if (!coeff(k)) continue;
      if (!s.empty()) s += " + ";
      if (k == 0)
        s += "1";
      else if (k == 1)
        s += var;
      else
        s += std::string(1, var) + "^" + std::to_string(k);
    }
    return s;
  }

 private:
  void trim() {
    while (!bits_.empty() && bits_.back() == 0) bits_.pop_back();
  }

  std::vector<std::uint64_t> bits_;
};

inline UPoly2 upoly_gcd(UPoly2 f, UPoly2 g) {
  while (!g.is_zero()) {
    UPoly2 r = f % g;
    f = std::move(g);
    g = std::move(r);
  }
  return f;
}

// Continuants: Q_{-1} = 0, Q_0 = 1, Q_k = x Q_{k-1} + Q_{k-2}.
inline UPoly2 q_poly(int k) {
  if (k < -1) throw DomainError("q_poly: k must be >= -1");
  UPoly2 prev, cur = UPoly2::one();
  if (k == -1) return prev;
  for (int i = 1; i <= k; ++i) {
    UPoly2 next = UPoly2::x() * cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace legdga
