#pragma once

// Reference implementations written directly from the defining sums. They share
// only Poly's ring operations with the library.

#include <legdga/legdga.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace legdga::oracle {

using Fn = std::function<Poly(Symbol)>;

inline Poly prod(const Word& w, std::size_t from, std::size_t to, const Fn& f) {
  Poly p = Poly::one();
  for (std::size_t i = from; i < to; ++i) p = p * f(w[i]);
  return p;
}

inline Poly plain(Symbol s) { return Poly::gen(s); }

// sum_j left(g1..g_{j-1}) hat(g_j) right(g_{j+1}..g_r)
inline Poly gamma(const Poly& p, const Fn& left, const Fn& hat, const Fn& right) {
  Poly out;
  for (const auto& w : p.terms())
    for (std::size_t j = 0; j < w.size(); ++j) out = out + prod(w, 0, j, left) * hat(w[j]) * prod(w, j + 1, w.size(), right);
  return out;
}

// K on a word as sum_j psi(g1..g_{j-1}) K(g_j) phi(g_{j+1}..g_r).
inline Poly homotopy_word(const Word& w, const Fn& k, const Fn& phi, const Fn& psi) {
  Poly out;
  for (std::size_t j = 0; j < w.size(); ++j) out = out + prod(w, 0, j, psi) * k(w[j]) * prod(w, j + 1, w.size(), phi);
  return out;
}

inline Poly homotopy(const Poly& p, const Fn& k, const Fn& phi, const Fn& psi) {
  Poly out;
  for (const auto& w : p.terms()) out = out + homotopy_word(w, k, phi, psi);
  return out;
}

// sum_{j<r} left(g1..g_{j-1}) hat(g_j) ktail(g_{j+1}..g_r)
inline Poly gamma_k(const Poly& p, const Fn& left, const Fn& hat, const std::function<Poly(const Word&)>& ktail) {
  Poly out;
  for (const auto& w : p.terms())
    for (std::size_t j = 0; j + 1 < w.size(); ++j)
      out = out + prod(w, 0, j, left) * hat(w[j]) * ktail(Word(w.begin() + static_cast<long>(j) + 1, w.end()));
  return out;
}

// sum_j g1..g_{j-1} H(g_j) theta(g_{j+1}..g_r)
inline Poly omega(const Poly& p, const Fn& left, const Fn& h, const Fn& theta) {
  Poly out;
  for (const auto& w : p.terms())
    for (std::size_t j = 0; j < w.size(); ++j) out = out + prod(w, 0, j, left) * h(w[j]) * prod(w, j + 1, w.size(), theta);
  return out;
}

inline Poly leibniz(const Poly& p, const Fn& d) {
  Poly out;
  for (const auto& w : p.terms())
    for (std::size_t j = 0; j < w.size(); ++j) out = out + prod(w, 0, j, plain) * d(w[j]) * prod(w, j + 1, w.size(), plain);
  return out;
}

// b_i -> x for every letter: a word of length n becomes x^n.
inline UPoly2 abelianize(const Poly& p) {
  std::map<std::size_t, int> count;
  for (const auto& w : p.terms()) ++count[w.size()];
  UPoly2 u;
  for (auto [n, c] : count)
    if (c % 2) u = u + UPoly2::monomial(static_cast<int>(n));
  return u;
}

inline bool eval(const std::map<std::string, bool>& eps, const Poly& p) {
  bool acc = false;
  for (const auto& w : p.terms()) {
    bool t = true;
    for (Symbol s : w) {
      auto it = eps.find(s.name());
      t = t && it != eps.end() && it->second;
    }
    acc = acc != t;
  }
  return acc;
}

// All Z2 assignments on the degree-0 generators killing every differential,
// as sorted name lists.
inline std::vector<std::vector<std::string>> augmentations(const Dga& d) {
  std::vector<std::string> zero;
  for (const auto& g : d.generators())
    if (g.degree == 0) zero.push_back(g.symbol.name());
  std::vector<std::vector<std::string>> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << zero.size()); ++m) {
    std::map<std::string, bool> eps;
    std::vector<std::string> ones;
    for (std::size_t i = 0; i < zero.size(); ++i) {
      eps[zero[i]] = (m >> i) & 1u;
      if ((m >> i) & 1u) ones.push_back(zero[i]);
    }
    bool ok = true;
    for (const auto& g : d.generators())
      if (g.degree == 1 && eval(eps, d.d(g.symbol))) ok = false;
    if (ok) {
      std::sort(ones.begin(), ones.end());
      out.push_back(ones);
    }
  }
  return out;
}

// Rank over GF(2) by plain row reduction on bool rows.
inline std::size_t rank(std::vector<std::vector<bool>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && !m[piv][c]) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != r && m[i][c])
        for (std::size_t k = 0; k < cols; ++k) m[i][k] = m[i][k] != m[r][k];
    ++r;
  }
  return r;
}

// Polynomial product on exponent sets, independent of the packed representation.
inline std::set<int> upoly_mul(const std::set<int>& a, const std::set<int>& b) {
  std::map<int, int> c;
  for (int i : a)
    for (int j : b) ++c[i + j];
  std::set<int> out;
  for (auto [e, n] : c)
    if (n % 2) out.insert(e);
  return out;
}

inline std::set<int> exponents(const UPoly2& p) {
  std::set<int> out;
  for (int k = 0; k <= p.degree(); ++k)
    if (p.coeff(k)) out.insert(k);
  return out;
}

// Entries of [[x,1],[1,0]]^k; (0,0) is Q_k.
inline std::array<UPoly2, 4> q_matrix_power(int k) {
  std::array<UPoly2, 4> m{UPoly2::one(), UPoly2{}, UPoly2{}, UPoly2::one()};
  for (int i = 0; i < k; ++i) m = {m[0] * UPoly2::x() + m[1], m[0], m[2] * UPoly2::x() + m[3], m[2]};
  return m;
}

}  // namespace legdga::oracle

namespace legdga {
inline void PrintTo(const Poly& p, std::ostream* os) { *os << to_string(p); }
inline void PrintTo(const Symbol& s, std::ostream* os) { *os << s.name(); }
inline void PrintTo(const UPoly2& p, std::ostream* os) { *os << p.to_string(); }
}  // namespace legdga
