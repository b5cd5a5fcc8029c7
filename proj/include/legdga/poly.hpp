#pragma once

// Polynomials with Z2 coefficients in free non-commutative variables.

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symbol.hpp"

namespace legdga {

using Word = std::vector<Symbol>;

// Canonical term order: shorter words first, then lexicographic on symbol ids.
inline bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline Word concat(std::span<const Symbol> a, std::span<const Symbol> b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

class Poly {
 public:
  Poly() = default;

  static Poly one() { return Poly(std::vector<Word>{Word{}}, Canonical{}); }
  static Poly gen(Symbol s) { return Poly(std::vector<Word>{Word{s}}, Canonical{}); }
  static Poly word(Word w) { return Poly(std::vector<Word>{std::move(w)}, Canonical{}); }

  // Reduces an arbitrary list of words mod 2.
  static Poly from_terms(std::vector<Word> terms) {
    canonicalize(terms);
    return Poly(std::move(terms), Canonical{});
  }

  const std::vector<Word>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].empty(); }
  bool contains(const Word& w) const { return std::binary_search(terms_.begin(), terms_.end(), w, word_less); }
  bool mentions(Symbol s) const {
    for (const auto& w : terms_)
      if (std::find(w.begin(), w.end(), s) != w.end()) return true;
    return false;
  }
  std::size_t max_length() const { return terms_.empty() ? 0 : terms_.back().size(); }

  friend Poly operator+(const Poly& p, const Poly& q) {
    std::vector<Word> out;
    out.reserve(p.terms_.size() + q.terms_.size());
    auto i = p.terms_.begin(), j = q.terms_.begin();
    while (i != p.terms_.end() && j != q.terms_.end()) {
      if (word_less(*i, *j)) {
        out.push_back(*i++);
      } else if (word_less(*j, *i)) {
        out.push_back(*j++);
      } else {
        ++i;
        ++j;
      }
    }
    out.insert(out.end(), i, p.terms_.end());
    out.insert(out.end(), j, q.terms_.end());
    return Poly(std::move(out), Canonical{});
  }
  Poly& operator+=(const Poly& q) { return *this = *this + q; }

  friend Poly operator*(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    if (p.is_one()) return q;
    if (q.is_one()) return p;
    std::vector<Word> out;
    out.reserve(p.size() * q.size());
    for (const auto& a : p.terms_)
      for (const auto& b : q.terms_) out.push_back(concat(a, b));
    return from_terms(std::move(out));
  }
  Poly& operator*=(const Poly& q) { return *this = *this * q; }

  friend bool operator==(const Poly&, const Poly&) = default;

  static void canonicalize(std::vector<Word>& terms) {
    std::sort(terms.begin(), terms.end(), word_less);
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
      std::size_t j = i;
      while (j < terms.size() && terms[j] == terms[i]) ++j;
      if ((j - i) % 2 == 1) {
        if (out != i) terms[out] = std::move(terms[i]);
        ++out;
      }
      i = j;
    }
    terms.resize(out);
  }

 private:
  struct Canonical {};
  Poly(std::vector<Word> terms, Canonical) : terms_(std::move(terms)) {}

  std::vector<Word> terms_;
};

// Collects words and reduces mod 2 once at the end.
class PolyAccumulator {
 public:
  void add(Word w) { terms_.push_back(std::move(w)); }
  void add(const Poly& p) { terms_.insert(terms_.end(), p.terms().begin(), p.terms().end()); }
  // Adds prefix * p * suffix.
  void add_sandwich(std::span<const Symbol> prefix, const Poly& p, std::span<const Symbol> suffix) {
    for (const auto& w : p.terms()) {
      Word t;
      t.reserve(prefix.size() + w.size() + suffix.size());
      t.insert(t.end(), prefix.begin(), prefix.end());
      t.insert(t.end(), w.begin(), w.end());
      t.insert(t.end(), suffix.begin(), suffix.end());
      terms_.push_back(std::move(t));
    }
  }
  Poly take() { return Poly::from_terms(std::move(terms_)); }

 private:
  std::vector<Word> terms_;
};

// ---------------------------------------------------------------------------
// Text form:  poly := "0" | term ("+" term)*,  term := "1" | IDENT ("." IDENT)*

inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += w[i].name();
  }
  return s;
}

// Display order: by length, then letter-by-letter natural name order.
inline bool word_display_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    const auto& x = a[i].name();
    const auto& y = b[i].name();
    if (natural_less(x, y)) return true;
    if (natural_less(y, x)) return false;
  }
  return false;
}

inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::vector<const Word*> ws;
  for (const auto& w : p.terms()) ws.push_back(&w);
  std::sort(ws.begin(), ws.end(), [](const Word* a, const Word* b) { return word_display_less(*a, *b); });
  std::string s;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) s += " + ";
    s += to_string(*ws[i]);
  }
  return s;
}

inline Poly parse_poly(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
  };
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError("polynomial '" + std::string(text) + "': " + what + " at column " + std::to_string(pos + 1));
  };
  skip();
  if (pos < text.size() && text[pos] == '0') {
    ++pos;
    skip();
    if (pos != text.size()) throw fail("unexpected input after 0");
    return {};
  }
  std::vector<Word> terms;
  while (true) {
    skip();
    Word w;
    if (pos < text.size() && text[pos] == '1') {
      ++pos;
    } else {
      while (true) {
        skip();
        std::size_t n = scan_ident(text, pos);
        if (n == 0) throw fail("expected identifier");
        w.emplace_back(text.substr(pos, n));
        pos += n;
        skip();
        if (pos < text.size() && text[pos] == '.') {
          ++pos;
          continue;
        }
        break;
      }
    }
    terms.push_back(std::move(w));
    skip();
    if (pos == text.size()) break;
    if (text[pos] != '+') throw fail("expected '+'");
    ++pos;
  }
  return Poly::from_terms(std::move(terms));
}

// ---------------------------------------------------------------------------
// Generator maps and algebra-map extension.

class GenMap {
 public:
  GenMap() = default;

  void set(Symbol s, Poly p) { map_[s] = std::move(p); }
  bool contains(Symbol s) const { return map_.count(s) != 0; }
  const Poly* find(Symbol s) const {
    auto it = map_.find(s);
    return it == map_.end() ? nullptr : &it->second;
  }
  const Poly& at(Symbol s) const {
    auto it = map_.find(s);
    if (it == map_.end()) throw DomainError("no image for generator '" + s.name() + "'");
    return it->second;
  }
  std::size_t size() const { return map_.size(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  friend bool operator==(const GenMap&, const GenMap&) = default;

 private:
  std::unordered_map<Symbol, Poly> map_;
};

using SymbolImage = std::function<Poly(Symbol)>;

inline SymbolImage image_of(const GenMap& f) {
  return [&f](Symbol s) { return f.at(s); };
}
inline Poly identity_image(Symbol s) { return Poly::gen(s); }

// Image of a word under the algebra map determined by f on generators.
template <class F>
Poly apply_word(std::span<const Symbol> w, F&& f) {
  Poly out = Poly::one();
  for (Symbol s : w) {
    out = out * f(s);
    if (out.is_zero()) break;
  }
  return out;
}

template <class F>
Poly substitute(const Poly& p, F&& f) {
  PolyAccumulator acc;
  for (const auto& w : p.terms()) acc.add(apply_word(w, f));
  return acc.take();
}

// Unital algebra-map extension of a generator map.
inline Poly apply_morphism(const GenMap& f, const Poly& p) { return substitute(p, image_of(f)); }

// Pure renaming of generators; a word maps to a single word.
template <class F>
Poly rename(const Poly& p, F&& f) {
  std::vector<Word> out;
  out.reserve(p.size());
  for (const auto& w : p.terms()) {
    Word t;
    t.reserve(w.size());
    for (Symbol s : w) t.push_back(f(s));
    out.push_back(std::move(t));
  }
  return Poly::from_terms(std::move(out));
}

// For a word g1...gr returns the sum over j of left(g1...g_{j-1}) * mid(g_j) * right(g_{j+1}...g_r),
// extended linearly. Leibniz differentials, twisted derivations and the Omega
// combinator are all instances.
template <class L, class M, class R>
Poly twisted_sum(const Poly& p, L&& left, M&& mid, R&& right) {
  PolyAccumulator acc;
  for (const auto& w : p.terms()) {
    const std::size_t r = w.size();
    std::vector<Poly> suffix(r + 1);
    suffix[r] = Poly::one();
    for (std::size_t j = r; j-- > 0;) suffix[j] = right(w[j]) * suffix[j + 1];
    Poly prefix = Poly::one();
    for (std::size_t j = 0; j < r; ++j) {
      if (!prefix.is_zero() && !suffix[j + 1].is_zero()) acc.add(prefix * mid(w[j]) * suffix[j + 1]);
      prefix = prefix * left(w[j]);
    }
  }
  return acc.take();
}

// Leibniz extension of a generator-level operator with plain letters on both sides.
template <class M>
Poly leibniz(const Poly& p, M&& mid) {
  PolyAccumulator acc;
  for (const auto& w : p.terms()) {
    std::span<const Symbol> ws(w);
    for (std::size_t j = 0; j < w.size(); ++j) acc.add_sandwich(ws.first(j), mid(w[j]), ws.subspan(j + 1));
  }
  return acc.take();
}

// Gamma_phi(g1...gr) = sum_j g1...g_{j-1} hat(g_j) phi(g_{j+1}...g_r), with Gamma(1) = 0.
// The cone module supplies copy-tagging through `left` and `right`.
template <class L, class H, class R>
Poly gamma_twisted(const Poly& p, L&& left, H&& hat, R&& right) {
  return twisted_sum(p, left, [&](Symbol s) { return Poly::gen(hat(s)); }, right);
}

inline Poly gamma_twisted(const GenMap& phi, const std::function<Symbol(Symbol)>& hat, const Poly& p) {
  return gamma_twisted(p, identity_image, hat, image_of(phi));
}

// Omega_theta^H(g1...gr) = sum_j g1...g_{j-1} H(g_j) theta(g_{j+1}...g_r).
template <class H, class T>
Poly omega_combinator(H&& h, T&& theta, const Poly& p) {
  return twisted_sum(p, identity_image, h, theta);
}

// ---------------------------------------------------------------------------
// Chain-homotopy evaluation.

// How a homotopy given on generators is extended to words.
//   PsiPhi: K(uv) = K(u) phi(v) + psi(u) K(v)
//   PhiPsi: K(uv) = K(u) psi(v) + phi(u) K(v)
enum class HomotopyRule { PsiPhi, PhiPsi };

inline std::string_view to_string(HomotopyRule r) { return r == HomotopyRule::PsiPhi ? "psi-phi" : "phi-psi"; }

struct HomotopyEvaluator {
  GenMap values;
  GenMap phi;
  GenMap psi;
  HomotopyRule rule = HomotopyRule::PsiPhi;

  Poly eval(const Poly& p) const {
    const GenMap& l = rule == HomotopyRule::PsiPhi ? psi : phi;
    const GenMap& r = rule == HomotopyRule::PsiPhi ? phi : psi;
    return twisted_sum(p, image_of(l), image_of(values), image_of(r));
  }
  Poly eval_word(std::span<const Symbol> w) const { return eval(Poly::word(Word(w.begin(), w.end()))); }
};

// Gamma_K(b1...br) = sum_{j<r} left(b1...b_{j-1}) hat(b_j) K(b_{j+1}...b_r); zero on
// constants and single letters. `k_tail` maps a tail word to its K-value, already
// placed in the codomain.
template <class L, class H, class KT>
Poly gamma_k(const Poly& p, L&& left, H&& hat, KT&& k_tail) {
  PolyAccumulator acc;
  for (const auto& w : p.terms()) {
    std::span<const Symbol> ws(w);
    Poly prefix = Poly::one();
    for (std::size_t j = 0; j + 1 < w.size(); ++j) {
      if (!prefix.is_zero()) acc.add(prefix * Poly::gen(hat(w[j])) * k_tail(ws.subspan(j + 1)));
      prefix = prefix * left(w[j]);
    }
  }
  return acc.take();
}

inline Poly gamma_k(const HomotopyEvaluator& k, const std::function<Symbol(Symbol)>& hat, const Poly& p) {
  return gamma_k(p, identity_image, hat, [&](std::span<const Symbol> t) { return k.eval_word(t); });
}

// ---------------------------------------------------------------------------
// Degrees.

template <class D>
int word_degree(std::span<const Symbol> w, D&& deg) {
  int d = 0;
  for (Symbol s : w) d += deg(s);
  return d;
}

// The common degree of all terms, or nullopt if p is zero or inhomogeneous.
template <class D>
std::optional<int> homogeneous_degree(const Poly& p, D&& deg) {
  std::optional<int> d;
  for (const auto& w : p.terms()) {
    int e = word_degree(w, deg);
    if (d && *d != e) return std::nullopt;
    d = e;
  }
  return d;
}

template <class D>
bool is_homogeneous(const Poly& p, D&& deg) {
  return p.is_zero() || homogeneous_degree(p, deg).has_value();
}

}  // namespace legdga
