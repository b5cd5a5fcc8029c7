#pragma once

// Augmentations, monodromy orbits, linearized homology over GF(2), and the
// one-generator reduction of degree-0 contact homology.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "cone.hpp"
#include "upoly2.hpp"

namespace legdga {

inline constexpr std::size_t kMaxAugmentationGenerators = 30;

// Z2 values on the degree-0 generators; every other generator maps to 0.
// Bit i of `bits` is the value on generators[i].
struct Augmentation {
  std::vector<Symbol> generators;  // degree-0 generators in height order
  std::uint64_t bits = 0;

  bool value(Symbol s) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == s) return (bits >> i) & 1u;
    return false;
  }
  std::vector<Symbol> ones() const {
    std::vector<Symbol> out;
    for (std::size_t i = 0; i < generators.size(); ++i)
      if ((bits >> i) & 1u) out.push_back(generators[i]);
    return out;
  }
  // "{b1,b4}" with names in natural order.
  std::string to_string() const {
    auto names = ones();
    std::sort(names.begin(), names.end(), [](Symbol a, Symbol b) { return natural_less(a.name(), b.name()); });
    std::string s = "{";
    for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i].name();
    return s + "}";
  }

  friend bool operator==(const Augmentation&, const Augmentation&) = default;
};

// Value of the unital algebra map determined by eps.
inline bool evaluate(const Augmentation& eps, const Poly& p) {
  bool acc = false;
  for (const auto& w : p.terms()) {
    bool t = true;
    for (Symbol s : w)
      if (!eps.value(s)) {
        t = false;
        break;
      }
    acc ^= t;
  }
  return acc;
}

namespace detail {

// Each differential compiled to masks over the degree-0 generators: a word
// evaluates to 1 iff all its letters are degree 0 and assigned 1.
struct CompiledDifferentials {
  std::vector<Symbol> zero_gens;
  std::vector<std::vector<std::uint64_t>> words;

  explicit CompiledDifferentials(const Dga& d) : zero_gens(d.generators_of_degree(0)) {
    if (zero_gens.size() > kMaxAugmentationGenerators)
      throw ResourceError("augmentation search: " + std::to_string(zero_gens.size()) + " degree-0 generators exceeds the bound of " +
                          std::to_string(kMaxAugmentationGenerators));
    std::unordered_map<Symbol, std::size_t> bit;
    for (std::size_t i = 0; i < zero_gens.size(); ++i) bit[zero_gens[i]] = i;
    for (const auto& g : d.generators()) {
      std::vector<std::uint64_t> masks;
      for (const auto& w : d.d(g.symbol).terms()) {
        std::uint64_t m = 0;
        bool live = true;
        for (Symbol s : w) {
          auto it = bit.find(s);
          if (it == bit.end()) {
            live = false;
            break;
          }
          m |= std::uint64_t{1} << it->second;
        }
        if (live) masks.push_back(m);
      }
      if (!masks.empty()) words.push_back(std::move(masks));
    }
  }

  bool annihilates(std::uint64_t a) const {
    for (const auto& masks : words) {
      bool v = false;
      for (auto m : masks) v ^= (m & ~a) == 0;
      if (v) return false;
    }
    return true;
  }
};

}  // namespace detail

inline bool is_augmentation(const Dga& d, const Augmentation& eps) {
  for (const auto& g : d.generators())
    if (evaluate(eps, d.d(g.symbol))) return false;
  return true;
}

// Exhaustive search over all assignments of the degree-0 generators, in
// binary-counting order. `jobs` > 1 splits the range across threads; the
// output does not depend on it.
inline std::vector<Augmentation> find_augmentations(const Dga& d, unsigned jobs = 1) {
  detail::CompiledDifferentials cd(d);
  const std::uint64_t total = std::uint64_t{1} << cd.zero_gens.size();
  jobs = std::max(1u, std::min<unsigned>(jobs, 64));
  std::vector<std::vector<std::uint64_t>> found(jobs);
  auto scan = [&](unsigned j) {
    std::uint64_t lo = total * j / jobs, hi = total * (j + 1) / jobs;
    for (std::uint64_t a = lo; a < hi; ++a)
      if (cd.annihilates(a)) found[j].push_back(a);
  };
  if (jobs == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(scan, j);
    for (auto& t : pool) t.join();
  }
  std::vector<Augmentation> out;
  for (const auto& part : found)
    for (auto a : part) out.push_back({cd.zero_gens, a});
  return out;
}

// Pullback eps o mu on the degree-0 generators.
inline Augmentation pullback(const Augmentation& eps, const DgaMorphism& mu) {
  Augmentation out{eps.generators, 0};
  for (std::size_t i = 0; i < eps.generators.size(); ++i)
    if (evaluate(eps, mu(eps.generators[i]))) out.bits |= std::uint64_t{1} << i;
  return out;
}

struct OrbitDecomposition {
  std::vector<Augmentation> augmentations;
  std::vector<std::vector<std::size_t>> cycles;  // indices into augmentations; each starts at its smallest

  // cycle length -> number of cycles
  std::map<std::size_t, std::size_t> length_multiset() const {
    std::map<std::size_t, std::size_t> m;
    for (const auto& c : cycles) ++m[c.size()];
    return m;
  }
};

inline OrbitDecomposition monodromy_orbits(const Dga& d, const DgaMorphism& mu, unsigned jobs = 1) {
  if (!(*mu.source == d) || !(*mu.target == d)) throw DomainError("monodromy_orbits: morphism is not an endomorphism of the DGA");
  auto rep = validate_chain_map(mu);
  if (!rep.ok()) throw VerificationError("monodromy_orbits: morphism is not a chain map\n" + rep.to_string());
  OrbitDecomposition out;
  out.augmentations = find_augmentations(d, jobs);
  const auto& augs = out.augmentations;
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < augs.size(); ++i) index[augs[i].bits] = i;
  std::vector<std::size_t> next(augs.size());
  std::vector<bool> hit(augs.size(), false);
  for (std::size_t i = 0; i < augs.size(); ++i) {
    Augmentation p = pullback(augs[i], mu);
    auto it = index.find(p.bits);
    if (it == index.end()) throw VerificationError("monodromy_orbits: pullback of " + augs[i].to_string() + " is not an augmentation");
    if (hit[it->second]) throw VerificationError("monodromy_orbits: action on augmentations is not a permutation");
    hit[it->second] = true;
    next[i] = it->second;
  }
  std::vector<bool> seen(augs.size(), false);
  for (std::size_t i = 0; i < augs.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> cyc;
    for (std::size_t j = i; !seen[j]; j = next[j]) {
      seen[j] = true;
      cyc.push_back(j);
    }
    out.cycles.push_back(std::move(cyc));
  }
  return out;
}

// ---------------------------------------------------------------------------
// GF(2) matrices.

class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return (data_[r * words_ + c / 64] >> (c % 64)) & 1u; }
  void flip(std::size_t r, std::size_t c) { data_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64); }
  void set(std::size_t r, std::size_t c, bool v) {
    if (get(r, c) != v) flip(r, c);
  }
  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
  }

  friend Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("Gf2Matrix: dimension mismatch");
    Gf2Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (a.get(i, k))
          for (std::size_t w = 0; w < c.words_; ++w) c.data_[i * c.words_ + w] ^= b.data_[k * b.words_ + w];
    return c;
  }

  std::size_t rank() const {
    Gf2Matrix m = *this;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = r;
      while (piv < rows_ && !m.get(piv, c)) ++piv;
      if (piv == rows_) continue;
      m.swap_rows(piv, r);
      for (std::size_t i = 0; i < rows_; ++i)
        if (i != r && m.get(i, c)) m.add_row(r, i);
      ++r;
    }
    return r;
  }

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t w = 0; w < words_; ++w) std::swap(data_[a * words_ + w], data_[b * words_ + w]);
  }
  void add_row(std::size_t from, std::size_t to) {
    for (std::size_t w = 0; w < words_; ++w) data_[to * words_ + w] ^= data_[from * words_ + w];
  }

  std::size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<std::uint64_t> data_;
};

// Generators of each degree and the matrices of the linearized differential
// d_k : C_k -> C_{k-1} (rows indexed by basis[k-1], columns by basis[k]).
struct LinearizedComplex {
  std::map<int, std::vector<Symbol>> basis;
  std::map<int, Gf2Matrix> d;
  // Length-1 part of the conjugated differential of each generator.
  std::unordered_map<Symbol, Poly> linear_part;

  std::size_t dim(int k) const {
    auto it = basis.find(k);
    return it == basis.end() ? 0 : it->second.size();
  }
  std::size_t rank_d(int k) const {
    auto it = d.find(k);
    return it == d.end() ? 0 : it->second.rank();
  }
};

// Linear part of eps-conjugated d(p): conjugation sends each generator g to
// g + eps(g), so a word contributes g_k times the product of eps over the
// other letters. Throws if the constant term is nonzero.
inline Poly linear_part(const Augmentation& eps, const Poly& p) {
  PolyAccumulator acc;
  bool constant = false;
  for (const auto& w : p.terms()) {
    std::size_t zeros = 0, zero_at = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (!eps.value(w[i])) {
        ++zeros;
        zero_at = i;
      }
    if (zeros == 0) {
      constant ^= true;
      for (Symbol s : w) acc.add(Word{s});
    } else if (zeros == 1) {
      acc.add(Word{w[zero_at]});
    }
  }
  if (constant) throw VerificationError("linearize: conjugated differential has a nonzero constant term; not an augmentation");
  return acc.take();
}

inline LinearizedComplex linearize(const Dga& dga, const Augmentation& eps) {
  LinearizedComplex c;
  std::unordered_map<Symbol, std::size_t> pos;
  for (const auto& g : dga.generators()) {
    pos[g.symbol] = c.basis[g.degree].size();
    c.basis[g.degree].push_back(g.symbol);
  }
  for (const auto& [k, gens] : c.basis) c.d.emplace(k, Gf2Matrix(c.dim(k - 1), gens.size()));
  for (const auto& g : dga.generators()) {
    Poly lin = linear_part(eps, dga.d(g.symbol));
    for (const auto& w : lin.terms()) {
      Symbol t = w[0];
      if (dga.degree(t) != g.degree - 1) throw VerificationError("linearize: differential of " + g.symbol.name() + " is not graded");
      c.d.at(g.degree).flip(pos.at(t), pos.at(g.symbol));
    }
    c.linear_part[g.symbol] = std::move(lin);
  }
  for (const auto& [k, m] : c.d) {
    auto lower = c.d.find(k - 1);
    if (lower != c.d.end() && m.rows() > 0 && !(lower->second * m).is_zero())
      throw VerificationError("linearize: d_" + std::to_string(k - 1) + " d_" + std::to_string(k) + " != 0");
  }
  return c;
}

// dim ker d_k - rank d_{k+1}, for every degree with generators.
inline std::map<int, std::size_t> homology_ranks(const LinearizedComplex& c) {
  std::map<int, std::size_t> out;
  for (const auto& [k, gens] : c.basis) out[k] = gens.size() - c.rank_d(k) - c.rank_d(k + 1);
  return out;
}

// ---------------------------------------------------------------------------
// Degree-0 contact homology.

struct CH0Presentation {
  enum class Kind { SingleGenerator, UnitAlgebra, NotReducible };
  Kind kind = Kind::NotReducible;
  std::vector<UPoly2> relations;  // nonzero reduced relations, in height order of their generators
  UPoly2 relation;                // gcd of `relations`
  std::vector<std::vector<Symbol>> classes;  // degree-0 generator classes (diagnostic)
  std::string diagnostic;

  // The presented algebra Z2[x]/(g) is zero iff g = 1.
  bool nonzero() const { return kind != Kind::SingleGenerator || !relation.is_one(); }
};

inline CH0Presentation reduce_ch0_single_generator(const ConeDga& cone) {
  if (cone.flavor != ConeFlavor::Torus) throw DomainError("ch0: expected a torus cone");
  const Dga& d = cone.dga;
  auto zero = d.generators_of_degree(0);
  for (Symbol s : zero)
    if (!d.d(s).is_zero()) throw DomainError("ch0: degree-0 generator " + s.name() + " has nonzero differential");
  CH0Presentation out;
  if (zero.empty()) {
    out.kind = CH0Presentation::Kind::UnitAlgebra;
    return out;
  }

  std::unordered_map<Symbol, std::size_t> idx;
  for (std::size_t i = 0; i < zero.size(); ++i) idx[zero[i]] = i;
  std::vector<std::size_t> parent(zero.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };

  std::vector<const Poly*> rels;
  for (Symbol s : d.generators_of_degree(1)) {
    const Poly& r = d.d(s);
    if (r.is_zero()) continue;
    rels.push_back(&r);
    const auto& t = r.terms();
    if (t.size() == 2 && t[0].size() == 1 && t[1].size() == 1 && idx.count(t[0][0]) && idx.count(t[1][0]))
      parent[find(idx[t[0][0]])] = find(idx[t[1][0]]);
  }

  std::map<std::size_t, std::vector<Symbol>> classes;
  for (std::size_t i = 0; i < zero.size(); ++i) classes[find(i)].push_back(zero[i]);
  for (auto& [root, members] : classes) out.classes.push_back(members);
  if (classes.size() != 1) {
    out.kind = CH0Presentation::Kind::NotReducible;
    out.diagnostic = "binomial relations leave " + std::to_string(classes.size()) + " classes of degree-0 generators";
    return out;
  }

  for (const Poly* r : rels) {
    UPoly2 u;
    for (const auto& w : r->terms()) {
      for (Symbol s : w)
        if (!idx.count(s)) {
          out.kind = CH0Presentation::Kind::NotReducible;
          out.diagnostic = "relation " + to_string(*r) + " mentions non-degree-0 generator " + s.name();
          return out;
        }
      u.flip(static_cast<int>(w.size()));
    }
    if (!u.is_zero()) out.relations.push_back(u);
  }
  out.kind = CH0Presentation::Kind::SingleGenerator;
  for (const auto& u : out.relations) out.relation = upoly_gcd(out.relation, u);
  return out;
}

}  // namespace legdga
