#pragma once

// Differential graded algebras over Z2, chain maps, chain homotopies, tame
// isomorphisms and single-pair destabilization.

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "poly.hpp"

namespace legdga {

struct Generator {
  Symbol symbol;
  int degree = 0;

  friend bool operator==(const Generator&, const Generator&) = default;
};

// One violated invariant. `generator` is the generator whose data is at fault
// and `residual` the offending polynomial (if any).
struct Issue {
  enum class Kind { UnknownGenerator, Grading, Triangularity, DSquared, ChainMap, Homotopy, Duplicate };
  Kind kind;
  Symbol generator;
  Poly residual;
  std::string message;
};

inline std::string_view to_string(Issue::Kind k) {
  switch (k) {
    case Issue::Kind::UnknownGenerator: return "unknown-generator";
    case Issue::Kind::Grading: return "grading";
    case Issue::Kind::Triangularity: return "triangularity";
    case Issue::Kind::DSquared: return "d-squared";
    case Issue::Kind::ChainMap: return "chain-map";
    case Issue::Kind::Homotopy: return "homotopy";
    case Issue::Kind::Duplicate: return "duplicate";
  }
  return "?";
}

struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const { return issues.empty(); }
  bool has(Issue::Kind k) const {
    for (const auto& i : issues)
      if (i.kind == k) return true;
    return false;
  }
  std::string to_string() const {
    std::string s;
    for (const auto& i : issues) {
      s += std::string(legdga::to_string(i.kind)) + " " + i.generator.name() + ": " + i.message;
      if (!i.residual.is_zero()) s += " [residual " + legdga::to_string(i.residual) + "]";
      s += '\n';
    }
    return s;
  }
};

// Generators in height order (later = higher) with a differential given on
// generators; generators without an entry have zero differential.
class Dga {
 public:
  Dga() = default;

  void add_generator(Symbol s, int degree) {
    if (!is_valid_ident(s.name())) throw DomainError("invalid generator name '" + s.name() + "'");
    if (index_.count(s)) throw DomainError("duplicate generator '" + s.name() + "'");
    index_.emplace(s, gens_.size());
    gens_.push_back({s, degree});
  }
  void add_generator(std::string_view name, int degree) { add_generator(Symbol(name), degree); }

  void set_differential(Symbol s, Poly p) {
    require(s);
    if (p.is_zero())
      diff_.erase(s);
    else
      diff_[s] = std::move(p);
  }
  void set_differential(std::string_view name, std::string_view poly) { set_differential(Symbol(name), parse_poly(poly)); }

  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool contains(Symbol s) const { return index_.count(s) != 0; }
  std::size_t position(Symbol s) const { return index_.at(require(s)); }
  int degree(Symbol s) const { return gens_[position(s)].degree; }

  const Poly& d(Symbol s) const {
    require(s);
    static const Poly zero;
    auto it = diff_.find(s);
    return it == diff_.end() ? zero : it->second;
  }

  // Leibniz extension; no signs in characteristic 2.
  Poly apply(const Poly& p) const {
    return leibniz(p, [this](Symbol s) -> const Poly& { return d(s); });
  }

  std::vector<Symbol> generators_of_degree(int k) const {
    std::vector<Symbol> out;
    for (const auto& g : gens_)
      if (g.degree == k) out.push_back(g.symbol);
    return out;
  }

  auto degree_fn() const {
    return [this](Symbol s) { return degree(s); };
  }

  friend bool operator==(const Dga& a, const Dga& b) {
    if (a.gens_ != b.gens_) return false;
    for (const auto& g : a.gens_)
      if (a.d(g.symbol) != b.d(g.symbol)) return false;
    return true;
  }

 private:
  Symbol require(Symbol s) const {
    if (!index_.count(s)) throw DomainError("unknown generator '" + s.name() + "'");
    return s;
  }

  std::vector<Generator> gens_;
  std::unordered_map<Symbol, std::size_t> index_;
  std::unordered_map<Symbol, Poly> diff_;
};

inline Poly differential_apply(const Dga& d, const Poly& p) { return d.apply(p); }

// Names of generators in p missing from d.
inline std::vector<Symbol> unknown_generators(const Dga& d, const Poly& p) {
  std::vector<Symbol> out;
  for (const auto& w : p.terms())
    for (Symbol s : w)
      if (!d.contains(s) && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  return out;
}

inline ValidationReport validate_dga(const Dga& d) {
  ValidationReport rep;
  bool closed = true;
  for (const auto& g : d.generators()) {
    const Poly& dg = d.d(g.symbol);
    if (dg.is_zero()) continue;
    auto unknown = unknown_generators(d, dg);
    if (!unknown.empty()) {
      rep.issues.push_back({Issue::Kind::UnknownGenerator, g.symbol, dg, "differential mentions '" + unknown[0].name() + "'"});
      closed = false;
      continue;
    }
    auto deg = homogeneous_degree(dg, d.degree_fn());
    if (!deg || *deg != g.degree - 1)
      rep.issues.push_back({Issue::Kind::Grading, g.symbol, dg,
                            deg ? "differential has degree " + std::to_string(*deg) + ", expected " + std::to_string(g.degree - 1)
                                : std::string("differential is not homogeneous")});
    const std::size_t pos = d.position(g.symbol);
    for (const auto& w : dg.terms()) {
      auto bad = std::find_if(w.begin(), w.end(), [&](Symbol s) { return d.position(s) >= pos; });
      if (bad != w.end()) {
        rep.issues.push_back({Issue::Kind::Triangularity, g.symbol, dg, "differential mentions '" + bad->name() + "' which is not lower"});
        break;
      }
    }
  }
  if (!closed) return rep;
  for (const auto& g : d.generators()) {
    Poly dd = d.apply(d.d(g.symbol));
    if (!dd.is_zero()) rep.issues.push_back({Issue::Kind::DSquared, g.symbol, dd, "d(d(" + g.symbol.name() + ")) != 0"});
  }
  return rep;
}

// ---------------------------------------------------------------------------

struct DgaMorphism {
  std::shared_ptr<const Dga> source;
  std::shared_ptr<const Dga> target;
  GenMap map;

  Poly apply(const Poly& p) const { return apply_morphism(map, p); }
  const Poly& operator()(Symbol s) const { return map.at(s); }
};

inline DgaMorphism identity_morphism(std::shared_ptr<const Dga> d) {
  DgaMorphism f{d, d, {}};
  for (const auto& g : d->generators()) f.map.set(g.symbol, Poly::gen(g.symbol));
  return f;
}

// g after f.
inline DgaMorphism compose(const DgaMorphism& g, const DgaMorphism& f) {
  DgaMorphism h{f.source, g.target, {}};
  for (const auto& gen : f.source->generators()) h.map.set(gen.symbol, g.apply(f(gen.symbol)));
  return h;
}

inline ValidationReport validate_chain_map(const DgaMorphism& f) {
  ValidationReport rep;
  const Dga& src = *f.source;
  const Dga& tgt = *f.target;
  for (const auto& g : src.generators()) {
    const Poly* img = f.map.find(g.symbol);
    if (!img) {
      rep.issues.push_back({Issue::Kind::UnknownGenerator, g.symbol, {}, "no image"});
      continue;
    }
    auto unknown = unknown_generators(tgt, *img);
    if (!unknown.empty()) {
      rep.issues.push_back({Issue::Kind::UnknownGenerator, g.symbol, *img, "image mentions '" + unknown[0].name() + "'"});
      continue;
    }
    auto deg = homogeneous_degree(*img, tgt.degree_fn());
    if (!img->is_zero() && (!deg || *deg != g.degree))
      rep.issues.push_back({Issue::Kind::Grading, g.symbol, *img, "image is not homogeneous of degree " + std::to_string(g.degree)});
  }
  if (!rep.ok()) return rep;
  for (const auto& g : src.generators()) {
    Poly r = f.apply(src.d(g.symbol)) + tgt.apply(f(g.symbol));
    if (!r.is_zero()) rep.issues.push_back({Issue::Kind::ChainMap, g.symbol, r, "f(d c) + d(f c) != 0"});
  }
  return rep;
}

// ---------------------------------------------------------------------------

// K: source -> target of degree +1 with phi + psi = K d + d K on generators.
struct ChainHomotopy {
  DgaMorphism phi;
  DgaMorphism psi;
  GenMap values;
  HomotopyRule rule = HomotopyRule::PsiPhi;

  HomotopyEvaluator evaluator() const { return {values, phi.map, psi.map, rule}; }
};

inline ValidationReport validate_homotopy(const ChainHomotopy& k) {
  ValidationReport rep;
  const Dga& src = *k.phi.source;
  const Dga& tgt = *k.phi.target;
  if (!(src == *k.psi.source) || !(tgt == *k.psi.target)) {
    rep.issues.push_back({Issue::Kind::Homotopy, Symbol("phi"), {}, "phi and psi have different source or target"});
    return rep;
  }
  for (const auto& g : src.generators()) {
    const Poly* v = k.values.find(g.symbol);
    if (!v) {
      rep.issues.push_back({Issue::Kind::UnknownGenerator, g.symbol, {}, "no homotopy value"});
      continue;
    }
    if (!unknown_generators(tgt, *v).empty()) {
      rep.issues.push_back({Issue::Kind::UnknownGenerator, g.symbol, *v, "value mentions unknown generator"});
      continue;
    }
    auto deg = homogeneous_degree(*v, tgt.degree_fn());
    if (!v->is_zero() && (!deg || *deg != g.degree + 1))
      rep.issues.push_back({Issue::Kind::Grading, g.symbol, *v, "value is not homogeneous of degree " + std::to_string(g.degree + 1)});
  }
  if (!rep.ok()) return rep;
  auto ev = k.evaluator();
  for (const auto& g : src.generators()) {
    Poly r = k.phi(g.symbol) + k.psi(g.symbol) + ev.eval(src.d(g.symbol)) + tgt.apply(k.values.at(g.symbol));
    if (!r.is_zero()) rep.issues.push_back({Issue::Kind::Homotopy, g.symbol, r, "phi + psi + K d + d K != 0"});
  }
  return rep;
}

// ---------------------------------------------------------------------------

struct Destabilization {
  Dga dga;
  DgaMorphism projection;
};

// Cancels the pair (a, b) where d a = b + v and v avoids a and b. The projection
// a -> 0, b -> v is checked to be a chain map.
inline Destabilization destabilize(std::shared_ptr<const Dga> d, Symbol a, Symbol b) {
  const Dga& src = *d;
  if (!src.contains(a) || !src.contains(b)) throw DomainError("destabilize: unknown generator");
  if (a == b) throw DomainError("destabilize: a and b must differ");
  const Poly& da = src.d(a);
  if (!da.contains(Word{b})) throw DomainError("destabilize: d" + a.name() + " = " + to_string(da) + " is not of the form " + b.name() + " + v");
  Poly v = da + Poly::gen(b);
  if (v.mentions(a) || v.mentions(b))
    throw DomainError("destabilize: v = " + to_string(v) + " mentions " + a.name() + " or " + b.name());

  DgaMorphism tau;
  tau.source = d;
  for (const auto& g : src.generators()) {
    if (g.symbol == a)
      tau.map.set(g.symbol, {});
    else if (g.symbol == b)
      tau.map.set(g.symbol, v);
    else
      tau.map.set(g.symbol, Poly::gen(g.symbol));
  }
  auto out = std::make_shared<Dga>();
  for (const auto& g : src.generators())
    if (g.symbol != a && g.symbol != b) out->add_generator(g.symbol, g.degree);
  for (const auto& g : src.generators())
    if (g.symbol != a && g.symbol != b) out->set_differential(g.symbol, tau.apply(src.d(g.symbol)));
  tau.target = out;
  auto rep = validate_chain_map(tau);
  if (!rep.ok()) throw VerificationError("destabilize: projection is not a chain map\n" + rep.to_string());
  return {*out, tau};
}

// ---------------------------------------------------------------------------

// Elementary steps of a tame isomorphism. The composite applies steps[0] first.
struct Rename {
  Symbol from;
  Symbol to;
};
struct Substitute {
  Symbol generator;
  Poly addend;  // generator -> generator + addend
};
using TameStep = std::variant<Rename, Substitute>;

struct TameIso {
  std::vector<TameStep> steps;

  Poly apply(Poly p) const {
    for (const auto& s : steps) p = apply_step(s, p);
    return p;
  }
  TameIso inverse() const {
    TameIso inv;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      if (auto* r = std::get_if<Rename>(&*it))
        inv.steps.push_back(Rename{r->to, r->from});
      else
        inv.steps.push_back(*it);  // g -> g + u is an involution when u avoids g
    }
    return inv;
  }

  static Poly apply_step(const TameStep& s, const Poly& p) {
    if (auto* r = std::get_if<Rename>(&s))
      return rename(p, [&](Symbol x) { return x == r->from ? r->to : x; });
    const auto& sub = std::get<Substitute>(s);
    if (!p.mentions(sub.generator)) return p;
    Poly img = Poly::gen(sub.generator) + sub.addend;
    return substitute(p, [&](Symbol x) { return x == sub.generator ? img : Poly::gen(x); });
  }
};

// Transports the differential: d' = t d t^{-1} on generators.
inline Dga apply_tame_iso(const TameIso& t, const Dga& d) {
  std::vector<Generator> gens = d.generators();
  for (const auto& step : t.steps) {
    if (auto* r = std::get_if<Rename>(&step)) {
      bool found = false;
      for (auto& g : gens) {
        if (g.symbol == r->to) throw DomainError("tame iso: rename target '" + r->to.name() + "' already exists");
        if (g.symbol == r->from) found = true;
      }
      if (!found) throw DomainError("tame iso: rename of unknown generator '" + r->from.name() + "'");
      for (auto& g : gens)
        if (g.symbol == r->from) g.symbol = r->to;
    } else {
      const auto& sub = std::get<Substitute>(step);
      if (sub.addend.mentions(sub.generator))
        throw DomainError("tame iso: substitution for '" + sub.generator.name() + "' is self-referential");
      if (std::none_of(gens.begin(), gens.end(), [&](const Generator& g) { return g.symbol == sub.generator; }))
        throw DomainError("tame iso: substitution of unknown generator '" + sub.generator.name() + "'");
    }
  }
  TameIso inv = t.inverse();
  Dga out;
  for (const auto& g : gens) out.add_generator(g.symbol, g.degree);
  for (const auto& g : gens) out.set_differential(g.symbol, t.apply(d.apply(inv.apply(Poly::gen(g.symbol)))));
  return out;
}

}  // namespace legdga
