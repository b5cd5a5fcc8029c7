#pragma once

// Mapping cones of DGA morphisms (interval and torus flavors), gluing and
// concatenation of interval cones, and the tame isomorphism induced by a chain
// homotopy.
//
// Naming: for a source generator c the cone has c[-] (source copy), c^ (hat);
// a target generator t appears as t[+]. Torus cones keep c and add c^.
// In Gamma_phi the plain prefix lives in source copies and the phi-image suffix
// in target copies:
//   Gamma(uv) = u[-] Gamma(v) + Gamma(u) phi(v)[+].
// Reversing every word gives the mirrored convention.

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "dga.hpp"

namespace legdga {

inline Symbol source_copy(Symbol s) { return Symbol(s.name() + "[-]"); }
inline Symbol target_copy(Symbol s) { return Symbol(s.name() + "[+]"); }
inline Symbol middle_copy(Symbol s) { return Symbol(s.name() + "[m]"); }
inline Symbol hat(Symbol s) { return Symbol(s.name() + "^"); }

enum class ConeFlavor { Interval, Torus };
enum class Role { Source, Target, Hat, Plain };

inline std::string_view to_string(ConeFlavor f) { return f == ConeFlavor::Interval ? "interval" : "torus"; }
inline std::string_view to_string(Role r) {
  switch (r) {
    case Role::Source: return "source";
    case Role::Target: return "target";
    case Role::Hat: return "hat";
    case Role::Plain: return "plain";
  }
  return "?";
}

struct RoleInfo {
  Role role;
  Symbol original;  // generator of the source or target DGA it corresponds to

  friend bool operator==(const RoleInfo&, const RoleInfo&) = default;
};

struct ConeDga {
  Dga dga;
  ConeFlavor flavor = ConeFlavor::Interval;
  std::unordered_map<Symbol, RoleInfo> roles;
  DgaMorphism phi;  // the morphism the cone was built from

  const RoleInfo& role(Symbol s) const {
    auto it = roles.find(s);
    if (it == roles.end()) throw DomainError("cone: no role for '" + s.name() + "'");
    return it->second;
  }
};

namespace detail {

inline Poly tag_poly(const Poly& p, Symbol (*tag)(Symbol)) {
  return rename(p, [tag](Symbol s) { return tag(s); });
}

// phi(c)[+] for every source generator c.
inline GenMap tagged_images(const DgaMorphism& phi, Symbol (*tag)(Symbol)) {
  GenMap out;
  for (const auto& g : phi.source->generators()) out.set(g.symbol, tag_poly(phi(g.symbol), tag));
  return out;
}

inline void require_chain_map(const DgaMorphism& phi, const char* who) {
  auto rep = validate_dga(*phi.source);
  if (!rep.ok()) throw VerificationError(std::string(who) + ": source is not a valid DGA\n" + rep.to_string());
  rep = validate_dga(*phi.target);
  if (!rep.ok()) throw VerificationError(std::string(who) + ": target is not a valid DGA\n" + rep.to_string());
  rep = validate_chain_map(phi);
  if (!rep.ok()) throw VerificationError(std::string(who) + ": morphism is not a chain map\n" + rep.to_string());
}

}  // namespace detail

// Checks |c^| = |c| + 1, that the copies carry the embedded differentials, and
// the DGA axioms.
inline ValidationReport validate_cone(const ConeDga& c) {
  ValidationReport rep = validate_dga(c.dga);
  for (const auto& g : c.dga.generators()) {
    auto it = c.roles.find(g.symbol);
    if (it == c.roles.end()) {
      rep.issues.push_back({Issue::Kind::UnknownGenerator, g.symbol, {}, "generator has no cone role"});
      continue;
    }
    const RoleInfo& r = it->second;
    switch (r.role) {
      case Role::Hat:
        if (g.degree != c.phi.source->degree(r.original) + 1)
          rep.issues.push_back({Issue::Kind::Grading, g.symbol, {}, "hat degree is not |c| + 1"});
        break;
      case Role::Source:
        if (c.dga.d(g.symbol) != detail::tag_poly(c.phi.source->d(r.original), source_copy))
          rep.issues.push_back({Issue::Kind::ChainMap, g.symbol, c.dga.d(g.symbol), "source copy differential differs from source"});
        break;
      case Role::Target:
        if (c.dga.d(g.symbol) != detail::tag_poly(c.phi.target->d(r.original), target_copy))
          rep.issues.push_back({Issue::Kind::ChainMap, g.symbol, c.dga.d(g.symbol), "target copy differential differs from target"});
        break;
      case Role::Plain:
        if (c.dga.d(g.symbol) != c.phi.source->d(r.original))
          rep.issues.push_back({Issue::Kind::ChainMap, g.symbol, c.dga.d(g.symbol), "differential differs from base"});
        break;
    }
  }
  return rep;
}

// Generators: target copies, then source copies, then hats, each in the
// height order of its DGA.
//   D c[-] = (d c)[-],  D t[+] = (d t)[+],  D c^ = c[-] + phi(c)[+] + Gamma_phi(d c).
inline ConeDga build_cone_interval(const DgaMorphism& phi) {
  detail::require_chain_map(phi, "build_cone_interval");
  const Dga& src = *phi.source;
  const Dga& tgt = *phi.target;
  ConeDga c;
  c.flavor = ConeFlavor::Interval;
  c.phi = phi;
  for (const auto& g : tgt.generators()) {
    c.dga.add_generator(target_copy(g.symbol), g.degree);
    c.roles[target_copy(g.symbol)] = {Role::Target, g.symbol};
  }
  for (const auto& g : src.generators()) {
    c.dga.add_generator(source_copy(g.symbol), g.degree);
    c.roles[source_copy(g.symbol)] = {Role::Source, g.symbol};
  }
  for (const auto& g : src.generators()) {
    c.dga.add_generator(hat(g.symbol), g.degree + 1);
    c.roles[hat(g.symbol)] = {Role::Hat, g.symbol};
  }
  for (const auto& g : tgt.generators()) c.dga.set_differential(target_copy(g.symbol), detail::tag_poly(tgt.d(g.symbol), target_copy));
  const GenMap right = detail::tagged_images(phi, target_copy);
  auto left = [](Symbol s) { return Poly::gen(source_copy(s)); };
  for (const auto& g : src.generators()) {
    c.dga.set_differential(source_copy(g.symbol), detail::tag_poly(src.d(g.symbol), source_copy));
    Poly dh = Poly::gen(source_copy(g.symbol)) + right.at(g.symbol) + gamma_twisted(src.d(g.symbol), left, hat, image_of(right));
    c.dga.set_differential(hat(g.symbol), std::move(dh));
  }
  auto rep = validate_cone(c);
  if (!rep.ok()) throw VerificationError("build_cone_interval: internal error, cone fails validation\n" + rep.to_string());
  return c;
}

// Torus cone of a chain endomorphism:  D c = d c,  D c^ = c + phi(c) + Gamma_phi(d c).
inline ConeDga build_cone_torus(const DgaMorphism& phi) {
  if (!(*phi.source == *phi.target)) throw DomainError("build_cone_torus: morphism is not an endomorphism");
  detail::require_chain_map(phi, "build_cone_torus");
  const Dga& src = *phi.source;
  ConeDga c;
  c.flavor = ConeFlavor::Torus;
  c.phi = phi;
  for (const auto& g : src.generators()) {
    c.dga.add_generator(g.symbol, g.degree);
    c.roles[g.symbol] = {Role::Plain, g.symbol};
  }
  for (const auto& g : src.generators()) {
    c.dga.add_generator(hat(g.symbol), g.degree + 1);
    c.roles[hat(g.symbol)] = {Role::Hat, g.symbol};
  }
  for (const auto& g : src.generators()) {
    c.dga.set_differential(g.symbol, src.d(g.symbol));
    Poly dh = Poly::gen(g.symbol) + phi(g.symbol) + gamma_twisted(src.d(g.symbol), identity_image, hat, image_of(phi.map));
    c.dga.set_differential(hat(g.symbol), std::move(dh));
  }
  auto rep = validate_cone(c);
  if (!rep.ok()) throw VerificationError("build_cone_torus: D^2 != 0 or cone invariant violated\n" + rep.to_string());
  return c;
}

// ---------------------------------------------------------------------------

// Two interval cones over A1 -> A2 and A2 -> A3 with the A2 copies identified.
// Middle generators are named b[m] and their hats b[m]^.
struct GluedCones {
  Dga dga;
  std::vector<Symbol> middle;       // b[m], in A2 height order
  std::vector<Symbol> middle_hats;  // b[m]^, same order
};

inline GluedCones glue_cones(const ConeDga& ca, const ConeDga& cb) {
  if (ca.flavor != ConeFlavor::Interval || cb.flavor != ConeFlavor::Interval)
    throw DomainError("glue_cones: both cones must be interval cones");
  const Dga& a1 = *ca.phi.source;
  const Dga& a2 = *ca.phi.target;
  const Dga& a2b = *cb.phi.source;
  const Dga& a3 = *cb.phi.target;
  {
    std::string diff;
    const auto& x = a2.generators();
    const auto& y = a2b.generators();
    for (std::size_t i = 0; i < std::max(x.size(), y.size()); ++i) {
      if (i >= x.size()) {
        diff += "  second cone's source has extra generator " + y[i].symbol.name() + "\n";
      } else if (i >= y.size()) {
        diff += "  first cone's target has extra generator " + x[i].symbol.name() + "\n";
      } else if (!(x[i] == y[i])) {
        diff += "  position " + std::to_string(i) + ": " + x[i].symbol.name() + " (deg " + std::to_string(x[i].degree) + ") vs " +
                y[i].symbol.name() + " (deg " + std::to_string(y[i].degree) + ")\n";
      } else if (a2.d(x[i].symbol) != a2b.d(y[i].symbol)) {
        diff += "  d" + x[i].symbol.name() + ": " + to_string(a2.d(x[i].symbol)) + " vs " + to_string(a2b.d(y[i].symbol)) + "\n";
      }
    }
    if (!diff.empty()) throw DomainError("glue_cones: middle algebras differ\n" + diff);
  }

  auto rename_first = [&](Symbol s) {
    const RoleInfo& r = ca.role(s);
    return r.role == Role::Target ? middle_copy(r.original) : s;
  };
  auto rename_second = [&](Symbol s) {
    const RoleInfo& r = cb.role(s);
    if (r.role == Role::Source) return middle_copy(r.original);
    if (r.role == Role::Hat) return hat(middle_copy(r.original));
    return s;
  };

  GluedCones out;
  Dga& d = out.dga;
  for (const auto& g : a3.generators()) d.add_generator(target_copy(g.symbol), g.degree);
  for (const auto& g : a2.generators()) {
    d.add_generator(middle_copy(g.symbol), g.degree);
    out.middle.push_back(middle_copy(g.symbol));
  }
  for (const auto& g : a1.generators()) d.add_generator(source_copy(g.symbol), g.degree);
  for (const auto& g : a2.generators()) {
    d.add_generator(hat(middle_copy(g.symbol)), g.degree + 1);
    out.middle_hats.push_back(hat(middle_copy(g.symbol)));
  }
  for (const auto& g : a1.generators()) d.add_generator(hat(g.symbol), g.degree + 1);

  for (const auto& g : cb.dga.generators()) d.set_differential(rename_second(g.symbol), rename(cb.dga.d(g.symbol), rename_second));
  for (const auto& g : ca.dga.generators())
    if (ca.role(g.symbol).role != Role::Target) d.set_differential(rename_first(g.symbol), rename(ca.dga.d(g.symbol), rename_first));
  return out;
}

struct Concatenation {
  ConeDga cone;
  GenMap projection;  // composite of the destabilization projections, on glued generators
};

// Glues, then cancels (b[m]^, b[m]) for b in A2 in decreasing height. The
// result is the interval cone of the composite morphism.
inline Concatenation concat_cones_detailed(const ConeDga& ca, const ConeDga& cb) {
  GluedCones glued = glue_cones(ca, cb);
  auto current = std::make_shared<const Dga>(glued.dga);
  GenMap proj;
  for (const auto& g : current->generators()) proj.set(g.symbol, Poly::gen(g.symbol));
  for (std::size_t i = glued.middle.size(); i-- > 0;) {
    auto step = destabilize(current, glued.middle_hats[i], glued.middle[i]);
    GenMap next;
    for (const auto& [s, img] : proj) next.set(s, step.projection.apply(img));
    proj = std::move(next);
    current = std::make_shared<const Dga>(std::move(step.dga));
  }

  // Each middle generator b[m] must land on psi(b)[+].
  const DgaMorphism& psi = cb.phi;
  std::string bad;
  for (const auto& g : psi.source->generators()) {
    Poly want = detail::tag_poly(psi(g.symbol), target_copy);
    const Poly& got = proj.at(middle_copy(g.symbol));
    if (got != want) bad += "  " + g.symbol.name() + ": " + to_string(got) + " vs " + to_string(want) + "\n";
  }
  if (!bad.empty()) throw VerificationError("concat_cones: composite projection differs from psi on middle generators\n" + bad);

  Concatenation out;
  out.projection = std::move(proj);
  out.cone.dga = *current;
  out.cone.flavor = ConeFlavor::Interval;
  out.cone.phi = compose(cb.phi, ca.phi);
  for (const auto& g : out.cone.dga.generators()) {
    if (auto it = ca.roles.find(g.symbol); it != ca.roles.end() && it->second.role != Role::Target)
      out.cone.roles[g.symbol] = it->second;
    else
      out.cone.roles[g.symbol] = cb.role(g.symbol);
  }
  return out;
}

inline ConeDga concat_cones(const ConeDga& ca, const ConeDga& cb) { return concat_cones_detailed(ca, cb).cone; }

// ---------------------------------------------------------------------------

// F(c^) = c^ + K(c)[+] + Gamma_K(d c), identity on the copies. Steps are
// ordered from the lowest hat up, so each substitution only mentions hats that
// are already final.
inline TameIso homotopy_iso_steps(const ChainHomotopy& k) {
  const Dga& src = *k.phi.source;
  auto ev = k.evaluator();
  auto left = [](Symbol s) { return Poly::gen(source_copy(s)); };
  auto k_tail = [&](std::span<const Symbol> t) { return detail::tag_poly(ev.eval_word(t), target_copy); };
  TameIso f;
  for (const auto& g : src.generators()) {
    Poly u = detail::tag_poly(k.values.at(g.symbol), target_copy) + gamma_k(src.d(g.symbol), left, hat, k_tail);
    if (!u.is_zero()) f.steps.push_back(Substitute{hat(g.symbol), std::move(u)});
  }
  return f;
}

// Residuals F(D_phi x) + D_psi(F x) over all cone generators; empty when F is a chain map.
inline ValidationReport verify_homotopy_iso(const TameIso& f, const ConeDga& cphi, const ConeDga& cpsi) {
  ValidationReport rep;
  for (const auto& g : cphi.dga.generators()) {
    Poly r = f.apply(cphi.dga.d(g.symbol)) + cpsi.dga.apply(f.apply(Poly::gen(g.symbol)));
    if (!r.is_zero()) rep.issues.push_back({Issue::Kind::ChainMap, g.symbol, r, "F D_phi + D_psi F != 0"});
  }
  return rep;
}

inline TameIso homotopy_iso(const ChainHomotopy& k) {
  auto rep = validate_homotopy(k);
  if (!rep.ok()) throw VerificationError("homotopy_iso: K is not a chain homotopy\n" + rep.to_string());
  ConeDga cphi = build_cone_interval(k.phi);
  ConeDga cpsi = build_cone_interval(k.psi);
  TameIso f = homotopy_iso_steps(k);
  rep = verify_homotopy_iso(f, cphi, cpsi);
  if (!rep.ok()) throw VerificationError("homotopy_iso: internal error, F is not a chain map\n" + rep.to_string());
  return f;
}

}  // namespace legdga
