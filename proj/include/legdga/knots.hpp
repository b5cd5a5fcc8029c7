#pragma once

// Built-in DGAs and loop monodromies: the unknot, the (p,2) torus knots with
// the loop that moves one crossing around the braid closure, and the
// morphisms of the L1 and L2 Lagrangian moves.

#include <array>
#include <memory>
#include <string>

#include "dga.hpp"

namespace legdga {

// 2x2 matrix over the free algebra.
struct PolyMat2 {
  std::array<Poly, 4> e;  // row-major

  const Poly& at(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }

  static PolyMat2 identity() { return {{Poly::one(), Poly{}, Poly{}, Poly::one()}}; }
  // [[g, 1], [1, 0]]
  static PolyMat2 crossing(Symbol g) { return {{Poly::gen(g), Poly::one(), Poly::one(), Poly{}}}; }

  friend PolyMat2 operator*(const PolyMat2& a, const PolyMat2& b) {
    PolyMat2 c;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) c.e[static_cast<std::size_t>(2 * i + j)] = a.at(i, 0) * b.at(0, j) + a.at(i, 1) * b.at(1, j);
    return c;
  }
};

inline Symbol torus_b(int i) { return Symbol("b" + std::to_string(i)); }

// Product M_{b_first} ... M_{b_last}.
inline PolyMat2 transfer_matrix(int first, int last) {
  PolyMat2 m = PolyMat2::identity();
  for (int i = first; i <= last; ++i) m = m * PolyMat2::crossing(torus_b(i));
  return m;
}

// B entries of M_{b_1}...M_{b_p}, Bij = row i, column j. For p = 3,
// B12 = 1 + b1.b2 and B21 = 1 + b2.b3.
struct TorusLoopSpec {
  int p;
  Poly b11, b12, b21, b22;

  explicit TorusLoopSpec(int p_) : p(p_) {
    if (p % 2 == 0 || p < 3 || p > 15) throw DomainError("torus knot: p must be odd with 3 <= p <= 15, got " + std::to_string(p));
    PolyMat2 m = transfer_matrix(1, p);
    b11 = m.at(0, 0);
    b12 = m.at(0, 1);
    b21 = m.at(1, 0);
    b22 = m.at(1, 1);
  }
};

inline Dga unknot_dga() {
  Dga d;
  d.add_generator("c", 1);
  return d;
}

// Generators b1..bp (degree 0) below a1, a2 (degree 1);
//   d a1 = 1 + B11,  d a2 = 1 + B22 + B21 B12.
inline Dga torus_2p_dga(int p) {
  TorusLoopSpec spec(p);
  Dga d;
  for (int i = 1; i <= p; ++i) d.add_generator(torus_b(i), 0);
  d.add_generator("a1", 1);
  d.add_generator("a2", 1);
  d.set_differential(Symbol("a1"), Poly::one() + spec.b11);
  d.set_differential(Symbol("a2"), Poly::one() + spec.b22 + spec.b21 * spec.b12);
  return d;
}

// mu(b1) = (1,1) entry of M_{b_2}...M_{b_p}, mu(b_i) = b_{i-1},
// mu(a1) = a2, mu(a2) = a1 + B12 (B21 a1 + a2 b_p).
// Validation expands mu(d a2), which outgrows memory past p = 13.
inline constexpr int kMaxMonodromyP = 13;

inline DgaMorphism torus_2p_monodromy(int p) {
  TorusLoopSpec spec(p);
  if (p > kMaxMonodromyP)
    throw ResourceError("torus_2p_monodromy: validating the loop map needs p <= " + std::to_string(kMaxMonodromyP) + ", got " + std::to_string(p));
  auto d = std::make_shared<const Dga>(torus_2p_dga(p));
  DgaMorphism mu{d, d, {}};
  mu.map.set(torus_b(1), transfer_matrix(2, p).at(0, 0));
  for (int i = 2; i <= p; ++i) mu.map.set(torus_b(i), Poly::gen(torus_b(i - 1)));
  const Poly a1 = Poly::gen(Symbol("a1")), a2 = Poly::gen(Symbol("a2"));
  mu.map.set(Symbol("a1"), a2);
  mu.map.set(Symbol("a2"), a1 + spec.b12 * (spec.b21 * a1 + a2 * Poly::gen(torus_b(p))));
  auto rep = validate_chain_map(mu);
  if (!rep.ok()) throw VerificationError("torus_2p_monodromy(" + std::to_string(p) + ") is not a chain map\n" + rep.to_string());
  return mu;
}

inline Dga trefoil_dga() { return torus_2p_dga(3); }
inline DgaMorphism trefoil_monodromy() { return torus_2p_monodromy(3); }

// The trefoil's d a2 in its usual printed form; equal to torus_2p_dga(3).
inline Poly trefoil_printed_da2() { return parse_poly("b2 + b1.b2 + b2.b3 + b2.b3.b1.b2"); }

// d a2 = 1 + B22 + B21 B12 with the two off-diagonal entries exchanged. The
// last word comes out as b1.b2.b2.b3, and the loop map is no longer a chain map.
inline Poly trefoil_swapped_da2() { return parse_poly("b2 + b1.b2 + b2.b3 + b1.b2.b2.b3"); }

// ---------------------------------------------------------------------------

// L1 move: a -> a + b.c, identity elsewhere. The target differential is the
// source differential transported through this (self-inverse) substitution.
inline DgaMorphism build_L1_morphism(std::shared_ptr<const Dga> d, Symbol a, Symbol b, Symbol c) {
  const Dga& src = *d;
  if (!src.contains(a) || !src.contains(b) || !src.contains(c)) throw DomainError("L1: unknown generator");
  if (a == b || a == c) throw DomainError("L1: b and c must differ from a");
  if (src.degree(a) != src.degree(b) + src.degree(c))
    throw DomainError("L1: degree mismatch, |" + a.name() + "| != |" + b.name() + "| + |" + c.name() + "|");
  TameIso t{{Substitute{a, Poly::word({b, c})}}};
  auto tgt = std::make_shared<const Dga>(apply_tame_iso(t, src));
  DgaMorphism f{d, tgt, {}};
  for (const auto& g : src.generators()) f.map.set(g.symbol, t.apply(Poly::gen(g.symbol)));
  auto rep = validate_chain_map(f);
  if (!rep.ok()) throw VerificationError("L1 morphism is not a chain map\n" + rep.to_string());
  return f;
}

// L2 move: a -> 0, b -> d a + b, identity elsewhere; the target omits a and b.
inline DgaMorphism build_L2_morphism(std::shared_ptr<const Dga> d, Symbol a, Symbol b) {
  const Dga& src = *d;
  if (!src.contains(a) || !src.contains(b)) throw DomainError("L2: unknown generator");
  if (src.degree(a) != src.degree(b) + 1)
    throw DomainError("L2: degree mismatch, |" + a.name() + "| != |" + b.name() + "| + 1");
  auto st = destabilize(d, a, b);
  return st.projection;
}

}  // namespace legdga
