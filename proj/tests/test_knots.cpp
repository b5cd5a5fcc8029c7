#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace legdga;

namespace {

Poly P(std::string_view s) { return parse_poly(s); }
Symbol S(std::string_view s) { return Symbol(s); }
std::shared_ptr<const Dga> shared(Dga d) { return std::make_shared<const Dga>(std::move(d)); }

const char* const kTorus7Da1 =
    "1 + b1 + b3 + b5 + b7 + b1.b2.b3 + b1.b2.b5 + b1.b2.b7 + b1.b4.b5 + b1.b4.b7"
    " + b1.b6.b7 + b3.b4.b5 + b3.b4.b7 + b3.b6.b7 + b5.b6.b7 + b1.b2.b3.b4.b5 + b1.b2.b3.b4.b7"
    " + b1.b2.b3.b6.b7 + b1.b2.b5.b6.b7 + b1.b4.b5.b6.b7 + b3.b4.b5.b6.b7 + b1.b2.b3.b4.b5.b6.b7";

const char* const kTorus7Da2Head = "1 + b2 + b4 + b6 + b2.b3.b4 + b2.b3.b6 + b2.b5.b6 + b4.b5.b6 + b2.b3.b4.b5.b6";
const char* const kTorus7Left =
    "1 + b2.b3 + b2.b5 + b2.b7 + b4.b5 + b4.b7 + b6.b7 + b2.b3.b4.b5"
    " + b2.b3.b4.b7 + b2.b3.b6.b7 + b2.b5.b6.b7 + b4.b5.b6.b7 + b2.b3.b4.b5.b6.b7";
const char* const kTorus7Right =
    "1 + b1.b2 + b1.b4 + b1.b6 + b3.b4 + b3.b6 + b5.b6 + b1.b2.b3.b4"
    " + b1.b2.b3.b6 + b1.b2.b5.b6 + b1.b4.b5.b6 + b3.b4.b5.b6 + b1.b2.b3.b4.b5.b6";

Augmentation all_ones(const Dga& d) {
  Augmentation e{d.generators_of_degree(0), 0};
  e.bits = (std::uint64_t{1} << e.generators.size()) - 1;
  return e;
}

}  // namespace

TEST(TorusKnot, TrefoilDifferentials) {
  Dga d = torus_2p_dga(3);
  EXPECT_EQ(d.d(S("a1")), P("1 + b1 + b3 + b1.b2.b3"));
  EXPECT_EQ(d.d(S("a1")).size(), 4u);
  EXPECT_EQ(d.d(S("a2")), trefoil_printed_da2());
  EXPECT_EQ(to_string(d.d(S("a2"))), "b2 + b1.b2 + b2.b3 + b2.b3.b1.b2");
  EXPECT_TRUE(validate_dga(d).ok());
  EXPECT_EQ(d.size(), 5u);
  EXPECT_EQ(d.degree(S("a2")), 1);
}

TEST(TorusKnot, TrefoilBEntries) {
  TorusLoopSpec s(3);
  EXPECT_EQ(s.b11, P("b1 + b3 + b1.b2.b3"));
  EXPECT_EQ(s.b12, P("1 + b1.b2"));
  EXPECT_EQ(s.b21, P("1 + b2.b3"));
  EXPECT_EQ(s.b22, P("b2"));
}

TEST(TorusKnot, Torus7Differentials) {
  Dga d = torus_2p_dga(7);
  EXPECT_EQ(d.d(S("a1")), P(kTorus7Da1));
  EXPECT_EQ(d.d(S("a1")).size(), 22u);
  EXPECT_EQ(d.d(S("a2")), P(kTorus7Da2Head) + P(kTorus7Left) * P(kTorus7Right));
  EXPECT_EQ(P(kTorus7Left).size(), 13u);
  EXPECT_EQ(P(kTorus7Right).size(), 13u);
  EXPECT_TRUE(validate_dga(d).ok());
}

TEST(TorusKnot, Torus7ConeHat) {
  ConeDga c = build_cone_torus(torus_2p_monodromy(7));
  EXPECT_EQ(c.dga.d(S("b1^")), P("b1") + P(kTorus7Left));
  for (int i = 2; i <= 7; ++i) EXPECT_EQ(c.dga.d(hat(torus_b(i))), Poly::gen(torus_b(i)) + Poly::gen(torus_b(i - 1)));
}

TEST(TorusKnot, Torus7LinearizedAtAllOnes) {
  ConeDga c = build_cone_torus(torus_2p_monodromy(7));
  LinearizedComplex lc = linearize(c.dga, all_ones(c.dga));
  for (int i = 1; i <= 7; ++i) EXPECT_TRUE(lc.linear_part.at(torus_b(i)).is_zero());
  EXPECT_EQ(lc.linear_part.at(S("a1")), P("b1 + b4 + b7"));
  EXPECT_TRUE(lc.linear_part.at(S("a2")).is_zero());
  EXPECT_EQ(lc.linear_part.at(S("b1^")), P("b1 + b3 + b6"));
  for (int i = 2; i <= 7; ++i) EXPECT_EQ(lc.linear_part.at(hat(torus_b(i))), Poly::gen(torus_b(i - 1)) + Poly::gen(torus_b(i)));
  EXPECT_EQ(lc.linear_part.at(S("a1^")), P("a1 + a2 + b1^ + b4^ + b7^"));
  EXPECT_TRUE(lc.linear_part.at(S("a2^")).is_zero());
}

TEST(TorusKnot, AbelianizedEntriesAreContinuants) {
  for (int p = 3; p <= 15; p += 2) {
    TorusLoopSpec s(p);
    EXPECT_EQ(oracle::abelianize(s.b11), q_poly(p)) << p;
    EXPECT_EQ(oracle::abelianize(s.b12), q_poly(p - 1)) << p;
    EXPECT_EQ(oracle::abelianize(s.b21), q_poly(p - 1)) << p;
    EXPECT_EQ(oracle::abelianize(s.b22), q_poly(p - 2)) << p;
    // the loop image of b1 is the (1,1) entry of a product of p - 1 crossings
    EXPECT_EQ(oracle::abelianize(transfer_matrix(2, p).at(0, 0)), q_poly(p - 1)) << p;
  }
}

// p = 13 is allowed but takes close to a minute; the suite stops at 11.
TEST(TorusKnot, MonodromyIsAChainMap) {
  for (int p = 3; p <= 11; p += 2) {
    DgaMorphism mu = torus_2p_monodromy(p);
    EXPECT_TRUE(validate_chain_map(mu).ok()) << p;
    EXPECT_EQ(mu(S("a1")), P("a2"));
    EXPECT_EQ(mu(torus_b(p)), Poly::gen(torus_b(p - 1)));
  }
  EXPECT_EQ(trefoil_monodromy()(S("b1")), P("1 + b2.b3"));
}

TEST(TorusKnot, RangeAndResourceErrors) {
  EXPECT_THROW(torus_2p_dga(4), DomainError);
  EXPECT_THROW(torus_2p_dga(1), DomainError);
  EXPECT_THROW(torus_2p_dga(17), DomainError);
  EXPECT_NO_THROW(torus_2p_dga(15));
  EXPECT_THROW(torus_2p_monodromy(15), ResourceError);
}

TEST(TorusKnot, SwappedTrefoilFormIsNotInterchangeable) {
  Poly printed = trefoil_printed_da2(), swapped = trefoil_swapped_da2();
  EXPECT_NE(printed, swapped);
  EXPECT_EQ(oracle::abelianize(printed), oracle::abelianize(swapped));
  for (int m = 0; m < 8; ++m) {
    std::map<std::string, bool> eps{{"b1", m & 1}, {"b2", (m >> 1) & 1}, {"b3", (m >> 2) & 1}};
    EXPECT_EQ(oracle::eval(eps, printed), oracle::eval(eps, swapped)) << m;
  }
  Dga d = trefoil_dga();
  d.set_differential(S("a2"), swapped);
  auto sd = shared(d);
  DgaMorphism mu = trefoil_monodromy();
  DgaMorphism moved{sd, sd, mu.map};
  EXPECT_TRUE(validate_dga(d).ok());
  EXPECT_FALSE(validate_chain_map(moved).ok());
}

TEST(LagrangianMoves, L1) {
  auto d = shared(trefoil_dga());
  DgaMorphism f = build_L1_morphism(d, S("a1"), S("a2"), S("b1"));
  EXPECT_EQ(f(S("a1")), P("a1 + a2.b1"));
  EXPECT_TRUE(validate_chain_map(f).ok());
  EXPECT_TRUE(validate_dga(*f.target).ok());
  ConeDga c = build_cone_interval(f);
  EXPECT_TRUE(validate_dga(c.dga).ok());
  EXPECT_THROW(build_L1_morphism(d, S("a1"), S("a2"), S("a2")), DomainError);
  EXPECT_THROW(build_L1_morphism(d, S("a1"), S("a1"), S("b1")), DomainError);
  EXPECT_THROW(build_L1_morphism(d, S("a1"), S("q"), S("b1")), DomainError);
}

TEST(LagrangianMoves, L2) {
  Dga base = trefoil_dga();
  base.add_generator("s", 1);
  base.add_generator("t", 2);
  base.set_differential(S("s"), base.d(S("a1")) * P("b2"));
  base.set_differential("t", "s + a1.b2");
  auto d = shared(base);
  DgaMorphism f = build_L2_morphism(d, S("t"), S("s"));
  EXPECT_EQ(*f.target, trefoil_dga());
  EXPECT_EQ(f(S("s")), P("a1.b2"));
  EXPECT_TRUE(f(S("t")).is_zero());
  EXPECT_TRUE(validate_chain_map(f).ok());
  EXPECT_THROW(build_L2_morphism(d, S("t"), S("b1")), DomainError);
  EXPECT_THROW(build_L2_morphism(d, S("a1"), S("b1")), DomainError);  // v mentions b1
}
