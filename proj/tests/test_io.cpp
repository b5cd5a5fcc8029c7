#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "support/random_dga.hpp"

#include <filesystem>
#include <random>

using namespace legdga;
namespace fs = std::filesystem;

namespace {

Poly P(std::string_view s) { return parse_poly(s); }
Symbol S(std::string_view s) { return Symbol(s); }

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("legdga-io-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }
  fs::path put(const std::string& name, const std::string& text) const {
    write_file(path_ / name, text);
    return path_ / name;
  }

 private:
  fs::path path_;
};

std::string parse_error(std::string_view text) {
  try {
    parse_dga_text(text, "x.dga");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(DgaText, WriteFormat) {
  EXPECT_EQ(write_dga(trefoil_dga()),
            "gen b1 deg 0\ngen b2 deg 0\ngen b3 deg 0\ngen a1 deg 1\ngen a2 deg 1\n"
            "d a1 = 1 + b1 + b3 + b1.b2.b3\nd a2 = b2 + b1.b2 + b2.b3 + b2.b3.b1.b2\n");
}

TEST(DgaText, CommentsBlankLinesAndOrder) {
  ParsedDga p = parse_dga_text(
      "# trefoil, differentials first\n"
      "d a1 = 1 + b1   # trailing comment\n"
      "\n"
      "gen b1 deg 0\n"
      "   gen a1   deg 1\n");
  EXPECT_FALSE(p.flavor);
  EXPECT_EQ(p.dga.d(S("a1")), P("1 + b1"));
  EXPECT_EQ(p.dga.generators()[0].symbol, S("b1"));
}

TEST(DgaText, ErrorsCarryLineNumbers) {
  EXPECT_NE(parse_error("gen a deg 1\nfoo bar\n").find("x.dga:2: unknown directive 'foo'"), std::string::npos);
  EXPECT_NE(parse_error("gen a deg 1\ngen a deg 2\n").find("x.dga:2: duplicate generator"), std::string::npos);
  EXPECT_NE(parse_error("gen a deg x\n").find("x.dga:1: expected integer"), std::string::npos);
  EXPECT_NE(parse_error("gen a\n").find("x.dga:1:"), std::string::npos);
  EXPECT_NE(parse_error("gen a deg 1\n\nd b = 1\n").find("x.dga:3: differential of undeclared generator 'b'"), std::string::npos);
  EXPECT_NE(parse_error("gen a deg 1\nd a = 1\nd a = 1\n").find("x.dga:3: second differential"), std::string::npos);
  EXPECT_NE(parse_error("gen a deg 1\nd a = 1 +\n").find("x.dga:2:"), std::string::npos);
  EXPECT_NE(parse_error("flavor cylinder\n").find("x.dga:1:"), std::string::npos);
  EXPECT_NE(parse_error("gen a deg 1 role hat\n").find("x.dga:1:"), std::string::npos);
  EXPECT_NE(parse_error("gen a deg 1 role bogus a\n").find("malformed role"), std::string::npos);
}

TEST(ConeText, RoundTripFixedCones) {
  for (const ConeDga& c : {build_cone_interval(trefoil_monodromy()), build_cone_torus(trefoil_monodromy()),
                           build_cone_torus(identity_morphism(std::make_shared<const Dga>(unknot_dga())))}) {
    const std::string text = write_cone(c);
    ConeDga back = cone_from_parsed(parse_dga_text(text));
    EXPECT_EQ(back.dga, c.dga);
    EXPECT_EQ(back.flavor, c.flavor);
    EXPECT_EQ(back.roles, c.roles);
    EXPECT_EQ(back.phi.map, c.phi.map);
    EXPECT_EQ(write_cone(back), text);
  }
}

TEST(ConeText, TamperedConeIsRejected) {
  std::string text = write_cone(build_cone_torus(trefoil_monodromy()));
  // drop the 1 from the b1 hat differential
  auto at = text.find("d b1^ = ");
  ASSERT_NE(at, std::string::npos);
  std::string bad = text;
  bad.replace(at, std::string("d b1^ = 1 + ").size(), "d b1^ = ");
  EXPECT_THROW(cone_from_parsed(parse_dga_text(bad)), Error);
  EXPECT_THROW(cone_from_parsed(parse_dga_text(write_dga(trefoil_dga()))), DomainError);
  std::string norole = "flavor torus\ngen c deg 1\n";
  EXPECT_THROW(cone_from_parsed(parse_dga_text(norole)), DomainError);
}

TEST(Builtins, NamesResolve) {
  EXPECT_EQ(*builtin_dga("trefoil"), trefoil_dga());
  EXPECT_EQ(*builtin_dga("torus-2-7"), torus_2p_dga(7));
  EXPECT_EQ(*builtin_dga("unknot"), unknot_dga());
  EXPECT_FALSE(builtin_dga("torus-2-"));
  EXPECT_FALSE(builtin_dga("figure8"));
  EXPECT_THROW(builtin_dga("torus-2-8"), DomainError);
  EXPECT_EQ(builtin_morphism("trefoil.mu")->map, trefoil_monodromy().map);
  EXPECT_EQ(builtin_morphism("torus-2-5.mu")->map, torus_2p_monodromy(5).map);
  EXPECT_EQ(builtin_morphism("unknot.id")->map, identity_morphism(std::make_shared<const Dga>(unknot_dga())).map);
  EXPECT_FALSE(builtin_morphism("trefoil"));
  EXPECT_FALSE(builtin_morphism("unknot.mu"));
  EXPECT_THROW(load_dga("no-such-thing"), ParseError);
  EXPECT_THROW(load_morphism("no-such-thing.mu"), ParseError);
}

TEST(MorphismText, FilesAndDefaults) {
  TempDir dir;
  dir.put("tref.dga", write_dga(trefoil_dga()));
  auto f = dir.put("mu.map", write_morphism(trefoil_monodromy(), "tref.dga", "tref.dga"));
  DgaMorphism mu = load_morphism(f.string());
  EXPECT_EQ(mu.map, trefoil_monodromy().map);
  EXPECT_EQ(*mu.source, trefoil_dga());

  // missing images are the identity for an endomorphism
  auto g = dir.put("partial.map", "source tref.dga\nmap b1 = b1\n");
  EXPECT_EQ(load_morphism(g.string()).map, identity_morphism(std::make_shared<const Dga>(trefoil_dga())).map);

  // a built-in reference works from a file too
  auto h = dir.put("builtin.map", "source trefoil\ntarget trefoil\n");
  EXPECT_TRUE(validate_chain_map(load_morphism(h.string())).ok());

  dir.put("u.dga", "gen c deg 1\ngen e deg 1\n");
  auto bad = dir.put("bad.map", "source unknot\ntarget u.dga\n");
  EXPECT_THROW(load_morphism(bad.string()), ParseError);
  auto ok = dir.put("ok.map", "source unknot\ntarget u.dga\nmap c = e\n");
  EXPECT_TRUE(validate_chain_map(load_morphism(ok.string())).ok());

  EXPECT_THROW(load_morphism(dir.put("e1.map", "map c = c\n").string()), ParseError);
  EXPECT_THROW(load_morphism(dir.put("e2.map", "source unknot\nmap q = c\n").string()), ParseError);
  EXPECT_THROW(load_morphism(dir.put("e3.map", "source unknot\nmap c = c\nmap c = 0\n").string()), ParseError);
  EXPECT_THROW(load_morphism(dir.put("e4.map", "source unknot\nrule sideways\n").string()), ParseError);
  EXPECT_THROW(load_morphism(dir.put("e5.map", "source missing.dga\n").string()), ParseError);
}

TEST(MorphismText, HomotopyFile) {
  TempDir dir;
  DgaMorphism id = identity_morphism(std::make_shared<const Dga>(trefoil_dga()));
  auto k = dir.put("k.map", "source trefoil\nmap b1 = a1\n");
  ChainHomotopy h = load_homotopy(k.string(), id, id);
  EXPECT_EQ(h.rule, HomotopyRule::PsiPhi);
  EXPECT_EQ(h.values.at(S("b1")), P("a1"));
  EXPECT_TRUE(h.values.at(S("b2")).is_zero());
  auto k2 = dir.put("k2.map", "source trefoil\nrule phi-psi\n");
  EXPECT_EQ(load_homotopy(k2.string(), id, id).rule, HomotopyRule::PhiPsi);
  auto k3 = dir.put("k3.map", "source unknot\n");
  EXPECT_THROW(load_homotopy(k3.string(), id, id), DomainError);
}

TEST(TameIsoText, Script) {
  TameIso t{{Substitute{S("c^"), P("c[+].b")}, Rename{S("x"), S("y")}}};
  EXPECT_EQ(write_tame_iso(t), "subst c^ -> c^ + c[+].b\nrename x -> y\n");
  EXPECT_EQ(write_tame_iso(TameIso{}), "");
}

// ---------------------------------------------------------------------------

class RandomText : public ::testing::TestWithParam<int> {};

TEST_P(RandomText, DgaAndConeRoundTrip) {
  testkit::RandomAlgebra ra(static_cast<std::uint64_t>(GetParam()) + 30000);
  auto src = std::make_shared<const Dga>(ra.dga("g"));
  EXPECT_EQ(parse_dga(write_dga(*src)), *src);
  DgaMorphism phi = ra.chain_map(src, "t", ra.uniform(0, 2));
  ConeDga ci = build_cone_interval(phi);
  ConeDga back = cone_from_parsed(parse_dga_text(write_cone(ci)));
  EXPECT_EQ(back.dga, ci.dga);
  EXPECT_EQ(back.phi.map, ci.phi.map);
  ConeDga ct = build_cone_torus(ra.chain_map(src, "t", 0));
  ConeDga tback = cone_from_parsed(parse_dga_text(write_cone(ct)));
  EXPECT_EQ(tback.dga, ct.dga);
  EXPECT_EQ(tback.phi.map, ct.phi.map);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomText, ::testing::Range(0, 50));
