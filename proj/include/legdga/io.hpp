#pragma once

// Line-oriented text formats.
//
// DGA / cone file:
//   # comment
//   flavor interval|torus                 (cone files only)
//   gen NAME deg INT [role ROLE ORIGINAL]
//   d NAME = POLY
// Morphism file (also used for homotopy values):
//   source REF
//   target REF
//   rule psi-phi|phi-psi                  (homotopy files only)
//   map NAME = POLY
// REF is a path relative to the referring file or a built-in name: unknot,
// trefoil, torus-2-P. Built-in morphisms: trefoil.mu, torus-2-P.mu, NAME.id.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cone.hpp"
#include "knots.hpp"

namespace legdga {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

struct Line {
  std::size_t number;
  std::string_view keyword;
  std::vector<std::string_view> words;  // after the keyword
  std::string_view rest;                // text after the keyword
};

inline std::vector<Line> logical_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    ++number;
    pos = nl + 1;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    auto words = split_ws(line);
    if (words.empty()) continue;
    Line l{number, words[0], {words.begin() + 1, words.end()}, {}};
    std::size_t k = line.find(words[0]) + words[0].size();
    l.rest = line.substr(k);
    out.push_back(std::move(l));
  }
  return out;
}

inline ParseError line_error(const std::string& where, const Line& l, const std::string& what) {
  return ParseError(where + ":" + std::to_string(l.number) + ": " + what);
}

inline int parse_int(const std::string& where, const Line& l, std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw line_error(where, l, "expected integer, got '" + std::string(s) + "'");
  return v;
}

// "NAME = POLY" after a keyword.
inline std::pair<Symbol, Poly> parse_assignment(const std::string& where, const Line& l) {
  auto eq = l.rest.find('=');
  if (eq == std::string_view::npos) throw line_error(where, l, "expected 'NAME = POLY'");
  auto lhs = split_ws(l.rest.substr(0, eq));
  if (lhs.size() != 1 || !is_valid_ident(lhs[0])) throw line_error(where, l, "expected a single generator name before '='");
  try {
    return {Symbol(lhs[0]), parse_poly(l.rest.substr(eq + 1))};
  } catch (const ParseError& e) {
    throw line_error(where, l, e.what());
  }
}

inline std::optional<Role> role_from(std::string_view s) {
  if (s == "source") return Role::Source;
  if (s == "target") return Role::Target;
  if (s == "hat") return Role::Hat;
  if (s == "plain") return Role::Plain;
  return std::nullopt;
}

}  // namespace detail

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write '" + p.string() + "'");
  out << text;
}

// ---------------------------------------------------------------------------
// DGA files.

struct ParsedDga {
  Dga dga;
  std::optional<ConeFlavor> flavor;
  std::unordered_map<Symbol, RoleInfo> roles;
};

inline ParsedDga parse_dga_text(std::string_view text, const std::string& where = "<input>") {
  ParsedDga out;
  std::vector<std::pair<const detail::Line*, std::pair<Symbol, Poly>>> diffs;
  auto lines = detail::logical_lines(text);
  for (const auto& l : lines) {
    if (l.keyword == "gen") {
      const auto& w = l.words;
      if (w.size() != 3 && w.size() != 6) throw detail::line_error(where, l, "expected 'gen NAME deg INT [role ROLE ORIGINAL]'");
      if (w[1] != "deg") throw detail::line_error(where, l, "expected 'deg' after generator name");
      if (!is_valid_ident(w[0])) throw detail::line_error(where, l, "invalid generator name '" + std::string(w[0]) + "'");
      Symbol s(w[0]);
      if (out.dga.contains(s)) throw detail::line_error(where, l, "duplicate generator '" + s.name() + "'");
      out.dga.add_generator(s, detail::parse_int(where, l, w[2]));
      if (w.size() == 6) {
        auto r = detail::role_from(w[4]);
        if (w[3] != "role" || !r || !is_valid_ident(w[5])) throw detail::line_error(where, l, "malformed role annotation");
        out.roles[s] = {*r, Symbol(w[5])};
      }
    } else if (l.keyword == "d") {
      diffs.push_back({&l, detail::parse_assignment(where, l)});
    } else if (l.keyword == "flavor") {
      if (l.words.size() != 1 || (l.words[0] != "interval" && l.words[0] != "torus"))
        throw detail::line_error(where, l, "expected 'flavor interval' or 'flavor torus'");
      out.flavor = l.words[0] == "interval" ? ConeFlavor::Interval : ConeFlavor::Torus;
    } else {
      throw detail::line_error(where, l, "unknown directive '" + std::string(l.keyword) + "'");
    }
  }
  for (auto& [l, a] : diffs) {
    if (!out.dga.contains(a.first)) throw detail::line_error(where, *l, "differential of undeclared generator '" + a.first.name() + "'");
    if (!out.dga.d(a.first).is_zero()) throw detail::line_error(where, *l, "second differential for '" + a.first.name() + "'");
    out.dga.set_differential(a.first, std::move(a.second));
  }
  return out;
}

inline Dga parse_dga(std::string_view text) { return parse_dga_text(text).dga; }

inline std::string write_dga(const Dga& d, const ConeDga* cone = nullptr) {
  std::string s;
  if (cone) s += "flavor " + std::string(to_string(cone->flavor)) + "\n";
  for (const auto& g : d.generators()) {
    s += "gen " + g.symbol.name() + " deg " + std::to_string(g.degree);
    if (cone) {
      const RoleInfo& r = cone->role(g.symbol);
      s += " role " + std::string(to_string(r.role)) + " " + r.original.name();
    }
    s += '\n';
  }
  for (const auto& g : d.generators())
    if (!d.d(g.symbol).is_zero()) s += "d " + g.symbol.name() + " = " + to_string(d.d(g.symbol)) + "\n";
  return s;
}

inline std::string write_cone(const ConeDga& c) { return write_dga(c.dga, &c); }

// Recovers the morphism a cone file was built from and rebuilds the cone; the
// file must agree with the rebuilt cone exactly.
inline ConeDga cone_from_parsed(const ParsedDga& p) {
  if (!p.flavor) throw DomainError("not a cone file (no 'flavor' line)");
  for (const auto& g : p.dga.generators())
    if (!p.roles.count(g.symbol)) throw DomainError("cone file: generator " + g.symbol.name() + " has no role");
  if (auto rep = validate_dga(p.dga); !rep.ok()) throw VerificationError("cone file is not a valid DGA\n" + rep.to_string());
  auto untag = [&](Symbol s) { return p.roles.at(s).original; };
  auto has_role = [&](const Word& w, Role r) {
    for (Symbol s : w)
      if (p.roles.at(s).role != r) return false;
    return true;
  };
  auto src = std::make_shared<Dga>();
  auto tgt = std::make_shared<Dga>();
  const bool torus = *p.flavor == ConeFlavor::Torus;
  const Role base = torus ? Role::Plain : Role::Source;
  for (const auto& g : p.dga.generators()) {
    Role r = p.roles.at(g.symbol).role;
    if (r == base) src->add_generator(untag(g.symbol), g.degree);
    if (r == Role::Target) tgt->add_generator(untag(g.symbol), g.degree);
  }
  for (const auto& g : p.dga.generators()) {
    Role r = p.roles.at(g.symbol).role;
    if (r == base) src->set_differential(untag(g.symbol), rename(p.dga.d(g.symbol), untag));
    if (r == Role::Target) tgt->set_differential(untag(g.symbol), rename(p.dga.d(g.symbol), untag));
  }
  DgaMorphism phi{src, torus ? std::shared_ptr<const Dga>(src) : std::shared_ptr<const Dga>(tgt), {}};
  for (const auto& g : p.dga.generators()) {
    if (p.roles.at(g.symbol).role != Role::Hat) continue;
    Symbol c = untag(g.symbol);
    std::vector<Word> image;
    for (const auto& w : p.dga.d(g.symbol).terms())
      if (has_role(w, torus ? Role::Plain : Role::Target)) image.push_back(w);
    Poly img = rename(Poly::from_terms(std::move(image)), untag);
    if (torus) img = img + Poly::gen(c);
    phi.map.set(c, std::move(img));
  }
  ConeDga c = torus ? build_cone_torus(phi) : build_cone_interval(phi);
  if (!(c.dga == p.dga) || c.roles != p.roles) throw VerificationError("cone file differs from the cone of the morphism it encodes");
  return c;
}

// ---------------------------------------------------------------------------
// Built-ins and references.

// Parses "torus-2-P"; nullopt for other names.
inline std::optional<int> torus_builtin_p(std::string_view name) {
  constexpr std::string_view prefix = "torus-2-";
  if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
  auto digits = name.substr(prefix.size());
  int p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return p;
}

inline std::optional<Dga> builtin_dga(std::string_view name) {
  if (name == "unknot") return unknot_dga();
  if (name == "trefoil") return trefoil_dga();
  if (auto p = torus_builtin_p(name)) return torus_2p_dga(*p);
  return std::nullopt;
}

inline std::optional<DgaMorphism> builtin_morphism(std::string_view name) {
  auto dot = name.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  auto base = name.substr(0, dot), kind = name.substr(dot + 1);
  if (kind == "id") {
    if (auto d = builtin_dga(base)) return identity_morphism(std::make_shared<const Dga>(std::move(*d)));
    return std::nullopt;
  }
  if (kind != "mu") return std::nullopt;
  if (base == "trefoil") return trefoil_monodromy();
  if (auto p = torus_builtin_p(base)) return torus_2p_monodromy(*p);
  return std::nullopt;
}

inline std::filesystem::path resolve(const std::filesystem::path& base, std::string_view ref) {
  std::filesystem::path p(ref);
  return p.is_absolute() ? p : base / p;
}

// A DGA named by a path (preferred when the file exists) or a built-in name.
inline ParsedDga load_dga(std::string_view ref, const std::filesystem::path& base = ".") {
  auto path = resolve(base, ref);
  if (std::filesystem::exists(path)) return parse_dga_text(read_file(path), path.string());
  if (auto d = builtin_dga(ref)) return {std::move(*d), std::nullopt, {}};
  throw ParseError("no such DGA file or built-in: '" + std::string(ref) + "'");
}

inline ConeDga load_cone(std::string_view ref, const std::filesystem::path& base = ".") { return cone_from_parsed(load_dga(ref, base)); }

// ---------------------------------------------------------------------------
// Morphism and homotopy files.

struct ParsedMap {
  std::shared_ptr<const Dga> source;
  std::shared_ptr<const Dga> target;
  GenMap map;
  std::optional<HomotopyRule> rule;
};

// Generators missing from the file map to themselves when source and target
// agree; otherwise every source generator needs a line.
inline ParsedMap parse_map_text(std::string_view text, const std::filesystem::path& base, const std::string& where, bool identity_default) {
  ParsedMap out;
  std::vector<std::pair<const detail::Line*, std::pair<Symbol, Poly>>> maps;
  auto lines = detail::logical_lines(text);
  for (const auto& l : lines) {
    if (l.keyword == "source" || l.keyword == "target") {
      if (l.words.size() != 1) throw detail::line_error(where, l, "expected '" + std::string(l.keyword) + " REF'");
      auto d = std::make_shared<const Dga>(load_dga(l.words[0], base).dga);
      (l.keyword == "source" ? out.source : out.target) = d;
    } else if (l.keyword == "map") {
      maps.push_back({&l, detail::parse_assignment(where, l)});
    } else if (l.keyword == "rule") {
      if (l.words.size() != 1 || (l.words[0] != "psi-phi" && l.words[0] != "phi-psi"))
        throw detail::line_error(where, l, "expected 'rule psi-phi' or 'rule phi-psi'");
      out.rule = l.words[0] == "psi-phi" ? HomotopyRule::PsiPhi : HomotopyRule::PhiPsi;
    } else {
      throw detail::line_error(where, l, "unknown directive '" + std::string(l.keyword) + "'");
    }
  }
  if (!out.source) throw ParseError(where + ": missing 'source' line");
  if (!out.target) out.target = out.source;
  for (auto& [l, a] : maps) {
    if (!out.source->contains(a.first)) throw detail::line_error(where, *l, "'" + a.first.name() + "' is not a source generator");
    if (out.map.contains(a.first)) throw detail::line_error(where, *l, "second image for '" + a.first.name() + "'");
    out.map.set(a.first, std::move(a.second));
  }
  const bool same = *out.source == *out.target;
  for (const auto& g : out.source->generators()) {
    if (out.map.contains(g.symbol)) continue;
    if (identity_default && same)
      out.map.set(g.symbol, Poly::gen(g.symbol));
    else if (!identity_default)
      out.map.set(g.symbol, {});
    else
      throw ParseError(where + ": no image for '" + g.symbol.name() + "' and source differs from target");
  }
  return out;
}

inline DgaMorphism load_morphism(std::string_view ref, const std::filesystem::path& base = ".") {
  auto path = resolve(base, ref);
  if (std::filesystem::exists(path)) {
    auto m = parse_map_text(read_file(path), path.parent_path(), path.string(), true);
    return {m.source, m.target, std::move(m.map)};
  }
  if (auto m = builtin_morphism(ref)) return std::move(*m);
  throw ParseError("no such morphism file or built-in: '" + std::string(ref) + "'");
}

// Homotopy values; generators without a line get K = 0.
inline ChainHomotopy load_homotopy(std::string_view ref, const DgaMorphism& phi, const DgaMorphism& psi, const std::filesystem::path& base = ".") {
  auto path = resolve(base, ref);
  auto m = parse_map_text(read_file(path), path.parent_path(), path.string(), false);
  if (!(*m.source == *phi.source) || !(*m.target == *phi.target))
    throw DomainError("homotopy file source/target differ from those of phi");
  ChainHomotopy k{phi, psi, std::move(m.map), m.rule.value_or(HomotopyRule::PsiPhi)};
  return k;
}

inline std::string write_morphism(const DgaMorphism& f, std::string_view source_ref, std::string_view target_ref) {
  std::string s = "source " + std::string(source_ref) + "\ntarget " + std::string(target_ref) + "\n";
  for (const auto& g : f.source->generators()) s += "map " + g.symbol.name() + " = " + to_string(f(g.symbol)) + "\n";
  return s;
}

// Substitution script of a tame isomorphism, one step per line.
inline std::string write_tame_iso(const TameIso& t) {
  std::string s;
  for (const auto& step : t.steps) {
    if (const auto* r = std::get_if<Rename>(&step))
      s += "rename " + r->from.name() + " -> " + r->to.name() + "\n";
    else {
      const auto& sub = std::get<Substitute>(step);
      s += "subst " + sub.generator.name() + " -> " + sub.generator.name() + " + " + to_string(sub.addend) + "\n";
    }
  }
  return s;
}

}  // namespace legdga
