#pragma once

// The `dga` command line; run() is separate from main so tests can drive it.

#include <CLI11.hpp>

#include <legdga/legdga.hpp>

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace legdga::cli {

enum Exit { kOk = 0, kVerification = 1, kParse = 2, kResource = 3 };

namespace detail {

inline bool looks_like_morphism(const std::string& text) {
  for (const auto& l : legdga::detail::logical_lines(text))
    if (l.keyword == "source" || l.keyword == "target" || l.keyword == "map") return true;
  return false;
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty())
    out << text;
  else
    write_file(out_path, text);
}

// "b1=1,b2=0"; unnamed degree-0 generators get 0.
inline Augmentation parse_assignment(const Dga& d, const std::string& spec) {
  Augmentation eps{d.generators_of_degree(0), 0};
  if (eps.generators.size() > kMaxAugmentationGenerators)
    throw ResourceError("too many degree-0 generators (" + std::to_string(eps.generators.size()) + ")");
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    std::string item = spec.substr(pos, comma - pos);
    pos = comma + 1;
    auto eq = item.find('=');
    if (eq == std::string::npos || eq + 2 != item.size() || (item[eq + 1] != '0' && item[eq + 1] != '1'))
      throw ParseError("--aug: expected NAME=0 or NAME=1, got '" + item + "'");
    std::string name = item.substr(0, eq);
    auto it = std::find(eps.generators.begin(), eps.generators.end(), Symbol(name));
    if (it == eps.generators.end()) throw DomainError("--aug: '" + name + "' is not a degree-0 generator");
    std::uint64_t bit = std::uint64_t{1} << (it - eps.generators.begin());
    if (item[eq + 1] == '1')
      eps.bits |= bit;
    else
      eps.bits &= ~bit;
  }
  return eps;
}

inline std::string orbit_summary(const OrbitDecomposition& o) {
  auto m = o.length_multiset();
  std::size_t fixed = m.count(1) ? m.at(1) : 0;
  std::string s = "fixed=" + std::to_string(fixed) + "  cycles: ";
  bool first = true;
  for (auto it = m.rbegin(); it != m.rend(); ++it) {
    if (it->first == 1) continue;
    s += (first ? "" : ", ") + std::to_string(it->second) + "x" + std::to_string(it->first);
    first = false;
  }
  if (first) s += "none";
  return s;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computations with free DGAs over Z2: mapping cones, augmentations, linearized and degree-0 homology."};
  app.name("dga");
  app.require_subcommand(1);
  unsigned jobs = 1;
  app.add_option("--jobs", jobs, "threads for augmentation search")->check(CLI::Range(1u, 256u));

  std::string file, morphism, out_path, aug_spec, phi_path, psi_path, k_path, cone_b;
  bool torus = false, interval = false, with_mu = false;
  int p = 0;

  auto* check = app.add_subcommand("check", "validate a DGA, cone or morphism file");
  check->add_option("FILE", file)->required();

  auto* cone = app.add_subcommand("cone", "mapping cone of a morphism");
  cone->add_option("--morphism", morphism)->required();
  auto* tflag = cone->add_flag("--torus", torus, "torus cone of an endomorphism");
  cone->add_flag("--interval", interval, "interval cone (default)")->excludes(tflag);
  cone->add_option("-o", out_path);

  auto* concat = app.add_subcommand("concat", "concatenate two interval cones");
  concat->add_option("CONE_A", file)->required();
  concat->add_option("CONE_B", cone_b)->required();
  concat->add_option("-o", out_path);

  auto* aug = app.add_subcommand("aug", "list augmentations");
  aug->add_option("FILE", file)->required();

  auto* orbits = app.add_subcommand("orbits", "cycles of eps -> eps o mu on augmentations");
  orbits->add_option("FILE", file)->required();
  orbits->add_option("--morphism", morphism)->required();

  auto* linhom = app.add_subcommand("linhom", "linearized homology ranks");
  linhom->add_option("FILE", file)->required();
  linhom->add_option("--aug", aug_spec, "NAME=0|1,...")->required();

  auto* ch0 = app.add_subcommand("ch0", "degree-0 homology of a torus cone");
  ch0->add_option("FILE", file)->required();

  auto* tor = app.add_subcommand("torus", "(p,2) torus knot DGA and loop monodromy");
  tor->add_option("--p", p)->required();
  tor->add_flag("--monodromy", with_mu);
  tor->add_option("-o", out_path);

  auto* hiso = app.add_subcommand("homotopy-iso", "tame isomorphism between the cones of homotopic maps");
  hiso->add_option("--phi", phi_path)->required();
  hiso->add_option("--psi", psi_path)->required();
  hiso->add_option("--K", k_path)->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "dga: " << e.what() << "\n";
    return kParse;
  }

  try {
    if (*check) {
      const std::string text = read_file(file);
      if (detail::looks_like_morphism(text)) {
        DgaMorphism f = load_morphism(file);
        ValidationReport rep = validate_dga(*f.source);
        for (auto& i : validate_dga(*f.target).issues) rep.issues.push_back(i);
        if (rep.ok()) rep = validate_chain_map(f);
        if (!rep.ok()) {
          out << "invalid morphism\n" << rep.to_string();
          return kVerification;
        }
        out << "ok: chain map, " << f.source->size() << " -> " << f.target->size() << " generators\n";
        return kOk;
      }
      ParsedDga parsed = parse_dga_text(text, file);
      ValidationReport rep = validate_dga(parsed.dga);
      if (!rep.ok()) {
        out << "invalid DGA\n" << rep.to_string();
        return kVerification;
      }
      if (parsed.flavor) {
        ConeDga c = cone_from_parsed(parsed);
        out << "ok: " << to_string(c.flavor) << " cone, " << c.dga.size() << " generators\n";
      } else {
        out << "ok: DGA, " << parsed.dga.size() << " generators\n";
      }
      return kOk;
    }

    if (*cone) {
      DgaMorphism f = load_morphism(morphism);
      ConeDga c = torus ? build_cone_torus(f) : build_cone_interval(f);
      detail::emit(write_cone(c), out_path, out);
      return kOk;
    }

    if (*concat) {
      ConeDga a = load_cone(file), b = load_cone(cone_b);
      detail::emit(write_cone(concat_cones(a, b)), out_path, out);
      return kOk;
    }

    if (*aug) {
      Dga d = load_dga(file).dga;
      auto augs = find_augmentations(d, jobs);
      for (const auto& e : augs) out << e.to_string() << "\n";
      out << "count=" << augs.size() << "\n";
      return kOk;
    }

    if (*orbits) {
      Dga d = load_dga(file).dga;
      DgaMorphism mu = load_morphism(morphism);
      auto o = monodromy_orbits(d, mu, jobs);
      for (const auto& cyc : o.cycles) {
        out << "cycle(len=" << cyc.size() << "):";
        for (std::size_t i = 0; i < cyc.size(); ++i) out << (i ? " -> " : " ") << o.augmentations[cyc[i]].to_string();
        out << "\n";
      }
      out << detail::orbit_summary(o) << "\n";
      out << "total=" << o.augmentations.size() << "\n";
      return kOk;
    }

    if (*linhom) {
      Dga d = load_dga(file).dga;
      if (auto rep = validate_dga(d); !rep.ok()) {
        err << "dga: invalid DGA\n" << rep.to_string();
        return kVerification;
      }
      Augmentation eps = detail::parse_assignment(d, aug_spec);
      if (!is_augmentation(d, eps)) {
        err << "dga: " << eps.to_string() << " is not an augmentation\n";
        return kVerification;
      }
      auto ranks = homology_ranks(linearize(d, eps));
      bool first = true;
      for (const auto& [k, r] : ranks) {
        out << (first ? "" : " ") << "H" << k << "=" << r;
        first = false;
      }
      out << "\n";
      return kOk;
    }

    if (*ch0) {
      ConeDga c = load_cone(file);
      CH0Presentation pr = reduce_ch0_single_generator(c);
      const bool augmentable = !find_augmentations(c.dga, jobs).empty();
      const std::string tail = std::string("  nonzero=") + (pr.nonzero() ? "true" : "false") + "  augmentable=" + (augmentable ? "true" : "false");
      switch (pr.kind) {
        case CH0Presentation::Kind::UnitAlgebra:
          out << "CH0 = Z2" << tail << "\n";
          break;
        case CH0Presentation::Kind::SingleGenerator:
          out << "CH0 = Z2[x]" << (pr.relation.is_zero() ? "" : "/(" + pr.relation.to_string() + ")") << tail << "\n";
          out << "relations:";
          for (std::size_t i = 0; i < pr.relations.size(); ++i) out << (i ? "; " : " ") << pr.relations[i].to_string();
          out << "\n";
          break;
        case CH0Presentation::Kind::NotReducible:
          out << "CH0 not reducible to one generator: " << pr.diagnostic << "\n";
          break;
      }
      return kOk;
    }

    if (*tor) {
      const std::string name = "torus-2-" + std::to_string(p);
      Dga d = torus_2p_dga(p);
      if (out_path.empty()) {
        if (with_mu)
          out << write_morphism(torus_2p_monodromy(p), name, name);
        else
          out << write_dga(d);
        return kOk;
      }
      write_file(out_path, write_dga(d));
      if (with_mu) {
        std::filesystem::path mu_path(out_path);
        mu_path.replace_extension(".mu");
        const std::string ref = std::filesystem::path(out_path).filename().string();
        write_file(mu_path, write_morphism(torus_2p_monodromy(p), ref, ref));
      }
      return kOk;
    }

    if (*hiso) {
      DgaMorphism phi = load_morphism(phi_path), psi = load_morphism(psi_path);
      ChainHomotopy k = load_homotopy(k_path, phi, psi);
      if (auto rep = validate_homotopy(k); !rep.ok()) {
        err << "dga: K is not a chain homotopy from phi to psi\n" << rep.to_string();
        return kVerification;
      }
      ConeDga cphi = build_cone_interval(phi), cpsi = build_cone_interval(psi);
      TameIso f = homotopy_iso_steps(k);
      out << write_tame_iso(f);
      auto rep = verify_homotopy_iso(f, cphi, cpsi);
      out << "verdict: " << (rep.ok() ? "chain isomorphism verified" : "NOT a chain map") << "\n";
      if (!rep.ok()) {
        err << rep.to_string();
        return kVerification;
      }
      return kOk;
    }
  } catch (const ResourceError& e) {
    err << "dga: " << e.what() << "\n";
    return kResource;
  } catch (const ParseError& e) {
    err << "dga: " << e.what() << "\n";
    return kParse;
  } catch (const Error& e) {
    err << "dga: " << e.what() << "\n";
    return kVerification;
  }
  return kOk;
}

}  // namespace legdga::cli
