#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "preskit/catalog.hpp"
#include "preskit/compactify.hpp"
#include "preskit/contfrac.hpp"
#include "preskit/curvegraph.hpp"
#include "preskit/mmp.hpp"
#include "preskit/mres.hpp"
#include "preskit/presolve.hpp"
#include "preskit/singularity.hpp"

namespace {

using namespace preskit;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Family parse_family_arg(const std::string& name) {
  auto f = family_from_name(name);
  if (!f) {
    std::ostringstream os;
    os << "unknown family '" << name << "'; known families:";
    for (const auto& fi : family_table()) os << ' ' << fi.name;
    throw CLI::ValidationError("family", os.str());
  }
  return *f;
}

// Validated record for a catalog entry at (family, n, index).
PResolutionRecord entry_record(const Catalog& cat, Family f, long long n,
                               int index) {
  const CatalogEntry* e = cat.find(f, n, index);
  if (!e) {
    std::ostringstream os;
    os << "no catalog entry " << family_info(f).name << " n=" << n
       << " index=" << index;
    throw std::runtime_error(os.str());
  }
  DecoratedGraph g = e->instantiate(n);
  ValidationResult res = validate_presolution(g, ToiDescriptor{f, n});
  if (std::holds_alternative<Rejection>(res))
    throw std::runtime_error("catalog entry rejected: " +
                             std::get<Rejection>(res).reason);
  return std::get<PResolutionRecord>(std::move(res));
}

void print_data_line(std::ostream& os, const TrackerRecord& rec) {
  os << "data " << rec.tracker << " :";
  for (const auto& [cls, mult] : rec.meets) {
    for (long long i = 0; i < mult; ++i) os << ' ' << cls;
  }
  os << '\n';
}

int infer_and_validate(const std::string& path) {
  DecoratedGraph g = DecoratedGraph::parse(read_file(path));
  // Infer the family member: blow the graph down and match the star.
  DecoratedGraph reduced = g;
  for (int id : reduced.vertex_ids()) reduced.set_marker(id, Marker::Kept);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int id : reduced.vertex_ids()) {
      if (reduced.vertex(id).self_int == -1 && reduced.loop_count(id) == 0) {
        reduced.blow_down(id);
        changed = true;
        break;
      }
    }
  }
  int center = -1;
  for (int id : reduced.vertex_ids()) {
    long long deg = 0;
    for (const auto& [u, m] : reduced.neighbors(id)) deg += m;
    if (deg >= 3) {
      if (center >= 0) {
        std::cout << "invalid: no unique branch curve\n";
        return kExitDomain;
      }
      center = id;
    }
  }
  if (center < 0) {
    std::cout << "invalid: graph does not reduce to a 3-armed star\n";
    return kExitDomain;
  }
  long long n = -reduced.vertex(center).self_int;
  if (n < 2) {
    std::cout << "invalid: central weight " << -n << " out of range\n";
    return kExitDomain;
  }
  for (const auto& fi : family_table()) {
    ToiResolution tmpl = toi_minimal_resolution(fi.family, n);
    if (!is_isomorphic(reduced, tmpl.graph)) continue;
    ValidationResult res =
        validate_presolution(g, ToiDescriptor{fi.family, n});
    if (std::holds_alternative<Rejection>(res)) {
      std::cout << "invalid: " << std::get<Rejection>(res).reason << '\n';
      return kExitDomain;
    }
    const auto& rec = std::get<PResolutionRecord>(res);
    std::cout << "valid " << fi.name << " " << n << " dim=" << rec.dim
              << " mu=" << rec.milnor << '\n';
    return kExitOk;
  }
  std::cout << "invalid: minimal model matches no known family\n";
  return kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"P-resolutions, M-resolutions and the semistable MMP for "
               "tetrahedral, octahedral and icosahedral quotient "
               "singularities"};
  app.require_subcommand(0, 1);

  std::string catalog_path = default_catalog_path();
  app.add_option("--catalog", catalog_path, "catalog file to use");
  bool list_families = false;
  app.add_flag("--list-families", list_families, "print family names");

  std::string g_file, g_family, g_path, g_dir;
  long long g_n = 0;
  int g_index = -1, g_maxb = 3;

  auto* validate_cmd =
      app.add_subcommand("validate", "validate a P-resolution graph file");
  validate_cmd->add_option("graph-file", g_file)->required();

  auto* inv = app.add_subcommand(
      "invariants", "dimensions and Milnor numbers of catalog entries");
  inv->add_option("family", g_family)->required();
  inv->add_option("n", g_n)->required();
  inv->add_option("--index", g_index);

  auto* enum_cmd =
      app.add_subcommand("enumerate", "count P-resolutions of a member");
  enum_cmd->add_option("family", g_family)->required();
  enum_cmd->add_option("n", g_n)->required();
  enum_cmd->add_option("--max-blowups", g_maxb);

  auto* mres_cmd =
      app.add_subcommand("mres", "M-resolution graph of a catalog entry");
  mres_cmd->add_option("family", g_family)->required();
  mres_cmd->add_option("n", g_n)->required();
  mres_cmd->add_option("index", g_index)->required();

  auto* comp_cmd = app.add_subcommand(
      "compactify", "compactified M-resolution of a catalog entry");
  comp_cmd->add_option("family", g_family)->required();
  comp_cmd->add_option("n", g_n)->required();
  comp_cmd->add_option("index", g_index)->required();

  auto* mmp_cmd =
      app.add_subcommand("mmp", "run the semistable MMP on a catalog entry");
  mmp_cmd->add_option("family", g_family)->required();
  mmp_cmd->add_option("n", g_n)->required();
  mmp_cmd->add_option("index", g_index)->required();
  mmp_cmd->add_option("--snapshots", g_dir, "write DOT snapshots here");

  auto* cls_cmd = app.add_subcommand(
      "classify", "minimal model (and deformation case) of a catalog entry");
  cls_cmd->add_option("family", g_family)->required();
  cls_cmd->add_option("n", g_n)->required();
  cls_cmd->add_option("index", g_index)->required();

  auto* pairs_cmd = app.add_subcommand(
      "pairs", "isomorphic entry pairs of one family member");
  pairs_cmd->add_option("family", g_family)->required();
  pairs_cmd->add_option("n", g_n)->required();

  auto* cat_cmd = app.add_subcommand("catalog", "catalog maintenance");
  std::string cat_action;
  cat_cmd->add_option("action", cat_action)->required()->check(
      CLI::IsMember({"check"}));
  cat_cmd->add_option("path", g_path)->required();

  auto* dot_cmd =
      app.add_subcommand("export-dot", "render a graph file as DOT");
  dot_cmd->add_option("graph-file", g_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (list_families) {
      for (const auto& fi : family_table()) std::cout << fi.name << '\n';
      return kExitOk;
    }
    if (app.get_subcommands().empty()) {
      std::cout << app.help();
      return kExitOk;
    }

    if (validate_cmd->parsed()) return infer_and_validate(g_file);

    if (dot_cmd->parsed()) {
      DecoratedGraph g = DecoratedGraph::parse(read_file(g_file));
      g.to_dot(std::cout);
      return kExitOk;
    }

    if (cat_cmd->parsed()) {
      Catalog cat = load_catalog(g_path);
      VerifyReport rep = verify_catalog(cat);
      for (const auto& issue : rep.issues)
        std::cout << "bo=" << issue.bo << ": " << issue.message << '\n';
      if (!rep.ok) {
        std::cout << "FAIL\n";
        return kExitDomain;
      }
      std::cout << "catalog OK (" << cat.entries.size() << " entries)\n";
      return kExitOk;
    }

    Family fam = Family::T6k1;
    if (!g_family.empty()) fam = parse_family_arg(g_family);

    if (enum_cmd->parsed()) {
      auto records = enumerate_presolutions(fam, g_n, g_maxb);
      std::cout << "count=" << records.size() << '\n';
      return kExitOk;
    }

    Catalog cat = load_catalog(catalog_path);

    if (inv->parsed()) {
      if (g_index >= 0) {
        const CatalogEntry* e = cat.find(fam, g_n, g_index);
        if (!e) throw std::runtime_error("no such catalog entry");
        PResolutionRecord rec = entry_record(cat, fam, g_n, g_index);
        std::cout << "dim=" << rec.dim << " mu=" << rec.milnor
                  << " bo=" << e->bo << '\n';
      } else {
        for (const CatalogEntry* e : cat.find_all(fam, g_n)) {
          PResolutionRecord rec = entry_record(cat, fam, g_n, e->index);
          std::cout << "[" << e->index << "] dim=" << rec.dim
                    << " mu=" << rec.milnor << " bo=" << e->bo << '\n';
        }
      }
      return kExitOk;
    }

    if (pairs_cmd->parsed()) {
      auto entries = cat.find_all(fam, g_n);
      std::vector<std::pair<int, int>> found;
      for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
          if (is_isomorphic(entries[i]->instantiate(g_n),
                            entries[j]->instantiate(g_n)))
            found.emplace_back(entries[i]->index, entries[j]->index);
        }
      }
      std::ostringstream os;
      for (std::size_t i = 0; i < found.size(); ++i) {
        if (i) os << ' ';
        os << "([" << found[i].first << "],[" << found[i].second << "])";
      }
      std::string line = os.str();
      if (!line.empty()) std::cout << line << '\n';
      return kExitOk;
    }

    // Remaining commands run the pipeline on one entry.
    PResolutionRecord rec = entry_record(cat, fam, g_n, g_index);
    MResolutionRecord m = to_mresolution(rec);

    if (mres_cmd->parsed()) {
      m.graph.serialize(std::cout);
      return kExitOk;
    }

    CompactifiedGraph comp = compactified_graph(m);

    if (comp_cmd->parsed()) {
      comp.graph.serialize(std::cout);
      return kExitOk;
    }

    if (mmp_cmd->parsed()) {
      bool snapshots = !g_dir.empty();
      if (snapshots) std::filesystem::create_directories(g_dir);
      auto snap = [&](const DecoratedGraph& g, int idx) {
        if (!snapshots) return;
        std::ostringstream name;
        name << g_dir << "/state_" << idx << ".dot";
        std::ofstream out(name.str());
        g.to_dot(out);
      };
      MMPState s = run_mmp(comp);
      if (snapshots) {
        // Replay the winning move sequence to dump intermediate states.
        MMPState replay = initial_state(comp);
        snap(replay.central, 0);
        int idx = 0;
        for (const MMPMove& mv : s.moves) {
          if (mv.kind == MMPMove::Kind::Contract) {
            apply_divisorial(replay, mv.vertex);
          } else {
            FlipSite site;
            site.cbar = mv.vertex;
            site.chain = mv.chain;
            apply_flip(replay, site);
          }
          snap(replay.central, ++idx);
        }
      }
      for (const auto& line : s.trace) std::cout << line << '\n';
      for (const auto& r : s.data.records) print_data_line(std::cout, r);
      std::cout << "k2=" << s.k2 << '\n';
      return kExitOk;
    }

    if (cls_cmd->parsed()) {
      MMPState s = run_mmp(comp);
      ClassifyOutcome out = classify_minimal_model(s.central, s.k2);
      if (!out.ok) {
        std::cerr << out.diagnostic << '\n';
        return kExitDomain;
      }
      std::cout << (out.model == MinimalModel::CP2 ? "CP2" : "Quadric");
      if (family_info(fam).type == FigureType::ThreeOne) {
        DeformationCase dc = case_discriminant(s.data, comp);
        std::cout << (dc == DeformationCase::CaseI ? " CaseI" : " CaseII");
      }
      std::cout << '\n';
      return kExitOk;
    }

    std::cout << app.help();
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}
