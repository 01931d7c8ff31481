#include "preskit/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "preskit/presolve.hpp"

namespace preskit {

DecoratedGraph CatalogEntry::instantiate(long long m) const {
  if (!covers(m))
    throw std::invalid_argument("catalog entry does not cover n = " +
                                std::to_string(m));
  DecoratedGraph g;
  for (const auto& v : verts)
    g.add_vertex_with_id(v.id, v.weight.eval(m), v.marker);
  for (const auto& e : edges) g.add_edge(e.a, e.b, e.mult);
  return g;
}

namespace {

[[noreturn]] void fail(int lineno, const std::string& why) {
  throw std::invalid_argument("catalog parse error at line " +
                              std::to_string(lineno) + ": " + why);
}

Family parse_family(const std::string& tok, int lineno) {
  auto f = family_from_name(tok);
  if (!f) fail(lineno, "unknown family '" + tok + "'");
  return *f;
}

WeightExpr parse_weight(const std::string& tok, int lineno) {
  WeightExpr w;
  if (tok == "-n") {
    w.symbolic_n = true;
    return w;
  }
  try {
    w.value = std::stoll(tok);
  } catch (const std::exception&) {
    fail(lineno, "bad weight '" + tok + "'");
  }
  return w;
}

DimExpr parse_dim(const std::string& tok, int lineno) {
  DimExpr d;
  if (tok.rfind("n+", 0) == 0) {
    d.symbolic = true;
    try {
      d.k = std::stoll(tok.substr(2));
    } catch (const std::exception&) {
      fail(lineno, "bad dim '" + tok + "'");
    }
    return d;
  }
  try {
    d.value = std::stoll(tok);
  } catch (const std::exception&) {
    fail(lineno, "bad dim '" + tok + "'");
  }
  return d;
}

long long parse_ll(const std::string& tok, int lineno, const char* what) {
  try {
    return std::stoll(tok);
  } catch (const std::exception&) {
    fail(lineno, std::string("bad ") + what + " '" + tok + "'");
  }
}

std::string expect_prefix(const std::string& tok, const std::string& prefix,
                          int lineno) {
  if (tok.rfind(prefix, 0) != 0)
    fail(lineno, "expected '" + prefix + "...', got '" + tok + "'");
  return tok.substr(prefix.size());
}

}  // namespace

Catalog parse_catalog(const std::string& text) {
  Catalog cat;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool in_header = true;
  CatalogEntry cur;
  bool in_entry = false;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (in_header && tag != "entry") {
      cat.header.push_back(line);
      continue;
    }
    in_header = false;
    if (tag.empty() || tag[0] == '#') continue;

    if (tag == "entry") {
      if (in_entry) fail(lineno, "entry without end");
      std::string fam, ntok, itok, dtok, mtok, btok;
      if (!(ls >> fam >> ntok >> itok >> dtok >> mtok >> btok))
        fail(lineno, "bad entry line");
      cur = CatalogEntry{};
      cur.family = parse_family(fam, lineno);
      if (ntok.rfind("n>", 0) == 0) {
        cur.generic = true;
        cur.n = parse_ll(ntok.substr(2), lineno, "threshold");
      } else {
        cur.n = parse_ll(ntok, lineno, "n");
      }
      cur.index = static_cast<int>(parse_ll(itok, lineno, "index"));
      cur.dim = parse_dim(expect_prefix(dtok, "dim=", lineno), lineno);
      cur.mu = parse_ll(expect_prefix(mtok, "mu=", lineno), lineno, "mu");
      cur.bo = parse_ll(expect_prefix(btok, "bo=", lineno), lineno, "bo");
      in_entry = true;
    } else if (tag == "v") {
      if (!in_entry) fail(lineno, "vertex outside entry");
      std::string idtok, wtok, mtok;
      if (!(ls >> idtok >> wtok >> mtok) || mtok.size() != 1)
        fail(lineno, "bad vertex line");
      CatalogVertex v;
      v.id = static_cast<int>(parse_ll(idtok, lineno, "vertex id"));
      v.weight = parse_weight(wtok, lineno);
      v.marker = marker_from_char(mtok[0]);
      cur.verts.push_back(v);
    } else if (tag == "e") {
      if (!in_entry) fail(lineno, "edge outside entry");
      CatalogEdge e;
      std::string atok, btok;
      if (!(ls >> atok >> btok)) fail(lineno, "bad edge line");
      e.a = static_cast<int>(parse_ll(atok, lineno, "edge end"));
      e.b = static_cast<int>(parse_ll(btok, lineno, "edge end"));
      std::string mtok;
      if (ls >> mtok) e.mult = parse_ll(mtok, lineno, "edge mult");
      cur.edges.push_back(e);
    } else if (tag == "end") {
      if (!in_entry) fail(lineno, "end outside entry");
      cat.entries.push_back(cur);
      in_entry = false;
    } else if (tag == "table1") {
      std::string fam, ntok, ctok;
      if (!(ls >> fam >> ntok >> ctok)) fail(lineno, "bad table1 line");
      cat.table1.push_back(Table1Row{parse_family(fam, lineno),
                                     parse_ll(ntok, lineno, "n"),
                                     parse_ll(ctok, lineno, "count")});
    } else if (tag == "table2" || tag == "table3") {
      std::string fam, ntok, ia, ba, ib, bb;
      if (!(ls >> fam >> ntok >> ia >> ba >> ib >> bb))
        fail(lineno, "bad " + tag + " line");
      TablePairRow row{parse_family(fam, lineno),
                       parse_ll(ntok, lineno, "n"),
                       static_cast<int>(parse_ll(ia, lineno, "index")),
                       parse_ll(ba, lineno, "bo"),
                       static_cast<int>(parse_ll(ib, lineno, "index")),
                       parse_ll(bb, lineno, "bo")};
      (tag == "table2" ? cat.table2 : cat.table3).push_back(row);
    } else {
      fail(lineno, "unknown tag '" + tag + "'");
    }
  }
  if (in_entry) fail(lineno, "unterminated entry");
  return cat;
}

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open catalog: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

std::string serialize_catalog(const Catalog& c) {
  std::ostringstream os;
  for (const auto& line : c.header) os << line << '\n';
  for (const auto& e : c.entries) {
    os << "entry " << family_info(e.family).name << ' ';
    if (e.generic) os << "n>" << e.n;
    else os << e.n;
    os << ' ' << e.index << " dim=" << e.dim.str() << " mu=" << e.mu
       << " bo=" << e.bo << '\n';
    for (const auto& v : e.verts)
      os << "v " << v.id << ' ' << v.weight.str() << ' '
         << marker_char(v.marker) << '\n';
    for (const auto& ed : e.edges) {
      os << "e " << ed.a << ' ' << ed.b;
      if (ed.mult != 1) os << ' ' << ed.mult;
      os << '\n';
    }
    os << "end\n";
  }
  os << '\n';
  for (const auto& r : c.table1)
    os << "table1 " << family_info(r.family).name << ' ' << r.n << ' '
       << r.count << '\n';
  auto dump_pairs = [&](const char* tag,
                        const std::vector<TablePairRow>& rows) {
    os << '\n';
    for (const auto& r : rows)
      os << tag << ' ' << family_info(r.family).name << ' ' << r.n << ' '
         << r.index_a << ' ' << r.bo_a << ' ' << r.index_b << ' ' << r.bo_b
         << '\n';
  };
  dump_pairs("table2", c.table2);
  dump_pairs("table3", c.table3);
  return os.str();
}

std::string default_catalog_path() {
  if (const char* env = std::getenv("PRESKIT_CATALOG")) return env;
#ifdef PRESKIT_DEFAULT_CATALOG
  return PRESKIT_DEFAULT_CATALOG;
#else
  return "data/catalog.txt";
#endif
}

std::vector<const CatalogEntry*> Catalog::find_all(Family f,
                                                   long long n) const {
  std::vector<const CatalogEntry*> out;
  for (const auto& e : entries)
    if (e.family == f && e.covers(n)) out.push_back(&e);
  std::sort(out.begin(), out.end(),
            [](const CatalogEntry* a, const CatalogEntry* b) {
              return a->index < b->index;
            });
  return out;
}

const CatalogEntry* Catalog::find(Family f, long long n, int index) const {
  for (const auto* e : find_all(f, n))
    if (e->index == index) return e;
  return nullptr;
}

const CatalogEntry* Catalog::find_bo(long long bo) const {
  for (const auto& e : entries)
    if (e.bo == bo) return &e;
  return nullptr;
}

VerifyReport verify_catalog(const Catalog& c) {
  VerifyReport rep;
  auto issue = [&](long long bo, const std::string& msg) {
    rep.ok = false;
    rep.issues.push_back(VerifyIssue{bo, msg});
  };

  std::set<long long> bos;
  for (const auto& e : c.entries) {
    if (!bos.insert(e.bo).second)
      issue(e.bo, "duplicate bo number");
  }

  for (const auto& e : c.entries) {
    std::vector<long long> ns;
    if (e.generic) {
      ns = {e.n + 1, e.n + 2, e.n + 3};
    } else {
      ns = {e.n};
    }
    for (long long m : ns) {
      ++rep.entries_checked;
      DecoratedGraph g = e.instantiate(m);
      ValidationResult res =
          validate_presolution(g, ToiDescriptor{e.family, m});
      if (std::holds_alternative<Rejection>(res)) {
        issue(e.bo, "invalid at n=" + std::to_string(m) + ": " +
                        std::get<Rejection>(res).reason);
        continue;
      }
      const auto& rec = std::get<PResolutionRecord>(res);
      if (rec.dim != e.dim.eval(m))
        issue(e.bo, "dim mismatch at n=" + std::to_string(m) + ": stored " +
                        std::to_string(e.dim.eval(m)) + ", recomputed " +
                        std::to_string(rec.dim));
      if (rec.milnor != e.mu)
        issue(e.bo, "mu mismatch at n=" + std::to_string(m) + ": stored " +
                        std::to_string(e.mu) + ", recomputed " +
                        std::to_string(rec.milnor));
    }
  }

  for (const auto& r : c.table1) {
    std::size_t have = c.find_all(r.family, r.n).size();
    bool generic_range = false;
    for (const auto& e : c.entries)
      if (e.family == r.family && e.generic && r.n > e.n) generic_range = true;
    bool finite_range = false;
    for (const auto& e : c.entries)
      if (e.family == r.family && !e.generic && e.n == r.n)
        finite_range = true;
    if (!finite_range && !generic_range) continue;  // beyond stored range
    if (have != static_cast<std::size_t>(r.count))
      issue(0, "table1 " + family_info(r.family).name + " n=" +
                   std::to_string(r.n) + ": count " + std::to_string(r.count) +
                   " but " + std::to_string(have) + " entries stored");
  }
  auto check_pairs = [&](const char* tag,
                         const std::vector<TablePairRow>& rows) {
    for (const auto& r : rows) {
      const CatalogEntry* a = c.find(r.family, r.n, r.index_a);
      const CatalogEntry* b = c.find(r.family, r.n, r.index_b);
      if (!a || a->bo != r.bo_a)
        issue(r.bo_a, std::string(tag) + " row references missing entry");
      if (!b || b->bo != r.bo_b)
        issue(r.bo_b, std::string(tag) + " row references missing entry");
    }
  };
  check_pairs("table2", c.table2);
  check_pairs("table3", c.table3);
  return rep;
}

}  // namespace preskit
