#include "preskit/presolve.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace preskit {

namespace {

// Blows down (-1)-curves (markers ignored) until none remain.  Lowest id
// first; surviving ids are a subset of the input ids.
DecoratedGraph reduce_to_minimal(const DecoratedGraph& g) {
  DecoratedGraph r = g;
  for (int id : r.vertex_ids()) r.set_marker(id, Marker::Kept);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int id : r.vertex_ids()) {
      if (r.vertex(id).self_int == -1 && r.loop_count(id) == 0) {
        r.blow_down(id);
        changed = true;
        break;
      }
    }
  }
  return r;
}

struct ArmAssignment {
  int center_id = -1;
  std::array<std::vector<int>, 3> arm_ids;
};

// Matches the reduced graph against the family template and reads off the
// central curve and the three arms (center-outward) in the graph's own ids.
// When the left and right arms carry identical weights, the arm containing
// the smaller minimum id is taken as the left one.
std::optional<ArmAssignment> assign_arms(const DecoratedGraph& reduced,
                                         const ToiResolution& tmpl) {
  DecoratedGraph t = tmpl.graph;  // both sides all-Kept already
  auto isos = find_isomorphisms(reduced, t, 1);
  if (isos.empty()) return std::nullopt;
  std::map<int, int> back;  // template id -> reduced id
  for (const auto& [rid, tid] : isos[0]) back[tid] = rid;
  ArmAssignment out;
  out.center_id = back.at(tmpl.center_id);
  for (int a = 0; a < 3; ++a)
    for (int tid : tmpl.arm_ids[a]) out.arm_ids[a].push_back(back.at(tid));
  const FamilyInfo& fi = family_info(tmpl.desc.family);
  if (fi.arms[0] == fi.arms[1]) {
    int lmin = *std::min_element(out.arm_ids[0].begin(), out.arm_ids[0].end());
    int rmin = *std::min_element(out.arm_ids[1].begin(), out.arm_ids[1].end());
    if (lmin > rmin) std::swap(out.arm_ids[0], out.arm_ids[1]);
  }
  return out;
}

// Component analysis plus the strict log-discrepancy positivity test.
// Assumes the structural reduction check has already passed.
ValidationResult finish_validation(const DecoratedGraph& g,
                                   const ToiDescriptor& base,
                                   const ArmAssignment& arms) {
  PResolutionRecord rec;
  rec.base = base;
  rec.graph = g;
  rec.center_id = arms.center_id;
  rec.arm_ids = arms.arm_ids;
  for (int a = 0; a < 3; ++a) rec.arm_leaves[a] = arms.arm_ids[a].back();

  std::map<int, Rat> disc;
  for (const auto& comp : g.contracted_components()) {
    ContractedPart part;
    part.verts = comp;
    if (auto chain = g.order_as_chain(comp)) {
      std::vector<Int> weights;
      for (int v : *chain) weights.push_back(Int(-g.vertex(v).self_int));
      ChainClassification cc = classify_chain(weights);
      if (cc.cls == ChainClass::Other) {
        std::ostringstream os;
        os << "contracted chain at vertex " << comp.front()
           << " is neither du Val nor class T";
        return Rejection{os.str()};
      }
      part.cls = cc.cls;
      part.ade = cc.ade;
      part.t = cc.t;
      part.chain = *chain;
      if (cc.cls == ChainClass::RDP) {
        for (int v : comp) disc[v] = 0;
      } else {
        std::vector<Rat> c = chain_discrepancies(weights);
        for (std::size_t i = 0; i < chain->size(); ++i)
          disc[(*chain)[i]] = c[i];
      }
    } else if (auto ade = rdp_component(g, comp)) {
      part.cls = ChainClass::RDP;
      part.ade = ade;
      for (int v : comp) disc[v] = 0;
    } else {
      std::ostringstream os;
      os << "contracted component at vertex " << comp.front()
         << " is neither du Val nor a class-T chain";
      return Rejection{os.str()};
    }
    rec.parts.push_back(std::move(part));
  }

  for (const auto& [id, v] : g.vertices()) {
    if (v.marker != Marker::Kept) continue;
    Rat ke = Rat(-v.self_int - 2);
    for (const auto& [u, m] : g.neighbors(id)) {
      if (g.vertex(u).marker == Marker::Contracted) ke -= disc.at(u) * m;
    }
    if (ke <= 0) {
      std::ostringstream os;
      os << "kept curve " << id << " has K.E = " << ke << " (need > 0)";
      return Rejection{os.str()};
    }
  }

  rec.dim = dim_component(rec);
  rec.milnor = milnor_number(rec);
  return rec;
}

}  // namespace

ValidationResult validate_presolution(const DecoratedGraph& g,
                                      const ToiDescriptor& base) {
  if (g.vertex_count() == 0) return Rejection{"empty graph"};
  for (const auto& [id, v] : g.vertices()) {
    if (v.marker != Marker::Kept && v.marker != Marker::Contracted) {
      std::ostringstream os;
      os << "vertex " << id << " has marker '" << marker_char(v.marker)
         << "' (expected k or c)";
      return Rejection{os.str()};
    }
  }
  if (!g.loops().empty()) return Rejection{"graph has loops"};
  for (const auto& [k, m] : g.edges()) {
    if (m != 1) {
      std::ostringstream os;
      os << "edge " << k.first << "-" << k.second
         << " has multiplicity " << m << " (curves must meet transversally)";
      return Rejection{os.str()};
    }
  }

  ToiResolution tmpl = toi_minimal_resolution(base);
  DecoratedGraph reduced = reduce_to_minimal(g);
  if (reduced.vertex_count() != tmpl.graph.vertex_count())
    return Rejection{"graph does not blow down to the minimal resolution"};
  auto arms = assign_arms(reduced, tmpl);
  if (!arms)
    return Rejection{"graph does not blow down to the minimal resolution"};
  return finish_validation(g, base, *arms);
}

long long dim_component(const PResolutionRecord& rec) {
  long long dim = 0;
  for (const auto& part : rec.parts) {
    if (part.cls == ChainClass::RDP)
      dim += static_cast<long long>(part.verts.size());
    else
      dim += static_cast<long long>(part.t->d);
  }
  for (const auto& [id, v] : rec.graph.vertices()) {
    if (v.marker == Marker::Kept) dim += (-v.self_int) - 1;
  }
  return dim;
}

long long milnor_number(const PResolutionRecord& rec) {
  long long mu = 0;
  for (const auto& [id, v] : rec.graph.vertices()) {
    if (v.marker == Marker::Kept) ++mu;
  }
  for (const auto& part : rec.parts) {
    if (part.cls == ChainClass::RDP)
      mu += static_cast<long long>(part.verts.size());
    else
      mu += static_cast<long long>(part.t->d) - 1;
  }
  return mu;
}

namespace {

// Canonical encoding fixing the template vertices pointwise and minimizing
// over relabelings of the blown-up vertices (ids >= first_new).
std::string canon_pinned(const DecoratedGraph& g, int first_new) {
  std::vector<int> newids;
  for (int id : g.vertex_ids())
    if (id >= first_new) newids.push_back(id);
  std::sort(newids.begin(), newids.end());

  std::string best;
  std::vector<int> perm(newids.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  do {
    std::map<int, int> rel;  // graph id -> canonical id
    for (int id : g.vertex_ids())
      if (id < first_new) rel[id] = id;
    for (std::size_t i = 0; i < newids.size(); ++i)
      rel[newids[i]] = first_new + perm[i];
    std::ostringstream os;
    std::vector<std::pair<int, std::pair<long long, char>>> vs;
    for (const auto& [id, v] : g.vertices())
      vs.push_back({rel[id], {v.self_int, marker_char(v.marker)}});
    std::sort(vs.begin(), vs.end());
    for (const auto& [id, sv] : vs)
      os << 'v' << id << ':' << sv.first << sv.second << ';';
    std::vector<std::pair<std::pair<int, int>, long long>> es;
    for (const auto& [k, m] : g.edges()) {
      int a = rel[k.first], b = rel[k.second];
      es.push_back({{std::min(a, b), std::max(a, b)}, m});
    }
    std::sort(es.begin(), es.end());
    for (const auto& [k, m] : es)
      os << 'e' << k.first << '-' << k.second << 'x' << m << ';';
    std::string enc = os.str();
    if (best.empty() || enc < best) best = enc;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<PResolutionRecord> enumerate_presolutions(
    Family f, long long n, int max_blowups, std::size_t candidate_budget) {
  ToiResolution tmpl = toi_minimal_resolution(f, n);
  int first_new = static_cast<int>(tmpl.graph.vertex_count());
  ToiDescriptor base{f, n};
  ArmAssignment arms;
  arms.center_id = tmpl.center_id;
  arms.arm_ids = tmpl.arm_ids;

  std::map<std::string, DecoratedGraph> level;
  level.emplace(canon_pinned(tmpl.graph, first_new), tmpl.graph);
  std::vector<DecoratedGraph> shapes;
  for (const auto& [enc, g] : level) shapes.push_back(g);

  std::size_t candidates = 0;
  for (int depth = 0; depth < max_blowups; ++depth) {
    std::map<std::string, DecoratedGraph> next;
    for (const auto& [enc, g] : level) {
      std::vector<std::pair<int, int>> es;
      for (const auto& [k, m] : g.edges()) es.push_back(k);
      for (const auto& [a, b] : es) {
        DecoratedGraph child = g;
        child.blow_up_edge(a, b);
        next.emplace(canon_pinned(child, first_new), std::move(child));
      }
      for (int v : g.vertex_ids()) {
        DecoratedGraph child = g;
        child.blow_up_point(v);
        next.emplace(canon_pinned(child, first_new), std::move(child));
      }
      if (++candidates > candidate_budget)
        throw std::runtime_error("enumerate_presolutions: budget exceeded");
    }
    for (const auto& [enc, g] : next) shapes.push_back(g);
    level = std::move(next);
  }

  std::vector<PResolutionRecord> records;
  std::set<std::string> seen;
  for (const DecoratedGraph& shape : shapes) {
    std::vector<int> ids = shape.vertex_ids();
    std::size_t nv = ids.size();
    // Vertices that may not be Contracted: any (-1)-curve.
    unsigned long forbidden = 0;
    std::vector<long long> self(nv);
    std::vector<unsigned long> nbrmask(nv, 0);
    std::map<int, std::size_t> pos;
    for (std::size_t i = 0; i < nv; ++i) pos[ids[i]] = i;
    for (std::size_t i = 0; i < nv; ++i) {
      self[i] = shape.vertex(ids[i]).self_int;
      if (self[i] == -1) forbidden |= 1ul << i;
      for (const auto& [u, m] : shape.neighbors(ids[i]))
        nbrmask[i] |= 1ul << pos[u];
    }
    for (unsigned long mask = 0; mask < (1ul << nv); ++mask) {
      if (mask & forbidden) continue;
      // A kept curve with self-intersection -1 or -2 can only satisfy the
      // strict K.E > 0 test with a negative-discrepancy neighbor.
      bool hopeless = false;
      for (std::size_t i = 0; i < nv && !hopeless; ++i) {
        if (!((mask >> i) & 1ul) && self[i] >= -2 && (nbrmask[i] & mask) == 0)
          hopeless = true;
      }
      if (hopeless) continue;
      if (++candidates > candidate_budget)
        throw std::runtime_error("enumerate_presolutions: budget exceeded");
      DecoratedGraph cand = shape;
      for (std::size_t i = 0; i < nv; ++i)
        cand.set_marker(ids[i],
                        (mask >> i) & 1ul ? Marker::Contracted : Marker::Kept);
      ValidationResult res = finish_validation(cand, base, arms);
      if (std::holds_alternative<Rejection>(res)) continue;
      std::string enc = canon_pinned(cand, first_new);
      if (!seen.insert(enc).second) continue;
      records.push_back(std::get<PResolutionRecord>(std::move(res)));
    }
  }

  std::sort(records.begin(), records.end(),
            [&](const PResolutionRecord& a, const PResolutionRecord& b) {
              if (a.graph.vertex_count() != b.graph.vertex_count())
                return a.graph.vertex_count() < b.graph.vertex_count();
              std::vector<long long> wa, wb;
              for (const auto& [id, v] : a.graph.vertices())
                wa.push_back(v.self_int);
              for (const auto& [id, v] : b.graph.vertices())
                wb.push_back(v.self_int);
              std::sort(wa.begin(), wa.end());
              std::sort(wb.begin(), wb.end());
              if (wa != wb) return wa < wb;
              return canon_pinned(a.graph, first_new) <
                     canon_pinned(b.graph, first_new);
            });
  return records;
}

std::vector<std::pair<int, int>> symmetric_pairs(
    const std::vector<PResolutionRecord>& records) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      if (is_isomorphic(records[i].graph, records[j].graph))
        out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return out;
}

}  // namespace preskit
