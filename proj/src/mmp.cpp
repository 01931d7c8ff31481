#include "preskit/mmp.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace preskit {

namespace {

// Intersection number of two distinct general-fibre classes, or of a class
// with itself, computed from the limit multisets against the current
// central fibre.
long long limit_pairing(const MMPState& s, const std::vector<int>& lx,
                        const std::vector<int>& ly, bool same_class) {
  long long total = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    for (std::size_t j = 0; j < ly.size(); ++j) {
      if (same_class && j <= i) continue;
      int u = lx[i], v = ly[j];
      total += (u == v) ? s.central.vertex(u).self_int
                        : s.central.edge_mult(u, v);
    }
  }
  if (same_class) {
    total *= 2;
    for (int u : lx) total += s.central.vertex(u).self_int;
  }
  return total;
}

long long general_vertex_count(const MMPState& s) {
  return static_cast<long long>(s.general.vertex_count());
}

bool eligible_tracker(const MMPState& s, int id) {
  const Vertex& v = s.central.vertex(id);
  if (v.marker != Marker::Kept) return false;
  if (v.self_int != -1) return false;
  if (s.central.loop_count(id) != 0) return false;
  if (s.tracked.count(id)) return false;
  for (const auto& [u, m] : s.central.neighbors(id)) {
    if (s.central.vertex(u).marker == Marker::Contracted) return false;
  }
  return true;
}

TrackerRecord boundary_record(const MMPState& s, int t) {
  TrackerRecord rec;
  rec.tracker = t;
  for (const auto& [u, m] : s.record.neighbors(t)) {
    if (s.record.vertex(u).marker == Marker::Boundary) rec.meets[u] = m;
  }
  return rec;
}

}  // namespace

// Boundary curves at -1 in both fibres, contractible as a last resort,
// ascending.
std::vector<int> boundary_divisorial_candidates(const MMPState& s) {
  std::vector<int> out;
  for (int b : s.central.vertex_ids()) {
    const Vertex& v = s.central.vertex(b);
    if (v.marker != Marker::Boundary || v.self_int != -1) continue;
    if (s.central.loop_count(b) != 0) continue;
    bool clean = true;
    for (const auto& [u, m] : s.central.neighbors(b)) {
      if (s.central.vertex(u).marker == Marker::Contracted) clean = false;
    }
    if (!clean) continue;
    if (!s.general.has_vertex(b)) continue;
    if (s.general.vertex(b).self_int != -1) continue;
    auto it = s.limits.find(b);
    if (it == s.limits.end() || it->second != std::vector<int>{b}) continue;
    out.push_back(b);
  }
  return out;
}

ClassifyOutcome classify_impl(DecoratedGraph g, long long k2, unsigned seed,
                              bool randomize);

// Tracked curves currently eligible for divisorial contraction, ascending.
std::vector<int> divisorial_candidates(const MMPState& s) {
  std::vector<int> out;
  for (int t : s.tracked) {
    const Vertex& v = s.central.vertex(t);
    if (v.marker != Marker::Kept || v.self_int != -1) continue;
    if (s.central.loop_count(t) != 0) continue;
    bool clean = true;
    for (const auto& [u, m] : s.central.neighbors(t)) {
      if (s.central.vertex(u).marker == Marker::Contracted) clean = false;
    }
    if (!clean) continue;
    if (s.general.vertex(t).self_int != -1) continue;
    if (s.limits.at(t) != std::vector<int>{t}) continue;
    out.push_back(t);
  }
  return out;
}

// All legal flip sites of the current state, in canonical order: sites whose
// flipped curve touches no Kept curve come first (a joiner between a chain
// and an already-flipped curve is deferred until nothing else is left), then
// sites attacking a chain end of weight 2 before ends of weight >= 3, then
// ascending id of the flipped curve.  The worked traces fix this order: the
// length-two chain is always entered from its -2 end first, and the joiner
// survives to the end of the run.
std::vector<FlipSite> find_flip_sites(const MMPState& s) {
  std::vector<FlipSite> out;
  auto comps = s.central.contracted_components();
  for (int v : s.central.vertex_ids()) {
    const Vertex& vv = s.central.vertex(v);
    if (vv.self_int != -1) continue;
    if (vv.marker != Marker::Kept && vv.marker != Marker::Boundary) continue;
    if (s.central.loop_count(v) != 0) continue;
    // Exactly one Contracted neighbor, met once.
    int attach = -1;
    bool good = true;
    for (const auto& [u, m] : s.central.neighbors(v)) {
      if (s.central.vertex(u).marker != Marker::Contracted) continue;
      if (attach >= 0 || m != 1) {
        good = false;
        break;
      }
      attach = u;
    }
    if (!good || attach < 0) continue;
    // The neighbor must be the end of a Wahl chain.
    const std::vector<int>* comp = nullptr;
    for (const auto& cc : comps) {
      if (std::find(cc.begin(), cc.end(), attach) != cc.end()) {
        comp = &cc;
        break;
      }
    }
    if (!comp)
      throw std::logic_error("find_flip: contracted neighbor without a "
                             "component");
    auto chain = s.central.order_as_chain(*comp);
    if (!chain)
      throw std::logic_error("find_flip: contracted component is not a chain");
    if (chain->front() != attach && chain->back() != attach) continue;
    std::vector<Int> weights;
    for (int u : *chain) weights.push_back(Int(-s.central.vertex(u).self_int));
    ChainClassification cc = classify_chain(weights);
    if (!cc.is_wahl())
      throw std::logic_error(
          "find_flip: contracted chain is not a Wahl chain");
    FlipSite site;
    site.cbar = v;
    site.chain = *chain;
    if (site.chain.back() != attach)
      std::reverse(site.chain.begin(), site.chain.end());
    out.push_back(std::move(site));
  }
  auto site_key = [&s](const FlipSite& f) {
    int kept_neighbor = 0;
    for (const auto& [u, m] : s.central.neighbors(f.cbar)) {
      (void)m;
      if (s.central.vertex(u).marker == Marker::Kept) kept_neighbor = 1;
    }
    int deep_end = s.central.vertex(f.chain.back()).self_int != -2;
    return std::make_tuple(kept_neighbor, deep_end, f.cbar);
  };
  std::sort(out.begin(), out.end(), [&](const FlipSite& a, const FlipSite& b) {
    return site_key(a) < site_key(b);
  });
  return out;
}

}  // namespace

void discover_trackers(MMPState& s) {
  for (int id : s.central.vertex_ids()) {
    if (!eligible_tracker(s, id)) continue;
    // A candidate only tracks an independent (-1)-curve of the general fibre
    // if it pairs non-negatively with every live limit class.  A negative
    // pairing means the curve has been absorbed into that class's degenerate
    // limit (it entered the class when a flipped curve was appended), so it
    // carries no class of its own and is left untracked.
    std::vector<int> self_limit{id};
    std::map<int, long long> meets;
    bool independent = true;
    for (const auto& [other, lim] : s.limits) {
      long long m = limit_pairing(s, self_limit, lim, false);
      if (m < 0) {
        independent = false;
        break;
      }
      if (m > 0) meets[other] = m;
    }
    if (!independent) continue;
    s.general.add_vertex_with_id(id, -1, Marker::Tracker);
    s.record.add_vertex_with_id(id, -1, Marker::Tracker);
    for (const auto& [other, m] : meets) {
      s.general.add_edge(id, other, m);
      s.record.add_edge(id, other, m);
    }
    s.limits[id] = self_limit;
    s.tracked.insert(id);
  }
}

MMPState initial_state(const CompactifiedGraph& c) {
  MMPState s;
  s.origin = c;
  s.central = c.graph;
  s.k2 = 10 - c.milnor -
         static_cast<long long>(c.boundary.size());
  for (int b : c.boundary) {
    s.general.add_vertex_with_id(b, c.graph.vertex(b).self_int,
                                 Marker::Boundary);
    s.limits[b] = {b};
  }
  for (std::size_t i = 0; i < c.boundary.size(); ++i) {
    for (std::size_t j = i + 1; j < c.boundary.size(); ++j) {
      long long m = c.graph.edge_mult(c.boundary[i], c.boundary[j]);
      if (m > 0) s.general.add_edge(c.boundary[i], c.boundary[j], m);
    }
  }
  s.record = s.general;
  discover_trackers(s);
  return s;
}

std::optional<int> find_divisorial(const MMPState& s) {
  auto cands = divisorial_candidates(s);
  if (cands.empty()) return std::nullopt;
  return cands.front();
}

std::optional<FlipSite> find_flip(const MMPState& s) {
  auto sites = find_flip_sites(s);
  if (sites.empty()) return std::nullopt;
  return sites.front();
}

void apply_divisorial(MMPState& s, int vertex) {
  bool tracked = s.tracked.count(vertex) != 0;
  if (!tracked && s.central.vertex(vertex).marker != Marker::Boundary)
    throw std::invalid_argument(
        "apply_divisorial: not a tracked or boundary curve");
  long long pre = general_vertex_count(s) + s.k2;

  if (tracked) s.data.records.push_back(boundary_record(s, vertex));
  std::ostringstream tr;
  tr << "CONTRACT " << vertex;
  s.trace.push_back(tr.str());

  MMPMove mv;
  mv.kind = MMPMove::Kind::Contract;
  mv.vertex = vertex;
  s.moves.push_back(mv);

  if (!tracked) {
    s.central.set_marker(vertex, Marker::Kept);
    s.general.set_marker(vertex, Marker::Kept);
  }
  s.central.blow_down(vertex);
  s.general.blow_down(vertex);
  s.k2 += 1;
  s.limits.erase(vertex);
  for (auto& [id, lst] : s.limits)
    lst.erase(std::remove(lst.begin(), lst.end(), vertex), lst.end());
  s.tracked.erase(vertex);

  long long post = general_vertex_count(s) + s.k2;
  s.conservation.emplace_back(pre, post);
  discover_trackers(s);
}

void apply_flip(MMPState& s, const FlipSite& site) {
  const std::vector<int>& chain = site.chain;
  if (chain.empty()) throw std::invalid_argument("apply_flip: empty chain");
  for (int u : chain) {
    if (s.central.vertex(u).marker != Marker::Contracted)
      throw std::invalid_argument("apply_flip: chain curve not Contracted");
  }
  {
    const Vertex& cb = s.central.vertex(site.cbar);
    if (cb.self_int != -1 ||
        (cb.marker != Marker::Kept && cb.marker != Marker::Boundary))
      throw std::invalid_argument("apply_flip: bad flipped curve");
    if (s.central.edge_mult(site.cbar, chain.back()) != 1)
      throw std::invalid_argument("apply_flip: curve does not meet the chain "
                                  "end once");
  }

  long long pre = general_vertex_count(s) + s.k2;

  std::size_t r = chain.size();
  std::vector<long long> b(r);
  for (std::size_t i = 0; i < r; ++i)
    b[i] = -s.central.vertex(chain[i]).self_int;
  std::size_t istar = 0;
  for (std::size_t i = 0; i < r; ++i)
    if (b[i] >= 3) istar = i;
  if (b[istar] < 3)
    throw std::logic_error("apply_flip: chain has no weight >= 3");

  // Pre-move limit intersections with the flipped curve.
  std::map<int, long long> extra;
  for (const auto& [id, lst] : s.limits) {
    long long m = 0;
    for (int v : lst) {
      if (v == site.cbar) continue;
      m += s.central.edge_mult(v, site.cbar);
    }
    extra[id] = m;
  }

  std::ostringstream tr;
  tr << "FLIP C=" << site.cbar << " chain=[";
  for (std::size_t i = 0; i < r; ++i) tr << (i ? "," : "") << chain[i];
  tr << "] -> C+=" << chain[0] << " newsing=[";
  for (std::size_t i = 1; i <= istar; ++i)
    tr << (i > 1 ? "," : "") << chain[i];
  tr << "]";
  s.trace.push_back(tr.str());

  MMPMove mv;
  mv.kind = MMPMove::Kind::Flip;
  mv.vertex = site.cbar;
  mv.chain = chain;
  mv.cplus = chain[0];
  for (std::size_t i = 1; i <= istar; ++i)
    mv.new_singularity.push_back(chain[i]);
  s.moves.push_back(mv);

  s.central.set_marker(site.cbar, Marker::Kept);
  s.central.blow_down(site.cbar);
  for (std::size_t j = r; j-- > istar + 1;) {
    if (s.central.vertex(chain[j]).self_int != -1)
      throw std::logic_error("apply_flip: chain curve failed to reach -1");
    s.central.set_marker(chain[j], Marker::Kept);
    s.central.blow_down(chain[j]);
  }
  s.central.set_marker(chain[0], Marker::Kept);

  // The surviving chain must again be a Wahl chain.
  if (istar >= 1) {
    std::vector<Int> weights;
    for (std::size_t i = 1; i <= istar; ++i)
      weights.push_back(Int(-s.central.vertex(chain[i]).self_int));
    if (!weights.empty()) {
      ChainClassification cc = classify_chain(weights);
      if (!cc.is_wahl())
        throw std::logic_error(
            "apply_flip: surviving chain is not a Wahl chain");
    }
  }

  for (auto& [id, lst] : s.limits) {
    for (int& v : lst)
      if (v == site.cbar) v = chain[0];
    for (long long i = 0; i < extra.at(id); ++i) lst.push_back(chain[0]);
    std::sort(lst.begin(), lst.end());
  }

  long long post = general_vertex_count(s) + s.k2;
  s.conservation.emplace_back(pre, post);
  discover_trackers(s);
}

// The canonical move order is the one the worked traces follow.  While a
// singular point remains on the central fibre, a usual flip is preferred over
// a divisorial contraction: both traces flip while an eligible contraction
// waits.  When no flip site exists, the currently eligible contractions are
// performed as one batch (the snapshot taken before the batch starts; a curve
// whose self-intersection is pushed off -1 by an earlier member is skipped),
// because a contraction can expose a new flip site mid-batch that must not
// preempt the remaining batch members.  A boundary curve at -1 in both fibres
// is contracted only when nothing else is possible at all.  The run stops at
// the first smooth central fibre; blowing further down belongs to the
// minimal-model classification, not to the move log.
MMPState run_mmp(const CompactifiedGraph& c) {
  MMPState s = initial_state(c);
  int moves = 0;
  while (!s.central.contracted_components().empty()) {
    if (++moves > 500)
      throw std::runtime_error("run_mmp: move budget exceeded");
    auto sites = find_flip_sites(s);
    if (!sites.empty()) {
      apply_flip(s, sites.front());
      continue;
    }
    auto batch = divisorial_candidates(s);
    if (!batch.empty()) {
      for (int t : batch) {
        if (s.tracked.count(t) == 0) continue;
        if (s.central.vertex(t).self_int != -1) continue;
        apply_divisorial(s, t);
      }
      continue;
    }
    auto escapes = boundary_divisorial_candidates(s);
    if (!escapes.empty()) {
      apply_divisorial(s, escapes.front());
      continue;
    }
    std::ostringstream os;
    os << "run_mmp: no applicable move; contracted components remain:";
    for (const auto& comp : s.central.contracted_components()) {
      os << " [";
      for (std::size_t i = 0; i < comp.size(); ++i)
        os << (i ? "," : "") << comp[i];
      os << "]";
    }
    throw std::runtime_error(os.str());
  }
  // Remaining tracked (-1)-curves are reported in ascending order.
  for (int t : s.tracked) s.data.records.push_back(boundary_record(s, t));
  return s;
}

namespace {

ClassifyOutcome classify_impl(DecoratedGraph g, long long k2, unsigned seed,
                              bool randomize) {
  std::mt19937 rng(seed);
  for (int id : g.vertex_ids()) g.set_marker(id, Marker::Kept);
  while (true) {
    std::vector<int> candidates;
    for (int id : g.vertex_ids()) {
      if (g.vertex(id).self_int == -1 && g.loop_count(id) == 0)
        candidates.push_back(id);
    }
    if (candidates.empty()) break;
    int pick = candidates.front();
    if (randomize) {
      std::uniform_int_distribution<std::size_t> d(0, candidates.size() - 1);
      pick = candidates[d(rng)];
    }
    g.blow_down(pick);
    k2 += 1;
  }
  ClassifyOutcome out;
  out.k2 = k2;
  if (k2 == 9) {
    out.ok = true;
    out.model = MinimalModel::CP2;
  } else if (k2 == 8) {
    out.ok = true;
    out.model = MinimalModel::Quadric;
  } else {
    std::ostringstream os;
    os << "no minimal rational surface with K^2 = " << k2
       << "; remaining weights:";
    for (int id : g.vertex_ids()) os << ' ' << g.vertex(id).self_int;
    out.diagnostic = os.str();
  }
  return out;
}

}  // namespace

ClassifyOutcome classify_minimal_model(const DecoratedGraph& terminal_central,
                                       long long k2) {
  return classify_impl(terminal_central, k2, 0, false);
}

ClassifyOutcome classify_minimal_model_random(DecoratedGraph terminal_central,
                                              long long k2, unsigned seed) {
  return classify_impl(std::move(terminal_central), k2, seed, true);
}

int distinguished_boundary(const CompactifiedGraph& comp) {
  const FamilyInfo& fi = family_info(comp.base.family);
  if (fi.type != FigureType::ThreeOne)
    throw std::invalid_argument(
        "distinguished_boundary: family is not of type (3,1)");
  // Every type-(3,1) family has left arm [3], whose dual arm is [2,2]; the
  // designated curve is the second (outer) curve of that arm.
  if (comp.dual_arms[0].size() < 2)
    throw std::logic_error("distinguished_boundary: unexpected dual arm");
  return comp.dual_arms[0][1];
}

DeformationCase case_discriminant(const MinusOneData& data,
                                  const CompactifiedGraph& comp) {
  int btilde = distinguished_boundary(comp);
  for (const auto& rec : data.records) {
    if (rec.meets.size() == 1 && rec.meets.count(btilde) &&
        rec.meets.at(btilde) == 1)
      return DeformationCase::CaseI;
  }
  return DeformationCase::CaseII;
}

}  // namespace preskit
