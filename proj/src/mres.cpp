#include "preskit/mres.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace preskit {

namespace {

// Blows a standalone weight chain down to a minimal one ([b]>=2 entries),
// always at the leftmost 1, and reports which original positions survive.
// Returns nullopt if an entry ever drops below 1.
struct ChainReduction {
  std::vector<Int> weights;
  std::vector<std::size_t> survivors;  // original positions
};

std::optional<ChainReduction> reduce_weight_chain(std::vector<Int> w) {
  std::vector<std::size_t> posn(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) posn[i] = i;
  while (true) {
    std::size_t hit = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] < 1) return std::nullopt;
      if (w[i] == 1 && hit == w.size()) hit = i;
    }
    if (hit == w.size()) break;
    if (hit > 0) w[hit - 1] -= 1;
    if (hit + 1 < w.size()) w[hit + 1] -= 1;
    w.erase(w.begin() + hit);
    posn.erase(posn.begin() + hit);
  }
  return ChainReduction{std::move(w), std::move(posn)};
}

}  // namespace

MResolutionRecord to_mresolution(const PResolutionRecord& rec) {
  MResolutionRecord out;
  out.source = rec;
  out.graph = rec.graph;
  out.arm_leaves = rec.arm_leaves;
  out.milnor = rec.milnor;

  for (const auto& part : rec.parts) {
    if (part.cls != ChainClass::ClassT) continue;  // du Val: untouched
    const ClassTParams& t = *part.t;
    if (t.d == 1) {
      out.wahl_components.push_back(part.chain);
      continue;
    }

    std::vector<Int> wahl = hj_expand(t.n * t.n, t.n * t.a - 1);
    std::size_t w = wahl.size();
    std::vector<Int> strip = wahl;
    for (Int copy = 1; copy < t.d; ++copy) {
      strip.push_back(1);
      strip.insert(strip.end(), wahl.begin(), wahl.end());
    }

    // The strip must blow down to the chain itself; try both orientations.
    std::vector<Int> chain_weights;
    for (int v : part.chain)
      chain_weights.push_back(Int(-rec.graph.vertex(v).self_int));
    auto red = reduce_weight_chain(strip);
    bool flipped = false;
    if (!red || red->weights != chain_weights) {
      std::vector<Int> rev(strip.rbegin(), strip.rend());
      red = reduce_weight_chain(rev);
      flipped = true;
      if (!red || red->weights != chain_weights)
        throw std::logic_error(
            "to_mresolution: Wahl strip does not reduce to the class-T "
            "chain");
      // Map survivor positions back into the unreversed strip indexing;
      // weights and joiner positions are always read from the strip as
      // built.
      for (auto& p : red->survivors) p = strip.size() - 1 - p;
    }
    // Survivor position i of the (possibly reversed) strip corresponds to
    // chain vertex i; every chain vertex survives.
    if (red->survivors.size() != part.chain.size())
      throw std::logic_error("to_mresolution: survivor count mismatch");
    (void)flipped;

    std::vector<int> pos_to_id(strip.size(), -1);
    for (std::size_t i = 0; i < part.chain.size(); ++i)
      pos_to_id[red->survivors[i]] = part.chain[i];
    // Drop the old internal chain edges; weights are rewritten below.
    for (std::size_t i = 0; i + 1 < part.chain.size(); ++i)
      out.graph.remove_edge(part.chain[i], part.chain[i + 1]);
    for (std::size_t p = 0; p < strip.size(); ++p) {
      bool joiner = strip[p] == 1;
      long long self = -static_cast<long long>(strip[p]);
      if (pos_to_id[p] < 0) {
        pos_to_id[p] = out.graph.add_vertex(
            self, joiner ? Marker::Kept : Marker::Contracted);
      } else {
        out.graph.set_self_int(pos_to_id[p], self);
        out.graph.set_marker(pos_to_id[p],
                             joiner ? Marker::Kept : Marker::Contracted);
      }
    }
    for (std::size_t p = 0; p + 1 < strip.size(); ++p)
      out.graph.add_edge(pos_to_id[p], pos_to_id[p + 1]);

    for (Int copy = 0; copy < t.d; ++copy) {
      std::size_t start = static_cast<std::size_t>(copy) * (w + 1);
      std::vector<int> comp;
      for (std::size_t p = start; p < start + w; ++p)
        comp.push_back(pos_to_id[p]);
      out.wahl_components.push_back(std::move(comp));
    }
  }

  // Sanity: contracting the joiners must restore the P-resolution graph.
  DecoratedGraph check = out.graph;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int id : check.vertex_ids()) {
      if (!rec.graph.has_vertex(id) && check.vertex(id).self_int == -1) {
        check.set_marker(id, Marker::Kept);
        check.blow_down(id);
        changed = true;
        break;
      }
    }
  }
  if (!(check == rec.graph))
    throw std::logic_error(
        "to_mresolution: joiner contraction does not restore the source");
  return out;
}

}  // namespace preskit
