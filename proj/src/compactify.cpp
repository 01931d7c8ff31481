#include "preskit/compactify.hpp"

#include <algorithm>
#include <stdexcept>

namespace preskit {

CompactifiedGraph compactified_graph(const MResolutionRecord& m) {
  CompactifiedGraph out;
  out.base = m.source.base;
  out.milnor = m.milnor;
  out.graph = m.graph;
  out.wahl_components = m.wahl_components;

  // Resolve the du Val parts: their curves live on the compact surface.
  for (const auto& part : m.source.parts) {
    if (part.cls == ChainClass::RDP)
      for (int v : part.verts) out.graph.set_marker(v, Marker::Kept);
  }

  const FamilyInfo& fi = family_info(m.source.base.family);
  long long n = m.source.base.n;
  out.hub = out.graph.add_vertex(n - 3, Marker::Boundary);
  out.boundary.push_back(out.hub);

  for (int a = 0; a < 3; ++a) {
    CFValue frac = hj_eval(fi.arms[a]);
    if (!frac.is_finite())
      throw std::logic_error("compactified_graph: bad arm fraction");
    Int na = numerator(frac.value), qa = denominator(frac.value);
    std::vector<Int> dual = hj_dual(na, qa);  // [a1..ae], a1 hub-adjacent

    out.framework[a] = out.graph.add_vertex(-1, Marker::Kept);
    out.graph.add_edge(out.framework[a], m.arm_leaves[a]);
    int prev = out.framework[a];
    std::vector<int>& ids = out.dual_arms[a];
    ids.resize(dual.size(), -1);
    for (std::size_t i = dual.size(); i-- > 0;) {
      int v = out.graph.add_vertex(-static_cast<long long>(dual[i]),
                                   Marker::Boundary);
      ids[i] = v;
      out.graph.add_edge(prev, v);
      prev = v;
    }
    out.graph.add_edge(prev, out.hub);
    for (int v : ids) out.boundary.push_back(v);
  }
  std::sort(out.boundary.begin(), out.boundary.end());
  return out;
}

}  // namespace preskit
