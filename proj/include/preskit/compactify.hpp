#pragma once

#include <array>
#include <vector>

#include "preskit/mres.hpp"

namespace preskit {

// Natural compactification of an M-resolution: the surface is closed up by
// a boundary cycle consisting of a hub curve of self-intersection n-3 and,
// per arm, the dual chain of the arm singularity, reached from the arm's
// outer leaf through a Kept (-1)-framework curve.  Du Val parts of the
// M-resolution are resolved, i.e. re-marked Kept.
struct CompactifiedGraph {
  DecoratedGraph graph;
  ToiDescriptor base;
  long long milnor = 0;
  int hub = -1;
  std::array<int, 3> framework{-1, -1, -1};
  std::array<std::vector<int>, 3> dual_arms;  // ids hub-outward [a1..ae]
  std::vector<int> boundary;                  // hub + dual chains, sorted
  std::vector<std::vector<int>> wahl_components;
};

CompactifiedGraph compactified_graph(const MResolutionRecord& m);

}  // namespace preskit
