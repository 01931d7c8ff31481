#pragma once

#include <array>
#include <vector>

#include "preskit/presolve.hpp"

namespace preskit {

// M-resolution: every class-T singularity of the P-resolution is replaced
// by its length-d strip of Wahl chains separated by Kept (-1)-joiners; du
// Val parts are untouched.
struct MResolutionRecord {
  PResolutionRecord source;
  DecoratedGraph graph;
  std::vector<std::vector<int>> wahl_components;  // chains, strip order
  std::array<int, 3> arm_leaves{-1, -1, -1};
  long long milnor = 0;
};

MResolutionRecord to_mresolution(const PResolutionRecord& rec);

}  // namespace preskit
