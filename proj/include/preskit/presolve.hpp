#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "preskit/curvegraph.hpp"
#include "preskit/rational.hpp"
#include "preskit/singularity.hpp"

namespace preskit {

// One contracted component of a P-resolution together with its
// classification.
struct ContractedPart {
  std::vector<int> verts;  // sorted ids
  ChainClass cls = ChainClass::Other;
  std::optional<ADELabel> ade;     // RDP case (chain or star)
  std::optional<ClassTParams> t;   // class-T case
  std::vector<int> chain;          // chain order (empty for RDP stars)
};

// A validated P-resolution of a TOI singularity: the decorated graph, its
// contracted parts, and the induced invariants.
struct PResolutionRecord {
  ToiDescriptor base;
  DecoratedGraph graph;
  std::vector<ContractedPart> parts;
  long long dim = 0;
  long long milnor = 0;
  int center_id = -1;                 // image of the central curve
  std::array<std::vector<int>, 3> arm_ids;  // center-outward minimal-res arms
  std::array<int, 3> arm_leaves{-1, -1, -1};
};

struct Rejection {
  std::string reason;
};

using ValidationResult = std::variant<PResolutionRecord, Rejection>;

// Checks that g is a legal P-resolution of the given family member:
//  - blowing down (-1)-curves reduces g to the family's minimal resolution;
//  - every Contracted component is a du Val configuration or a class-T
//    chain;
//  - every Kept curve E has K.E > 0 (strict) for the log-discrepancy
//    canonical class of the contraction.
ValidationResult validate_presolution(const DecoratedGraph& g,
                                      const ToiDescriptor& base);

// Invariants recomputed from a record's parts.
long long dim_component(const PResolutionRecord& rec);
long long milnor_number(const PResolutionRecord& rec);

// All P-resolutions of the family member reachable by at most max_blowups
// blow-ups of the minimal resolution, deduplicated up to isomorphisms that
// fix the minimal-resolution curves pointwise, in a deterministic order.
// Throws if the candidate budget is exceeded.
std::vector<PResolutionRecord> enumerate_presolutions(
    Family f, long long n, int max_blowups = 3,
    std::size_t candidate_budget = 4000000);

// Index pairs (i, j), i < j, of records whose graphs are isomorphic as
// decorated graphs (markers and weights respected, arms free to swap).
std::vector<std::pair<int, int>> symmetric_pairs(
    const std::vector<PResolutionRecord>& records);

}  // namespace preskit
