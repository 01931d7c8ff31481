#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "preskit/compactify.hpp"

namespace preskit {

struct MMPMove {
  enum class Kind { Contract, Flip };
  Kind kind = Kind::Contract;
  int vertex = -1;                // contracted tracker, or the flipped curve
  std::vector<int> chain;         // flip: E1..Er, attachment end last
  int cplus = -1;                 // flip: id of the replacement curve
  std::vector<int> new_singularity;  // flip: ids of the surviving Wahl chain
};

// Boundary intersection profile of one general-fibre (-1)-curve, read at
// the moment the curve is discovered.  This equals its profile in the fully
// blown-up general fibre: later contractions only remove curves, and undoing
// them restores exactly the configuration the curve was discovered in.
struct TrackerRecord {
  int tracker = -1;
  std::map<int, long long> meets;  // boundary class id -> multiplicity
};

struct MinusOneData {
  std::vector<TrackerRecord> records;  // event order
};

struct FlipSite {
  int cbar = -1;
  std::vector<int> chain;  // E1..Er, attachment end (adjacent to cbar) last
};

struct MMPState {
  CompactifiedGraph origin;
  DecoratedGraph central;
  DecoratedGraph general;  // boundary classes plus discovered trackers
  // Grow-only copy of `general`: every class keeps its discovery-time
  // intersections even after contractions remove it from `general`.  Records
  // are read from here (the fully blown-up general fibre).
  DecoratedGraph record;
  long long k2 = 0;
  // Limit of each general-fibre class as a multiset of central curves.
  std::map<int, std::vector<int>> limits;
  std::set<int> tracked;
  std::vector<MMPMove> moves;
  std::vector<std::string> trace;
  MinusOneData data;
  // (general vertex count + K^2) sampled before/after each move, before
  // tracker discovery runs.
  std::vector<std::pair<long long, long long>> conservation;
};

MMPState initial_state(const CompactifiedGraph& c);

// Registers every central Kept non-boundary (-1)-curve without Contracted
// neighbors as a general-fibre tracker, unless it pairs negatively with a
// live class (then it is part of that class's degenerate limit and carries
// no class of its own).
void discover_trackers(MMPState& s);

// Lowest-id tracked curve currently contractible in both fibres.
std::optional<int> find_divisorial(const MMPState& s);
std::optional<FlipSite> find_flip(const MMPState& s);

// Contracts a (-1)-curve in both fibres.  `vertex` is either a tracked
// curve (emits its record) or a boundary curve at -1 (no record: boundary
// classes are part of the compactifying divisor, not of the data).
void apply_divisorial(MMPState& s, int vertex);
void apply_flip(MMPState& s, const FlipSite& site);

// Runs the semistable MMP to the first smooth central fibre with the
// canonical move order of the worked traces: a usual flip whenever a site
// exists (sites avoiding Kept neighbors first, then sites attacking a chain
// end of weight 2, then lowest id), otherwise the snapshot batch of eligible
// tracked contractions in ascending order, and a boundary curve at -1 in
// both fibres only when nothing else applies.  Remaining tracked (-1)-curves
// are recorded at the end.  Throws if no move applies while a singular point
// remains, or the move log exceeds the 500-move safety cap.
MMPState run_mmp(const CompactifiedGraph& c);

enum class MinimalModel { CP2, Quadric };

struct ClassifyOutcome {
  bool ok = false;
  MinimalModel model = MinimalModel::CP2;
  long long k2 = 0;
  std::string diagnostic;
};

// Contracts loop-free (-1)-curves of the terminal central fibre (markers
// disregarded) until none remain; K^2 = 9 identifies the plane, 8 the
// quadric.
ClassifyOutcome classify_minimal_model(const DecoratedGraph& terminal_central,
                                       long long k2);
ClassifyOutcome classify_minimal_model_random(DecoratedGraph terminal_central,
                                              long long k2, unsigned seed);

enum class DeformationCase { CaseI, CaseII };

// Id of the distinguished boundary curve of a type (3,1) compactification:
// the hub-adjacent curve of the dual chain of the [3]-arm.
int distinguished_boundary(const CompactifiedGraph& comp);

// Type (3,1) dichotomy: Case I iff some tracked (-1)-curve meets exactly
// the distinguished boundary curve, once, and nothing else.
DeformationCase case_discriminant(const MinusOneData& data,
                                  const CompactifiedGraph& comp);

}  // namespace preskit
