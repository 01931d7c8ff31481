#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "preskit/contfrac.hpp"
#include "preskit/curvegraph.hpp"
#include "preskit/rational.hpp"

namespace preskit {

// Cyclic quotient singularity 1/n (1, q).
struct CyclicType {
  Int n = 0;
  Int q = 0;
  friend bool operator==(const CyclicType& a, const CyclicType& b) {
    return a.n == b.n && a.q == b.q;
  }
};

// Class-T cyclic quotient 1/(d n^2) (1, d n a - 1); d == 1 is the Wahl case.
struct ClassTParams {
  Int d = 0;
  Int n = 0;
  Int a = 0;
  friend bool operator==(const ClassTParams& x, const ClassTParams& y) {
    return x.d == y.d && x.n == y.n && x.a == y.a;
  }
};

struct ADELabel {
  char series = 'A';
  int rank = 0;
  friend bool operator==(const ADELabel& a, const ADELabel& b) {
    return a.series == b.series && a.rank == b.rank;
  }
};

enum class ChainClass { RDP, ClassT, Other };

struct ChainClassification {
  ChainClass cls = ChainClass::Other;
  CyclicType cyclic;
  std::optional<ClassTParams> t;  // set when cls == ClassT
  std::optional<ADELabel> ade;    // set when cls == RDP

  bool is_wahl() const {
    return cls == ChainClass::ClassT && t.has_value() && t->d == 1;
  }
};

// Classifies a chain of curves with self-intersections -b_i from the weight
// list [b_1,...,b_r].  All-(-2) chains are du Val of type A; otherwise the
// chain resolves 1/n (1, q) with n/q = [b_1,...,b_r] and is tested for
// membership in class T.  Weights below 2 yield Other.
ChainClassification classify_chain(const std::vector<Int>& weights);

// Discrepancy coefficients c_j of the chain singularity: the unique exact
// solution of sum_j c_j (E_j . E_i) = b_i - 2 for all i.  Each c_j lies in
// (-1, 0], and all vanish exactly for the du Val case.
std::vector<Rat> chain_discrepancies(const std::vector<Int>& weights);

// Recognizes a connected component as a du Val configuration: every weight
// -2 and the induced graph a chain (A) or a 3-armed star with arm lengths
// (1,1,k), (1,2,2), (1,2,3), (1,2,4) giving D/E6/E7/E8.
std::optional<ADELabel> rdp_component(const DecoratedGraph& g,
                                      const std::vector<int>& comp);

// The 15 one-parameter families of tetrahedral, octahedral and icosahedral
// quotient singularities, keyed by the residue of the defining invariant.
enum class Family {
  T6k1,
  T6k3,
  T6k5,
  O12k1,
  O12k5,
  O12k7,
  O12k11,
  I30k1,
  I30k7,
  I30k11,
  I30k13,
  I30k17,
  I30k19,
  I30k23,
  I30k29,
};

// Shape of the central curve datum: type (3,1) has one end of the central
// chain free, type (3,2) has both ends meeting arms.
enum class FigureType { ThreeOne, ThreeTwo };

struct FamilyInfo {
  Family family;
  std::string name;
  FigureType type;
  // Exceptional arms of the minimal resolution in layout order (left,
  // right, branch), weights listed from the central curve outward.
  std::array<std::vector<Int>, 3> arms;
  // Printed overview-table column for parameter n: column = n + offset - 2.
  int column_offset;
};

const std::vector<FamilyInfo>& family_table();
const FamilyInfo& family_info(Family f);
std::optional<Family> family_from_name(const std::string& name);

struct ToiDescriptor {
  Family family = Family::T6k1;
  long long n = 2;
};

struct ToiResolution {
  DecoratedGraph graph;
  ToiDescriptor desc;
  int center_id = -1;
  std::array<std::vector<int>, 3> arm_ids;  // center-outward per arm
};

// Minimal resolution of the family member with central weight -n (n >= 2):
// a 3-armed star.  Vertex ids: left arm outer-to-inner from 0, then the
// center, then the right arm inner-to-outer, then the branch arm.
ToiResolution toi_minimal_resolution(Family f, long long n);
ToiResolution toi_minimal_resolution(const ToiDescriptor& d);

}  // namespace preskit
