#pragma once

#include <vector>

#include "preskit/rational.hpp"

namespace preskit {

// Value of a Hirzebruch-Jung continued fraction [b1,...,br] where the
// entries are evaluated back to front as b - 1/(...).  The empty fraction
// evaluates to infinity; a fraction can also collapse to a point when an
// intermediate tail evaluates to exactly the next entry.
struct CFValue {
  enum class Kind { Finite, Infinity, ContractsToPoint };

  Kind kind = Kind::Infinity;
  Rat value = 0;  // meaningful only when kind == Finite

  static CFValue finite(Rat v) { return CFValue{Kind::Finite, std::move(v)}; }
  static CFValue infinity() { return CFValue{Kind::Infinity, 0}; }
  static CFValue contracts_to_point() {
    return CFValue{Kind::ContractsToPoint, 0};
  }

  bool is_finite() const { return kind == Kind::Finite; }

  friend bool operator==(const CFValue& a, const CFValue& b) {
    if (a.kind != b.kind) return false;
    if (a.kind != Kind::Finite) return true;
    return a.value == b.value;
  }
};

// Hirzebruch-Jung expansion of n/q for 0 < q < n (or q == 1, n >= 2),
// gcd(n, q) == 1.  Every entry is >= 2.
std::vector<Int> hj_expand(const Int& n, const Int& q);

// Evaluates [b1,...,br] back to front.  Entries must be >= 1.
CFValue hj_eval(const std::vector<Int>& entries);

// Expansion of the dual fraction n/(n-q).
std::vector<Int> hj_dual(const Int& n, const Int& q);

}  // namespace preskit
