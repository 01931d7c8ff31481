#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace preskit {

// Role of a curve in a decorated configuration.
enum class Marker {
  Kept,        // survives on the partial resolution
  Contracted,  // collapsed to a singular point
  Boundary,    // compactification divisor component
  Tracker,     // general-fibre (-1)-curve tracked through the MMP
};

char marker_char(Marker m);
Marker marker_from_char(char c);

struct Vertex {
  long long self_int = 0;
  Marker marker = Marker::Kept;
};

// Undo record for one blow-down, sufficient to restore the graph exactly.
struct BlowDownStep {
  int vertex = -1;
  long long self_int = 0;
  Marker marker = Marker::Kept;
  std::vector<std::pair<int, long long>> incidences;  // neighbor id -> mult
};

struct StarShape {
  int center = -1;
  std::vector<std::vector<int>> arms;  // center-outward, sorted by length then id
};

// Weighted configuration graph of curves: vertices carry self-intersections
// and markers, edges carry intersection multiplicities, and a vertex may
// carry loops (nodes of an irreducible curve acquired by blow-downs).
class DecoratedGraph {
 public:
  DecoratedGraph() = default;

  int add_vertex(long long self_int, Marker marker);
  void add_vertex_with_id(int id, long long self_int, Marker marker);
  bool has_vertex(int id) const;
  const Vertex& vertex(int id) const;
  void set_self_int(int id, long long self_int);
  void set_marker(int id, Marker marker);

  void add_edge(int a, int b, long long mult = 1);
  long long edge_mult(int a, int b) const;
  void remove_edge(int a, int b);
  long long loop_count(int v) const;
  void add_loops(int v, long long count);

  std::vector<int> vertex_ids() const;
  std::size_t vertex_count() const { return verts_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::vector<std::pair<int, long long>> neighbors(int v) const;
  long long degree(int v) const;  // sum of multiplicities, loops twice

  const std::map<int, Vertex>& vertices() const { return verts_; }
  const std::map<std::pair<int, int>, long long>& edges() const {
    return edges_;
  }
  const std::map<int, long long>& loops() const { return loops_; }

  // Contracts a (-1)-vertex: requires self-intersection -1, marker Kept or
  // Tracker, and no loops on the vertex.  Neighbor self-intersections and
  // mutual multiplicities are adjusted by the standard push-forward rules.
  BlowDownStep blow_down(int v);
  void undo_blow_down(const BlowDownStep& step);

  // Blows up a point on the intersection of a and b (multiplicity drops by
  // one) or a smooth point of v.  Returns the id of the new (-1)-vertex.
  int blow_up_edge(int a, int b);
  int blow_up_point(int v);

  // Connected components of the Contracted vertices, sorted by minimum id.
  std::vector<std::vector<int>> contracted_components() const;

  // Orders a component as a simple chain (unit multiplicities, no loops,
  // degrees <= 2, connected).  The end with the smaller id comes first.
  std::optional<std::vector<int>> order_as_chain(
      const std::vector<int>& comp) const;

  // Orders a component as a star with a single center of degree >= 3.
  std::optional<StarShape> order_as_star(const std::vector<int>& comp) const;

  void serialize(std::ostream& os) const;
  std::string to_string() const;
  static DecoratedGraph parse(const std::string& text);
  void to_dot(std::ostream& os, const std::string& name = "graph0") const;

  friend bool operator==(const DecoratedGraph& a, const DecoratedGraph& b) {
    return a.verts_ == b.verts_ && a.edges_ == b.edges_ && a.loops_ == b.loops_;
  }

 private:
  std::map<int, Vertex> verts_;
  std::map<std::pair<int, int>, long long> edges_;  // key: (min, max)
  std::map<int, long long> loops_;

  static std::pair<int, int> key(int a, int b);
  void require_vertex(int id) const;
};

inline bool operator==(const Vertex& a, const Vertex& b) {
  return a.self_int == b.self_int && a.marker == b.marker;
}

// Marker-, weight-, multiplicity- and loop-preserving graph isomorphism.
bool is_isomorphic(const DecoratedGraph& a, const DecoratedGraph& b);

// All isomorphisms from a to b, stopping after `limit` are found.
std::vector<std::map<int, int>> find_isomorphisms(const DecoratedGraph& a,
                                                  const DecoratedGraph& b,
                                                  std::size_t limit);

}  // namespace preskit
