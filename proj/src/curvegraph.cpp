#include "preskit/curvegraph.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace preskit {

char marker_char(Marker m) {
  switch (m) {
    case Marker::Kept:
      return 'k';
    case Marker::Contracted:
      return 'c';
    case Marker::Boundary:
      return 'b';
    case Marker::Tracker:
      return 't';
  }
  throw std::logic_error("marker_char: bad marker");
}

Marker marker_from_char(char c) {
  switch (c) {
    case 'k':
      return Marker::Kept;
    case 'c':
      return Marker::Contracted;
    case 'b':
      return Marker::Boundary;
    case 't':
      return Marker::Tracker;
  }
  throw std::invalid_argument(std::string("marker_from_char: bad marker '") +
                              c + "'");
}

std::pair<int, int> DecoratedGraph::key(int a, int b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void DecoratedGraph::require_vertex(int id) const {
  if (!has_vertex(id))
    throw std::invalid_argument("graph: no vertex " + std::to_string(id));
}

int DecoratedGraph::add_vertex(long long self_int, Marker marker) {
  int id = verts_.empty() ? 0 : verts_.rbegin()->first + 1;
  verts_[id] = Vertex{self_int, marker};
  return id;
}

void DecoratedGraph::add_vertex_with_id(int id, long long self_int,
                                        Marker marker) {
  if (has_vertex(id))
    throw std::invalid_argument("graph: duplicate vertex " +
                                std::to_string(id));
  verts_[id] = Vertex{self_int, marker};
}

bool DecoratedGraph::has_vertex(int id) const { return verts_.count(id) > 0; }

const Vertex& DecoratedGraph::vertex(int id) const {
  require_vertex(id);
  return verts_.at(id);
}

void DecoratedGraph::set_self_int(int id, long long self_int) {
  require_vertex(id);
  verts_[id].self_int = self_int;
}

void DecoratedGraph::set_marker(int id, Marker marker) {
  require_vertex(id);
  verts_[id].marker = marker;
}

void DecoratedGraph::add_edge(int a, int b, long long mult) {
  require_vertex(a);
  require_vertex(b);
  if (mult <= 0) throw std::invalid_argument("graph: edge mult must be >= 1");
  if (a == b) {
    loops_[a] += mult;
    return;
  }
  edges_[key(a, b)] += mult;
}

long long DecoratedGraph::edge_mult(int a, int b) const {
  if (a == b) return loop_count(a);
  auto it = edges_.find(key(a, b));
  return it == edges_.end() ? 0 : it->second;
}

void DecoratedGraph::remove_edge(int a, int b) {
  edges_.erase(key(a, b));
}

long long DecoratedGraph::loop_count(int v) const {
  auto it = loops_.find(v);
  return it == loops_.end() ? 0 : it->second;
}

void DecoratedGraph::add_loops(int v, long long count) {
  require_vertex(v);
  if (count <= 0) throw std::invalid_argument("graph: loop count must be >= 1");
  loops_[v] += count;
}

std::vector<int> DecoratedGraph::vertex_ids() const {
  std::vector<int> ids;
  ids.reserve(verts_.size());
  for (const auto& [id, v] : verts_) ids.push_back(id);
  return ids;
}

std::vector<std::pair<int, long long>> DecoratedGraph::neighbors(int v) const {
  require_vertex(v);
  std::vector<std::pair<int, long long>> out;
  for (const auto& [k, m] : edges_) {
    if (k.first == v) out.emplace_back(k.second, m);
    else if (k.second == v) out.emplace_back(k.first, m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

long long DecoratedGraph::degree(int v) const {
  long long d = 2 * loop_count(v);
  for (const auto& [u, m] : neighbors(v)) d += m;
  return d;
}

BlowDownStep DecoratedGraph::blow_down(int v) {
  require_vertex(v);
  const Vertex& vv = verts_.at(v);
  if (vv.self_int != -1)
    throw std::invalid_argument("blow_down: vertex " + std::to_string(v) +
                                " has self-intersection " +
                                std::to_string(vv.self_int));
  if (vv.marker != Marker::Kept && vv.marker != Marker::Tracker)
    throw std::invalid_argument("blow_down: vertex " + std::to_string(v) +
                                " is not Kept or Tracker");
  if (loop_count(v) != 0)
    throw std::invalid_argument("blow_down: vertex " + std::to_string(v) +
                                " carries loops");

  BlowDownStep step;
  step.vertex = v;
  step.self_int = vv.self_int;
  step.marker = vv.marker;
  step.incidences = neighbors(v);

  for (const auto& [u, m] : step.incidences) {
    verts_[u].self_int += m * m;
    if (m >= 2) loops_[u] += m * (m - 1) / 2;
  }
  for (std::size_t i = 0; i < step.incidences.size(); ++i) {
    for (std::size_t j = i + 1; j < step.incidences.size(); ++j) {
      edges_[key(step.incidences[i].first, step.incidences[j].first)] +=
          step.incidences[i].second * step.incidences[j].second;
    }
  }
  for (const auto& [u, m] : step.incidences) edges_.erase(key(v, u));
  verts_.erase(v);
  return step;
}

void DecoratedGraph::undo_blow_down(const BlowDownStep& step) {
  add_vertex_with_id(step.vertex, step.self_int, step.marker);
  for (std::size_t i = 0; i < step.incidences.size(); ++i) {
    for (std::size_t j = i + 1; j < step.incidences.size(); ++j) {
      auto k = key(step.incidences[i].first, step.incidences[j].first);
      edges_[k] -= step.incidences[i].second * step.incidences[j].second;
      if (edges_[k] == 0) edges_.erase(k);
    }
  }
  for (const auto& [u, m] : step.incidences) {
    verts_[u].self_int -= m * m;
    if (m >= 2) {
      loops_[u] -= m * (m - 1) / 2;
      if (loops_[u] == 0) loops_.erase(u);
    }
    edges_[key(step.vertex, u)] = m;
  }
}

int DecoratedGraph::blow_up_edge(int a, int b) {
  require_vertex(a);
  require_vertex(b);
  if (a == b) throw std::invalid_argument("blow_up_edge: use blow_up_point");
  auto k = key(a, b);
  auto it = edges_.find(k);
  if (it == edges_.end())
    throw std::invalid_argument("blow_up_edge: no edge " + std::to_string(a) +
                                "-" + std::to_string(b));
  if (--it->second == 0) edges_.erase(it);
  verts_[a].self_int -= 1;
  verts_[b].self_int -= 1;
  int id = add_vertex(-1, Marker::Kept);
  add_edge(id, a);
  add_edge(id, b);
  return id;
}

int DecoratedGraph::blow_up_point(int v) {
  require_vertex(v);
  verts_[v].self_int -= 1;
  int id = add_vertex(-1, Marker::Kept);
  add_edge(id, v);
  return id;
}

std::vector<std::vector<int>> DecoratedGraph::contracted_components() const {
  std::set<int> pool;
  for (const auto& [id, v] : verts_)
    if (v.marker == Marker::Contracted) pool.insert(id);
  std::vector<std::vector<int>> comps;
  while (!pool.empty()) {
    std::vector<int> comp, stack{*pool.begin()};
    pool.erase(pool.begin());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (const auto& [u, m] : neighbors(v)) {
        if (pool.count(u)) {
          pool.erase(u);
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

std::optional<std::vector<int>> DecoratedGraph::order_as_chain(
    const std::vector<int>& comp) const {
  if (comp.empty()) return std::nullopt;
  std::set<int> in(comp.begin(), comp.end());
  for (int v : comp) {
    if (loop_count(v) != 0) return std::nullopt;
  }
  // Induced degrees with unit multiplicities only.
  std::map<int, std::vector<int>> adj;
  for (int v : comp) adj[v];
  for (int v : comp) {
    for (const auto& [u, m] : neighbors(v)) {
      if (!in.count(u)) continue;
      if (m != 1) return std::nullopt;
      adj[v].push_back(u);
    }
  }
  if (comp.size() == 1) return std::vector<int>{comp[0]};
  std::vector<int> ends;
  for (const auto& [v, ns] : adj) {
    if (ns.size() > 2) return std::nullopt;
    if (ns.size() == 1) ends.push_back(v);
    if (ns.empty()) return std::nullopt;  // disconnected from the rest
  }
  if (ends.size() != 2) return std::nullopt;  // cycle or disconnected
  int start = std::min(ends[0], ends[1]);
  std::vector<int> order{start};
  int prev = -1, cur = start;
  while (order.size() < comp.size()) {
    int next = -1;
    for (int u : adj[cur]) {
      if (u != prev) {
        next = u;
        break;
      }
    }
    if (next < 0) return std::nullopt;  // disconnected
    order.push_back(next);
    prev = cur;
    cur = next;
  }
  return order;
}

std::optional<StarShape> DecoratedGraph::order_as_star(
    const std::vector<int>& comp) const {
  std::set<int> in(comp.begin(), comp.end());
  for (int v : comp)
    if (loop_count(v) != 0) return std::nullopt;
  std::map<int, std::vector<int>> adj;
  for (int v : comp) adj[v];
  for (int v : comp) {
    for (const auto& [u, m] : neighbors(v)) {
      if (!in.count(u)) continue;
      if (m != 1) return std::nullopt;
      adj[v].push_back(u);
    }
  }
  int center = -1;
  for (const auto& [v, ns] : adj) {
    if (ns.size() >= 3) {
      if (center >= 0) return std::nullopt;  // more than one branch vertex
      center = v;
    }
  }
  if (center < 0) return std::nullopt;
  StarShape star;
  star.center = center;
  std::set<int> seen{center};
  std::vector<int> starts = adj[center];
  std::sort(starts.begin(), starts.end());
  for (int s : starts) {
    std::vector<int> arm{s};
    seen.insert(s);
    int prev = center, cur = s;
    while (true) {
      int next = -1;
      for (int u : adj[cur]) {
        if (u == prev) continue;
        if (next >= 0) return std::nullopt;  // second branch vertex
        next = u;
      }
      if (next < 0) break;
      if (seen.count(next)) return std::nullopt;  // cycle
      arm.push_back(next);
      seen.insert(next);
      prev = cur;
      cur = next;
    }
    star.arms.push_back(std::move(arm));
  }
  if (seen.size() != comp.size()) return std::nullopt;  // disconnected
  std::sort(star.arms.begin(), star.arms.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return star;
}

void DecoratedGraph::serialize(std::ostream& os) const {
  for (const auto& [id, v] : verts_)
    os << "v " << id << ' ' << v.self_int << ' ' << marker_char(v.marker)
       << '\n';
  for (const auto& [k, m] : edges_) {
    os << "e " << k.first << ' ' << k.second;
    if (m != 1) os << ' ' << m;
    os << '\n';
  }
  for (const auto& [v, c] : loops_) os << "l " << v << ' ' << c << '\n';
}

std::string DecoratedGraph::to_string() const {
  std::ostringstream os;
  serialize(os);
  return os.str();
}

DecoratedGraph DecoratedGraph::parse(const std::string& text) {
  DecoratedGraph g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag[0] == '#') continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("graph parse error at line " +
                                  std::to_string(lineno) + ": " + why);
    };
    if (tag == "v") {
      int id;
      long long self;
      std::string mk;
      if (!(ls >> id >> self >> mk) || mk.size() != 1) fail("bad vertex line");
      g.add_vertex_with_id(id, self, marker_from_char(mk[0]));
    } else if (tag == "e") {
      int a, b;
      if (!(ls >> a >> b)) fail("bad edge line");
      long long m = 1;
      ls >> m;
      if (m < 1) fail("bad edge multiplicity");
      g.add_edge(a, b, m);
    } else if (tag == "l") {
      int v;
      long long c;
      if (!(ls >> v >> c)) fail("bad loop line");
      g.add_loops(v, c);
    } else {
      fail("unknown tag '" + tag + "'");
    }
  }
  return g;
}

void DecoratedGraph::to_dot(std::ostream& os, const std::string& name) const {
  os << "graph " << name << " {\n";
  os << "  node [fontsize=11];\n";
  for (const auto& [id, v] : verts_) {
    const char* shape = "ellipse";
    switch (v.marker) {
      case Marker::Kept:
        shape = "ellipse";
        break;
      case Marker::Contracted:
        shape = "box";
        break;
      case Marker::Boundary:
        shape = "diamond";
        break;
      case Marker::Tracker:
        shape = "ellipse";
        break;
    }
    os << "  n" << id << " [shape=" << shape << ", label=\"" << id << ": "
       << v.self_int << "/" << marker_char(v.marker) << "\"";
    if (v.marker == Marker::Tracker) os << ", style=dashed";
    os << "];\n";
  }
  for (const auto& [k, m] : edges_) {
    os << "  n" << k.first << " -- n" << k.second;
    if (m != 1) os << " [label=\"" << m << "\"]";
    os << ";\n";
  }
  for (const auto& [v, c] : loops_) {
    for (long long i = 0; i < c; ++i) os << "  n" << v << " -- n" << v << ";\n";
  }
  os << "}\n";
}

namespace {

// Signature used to prune the isomorphism search: everything invariant
// about a vertex in one glance.
struct VertexSig {
  long long self;
  Marker marker;
  long long loops;
  std::vector<std::pair<long long, long long>> nbr;  // (mult, nbr self) sorted

  bool operator<(const VertexSig& o) const {
    return std::tie(self, marker, loops, nbr) <
           std::tie(o.self, o.marker, o.loops, o.nbr);
  }
  bool operator==(const VertexSig& o) const {
    return self == o.self && marker == o.marker && loops == o.loops &&
           nbr == o.nbr;
  }
};

VertexSig signature(const DecoratedGraph& g, int v) {
  VertexSig s;
  const Vertex& vv = g.vertex(v);
  s.self = vv.self_int;
  s.marker = vv.marker;
  s.loops = g.loop_count(v);
  for (const auto& [u, m] : g.neighbors(v))
    s.nbr.emplace_back(m, g.vertex(u).self_int);
  std::sort(s.nbr.begin(), s.nbr.end());
  return s;
}

bool extend(const DecoratedGraph& a, const DecoratedGraph& b,
            const std::vector<int>& averts,
            const std::map<int, VertexSig>& bsig, std::size_t pos,
            std::map<int, int>& map, std::set<int>& used,
            std::vector<std::map<int, int>>& out, std::size_t limit) {
  if (pos == averts.size()) {
    out.push_back(map);
    return out.size() >= limit;
  }
  int v = averts[pos];
  VertexSig vs = signature(a, v);
  for (const auto& [w, ws] : bsig) {
    if (used.count(w) || !(vs == ws)) continue;
    // Check edges toward already-mapped vertices.
    bool ok = true;
    for (const auto& [u, img] : map) {
      if (a.edge_mult(v, u) != b.edge_mult(w, img)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    map[v] = w;
    used.insert(w);
    if (extend(a, b, averts, bsig, pos + 1, map, used, out, limit)) return true;
    map.erase(v);
    used.erase(w);
  }
  return false;
}

}  // namespace

std::vector<std::map<int, int>> find_isomorphisms(const DecoratedGraph& a,
                                                  const DecoratedGraph& b,
                                                  std::size_t limit) {
  std::vector<std::map<int, int>> out;
  if (a.vertex_count() != b.vertex_count()) return out;
  if (a.edges().size() != b.edges().size()) return out;
  if (a.loops().size() != b.loops().size()) return out;

  std::vector<VertexSig> sa, sb;
  for (int v : a.vertex_ids()) sa.push_back(signature(a, v));
  std::map<int, VertexSig> bsig;
  for (int v : b.vertex_ids()) {
    bsig.emplace(v, signature(b, v));
    sb.push_back(bsig.at(v));
  }
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (!(sa == sb)) return out;

  std::vector<int> averts = a.vertex_ids();
  std::map<int, int> mapping;
  std::set<int> used;
  extend(a, b, averts, bsig, 0, mapping, used, out, limit);
  return out;
}

bool is_isomorphic(const DecoratedGraph& a, const DecoratedGraph& b) {
  return !find_isomorphisms(a, b, 1).empty();
}

}  // namespace preskit
