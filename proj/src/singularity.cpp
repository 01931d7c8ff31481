#include "preskit/singularity.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/multiprecision/integer.hpp>

namespace preskit {

ChainClassification classify_chain(const std::vector<Int>& weights) {
  ChainClassification out;
  if (weights.empty())
    throw std::invalid_argument("classify_chain: empty chain");
  for (const Int& b : weights) {
    if (b < 2) {
      out.cls = ChainClass::Other;
      return out;
    }
  }
  bool all_two = std::all_of(weights.begin(), weights.end(),
                             [](const Int& b) { return b == 2; });
  if (all_two) {
    out.cls = ChainClass::RDP;
    out.ade = ADELabel{'A', static_cast<int>(weights.size())};
    out.cyclic = CyclicType{Int(weights.size() + 1), Int(weights.size())};
    return out;
  }
  CFValue v = hj_eval(weights);
  if (!v.is_finite())
    throw std::logic_error("classify_chain: chain with weights >= 2 must be finite");
  Int n = numerator(v.value), q = denominator(v.value);
  out.cyclic = CyclicType{n, q};
  // Class-T test: n = d m^2 and q = d m a - 1 with 0 < a < m, gcd(m,a) = 1.
  for (Int m = 2; m * m <= n; ++m) {
    if (n % (m * m) != 0) continue;
    Int d = n / (m * m);
    if ((q + 1) % (d * m) != 0) continue;
    Int a = (q + 1) / (d * m);
    if (a <= 0 || a >= m) continue;
    if (boost::multiprecision::gcd(m, a) != 1) continue;
    out.cls = ChainClass::ClassT;
    out.t = ClassTParams{d, m, a};
    return out;
  }
  out.cls = ChainClass::Other;
  return out;
}

std::vector<Rat> chain_discrepancies(const std::vector<Int>& weights) {
  std::size_t r = weights.size();
  if (r == 0) return {};
  for (const Int& b : weights)
    if (b < 2)
      throw std::invalid_argument("chain_discrepancies: weights must be >= 2");
  // Tridiagonal system: -b_i c_i + c_{i-1} + c_{i+1} = b_i - 2.
  std::vector<Rat> diag(r), rhs(r);
  for (std::size_t i = 0; i < r; ++i) {
    diag[i] = Rat(-weights[i]);
    rhs[i] = Rat(weights[i] - 2);
  }
  // Thomas elimination (off-diagonal entries are all 1).
  for (std::size_t i = 1; i < r; ++i) {
    Rat w = Rat(1) / diag[i - 1];
    diag[i] -= w;
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<Rat> c(r);
  c[r - 1] = rhs[r - 1] / diag[r - 1];
  for (std::size_t i = r - 1; i-- > 0;) c[i] = (rhs[i] - c[i + 1]) / diag[i];
  return c;
}

std::optional<ADELabel> rdp_component(const DecoratedGraph& g,
                                      const std::vector<int>& comp) {
  if (comp.empty()) return std::nullopt;
  for (int v : comp) {
    if (g.vertex(v).self_int != -2) return std::nullopt;
  }
  if (auto chain = g.order_as_chain(comp)) {
    return ADELabel{'A', static_cast<int>(comp.size())};
  }
  auto star = g.order_as_star(comp);
  if (!star || star->arms.size() != 3) return std::nullopt;
  std::size_t l1 = star->arms[0].size();
  std::size_t l2 = star->arms[1].size();
  std::size_t l3 = star->arms[2].size();
  if (l1 == 1 && l2 == 1) return ADELabel{'D', static_cast<int>(l3 + 3)};
  if (l1 == 1 && l2 == 2 && l3 >= 2 && l3 <= 4)
    return ADELabel{'E', static_cast<int>(l3 + 4)};
  return std::nullopt;
}

namespace {

std::vector<FamilyInfo> build_family_table() {
  auto W = [](std::initializer_list<int> xs) {
    std::vector<Int> v;
    for (int x : xs) v.push_back(x);
    return v;
  };
  std::vector<FamilyInfo> t;
  auto add = [&](Family f, const std::string& name, FigureType ty,
                 std::vector<Int> left, std::vector<Int> right,
                 std::vector<Int> branch, int off) {
    t.push_back(FamilyInfo{f, name, ty, {left, right, branch}, off});
  };
  using FT = FigureType;
  add(Family::T6k1, "T6k+1", FT::ThreeTwo, W({2, 2}), W({2, 2}), W({2}), 2);
  add(Family::T6k3, "T6k+3", FT::ThreeTwo, W({2, 2}), W({3}), W({2}), 3);
  add(Family::T6k5, "T6k+5", FT::ThreeOne, W({3}), W({3}), W({2}), 4);
  add(Family::O12k1, "O12k+1", FT::ThreeTwo, W({2, 2}), W({2, 2, 2}), W({2}),
      2);
  add(Family::O12k5, "O12k+5", FT::ThreeOne, W({3}), W({2, 2, 2}), W({2}), 3);
  add(Family::O12k7, "O12k+7", FT::ThreeTwo, W({2, 2}), W({4}), W({2}), 4);
  add(Family::O12k11, "O12k+11", FT::ThreeOne, W({3}), W({4}), W({2}), 5);
  add(Family::I30k1, "I30k+1", FT::ThreeTwo, W({2, 2}), W({2, 2, 2, 2}),
      W({2}), 2);
  add(Family::I30k7, "I30k+7", FT::ThreeTwo, W({2, 2}), W({2, 3}), W({2}), 3);
  add(Family::I30k11, "I30k+11", FT::ThreeOne, W({3}), W({2, 2, 2, 2}), W({2}),
      3);
  add(Family::I30k13, "I30k+13", FT::ThreeTwo, W({2, 2}), W({3, 2}), W({2}),
      3);
  add(Family::I30k17, "I30k+17", FT::ThreeOne, W({3}), W({2, 3}), W({2}), 4);
  add(Family::I30k19, "I30k+19", FT::ThreeTwo, W({2, 2}), W({5}), W({2}), 5);
  add(Family::I30k23, "I30k+23", FT::ThreeOne, W({3}), W({3, 2}), W({2}), 4);
  add(Family::I30k29, "I30k+29", FT::ThreeOne, W({3}), W({5}), W({2}), 6);
  return t;
}

}  // namespace

const std::vector<FamilyInfo>& family_table() {
  static const std::vector<FamilyInfo> table = build_family_table();
  return table;
}

const FamilyInfo& family_info(Family f) {
  for (const FamilyInfo& fi : family_table())
    if (fi.family == f) return fi;
  throw std::logic_error("family_info: unknown family");
}

std::optional<Family> family_from_name(const std::string& name) {
  for (const FamilyInfo& fi : family_table())
    if (fi.name == name) return fi.family;
  return std::nullopt;
}

ToiResolution toi_minimal_resolution(Family f, long long n) {
  if (n < 2)
    throw std::invalid_argument("toi_minimal_resolution: need n >= 2");
  const FamilyInfo& fi = family_info(f);
  ToiResolution out;
  out.desc = ToiDescriptor{f, n};
  const auto& left = fi.arms[0];
  const auto& right = fi.arms[1];
  const auto& branch = fi.arms[2];
  int l = static_cast<int>(left.size());
  int r = static_cast<int>(right.size());
  int br = static_cast<int>(branch.size());

  DecoratedGraph& g = out.graph;
  // Left arm outer-to-inner: vertex i carries weight left[l-1-i].
  for (int i = 0; i < l; ++i)
    g.add_vertex_with_id(i, -static_cast<long long>(left[l - 1 - i]),
                         Marker::Kept);
  int center = l;
  g.add_vertex_with_id(center, -n, Marker::Kept);
  for (int j = 0; j < r; ++j)
    g.add_vertex_with_id(center + 1 + j, -static_cast<long long>(right[j]),
                         Marker::Kept);
  for (int j = 0; j < br; ++j)
    g.add_vertex_with_id(center + r + 1 + j,
                         -static_cast<long long>(branch[j]), Marker::Kept);

  for (int i = 0; i + 1 < l; ++i) g.add_edge(i, i + 1);
  if (l > 0) g.add_edge(l - 1, center);
  for (int j = 0; j < r; ++j)
    g.add_edge(j == 0 ? center : center + j, center + 1 + j);
  for (int j = 0; j < br; ++j)
    g.add_edge(j == 0 ? center : center + r + j, center + r + 1 + j);

  out.center_id = center;
  for (int i = 0; i < l; ++i) out.arm_ids[0].push_back(l - 1 - i);
  for (int j = 0; j < r; ++j) out.arm_ids[1].push_back(center + 1 + j);
  for (int j = 0; j < br; ++j) out.arm_ids[2].push_back(center + r + 1 + j);
  return out;
}

ToiResolution toi_minimal_resolution(const ToiDescriptor& d) {
  return toi_minimal_resolution(d.family, d.n);
}

}  // namespace preskit
