#include "preskit/contfrac.hpp"

#include <stdexcept>

#include <boost/multiprecision/integer.hpp>

namespace preskit {

namespace {

Int ceil_div(const Int& a, const Int& b) {
  // b > 0 throughout the expansion loop.
  return (a + b - 1) / b;
}

}  // namespace

std::vector<Int> hj_expand(const Int& n, const Int& q) {
  if (n < 2) throw std::invalid_argument("hj_expand: need n >= 2");
  if (q < 1 || q >= n) throw std::invalid_argument("hj_expand: need 0 < q < n");
  if (boost::multiprecision::gcd(n, q) != 1)
    throw std::invalid_argument("hj_expand: need gcd(n, q) == 1");

  std::vector<Int> out;
  Int a = n, b = q;
  while (b > 0) {
    Int c = ceil_div(a, b);
    out.push_back(c);
    Int next = c * b - a;
    a = b;
    b = next;
  }
  return out;
}

CFValue hj_eval(const std::vector<Int>& entries) {
  if (entries.empty()) return CFValue::infinity();
  for (const Int& b : entries) {
    if (b < 1) throw std::invalid_argument("hj_eval: entries must be >= 1");
  }
  // Fold back to front over projective pairs (p, q) representing p/q,
  // starting from infinity = 1/0.  Step: p/q -> b - q/p = (b*p - q)/p.
  Int p = 1, q = 0;
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    if (p == 0) return CFValue::contracts_to_point();
    Int np = *it * p - q;
    q = p;
    p = np;
  }
  if (q == 0) return CFValue::infinity();
  return CFValue::finite(Rat(p, q));
}

std::vector<Int> hj_dual(const Int& n, const Int& q) {
  if (n < 2) throw std::invalid_argument("hj_dual: need n >= 2");
  if (q < 1 || q >= n) throw std::invalid_argument("hj_dual: need 0 < q < n");
  return hj_expand(n, n - q);
}

}  // namespace preskit
