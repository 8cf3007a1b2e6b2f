#include "malle/invariants.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "malle/error.hpp"

namespace malle {

Factorization prime_factorization(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::PreconditionViolated, "cannot factor 0");
  Factorization f;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++f.exponents[p];
      ++f.omega;
      n /= p;
    }
  }
  if (n > 1) {
    ++f.exponents[n];
    ++f.omega;
  }
  return f;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

namespace {

std::vector<ElementId> minimal_index_elements(const PermutationGroup& g, int& a) {
  if (g.order() == 1) throw Error(ErrorCode::TrivialGroup, "a(G) needs a nonidentity element");
  a = std::numeric_limits<int>::max();
  std::vector<ElementId> out;
  for (ElementId x = 0; x < g.order(); ++x) {
    if (x == g.identity_id()) continue;
    const int ind = index_of(g.element(x));
    if (ind < a) {
      a = ind;
      out.clear();
    }
    if (ind == a) out.push_back(x);
  }
  return out;
}

ElementId find_root(std::vector<ElementId>& parent, ElementId x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

InvariantRecord compute_invariants(const PermutationGroup& g) {
  InvariantRecord rec;
  rec.minimal_index_elements = minimal_index_elements(g, rec.a);
  rec.transitive = g.is_transitive();

  // The minimal-index set is closed under both moves, so union-find over it
  // with one edge per (element, conjugating generator) and (element, coprime
  // exponent) gives the orbits.
  const CayleyTable& t = g.table();
  std::vector<ElementId> parent(g.order());
  std::iota(parent.begin(), parent.end(), ElementId{0});
  const auto unite = [&](ElementId x, ElementId y) {
    x = find_root(parent, x);
    y = find_root(parent, y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };
  const auto gens = g.generator_ids();
  for (ElementId x : rec.minimal_index_elements) {
    for (ElementId s : gens) unite(x, t.conj(s, x));
    const std::size_t ord = t.element_order(x);
    for (std::size_t k = 2; k < ord; ++k)
      if (std::gcd(k, ord) == 1) unite(x, t.power(x, k));
  }

  std::map<ElementId, std::vector<ElementId>> by_root;
  for (ElementId x : rec.minimal_index_elements) by_root[find_root(parent, x)].push_back(x);
  for (auto& [root, members] : by_root) rec.classes.push_back(std::move(members));
  rec.b_over_Q = static_cast<int>(rec.classes.size());
  return rec;
}

int a_invariant(const PermutationGroup& g) {
  int a = 0;
  minimal_index_elements(g, a);
  return a;
}

int b_invariant_Q(const PermutationGroup& g) { return compute_invariants(g).b_over_Q; }

}  // namespace malle
