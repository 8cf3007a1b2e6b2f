#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "malle/error.hpp"
#include "malle/invariants.hpp"
#include "malle/structure.hpp"
#include "test_support.hpp"

using namespace malle;

namespace {

/// b over Q by brute force: repeatedly merge x with every g x g^-1 and every
/// coprime power until nothing changes.
int b_by_fixed_point(const PermutationGroup& g) {
  const int a = a_invariant(g);
  std::vector<Permutation> todo;
  for (const auto& p : g.elements())
    if (!p.is_identity() && index_of(p) == a) todo.push_back(p);
  std::set<Permutation> seen;
  int classes = 0;
  for (const auto& start : todo) {
    if (seen.count(start)) continue;
    ++classes;
    std::vector<Permutation> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      const Permutation x = stack.back();
      stack.pop_back();
      std::vector<Permutation> next;
      for (const auto& y : g.elements()) next.push_back(y * x * y.inverse());
      const std::size_t ord = x.order();
      Permutation pw = x;
      for (std::size_t k = 2; k <= ord; ++k) {
        pw = pw * x;
        if (std::gcd(k, ord) == 1) next.push_back(pw);
      }
      for (auto& y : next)
        if (seen.insert(y).second) stack.push_back(y);
    }
  }
  return classes;
}

}  // namespace

TEST_CASE("prime factorization") {
  CHECK(prime_factorization(12).exponents == std::map<std::uint64_t, int>{{2, 2}, {3, 1}});
  CHECK(prime_factorization(12).omega == 3);
  CHECK(prime_factorization(1).exponents.empty());
  CHECK(prime_factorization(1).omega == 0);
  CHECK(prime_factorization(8).exponents == std::map<std::uint64_t, int>{{2, 3}});
  CHECK(prime_factorization(8).omega == 3);
  CHECK(prime_factorization(1296).exponents == std::map<std::uint64_t, int>{{2, 4}, {3, 4}});
  CHECK(prime_factorization(997).exponents == std::map<std::uint64_t, int>{{997, 1}});

  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> dist(1, 2'000'000);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t m = dist(rng), n = dist(rng);
    std::uint64_t back = 1;
    for (const auto& [p, e] : prime_factorization(m).exponents) {
      CHECK(is_prime(p));
      for (int k = 0; k < e; ++k) back *= p;
    }
    CHECK(back == m);
    CHECK(prime_factorization(m * n).omega == prime_factorization(m).omega + prime_factorization(n).omega);
  }
  CHECK(is_prime(2));
  CHECK(!is_prime(1));
  CHECK(!is_prime(91));
}

TEST_CASE("a invariant") {
  CHECK(a_invariant(testing::shipped_group("5T2")) == 2);
  CHECK(a_invariant(testing::shipped_group("6T4")) == 2);
  CHECK(a_invariant(testing::cyclic(2)) == 1);
  CHECK(a_invariant(testing::cyclic(5)) == 4);
  CHECK(a_invariant(testing::symmetric(4)) == 1);
  for (int p : {5, 7, 11, 13}) CHECK(a_invariant(testing::dihedral(p)) == (p - 1) / 2);
  try {
    a_invariant(PermutationGroup::trivial(3));
    FAIL("expected TrivialGroup");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TrivialGroup);
  }
}

TEST_CASE("b invariant over Q") {
  CHECK(b_invariant_Q(testing::cyclic(3)) == 1);
  CHECK(b_invariant_Q(testing::symmetric(3)) == 1);
  CHECK(b_invariant_Q(testing::cyclic(2)) == 1);
  // C5 regular: the four 5-cycles are powers of each other.
  CHECK(b_invariant_Q(testing::cyclic(5)) == 1);
  // C2 x C2 regular: three involutions that neither conjugation nor powers
  // identify.
  CHECK(b_invariant_Q(testing::group(4, {"(1,2)(3,4)", "(1,3)(2,4)"})) == 3);

  const InvariantRecord rec = compute_invariants(testing::shipped_group("5T2"));
  CHECK(rec.a == 2);
  CHECK(rec.minimal_index_elements.size() == 5);
  CHECK(rec.b_over_Q == 1);
  CHECK(rec.transitive);
  CHECK_FALSE(compute_invariants(testing::group(4, {"(1,2)"})).transitive);
}

TEST_CASE("invariant properties on the shipped groups") {
  std::mt19937 rng(5);
  for (const char* file : {"transitive_deg5.db", "transitive_deg6.db", "transitive_deg7.db", "transitive_deg8.db"}) {
    for (const auto& r : load_group_db(testing::data_path(file)).records) {
      CAPTURE(r.label);
      const PermutationGroup g = r.group();
      const InvariantRecord inv = compute_invariants(g);
      std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
      for (int k = 0; k < 20; ++k) {
        const Permutation& p = g.element(static_cast<ElementId>(pick(rng)));
        if (!p.is_identity()) CHECK(inv.a <= index_of(p));
      }
      for (ElementId x : inv.minimal_index_elements) CHECK(index_of(g.element(x)) == inv.a);
      std::size_t members = 0;
      for (const auto& c : inv.classes) members += c.size();
      CHECK(members == inv.minimal_index_elements.size());
      if (g.order() <= 200) CHECK(inv.b_over_Q == b_by_fixed_point(g));

      const PermutationGroup moved = testing::relabel(g, rng);
      const InvariantRecord inv2 = compute_invariants(moved);
      CHECK(inv2.a == inv.a);
      CHECK(inv2.b_over_Q == inv.b_over_Q);
    }
  }
}
