#include <numeric>
#include <random>

#include "doctest.h"
#include "malle/error.hpp"
#include "malle/structure.hpp"
#include "test_support.hpp"

using namespace malle;
using testing::perm;

namespace {

std::vector<int> images(const Permutation& p) { return p.images(); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

/// Cycle count through union-find over the edges i -> p(i).
int orbit_count_union_find(const Permutation& p) {
  std::vector<int> parent(p.degree());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 1; i <= p.degree(); ++i) parent[find(i - 1)] = find(p(i) - 1);
  int roots = 0;
  for (int i = 0; i < p.degree(); ++i) roots += find(i) == i;
  return roots;
}

}  // namespace

TEST_CASE("cycle notation") {
  CHECK(images(perm("(1,2,3,4,5)", 5)) == std::vector<int>{2, 3, 4, 5, 1});
  CHECK(images(perm("", 4)) == std::vector<int>{1, 2, 3, 4});
  CHECK(images(perm("()", 4)) == std::vector<int>{1, 2, 3, 4});
  CHECK(images(perm("(2,5)(3,4)", 5)) == std::vector<int>{1, 5, 4, 3, 2});
  CHECK(images(perm(" ( 1 , 3 )  ", 3)) == std::vector<int>{3, 2, 1});
  CHECK(perm("(1,2,3)", 3).to_cycle_string() == "(1,2,3)");
  CHECK(perm("", 3).to_cycle_string() == "()");

  CHECK(code_of([] { perm("(1,2", 3); }) == ErrorCode::MalformedCycle);
  CHECK(code_of([] { perm("(1,a)", 3); }) == ErrorCode::MalformedCycle);
  CHECK(code_of([] { perm("1,2)", 3); }) == ErrorCode::MalformedCycle);
  CHECK(code_of([] { perm("(1,2,9)", 5); }) == ErrorCode::PointOutOfRange);
  CHECK(code_of([] { perm("(0,1)", 5); }) == ErrorCode::PointOutOfRange);
  CHECK(code_of([] { perm("(1,2)(2,3)", 3); }) == ErrorCode::RepeatedPoint);
  CHECK(code_of([] { perm("(1,1)", 3); }) == ErrorCode::RepeatedPoint);
}

TEST_CASE("composition applies the right factor first") {
  const Permutation p = perm("(1,2,3,4,5)", 5);
  CHECK(compose(Permutation::identity(5), p) == p);
  CHECK(compose(perm("(1,2)", 2), perm("(1,2)", 2)).is_identity());
  // p(q(i)) with p = (1,2,3), q = (1,2): 1 -> 2 -> 3, 2 -> 1 -> 2, 3 -> 3 -> 1
  CHECK(images(compose(perm("(1,2,3)", 3), perm("(1,2)", 3))) == std::vector<int>{3, 2, 1});
  CHECK(compose(p, p.inverse()).is_identity());
  CHECK(code_of([] { compose(perm("(1,2)", 2), perm("(1,2)", 3)); }) == ErrorCode::DegreeMismatch);
  CHECK(code_of([] { Permutation::from_images(std::vector<int>{1, 1}); }) == ErrorCode::RepeatedPoint);
}

TEST_CASE("orbits and index") {
  CHECK(orbits(Permutation::identity(5)).size() == 5);
  CHECK(orbits(perm("(1,2,3,4,5)", 5)).size() == 1);
  const auto cells = orbits(perm("(2,5)(3,4)", 5));
  CHECK(cells == std::vector<std::vector<int>>{{1}, {2, 5}, {3, 4}});
  CHECK(index_of(Permutation::identity(6)) == 0);
  CHECK(index_of(perm("(1,2)", 6)) == 1);
  CHECK(index_of(perm("(1,2,3,4,5)", 5)) == 4);
  CHECK(perm("(1,2,3)(4,5)", 5).order() == 6);
}

TEST_CASE("element enumeration") {
  CHECK(testing::group(5, {"(1,2,3,4,5)", "(2,5)(3,4)"}).order() == 10);
  CHECK(testing::group(3, {""}).order() == 1);
  CHECK(testing::group(3, {"(1,2)", "(1,2,3)"}).order() == 6);
  CHECK(PermutationGroup(4, {}).order() == 1);

  const PermutationGroup s5 = testing::symmetric(5);
  CHECK(s5.order() == 120);
  CHECK(std::is_sorted(s5.elements().begin(), s5.elements().end()));
  CHECK(s5.element(s5.identity_id()).is_identity());
  for (const auto& g : s5.generators()) CHECK(s5.contains(g));
  CHECK(code_of([] { PermutationGroup(7, {perm("(1,2,3,4,5,6,7)", 7), perm("(1,2)", 7)}, 1000); }) ==
        ErrorCode::GroupTooLarge);
  CHECK(code_of([] { PermutationGroup(3, {perm("(1,2)", 2)}); }) == ErrorCode::DegreeMismatch);

  // The table agrees with composing permutations.
  const CayleyTable& t = s5.table();
  for (ElementId a = 0; a < s5.order(); a += 7)
    for (ElementId b = 0; b < s5.order(); b += 5) {
      CHECK(s5.element(t.mul(a, b)) == s5.element(a) * s5.element(b));
      CHECK(t.mul(a, t.inv(a)) == s5.identity_id());
    }
}

TEST_CASE("coset action") {
  const PermutationGroup d5 = testing::dihedral(5);
  const Subgroup c5 = testing::subgroup_of(d5, {"(1,2,3,4,5)"});
  const Projection q = coset_action(d5, c5);
  CHECK(q.image.degree() == 2);
  CHECK(q.image.order() == 2);

  const Projection whole = coset_action(d5, Subgroup::whole(d5.order()));
  CHECK(whole.image.degree() == 1);
  CHECK(whole.image.order() == 1);

  const PermutationGroup s3 = testing::symmetric(3);
  const Projection on3 = coset_action(s3, std::vector<Permutation>{perm("(1,2)", 3)});
  CHECK(on3.image.degree() == 3);
  CHECK(on3.image.order() == 6);
  CHECK(on3.image.is_transitive());

  CHECK(code_of([&] { coset_action(s3, Subgroup(6, {1, 2})); }) == ErrorCode::NotASubgroup);
  CHECK(code_of([&] { coset_action(s3, std::vector<Permutation>{perm("(1,4)", 4)}); }) ==
        ErrorCode::DegreeMismatch);
}

TEST_CASE("properties over the small-group corpus") {
  std::mt19937 rng(20240611);
  for (const auto& rec : testing::small_groups()) {
    CAPTURE(rec.label);
    const PermutationGroup g = rec.group();
    for (const auto& p : g.elements()) CHECK(index_of(p) == p.degree() - orbit_count_union_find(p));

    const PermutationGroup again = testing::regenerate(g, rng);
    CHECK(again.elements() == g.elements());

    const auto subs = normal_subgroups(g);
    for (const auto& h : subs) {
      CHECK(g.order() % h.order() == 0);
      const Projection q = coset_action(g, h);
      std::size_t kernel = 0;
      for (ElementId x = 0; x < g.order(); ++x) kernel += q.map[x] == q.image.identity_id();
      CHECK(q.image.order() * kernel == g.order());
    }
    // Cyclic subgroups, normal or not.
    for (ElementId x = 0; x < g.order(); x += 3) {
      const Subgroup c = generate_subgroup(g, std::vector<ElementId>{x});
      CHECK(g.order() % c.order() == 0);
      const Projection q = coset_action(g, c);
      CHECK(q.image.degree() == static_cast<int>(g.order() / c.order()));
    }
  }
}
