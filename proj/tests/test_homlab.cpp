#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "malle/error.hpp"
#include "malle/homlab.hpp"
#include "malle/invariants.hpp"
#include "test_support.hpp"

using namespace malle;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

/// Every map H -> G (|G|^|H| of them), keeping those passing `ok`.
template <class Pred>
std::vector<GroupMap> all_maps_where(std::size_t h_order, std::size_t g_order, Pred ok) {
  std::vector<GroupMap> out;
  GroupMap f(h_order, 0);
  while (true) {
    if (ok(f)) out.push_back(f);
    std::size_t i = 0;
    while (i < h_order && ++f[i] == g_order) f[i++] = 0;
    if (i == h_order) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GroupMap> naive_homs(const PermutationGroup& h, const PermutationGroup& g) {
  return all_maps_where(h.order(), g.order(), [&](const GroupMap& f) { return is_homomorphism(h, g, f); });
}

std::vector<GroupMap> naive_cocycles(const GroupAction& phi) {
  return all_maps_where(phi.acting().order(), phi.target().order(),
                        [&](const GroupMap& f) { return is_crossed_homomorphism(phi, f); });
}

std::size_t solutions_of_power(const PermutationGroup& g, std::uint64_t n) {
  std::size_t c = 0;
  for (ElementId x = 0; x < g.order(); ++x) c += g.table().power(x, n) == g.identity_id();
  return c;
}

/// |Hom(H, C_p)| = |H / H' H^p|, computed from subgroups only.
std::size_t homs_to_cyclic_prime(const PermutationGroup& h, std::uint64_t p) {
  const CayleyTable& t = h.table();
  std::vector<ElementId> gens;
  for (ElementId x = 0; x < h.order(); ++x) {
    gens.push_back(t.power(x, p));
    for (ElementId y = 0; y < h.order(); ++y) gens.push_back(t.commutator(x, y));
  }
  return h.order() / generate_subgroup(h, gens).order();
}

/// S3 acting on C3 = <(1,2,3)> through the sign: odd elements invert.
GroupAction sign_action() {
  const PermutationGroup s3 = testing::symmetric(3);
  const PermutationGroup c3 = testing::cyclic(3);
  std::vector<std::vector<ElementId>> maps(s3.order());
  for (ElementId x = 0; x < s3.order(); ++x) {
    const bool odd = index_of(s3.element(x)) % 2 == 1;
    for (ElementId y = 0; y < c3.order(); ++y) maps[x].push_back(odd ? c3.table().inv(y) : y);
  }
  return GroupAction::from_maps(s3, c3, std::move(maps));
}

}  // namespace

TEST_CASE("word table") {
  const PermutationGroup s4 = testing::symmetric(4);
  const WordTable w(s4);
  CHECK(w.word(s4.identity_id()).empty());
  CHECK(w.bfs_order().size() == s4.order());
  CHECK(w.generators().size() == 2);
  for (ElementId x = 0; x < s4.order(); ++x) {
    ElementId y = s4.identity_id();
    for (std::size_t k : w.word(x)) y = s4.table().mul(y, w.generators()[k]);
    CHECK(y == x);
  }
  for (std::size_t i = 1; i < w.bfs_order().size(); ++i)
    CHECK(w.word(w.bfs_order()[i - 1]).size() <= w.word(w.bfs_order()[i]).size());
}

TEST_CASE("homomorphism sets") {
  CHECK(hom_set(testing::cyclic(6), testing::symmetric(3)).size() == 6);
  CHECK(hom_set(testing::shipped_group("8T5"), PermutationGroup::trivial(1)).size() == 1);
  CHECK(hom_set(testing::cyclic(2), testing::cyclic(4)).size() == 2);
  CHECK(hom_set(PermutationGroup::trivial(1), testing::cyclic(5)).size() == 1);
  CHECK(code_of([] { hom_set(testing::symmetric(4), testing::symmetric(4), 100); }) ==
        ErrorCode::SearchSpaceTooLarge);

  // Against all maps for tiny pairs.
  const std::vector<PermutationGroup> tiny{PermutationGroup::trivial(1), testing::cyclic(2), testing::cyclic(3),
                                           testing::cyclic(4), testing::group(4, {"(1,2)(3,4)", "(1,3)(2,4)"}),
                                           testing::symmetric(3)};
  for (const auto& h : tiny)
    for (const auto& g : tiny) {
      if (std::pow(double(g.order()), double(h.order())) > 50000) continue;
      CHECK(hom_set(h, g) == naive_homs(h, g));
    }
}

TEST_CASE("homomorphism counts on the corpus") {
  std::mt19937 rng(11);
  const auto groups = testing::small_groups();
  for (const auto& hr : groups) {
    const PermutationGroup h = hr.group();
    if (h.order() > 12) continue;
    const PermutationGroup h2 = testing::regenerate(h, rng);
    for (const auto& gr : groups) {
      const PermutationGroup g = gr.group();
      if (g.order() > 16) continue;
      CAPTURE(hr.label);
      CAPTURE(gr.label);
      const auto homs = hom_set(h, g);
      CHECK(std::is_sorted(homs.begin(), homs.end()));
      CHECK(hom_set(h2, g).size() == homs.size());
      if (h.generators().size() == 1 && h.order() > 1) CHECK(homs.size() == solutions_of_power(g, h.order()));
      if (g.order() == 2 || g.order() == 3 || g.order() == 5 || g.order() == 7 || g.order() == 11 ||
          g.order() == 13)
        CHECK(homs.size() == homs_to_cyclic_prime(h, g.order()));
      for (std::size_t k = 0; k < homs.size(); k += 17) CHECK(is_homomorphism(h, g, homs[k]));
    }
  }
}

TEST_CASE("crossed homomorphisms") {
  const PermutationGroup c2 = testing::cyclic(2);
  CHECK(crossed_hom_set(GroupAction::trivial(c2, c2)).size() == 2);
  for (const auto& [h, g] : {std::pair{testing::cyclic(4), testing::symmetric(3)},
                            std::pair{testing::symmetric(3), testing::cyclic(6)}})
    CHECK(crossed_hom_set(GroupAction::trivial(h, g)) == hom_set(h, g));

  const GroupAction sign = sign_action();
  const auto z1 = crossed_hom_set(sign);
  CHECK(z1 == naive_cocycles(sign));
  CHECK(sign.kernel().order() == 3);

  // Conjugation actions: every generator-extended cocycle passes the
  // all-pairs identity, and small cases match all maps.
  const PermutationGroup d4 = testing::dihedral(4);
  const auto normals = normal_subgroups(d4);
  for (const PermutationGroup& h : {testing::cyclic(4), testing::group(4, {"(1,2)(3,4)", "(1,3)(2,4)"})}) {
    for (const auto& g : hom_set(h, d4)) {
      for (const auto& n : normals) {
        const SubgroupGroup ng = as_group(d4, n);
        const GroupAction phi = GroupAction::conjugation(h, d4, g, ng);
        const auto z = crossed_hom_set(phi);
        for (const auto& f : z) CHECK(is_crossed_homomorphism(phi, f));
        if (n.order() <= 4) CHECK(z == naive_cocycles(phi));
      }
    }
  }
}

TEST_CASE("invalid actions") {
  const PermutationGroup c2 = testing::cyclic(2);
  const PermutationGroup c3 = testing::cyclic(3);
  std::vector<ElementId> id(3), inv(3);
  for (ElementId y = 0; y < 3; ++y) {
    id[y] = y;
    inv[y] = c3.table().inv(y);
  }
  const ElementId e = c3.identity_id();
  std::vector<ElementId> moves_identity(3);
  for (ElementId y = 0; y < 3; ++y) moves_identity[y] = (y + 1) % 3;
  std::vector<ElementId> not_bijective(3, e);

  // C2 by inversion is fine.
  std::vector<std::vector<ElementId>> ok(2, id);
  ok[1 - c2.identity_id()] = inv;
  CHECK(GroupAction::from_maps(c2, c3, ok).kernel().order() == 1);

  auto with = [&](std::vector<ElementId> m) {
    std::vector<std::vector<ElementId>> maps(2, id);
    maps[1 - c2.identity_id()] = std::move(m);
    return maps;
  };
  CHECK(code_of([&] { GroupAction::from_maps(c2, c3, with(moves_identity)); }) == ErrorCode::InvalidAction);
  CHECK(code_of([&] { GroupAction::from_maps(c2, c3, with(not_bijective)); }) == ErrorCode::InvalidAction);
  CHECK(code_of([&] { GroupAction::from_maps(c2, c3, {id}); }) == ErrorCode::InvalidAction);

  // Inversion from C3: the generator acts by an element of order 2.
  const PermutationGroup h = testing::cyclic(3);
  std::vector<std::vector<ElementId>> bad(3, inv);
  bad[h.identity_id()] = id;
  CHECK(code_of([&] { GroupAction::from_maps(h, c3, bad); }) == ErrorCode::InvalidAction);
}

TEST_CASE("fiber check") {
  const PermutationGroup c4 = testing::cyclic(4);
  const Subgroup two = testing::subgroup_of(c4, {"(1,3)(2,4)"});
  const HomReport r = fiber_check(testing::cyclic(2), c4, two);
  CHECK(r.holds);
  CHECK(*r.value("|Hom(H,G)|") == 2);
  CHECK(*r.value("image points") == 1);
  CHECK(*r.value("largest fiber") == 2);
  CHECK(*r.value("|Hom(H,G/N)|") == 2);
  CHECK(r.notes.size() == 1);

  const PermutationGroup s3 = testing::symmetric(3);
  const HomReport inj = fiber_check(testing::cyclic(6), s3, Subgroup::trivial(s3));
  CHECK(inj.holds);
  CHECK(*inj.value("largest fiber") == 1);
  CHECK(*inj.value("image points") == 6);

  const PermutationGroup d4 = testing::dihedral(4);
  const HomReport z = fiber_check(testing::group(4, {"(1,2)(3,4)", "(1,3)(2,4)"}), d4, center(d4));
  CHECK(z.holds);
  CHECK(z.checks > 0);
  CHECK(code_of([&] { fiber_check(testing::cyclic(2), s3, testing::subgroup_of(s3, {"(1,2)"})); }) ==
        ErrorCode::NotNormal);
}

TEST_CASE("restriction fiber check") {
  const PermutationGroup d4 = testing::dihedral(4);
  const HomReport triv = restriction_fiber_check(GroupAction::trivial(testing::cyclic(4), d4));
  CHECK(triv.holds);
  CHECK(*triv.value("largest fiber") == 1);
  CHECK(*triv.value("[H:ker phi]") == 1);

  const SubgroupGroup whole = as_group(d4, Subgroup::whole(d4.order()));
  for (const auto& g : hom_set(testing::cyclic(4), d4)) {
    const HomReport r = restriction_fiber_check(GroupAction::conjugation(testing::cyclic(4), d4, g, whole));
    CHECK(r.holds);
    CHECK(*r.value("largest fiber") <= *r.value("|H/ker phi|^|G|"));
  }
  const HomReport sign = restriction_fiber_check(sign_action());
  CHECK(sign.holds);
  CHECK(*sign.value("[H:ker phi]") == 2);
}

TEST_CASE("product bound check") {
  const PermutationGroup s3 = testing::symmetric(3);
  const HomReport r = product_bound_check(testing::cyclic(4), build_nilpotent_series(s3));
  CHECK(r.holds);
  CHECK(*r.value("|Hom(H,G)|") == 4);
  CHECK(*r.value("|Hom(H,G)|") <= *r.value("bound"));

  // Abelian A with N: the bound is |Hom(H,N)| |Hom(H,A/N)|.
  const PermutationGroup a = testing::shipped_group("8T2");  // C4 x C2
  CHECK(is_abelian(a));
  for (const auto& n : normal_subgroups(a)) {
    if (n.order() == 1 || n.order() == a.order()) continue;
    const NormalSeries s{a, {Subgroup::trivial(a), n, Subgroup::whole(a.order())}};
    for (const PermutationGroup& h : {testing::cyclic(2), testing::cyclic(4), testing::cyclic(6)}) {
      const HomReport ab = product_bound_check(h, s);
      CHECK(ab.holds);
      const std::size_t expected =
          hom_set(h, as_group(a, n).group).size() * hom_set(h, quotient(a, n).image).size();
      CHECK(*ab.value("bound") == expected);
    }
  }

  const HomReport trivial_h = product_bound_check(PermutationGroup::trivial(1), build_nilpotent_series(s3));
  CHECK(trivial_h.holds);
  CHECK(*trivial_h.value("|Hom(H,G)|") == 1);
  CHECK(*trivial_h.value("bound") == 1);
}

TEST_CASE("nilpotent product check") {
  const HomReport q8 = nilpotent_product_check(testing::cyclic(2), testing::shipped_group("8T5"));
  CHECK(q8.holds);
  CHECK(*q8.value("|Hom(H,G)|") == 2);
  CHECK(*q8.value("bound") == 8);

  const HomReport c4 = nilpotent_product_check(testing::group(4, {"(1,2)(3,4)", "(1,3)(2,4)"}), testing::cyclic(4));
  CHECK(c4.holds);
  CHECK(*c4.value("|Hom(H,G)|") == 4);
  CHECK(*c4.value("bound") == 16);

  for (int ell : {2, 3, 5, 7}) {
    const HomReport c = nilpotent_product_check(testing::cyclic(6), testing::cyclic(ell));
    CHECK(c.holds);
    CHECK(*c.value("|Hom(H,G)|") == *c.value("bound"));
  }

  const NormalSeries cs = central_composition_series(testing::shipped_group("8T5"));
  CHECK(cs.orders() == std::vector<std::size_t>{1, 2, 4, 8});
  CHECK(code_of([] { nilpotent_product_check(testing::cyclic(2), testing::symmetric(3)); }) ==
        ErrorCode::NotNilpotent);
}
