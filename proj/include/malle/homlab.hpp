#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "malle/perm_group.hpp"
#include "malle/rational.hpp"
#include "malle/structure.hpp"

namespace malle {

/// A map between finite groups as a list of target ids indexed by source id.
using GroupMap = std::vector<ElementId>;

inline constexpr std::uint64_t kDefaultSearchCap = 100'000'000;

/// Shortest words in H's generators, found breadth-first by right
/// multiplication (x -> x * s, generators tried in list order). The identity
/// has the empty word.
class WordTable {
 public:
  explicit WordTable(PermutationGroup h);

  const PermutationGroup& group() const noexcept { return h_; }
  /// Distinct nonidentity generator ids, in generator order.
  const std::vector<ElementId>& generators() const noexcept { return gens_; }
  /// Generator positions (into generators()) spelling the element.
  std::vector<std::size_t> word(ElementId x) const;
  /// BFS order; every element after the first is parent(x) * generator.
  const std::vector<ElementId>& bfs_order() const noexcept { return order_; }
  ElementId parent(ElementId x) const { return parent_[x]; }
  std::size_t last_generator(ElementId x) const { return last_[x]; }

 private:
  PermutationGroup h_;
  std::vector<ElementId> gens_;
  std::vector<ElementId> order_;
  std::vector<ElementId> parent_;
  std::vector<std::size_t> last_;
};

/// An action of H on G by automorphisms, stored as one permutation of G's
/// element ids per element of H. phi(x) applied to y is `apply(x, y)`.
class GroupAction {
 public:
  /// Every element acts as the identity.
  static GroupAction trivial(const PermutationGroup& h, const PermutationGroup& g);
  /// x acts on N by n -> g(x) n g(x)^-1, with g a homomorphism H -> G and N
  /// normal in G. The target is N as a group (see as_group).
  static GroupAction conjugation(const PermutationGroup& h, const PermutationGroup& g, const GroupMap& hom,
                                 const SubgroupGroup& n);
  /// Validates every condition and raises InvalidAction otherwise.
  static GroupAction from_maps(const PermutationGroup& h, const PermutationGroup& g,
                               std::vector<std::vector<ElementId>> maps);

  const PermutationGroup& acting() const noexcept { return h_; }
  const PermutationGroup& target() const noexcept { return g_; }
  ElementId apply(ElementId x, ElementId y) const { return maps_[x][y]; }
  const std::vector<ElementId>& map(ElementId x) const { return maps_[x]; }
  /// Elements of H acting trivially.
  Subgroup kernel() const;
  bool is_trivial() const { return kernel().order() == h_.order(); }

  /// The images of H's generators only; equal keys mean equal actions.
  std::vector<ElementId> key() const;

 private:
  GroupAction(PermutationGroup h, PermutationGroup g, std::vector<std::vector<ElementId>> maps)
      : h_(std::move(h)), g_(std::move(g)), maps_(std::move(maps)) {}
  void validate() const;

  PermutationGroup h_;
  PermutationGroup g_;
  std::vector<std::vector<ElementId>> maps_;
};

/// Hom(H, G), sorted. Raises SearchSpaceTooLarge when |G|^(#generators of H)
/// exceeds `cap`.
std::vector<GroupMap> hom_set(const PermutationGroup& h, const PermutationGroup& g,
                              std::uint64_t cap = kDefaultSearchCap);

/// Z^1_phi(H, G) = {f : f(xy) = f(x) phi(x)(f(y))}, sorted. Same cap.
std::vector<GroupMap> crossed_hom_set(const GroupAction& phi, std::uint64_t cap = kDefaultSearchCap);

bool is_homomorphism(const PermutationGroup& h, const PermutationGroup& g, const GroupMap& f);
/// Checks the cocycle identity on all |H|^2 pairs.
bool is_crossed_homomorphism(const GroupAction& phi, const GroupMap& f);

struct Counterexample {
  std::string description;
  GroupMap map;  // the offending map, by source id (may be empty)
};

struct HomReport {
  std::string lemma;
  bool holds = true;
  std::size_t checks = 0;                             // individual assertions made
  std::vector<std::pair<std::string, BigInt>> values;  // named counts and bounds
  std::vector<std::string> notes;
  std::optional<Counterexample> counterexample;

  std::optional<BigInt> value(std::string_view name) const;
};

/// q_*: Hom(H, G) -> Hom(H, G/N). Every fiber equals Z^1_{kappa g}(H, N) * g
/// for its smallest member g, and the fiber sizes add up to |Hom(H, G)|.
HomReport fiber_check(const PermutationGroup& h, const PermutationGroup& g, const Subgroup& n,
                      std::uint64_t cap = kDefaultSearchCap);
/// Same with Hom(H, G) already computed.
HomReport fiber_check(const PermutationGroup& h, const PermutationGroup& g, const Subgroup& n,
                      const std::vector<GroupMap>& homs, std::uint64_t cap = kDefaultSearchCap);

/// Restriction Z^1_phi(H, G) -> Hom(ker phi, G): restrictions are
/// homomorphisms and each fiber has at most |H/ker phi|^|G| elements and at
/// most |G|^[H : ker phi] elements.
HomReport restriction_fiber_check(const GroupAction& phi, std::uint64_t cap = kDefaultSearchCap);

/// Replays the inductive construction along the series and checks each step
/// and the final product inequality.
HomReport product_bound_check(const PermutationGroup& h, const NormalSeries& series,
                              std::uint64_t cap = kDefaultSearchCap);

/// Refines the upper central series of a nilpotent G to prime-order central
/// steps and checks |Hom(H, G)| <= prod_l |Hom(H, C_l)|^e_l. Raises
/// NotNilpotent.
HomReport nilpotent_product_check(const PermutationGroup& h, const PermutationGroup& g,
                                  std::uint64_t cap = kDefaultSearchCap);

/// The refinement used by nilpotent_product_check.
NormalSeries central_composition_series(const PermutationGroup& g);

}  // namespace malle
