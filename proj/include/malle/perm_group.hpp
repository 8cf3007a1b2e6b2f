#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "malle/permutation.hpp"

namespace malle {

/// Position of an element in its group's canonically sorted element list.
using ElementId = std::uint32_t;

inline constexpr std::size_t kDefaultElementCap = 1'000'000;

/// Multiplication table over element ids. mul(a, b) is the id of
/// element(a) * element(b) under the (p * q)(i) = p(q(i)) convention.
class CayleyTable {
 public:
  CayleyTable() = default;
  CayleyTable(std::size_t order, ElementId identity, std::vector<ElementId> products);

  std::size_t order() const noexcept { return order_; }
  ElementId identity() const noexcept { return identity_; }
  ElementId mul(ElementId a, ElementId b) const noexcept { return products_[a * order_ + b]; }
  ElementId inv(ElementId a) const noexcept { return inverses_[a]; }
  /// g x g^-1
  ElementId conj(ElementId g, ElementId x) const noexcept { return mul(mul(g, x), inverses_[g]); }
  /// g^-1 x^-1 g x
  ElementId commutator(ElementId g, ElementId x) const noexcept {
    return mul(mul(inverses_[g], inverses_[x]), mul(g, x));
  }
  ElementId power(ElementId a, std::uint64_t k) const noexcept;
  std::size_t element_order(ElementId a) const noexcept { return orders_[a]; }

 private:
  std::size_t order_ = 0;
  ElementId identity_ = 0;
  std::vector<ElementId> products_;
  std::vector<ElementId> inverses_;
  std::vector<std::size_t> orders_;
};

/// A finitely generated subgroup of S_n together with its full element list.
/// Elements are enumerated eagerly at construction; the Cayley table is built
/// on first use under std::call_once. Copies share state and are safe to use
/// from several threads.
class PermutationGroup {
 public:
  PermutationGroup(int degree, std::vector<Permutation> generators, std::size_t cap = kDefaultElementCap);

  static PermutationGroup trivial(int degree);

  /// Internal constructor for groups whose elements and products are already
  /// known (quotients, subgroups). `elements` must be sorted and complete.
  static PermutationGroup from_parts(int degree, std::vector<Permutation> generators,
                                     std::vector<Permutation> elements, CayleyTable table);

  int degree() const noexcept;
  const std::vector<Permutation>& generators() const noexcept;
  std::vector<ElementId> generator_ids() const;
  std::size_t order() const noexcept;

  /// Canonically (lexicographically) sorted.
  const std::vector<Permutation>& elements() const noexcept;
  const Permutation& element(ElementId id) const { return elements()[id]; }
  std::optional<ElementId> find(const Permutation& p) const;
  bool contains(const Permutation& p) const { return find(p).has_value(); }
  ElementId identity_id() const noexcept;

  const CayleyTable& table() const;

  bool is_transitive() const;

 private:
  struct State;
  static void build_index(State& s);
  explicit PermutationGroup(std::shared_ptr<State> state) : state_(std::move(state)) {}
  std::shared_ptr<State> state_;
};

/// A subgroup (or plain subset) of a fixed parent group, stored as the sorted
/// list of parent element ids plus a membership mask. Because parent ids
/// follow the canonical element order, comparing id lists compares the
/// canonical element lists.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(std::size_t parent_order, std::vector<ElementId> ids);

  static Subgroup whole(std::size_t parent_order);
  static Subgroup trivial(const PermutationGroup& parent);

  std::size_t order() const noexcept { return ids_.size(); }
  std::size_t parent_order() const noexcept { return mask_.size(); }
  bool contains(ElementId id) const noexcept { return id < mask_.size() && mask_[id]; }
  const std::vector<ElementId>& ids() const noexcept { return ids_; }
  bool is_subset_of(const Subgroup& other) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.ids_ == b.ids_; }
  /// (order, canonical element list)
  friend bool operator<(const Subgroup& a, const Subgroup& b);

 private:
  std::vector<ElementId> ids_;
  std::vector<bool> mask_;
};

/// Subgroup generated by the given elements (closure under multiplication).
Subgroup generate_subgroup(const PermutationGroup& g, std::span<const ElementId> generators);

/// True when the id set contains the identity and is closed under products.
bool is_subgroup(const PermutationGroup& g, const Subgroup& h);

/// A homomorphism from a parent group onto a permutation group, with the
/// image of every parent element precomputed.
struct Projection {
  PermutationGroup image;
  std::vector<ElementId> map;  // parent id -> image id
};

/// Left translation on the left cosets of H: g . (xH) = (gx)H. Cosets are
/// numbered 1..[G:H] by their smallest element id. Raises NotASubgroup when
/// `h` is not closed.
Projection coset_action(const PermutationGroup& g, const Subgroup& h);
/// Same, for H given by generators; every generator must lie in G.
Projection coset_action(const PermutationGroup& g, std::span<const Permutation> h_generators);

/// The subgroup as a group in its own right (same degree), with the map from
/// its ids back to the parent's ids.
struct SubgroupGroup {
  PermutationGroup group;
  std::vector<ElementId> to_parent;
};
SubgroupGroup as_group(const PermutationGroup& parent, const Subgroup& h);

/// Greedy small generating set of a subgroup: walk its elements by
/// decreasing element order (ties by id) and keep those not yet generated.
std::vector<ElementId> small_generating_set(const PermutationGroup& g, const Subgroup& h);

}  // namespace malle
