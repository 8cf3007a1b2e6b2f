#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "malle/perm_group.hpp"

namespace malle {

bool is_normal(const PermutationGroup& g, const Subgroup& h);

/// Conjugacy classes, each sorted, ordered by smallest member.
std::vector<std::vector<ElementId>> conjugacy_classes(const PermutationGroup& g);

/// Smallest normal subgroup containing the given elements.
Subgroup normal_closure(const PermutationGroup& g, std::span<const ElementId> elements);
/// Same; raises ElementNotInGroup for a permutation outside G.
Subgroup normal_closure(const PermutationGroup& g, std::span<const Permutation> elements);

/// Inclusion-minimal nontrivial normal subgroups sorted by (order, element
/// list). Raises TrivialGroup for |G| = 1.
std::vector<Subgroup> minimal_normal_subgroups(const PermutationGroup& g);

/// Every normal subgroup of G, sorted by (order, element list).
std::vector<Subgroup> normal_subgroups(const PermutationGroup& g);

/// {g in G : g a = a g for all a in A}
Subgroup centralizer(const PermutationGroup& g, const Subgroup& a);
Subgroup center(const PermutationGroup& g);

/// C_G(A/B) = {g in G : g^-1 a^-1 g a in B for all a in A}. Requires A and B
/// normal in G with B inside A (PreconditionViolated otherwise).
Subgroup section_centralizer(const PermutationGroup& g, const Subgroup& a, const Subgroup& b);

/// G/N as the coset action of G on G/N. Raises NotNormal.
Projection quotient(const PermutationGroup& g, const Subgroup& n);

Subgroup image(const Projection& pi, const Subgroup& h);
Subgroup preimage(const Projection& pi, const Subgroup& h);

/// Z_0 = 1, Z_{k+1} = C_G(G/Z_k), stopping when the series stalls. The last
/// term is G exactly when G is nilpotent.
std::vector<Subgroup> upper_central_series(const PermutationGroup& g);
bool is_nilpotent(const PermutationGroup& g);
bool is_abelian(const PermutationGroup& g);

std::size_t max_element_order(const PermutationGroup& g);

/// 1 = G_0 < G_1 < ... < G_m = G, every term normal in G. m = 0 only for the
/// trivial group.
struct NormalSeries {
  PermutationGroup ambient;
  std::vector<Subgroup> terms;

  std::size_t length() const noexcept { return terms.empty() ? 0 : terms.size() - 1; }
  std::vector<std::size_t> orders() const;
  friend bool operator==(const NormalSeries& a, const NormalSeries& b) { return a.terms == b.terms; }
};

/// Checks every NormalSeries invariant (nested, normal in G, nilpotent
/// factors, ends at 1 and G); raises PreconditionViolated.
void validate_series(const NormalSeries& series);

struct FactorData {
  std::size_t index = 0;         // 1-based
  std::size_t factor_order = 0;  // |G_i / G_{i-1}|
  std::map<std::uint64_t, int> prime_exponents;
  std::size_t n = 0;             // |G / C_G(G_i/G_{i-1})|
  std::size_t e = 0;             // largest element order of G / C_G(G_i/G_{i-1})
  std::size_t quotient_order = 0;  // |G / G_{i-1}|
};

/// Iterated minimal normal subgroups: pick the first minimal normal subgroup
/// of G/G_{i-1} in canonical order and pull it back. With
/// `shortcut_nilpotent`, a nilpotent G yields [1, G] directly. Raises
/// NotSolvable when a minimal normal subgroup is not nilpotent.
NormalSeries build_nilpotent_series(const PermutationGroup& g, bool shortcut_nilpotent = true);

/// Every series reachable by choosing any minimal normal subgroup at every
/// step, deduplicated and sorted. Once the running quotient G/G_{i-1} is
/// nilpotent the series is closed with G in one step; further choices there
/// only add factors that centralize and contribute nothing to the bound.
std::vector<NormalSeries> all_nilpotent_series(const PermutationGroup& g);

std::vector<FactorData> factor_data(const NormalSeries& series);

}  // namespace malle
