#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "malle/perm_group.hpp"

namespace malle {

struct Factorization {
  std::map<std::uint64_t, int> exponents;  // prime -> valuation
  int omega = 0;                           // sum of the valuations
};

/// Trial division; factorization of 1 is empty with omega 0.
Factorization prime_factorization(std::uint64_t n);

bool is_prime(std::uint64_t n);

/// min ind(g) over nonidentity g. Raises TrivialGroup.
int a_invariant(const PermutationGroup& g);

/// Orbits of the minimal-index elements under conjugation and g -> g^k with
/// k prime to the order of g. Raises TrivialGroup.
int b_invariant_Q(const PermutationGroup& g);

struct InvariantRecord {
  int a = 0;
  int b_over_Q = 0;
  std::vector<ElementId> minimal_index_elements;  // sorted ids
  std::vector<std::vector<ElementId>> classes;    // the b-classes, each sorted
  bool transitive = true;
};

InvariantRecord compute_invariants(const PermutationGroup& g);

}  // namespace malle
