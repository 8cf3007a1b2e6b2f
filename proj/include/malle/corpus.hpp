#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "malle/homlab.hpp"

namespace malle {

enum class Lemma { Fiber, Restriction, Product, Nilpotent };

std::string_view to_string(Lemma lemma);
/// "fiber", "restriction", "product", "nilpotent"; "all" expands to every one.
std::vector<Lemma> parse_lemmas(std::string_view text);

struct CorpusEntry {
  std::string label;
  PermutationGroup group;
};

struct CorpusOptions {
  std::size_t max_h = 16;
  std::size_t max_g = 24;
  std::vector<Lemma> lemmas{Lemma::Fiber, Lemma::Restriction, Lemma::Product, Lemma::Nilpotent};
  std::uint64_t cap = kDefaultSearchCap;
  unsigned jobs = 0;  // 0: hardware concurrency
};

struct LemmaTally {
  Lemma lemma;
  std::size_t cases = 0;   // reports produced
  std::size_t checks = 0;  // assertions inside them
  std::size_t failures = 0;
};

struct CorpusFailure {
  Lemma lemma;
  std::string h_label;
  std::string g_label;
  std::string context;  // e.g. which N or series
  HomReport report;
};

struct CorpusResult {
  std::size_t pairs = 0;
  std::vector<LemmaTally> tallies;
  std::vector<CorpusFailure> failures;

  bool ok() const { return failures.empty(); }
};

/// Every pair (H, G) from `groups` with |H| <= max_h and |G| <= max_g:
///  fiber        every normal N of G
///  restriction  kappa g on every normal N, one case per distinct action
///  product      the greedy series of G, and for nilpotent G also the
///               series built without the nilpotent short cut
///  nilpotent    nilpotent G only
/// Pairs run in parallel; the result does not depend on `jobs`.
CorpusResult run_corpus(const std::vector<CorpusEntry>& groups, const CorpusOptions& options);

}  // namespace malle
