#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "malle/group_db.hpp"
#include "malle/perm_group.hpp"

namespace testing {

using namespace malle;

inline std::string data_path(const std::string& file) { return std::string(MALLE_DATA_DIR) + "/" + file; }

/// Record by label from the shipped databases, loaded once.
inline const GroupRecord& shipped(const std::string& label) {
  static std::mutex m;
  static std::map<std::string, GroupRecord> all;
  std::lock_guard lock(m);
  if (all.empty()) {
    for (const char* f : {"transitive_deg5.db", "transitive_deg6.db", "transitive_deg7.db", "transitive_deg8.db",
                          "transitive_deg9.db", "small_groups.db"})
      for (auto& r : load_group_db(data_path(f)).records) all.emplace(r.label, r);
  }
  return all.at(label);
}

inline PermutationGroup shipped_group(const std::string& label) { return shipped(label).group(); }

inline std::vector<GroupRecord> small_groups() { return load_group_db(data_path("small_groups.db")).records; }

inline Permutation perm(const std::string& cycles, int n) { return parse_cycle_notation(cycles, n); }

inline PermutationGroup group(int n, std::initializer_list<const char*> gens) {
  std::vector<Permutation> ps;
  for (const char* g : gens) ps.push_back(perm(g, n));
  return PermutationGroup(n, ps);
}

inline PermutationGroup cyclic(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = (i + 1) % n + 1;
  return PermutationGroup(n, {Permutation::from_images(img)});
}

/// Dihedral group of order 2n acting on the n-gon.
inline PermutationGroup dihedral(int n) {
  std::vector<int> rot(n), ref(n);
  for (int i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n + 1;
    ref[i] = (n - i) % n + 1;
  }
  return PermutationGroup(n, {Permutation::from_images(rot), Permutation::from_images(ref)});
}

inline PermutationGroup symmetric(int n) {
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n + 1;
  return PermutationGroup(n, {Permutation::from_images(cyc), perm("(1,2)", n)});
}

inline PermutationGroup alternating(int n) {
  std::vector<Permutation> gens;
  for (int k = 3; k <= n; ++k) gens.push_back(perm("(1,2," + std::to_string(k) + ")", n));
  return PermutationGroup(n, gens);
}

inline Subgroup subgroup_of(const PermutationGroup& g, std::initializer_list<const char*> gens) {
  std::vector<ElementId> ids;
  for (const char* s : gens) ids.push_back(*g.find(perm(s, g.degree())));
  return generate_subgroup(g, ids);
}

inline Permutation random_permutation(int n, std::mt19937& rng) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation::from_images(img);
}

/// The same group with points renamed by a random permutation.
inline PermutationGroup relabel(const PermutationGroup& g, std::mt19937& rng) {
  const Permutation s = random_permutation(g.degree(), rng);
  std::vector<Permutation> gens;
  for (const auto& x : g.generators()) gens.push_back(s * x * s.inverse());
  return PermutationGroup(g.degree(), gens);
}

/// The same group generated by a shuffled list of generators plus a few
/// redundant products.
inline PermutationGroup regenerate(const PermutationGroup& g, std::mt19937& rng) {
  std::vector<Permutation> gens = g.generators();
  std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
  gens.push_back(g.element(static_cast<ElementId>(pick(rng))));
  std::shuffle(gens.begin(), gens.end(), rng);
  return PermutationGroup(g.degree(), gens);
}

}  // namespace testing
