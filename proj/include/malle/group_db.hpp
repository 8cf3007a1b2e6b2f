#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "malle/perm_group.hpp"
#include "malle/rational.hpp"

namespace malle {

/// One `group ... end` block of a database file:
///
///   group 5T2 D5          label, optional display name
///   degree 5
///   gen (1,2,3,4,5)       one or more, cycle notation
///   ref result 3/4        optional reference values
///   end
struct GroupRecord {
  std::string label;
  int degree = 0;
  std::string display_name;
  std::vector<Permutation> generators;
  std::vector<std::pair<std::string, Rational>> reference_values;  // file order
  int line = 0;                                                    // line of the `group` key

  std::optional<Rational> reference(std::string_view key) const;
  PermutationGroup group() const { return PermutationGroup(degree, generators); }

  friend bool operator==(const GroupRecord& a, const GroupRecord& b) {
    return a.label == b.label && a.degree == b.degree && a.display_name == b.display_name &&
           a.generators == b.generators && a.reference_values == b.reference_values;
  }
};

struct GroupDatabase {
  std::vector<GroupRecord> records;
  std::vector<std::string> warnings;  // e.g. intransitive groups

  const GroupRecord* find(std::string_view label) const;
};

/// Parses and validates: every generator has the stated degree, the group
/// closes under the element cap, labels are unique, and an `nTd` label
/// agrees with `degree`. Errors carry the offending line. Intransitive
/// groups only produce a warning.
GroupDatabase parse_group_db(std::string_view text);
GroupDatabase load_group_db(const std::filesystem::path& path);

/// Inverse of parse_group_db up to comments and spacing.
std::string write_group_db(const std::vector<GroupRecord>& records);

}  // namespace malle
