#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace malle {

/// A bijection of {1..n}. Points are 1-based at every public boundary;
/// storage is 0-based.
///
/// Composition convention: (p * q)(i) = p(q(i)), i.e. q is applied first.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int degree);

  /// `images[i-1]` is the image of point i. Raises DegreeMismatch on an empty
  /// list, PointOutOfRange / RepeatedPoint when the list is not a bijection.
  static Permutation from_images(std::span<const int> one_based_images);

  int degree() const noexcept { return static_cast<int>(images_.size()); }

  /// Image of a 1-based point.
  int operator()(int point) const { return images_[static_cast<std::size_t>(point - 1)] + 1; }

  /// 0-based image table, for tight loops.
  std::span<const int> raw() const noexcept { return images_; }

  std::vector<int> images() const;  // 1-based

  bool is_identity() const noexcept;
  Permutation inverse() const;

  /// Order of the permutation as a group element (lcm of cycle lengths).
  std::size_t order() const;

  /// Cycle notation with fixed points omitted, e.g. "(1,2,3)(4,5)"; "()" for
  /// the identity.
  std::string to_cycle_string() const;

  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  /// Canonical order: lexicographic on the image list.
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b);

 private:
  explicit Permutation(std::vector<int> zero_based) : images_(std::move(zero_based)) {}

  std::vector<int> images_;

  friend Permutation parse_cycle_notation(std::string_view text, int degree);
};

/// Parses a product of disjoint cycles such as "(1,2,3,4,5)" or "(2,5)(3,4)".
/// The empty string and "()" denote the identity; omitted points are fixed.
Permutation parse_cycle_notation(std::string_view text, int degree);

/// p * q with a degree check (DegreeMismatch).
Permutation compose(const Permutation& p, const Permutation& q);

/// Cycles of p including fixed points, each cycle starting at its smallest
/// point, cycles ordered by that point.
std::vector<std::vector<int>> orbits(const Permutation& p);

/// n minus the number of cycles of p.
int index_of(const Permutation& p);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace malle
