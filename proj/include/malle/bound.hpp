#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "malle/rational.hpp"
#include "malle/structure.hpp"

namespace malle {

/// Exponent a_l(N) bounding log|Cl(L)[l]| / log D_L over fields L of degree at
/// most N. Every model returns 0 for N = 1.
class TorsionModel {
 public:
  enum class Kind { Minkowski, Grh, Epsilon, Custom };

  static TorsionModel minkowski();
  static TorsionModel grh();
  static TorsionModel epsilon();
  /// Rows `ell N p/q` with `*` allowed for either key, plus one required
  /// `default p/q` row. Lookup prefers (ell, N), then (ell, *), then (*, N).
  /// Values must lie in [0, 1/2]. Raises InvalidModel / InvalidRational.
  static TorsionModel custom_from_text(std::string_view text, std::string name = "custom");
  static TorsionModel custom_from_file(const std::filesystem::path& path);
  /// "minkowski", "grh", "epsilon" or "custom:<path>".
  static TorsionModel parse(std::string_view spec);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  Rational exponent(std::uint64_t ell, std::uint64_t degree_bound) const;

 private:
  static constexpr std::uint64_t kAny = 0;
  Kind kind_ = Kind::Minkowski;
  std::string name_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Rational> table_;
  Rational default_;
};

struct BoundTerm {
  std::size_t index = 0;
  std::size_t n = 0;
  std::size_t e = 0;
  Rational weight;                                  // N (E - 1) / E
  std::map<std::uint64_t, Rational> contributions;  // ell -> e_ell * a_ell(N)
  Rational value;                                   // weight * sum of contributions
};

struct BoundReport {
  std::string group_label;
  std::size_t group_order = 0;
  bool nilpotent = false;
  Rational a;  // a(G), or the override
  bool a_overridden = false;
  Rational malle_exponent;
  std::vector<FactorData> factors;
  std::vector<BoundTerm> terms;  // factors 1..m-1
  Rational total_exponent;
  std::string model;
  std::vector<std::size_t> series_orders;
  std::string series_strategy;  // "greedy", "exhaustive-min" or "given"
};

BoundReport theorem_bound(const NormalSeries& series, const TorsionModel& model,
                          std::optional<Rational> a_override = std::nullopt);

enum class SeriesStrategy { Greedy, Exhaustive };

/// Builds the series itself. Exhaustive keeps the smallest total over every
/// series from all_nilpotent_series, earliest in canonical order on ties.
BoundReport evaluate_group(const PermutationGroup& g, const TorsionModel& model, SeriesStrategy strategy,
                           std::optional<Rational> a_override = std::nullopt);

struct SeriesEvaluation {
  NormalSeries series;
  BoundReport report;
};
/// evaluate_group, also returning the series that was used.
SeriesEvaluation evaluate_with_series(const PermutationGroup& g, const TorsionModel& model, SeriesStrategy strategy,
                                      std::optional<Rational> a_override = std::nullopt);

/// 3/(p-1). Raises NotOddPrime.
Rational dihedral_closed_form(std::uint64_t p);

/// (n+2)/4. Raises DegreeTooSmall for n < 2.
Rational schmidt_bound(int n);

/// (1/a)(1 + sum_{i<m} N_i (E_i - 1) / (2 E_i) * Omega(|G_i/G_{i-1}|))
Rational unconditional_closed_form(const NormalSeries& series);

/// prod_i N_i^{|G/G_{i-1}|}
BigInt series_constant(const NormalSeries& series);

/// N (E - 1) / E
Rational tame_disc_exponent_bound(const FactorData& f);

}  // namespace malle
