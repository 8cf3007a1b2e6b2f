#include "malle/bound.hpp"

#include <fstream>
#include <sstream>

#include "malle/error.hpp"
#include "malle/invariants.hpp"

namespace malle {

TorsionModel TorsionModel::minkowski() {
  TorsionModel m;
  m.kind_ = Kind::Minkowski;
  m.name_ = "minkowski";
  return m;
}

TorsionModel TorsionModel::grh() {
  TorsionModel m;
  m.kind_ = Kind::Grh;
  m.name_ = "grh";
  return m;
}

TorsionModel TorsionModel::epsilon() {
  TorsionModel m;
  m.kind_ = Kind::Epsilon;
  m.name_ = "epsilon";
  return m;
}

TorsionModel TorsionModel::custom_from_text(std::string_view text, std::string name) {
  TorsionModel m;
  m.kind_ = Kind::Custom;
  m.name_ = std::move(name);
  bool have_default = false;

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  const auto key = [&](const std::string& tok) -> std::uint64_t {
    if (tok == "*") return kAny;
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 18)
      throw Error(ErrorCode::InvalidModel, "expected a positive integer or '*', got '" + tok + "'", line_no);
    const std::uint64_t v = std::stoull(tok);
    if (v == 0) throw Error(ErrorCode::InvalidModel, "keys must be positive", line_no);
    return v;
  };
  const auto value = [&](const std::string& tok) {
    Rational r;
    try {
      r = parse_rational(tok);
    } catch (const Error& e) {
      throw e.at_line(line_no);
    }
    if (r < 0 || r > Rational(1, 2))
      throw Error(ErrorCode::InvalidModel, "exponent " + tok + " outside [0, 1/2]", line_no);
    return r;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "default") {
      if (tok.size() != 2) throw Error(ErrorCode::InvalidModel, "expected 'default p/q'", line_no);
      if (have_default) throw Error(ErrorCode::InvalidModel, "second default row", line_no);
      m.default_ = value(tok[1]);
      have_default = true;
      continue;
    }
    if (tok.size() != 3) throw Error(ErrorCode::InvalidModel, "expected 'ell N p/q'", line_no);
    const auto k = std::make_pair(key(tok[0]), key(tok[1]));
    if (k.first == kAny && k.second == kAny)
      throw Error(ErrorCode::InvalidModel, "use 'default' instead of '* *'", line_no);
    if (!m.table_.emplace(k, value(tok[2])).second)
      throw Error(ErrorCode::InvalidModel, "duplicate row", line_no);
  }
  if (!have_default) throw Error(ErrorCode::InvalidModel, "custom model needs a 'default p/q' row");
  return m;
}

TorsionModel TorsionModel::custom_from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidModel, "cannot open torsion model file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return custom_from_text(buf.str(), "custom:" + path.string());
}

TorsionModel TorsionModel::parse(std::string_view spec) {
  if (spec == "minkowski") return minkowski();
  if (spec == "grh") return grh();
  if (spec == "epsilon") return epsilon();
  if (spec.starts_with("custom:") && spec.size() > 7) return custom_from_file(std::string(spec.substr(7)));
  throw Error(ErrorCode::InvalidModel, "unknown torsion model '" + std::string(spec) + "'");
}

Rational TorsionModel::exponent(std::uint64_t ell, std::uint64_t degree_bound) const {
  if (degree_bound <= 1) return Rational(0);
  switch (kind_) {
    case Kind::Minkowski:
      return Rational(1, 2);
    case Kind::Epsilon:
      return Rational(0);
    case Kind::Grh:
      return Rational(1, 2) - Rational(1, 2 * ell * (degree_bound - 1));
    case Kind::Custom:
      for (const auto& k : {std::make_pair(ell, degree_bound), std::make_pair(ell, kAny),
                            std::make_pair(kAny, degree_bound)})
        if (auto it = table_.find(k); it != table_.end()) return it->second;
      return default_;
  }
  return Rational(0);
}

Rational tame_disc_exponent_bound(const FactorData& f) {
  return Rational(static_cast<long long>(f.n) * static_cast<long long>(f.e - 1), static_cast<long long>(f.e));
}

namespace {

Rational a_value(const NormalSeries& series, const std::optional<Rational>& a_override) {
  if (a_override) {
    if (*a_override <= 0) throw Error(ErrorCode::PreconditionViolated, "a-value override must be positive");
    return *a_override;
  }
  return Rational(a_invariant(series.ambient));
}

}  // namespace

BoundReport theorem_bound(const NormalSeries& series, const TorsionModel& model, std::optional<Rational> a_override) {
  validate_series(series);
  BoundReport r;
  r.group_order = series.ambient.order();
  r.nilpotent = is_nilpotent(series.ambient);
  r.a = a_value(series, a_override);
  r.a_overridden = a_override.has_value();
  r.malle_exponent = 1 / r.a;
  r.factors = factor_data(series);
  r.model = model.name();
  r.series_orders = series.orders();
  r.series_strategy = "given";

  Rational sum = 1;
  // The top factor is absent from the sum.
  for (std::size_t i = 0; i + 1 < r.factors.size(); ++i) {
    const FactorData& f = r.factors[i];
    BoundTerm t;
    t.index = f.index;
    t.n = f.n;
    t.e = f.e;
    t.weight = tame_disc_exponent_bound(f);
    Rational inner = 0;
    for (const auto& [ell, exp] : f.prime_exponents) {
      const Rational c = exp * model.exponent(ell, f.n);
      t.contributions[ell] = c;
      inner += c;
    }
    t.value = t.weight * inner;
    sum += t.value;
    r.terms.push_back(std::move(t));
  }
  r.total_exponent = sum / r.a;
  return r;
}

SeriesEvaluation evaluate_with_series(const PermutationGroup& g, const TorsionModel& model, SeriesStrategy strategy,
                                      std::optional<Rational> a_override) {
  if (strategy == SeriesStrategy::Greedy) {
    NormalSeries s = build_nilpotent_series(g);
    BoundReport r = theorem_bound(s, model, a_override);
    r.series_strategy = "greedy";
    return {std::move(s), std::move(r)};
  }
  std::optional<SeriesEvaluation> best;
  for (auto& s : all_nilpotent_series(g)) {
    BoundReport r = theorem_bound(s, model, a_override);
    if (!best || r.total_exponent < best->report.total_exponent) best = SeriesEvaluation{std::move(s), std::move(r)};
  }
  best->report.series_strategy = "exhaustive-min";
  return std::move(*best);
}

BoundReport evaluate_group(const PermutationGroup& g, const TorsionModel& model, SeriesStrategy strategy,
                           std::optional<Rational> a_override) {
  return evaluate_with_series(g, model, strategy, a_override).report;
}

Rational dihedral_closed_form(std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorCode::NotOddPrime, std::to_string(p) + " is not an odd prime");
  return Rational(3, p - 1);
}

Rational schmidt_bound(int n) {
  if (n < 2) throw Error(ErrorCode::DegreeTooSmall, "degree must be at least 2");
  return Rational(n + 2, 4);
}

Rational unconditional_closed_form(const NormalSeries& series) {
  validate_series(series);
  const PermutationGroup& g = series.ambient;
  Rational sum = 1;
  for (std::size_t i = 1; i + 1 < series.terms.size(); ++i) {
    const Subgroup c = section_centralizer(g, series.terms[i], series.terms[i - 1]);
    const auto n = static_cast<long long>(g.order() / c.order());
    const auto e = static_cast<long long>(max_element_order(quotient(g, c).image));
    const int omega = prime_factorization(series.terms[i].order() / series.terms[i - 1].order()).omega;
    sum += Rational(n * (e - 1) * omega, 2 * e);
  }
  return sum / a_invariant(g);
}

BigInt series_constant(const NormalSeries& series) {
  BigInt c = 1;
  for (const auto& f : factor_data(series)) c *= pow(BigInt(f.n), f.quotient_order);
  return c;
}

}  // namespace malle
