#include "malle/structure.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "malle/error.hpp"
#include "malle/invariants.hpp"

namespace malle {

namespace {

std::vector<ElementId> conjugacy_class(const CayleyTable& t, ElementId x) {
  std::vector<bool> in(t.order(), false);
  std::vector<ElementId> cls;
  for (ElementId g = 0; g < t.order(); ++g) {
    const ElementId y = t.conj(g, x);
    if (!in[y]) {
      in[y] = true;
      cls.push_back(y);
    }
  }
  std::sort(cls.begin(), cls.end());
  return cls;
}

void require_same_parent(const PermutationGroup& g, const Subgroup& h, const char* what) {
  if (h.parent_order() != g.order())
    throw Error(ErrorCode::PreconditionViolated, std::string(what) + " is not a subset of this group");
}

}  // namespace

bool is_normal(const PermutationGroup& g, const Subgroup& h) {
  if (h.parent_order() != g.order() || !is_subgroup(g, h)) return false;
  const CayleyTable& t = g.table();
  for (ElementId s : g.generator_ids())
    for (ElementId x : h.ids())
      if (!h.contains(t.conj(s, x))) return false;
  return true;
}

std::vector<std::vector<ElementId>> conjugacy_classes(const PermutationGroup& g) {
  const CayleyTable& t = g.table();
  std::vector<bool> seen(t.order(), false);
  std::vector<std::vector<ElementId>> classes;
  for (ElementId x = 0; x < t.order(); ++x) {
    if (seen[x]) continue;
    auto cls = conjugacy_class(t, x);
    for (ElementId y : cls) seen[y] = true;
    classes.push_back(std::move(cls));
  }
  return classes;
}

Subgroup normal_closure(const PermutationGroup& g, std::span<const ElementId> elements) {
  const CayleyTable& t = g.table();
  std::vector<ElementId> gens;
  for (ElementId x : elements) {
    if (x >= t.order()) throw Error(ErrorCode::ElementNotInGroup, "element id out of range");
    const auto cls = conjugacy_class(t, x);
    gens.insert(gens.end(), cls.begin(), cls.end());
  }
  return generate_subgroup(g, gens);
}

Subgroup normal_closure(const PermutationGroup& g, std::span<const Permutation> elements) {
  std::vector<ElementId> ids;
  for (const auto& p : elements) {
    auto id = g.find(p);
    if (!id) throw Error(ErrorCode::ElementNotInGroup, p.to_cycle_string() + " is not in the group");
    ids.push_back(*id);
  }
  return normal_closure(g, ids);
}

namespace {

/// Normal closures of single nonidentity elements, deduplicated and sorted.
std::vector<Subgroup> element_normal_closures(const PermutationGroup& g) {
  std::set<std::vector<ElementId>> seen;
  std::vector<Subgroup> out;
  for (const auto& cls : conjugacy_classes(g)) {
    if (cls.front() == g.identity_id() && cls.size() == 1) continue;
    Subgroup n = generate_subgroup(g, cls);
    if (seen.insert(n.ids()).second) out.push_back(std::move(n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Subgroup> minimal_normal_subgroups(const PermutationGroup& g) {
  if (g.order() == 1) throw Error(ErrorCode::TrivialGroup, "the trivial group has no minimal normal subgroups");
  const auto closures = element_normal_closures(g);
  std::vector<Subgroup> minimal;
  for (const auto& n : closures) {
    // Candidates are sorted by order, so only already-accepted minimal ones
    // can sit strictly inside n.
    const bool has_smaller = std::any_of(minimal.begin(), minimal.end(),
                                         [&](const Subgroup& m) { return m.order() < n.order() && m.is_subset_of(n); });
    if (!has_smaller) minimal.push_back(n);
  }
  return minimal;
}

std::vector<Subgroup> normal_subgroups(const PermutationGroup& g) {
  const auto closures = element_normal_closures(g);
  std::set<std::vector<ElementId>> seen;
  std::vector<Subgroup> all;
  std::vector<Subgroup> queue{Subgroup::trivial(g)};
  seen.insert(queue.front().ids());
  while (!queue.empty()) {
    Subgroup cur = std::move(queue.back());
    queue.pop_back();
    for (const auto& c : closures) {
      if (c.is_subset_of(cur)) continue;
      std::vector<ElementId> gens = small_generating_set(g, cur);
      const auto cg = small_generating_set(g, c);
      gens.insert(gens.end(), cg.begin(), cg.end());
      Subgroup join = generate_subgroup(g, gens);
      if (seen.insert(join.ids()).second) queue.push_back(std::move(join));
    }
    all.push_back(std::move(cur));
  }
  std::sort(all.begin(), all.end());
  return all;
}

Subgroup centralizer(const PermutationGroup& g, const Subgroup& a) {
  require_same_parent(g, a, "subgroup");
  const CayleyTable& t = g.table();
  std::vector<ElementId> out;
  for (ElementId x = 0; x < t.order(); ++x) {
    const bool commutes =
        std::all_of(a.ids().begin(), a.ids().end(), [&](ElementId y) { return t.mul(x, y) == t.mul(y, x); });
    if (commutes) out.push_back(x);
  }
  return Subgroup(t.order(), std::move(out));
}

Subgroup center(const PermutationGroup& g) { return centralizer(g, Subgroup::whole(g.order())); }

Subgroup section_centralizer(const PermutationGroup& g, const Subgroup& a, const Subgroup& b) {
  require_same_parent(g, a, "A");
  require_same_parent(g, b, "B");
  if (!is_normal(g, a) || !is_normal(g, b))
    throw Error(ErrorCode::PreconditionViolated, "section centralizer needs A and B normal in G");
  if (!b.is_subset_of(a)) throw Error(ErrorCode::PreconditionViolated, "section centralizer needs B inside A");
  const CayleyTable& t = g.table();
  std::vector<ElementId> out;
  for (ElementId x = 0; x < t.order(); ++x) {
    const bool acts_trivially = std::all_of(a.ids().begin(), a.ids().end(),
                                            [&](ElementId y) { return b.contains(t.commutator(x, y)); });
    if (acts_trivially) out.push_back(x);
  }
  return Subgroup(t.order(), std::move(out));
}

Projection quotient(const PermutationGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw Error(ErrorCode::NotNormal, "quotient by a subgroup that is not normal");
  if (n.order() == 1) {
    std::vector<ElementId> map(g.order());
    for (ElementId x = 0; x < map.size(); ++x) map[x] = x;
    return Projection{g, std::move(map)};
  }
  return coset_action(g, n);
}

Subgroup image(const Projection& pi, const Subgroup& h) {
  std::vector<ElementId> ids;
  ids.reserve(h.order());
  for (ElementId x : h.ids()) ids.push_back(pi.map.at(x));
  return Subgroup(pi.image.order(), std::move(ids));
}

Subgroup preimage(const Projection& pi, const Subgroup& h) {
  std::vector<ElementId> ids;
  for (ElementId x = 0; x < pi.map.size(); ++x)
    if (h.contains(pi.map[x])) ids.push_back(x);
  return Subgroup(pi.map.size(), std::move(ids));
}

std::vector<Subgroup> upper_central_series(const PermutationGroup& g) {
  const Subgroup whole = Subgroup::whole(g.order());
  std::vector<Subgroup> series{Subgroup::trivial(g)};
  while (series.back().order() < g.order()) {
    Subgroup next = section_centralizer(g, whole, series.back());
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

bool is_nilpotent(const PermutationGroup& g) { return upper_central_series(g).back().order() == g.order(); }

bool is_abelian(const PermutationGroup& g) {
  const CayleyTable& t = g.table();
  const auto gens = g.generator_ids();
  for (ElementId a : gens)
    for (ElementId b : gens)
      if (t.mul(a, b) != t.mul(b, a)) return false;
  return true;
}

std::size_t max_element_order(const PermutationGroup& g) {
  const CayleyTable& t = g.table();
  std::size_t best = 1;
  for (ElementId x = 0; x < t.order(); ++x) best = std::max(best, t.element_order(x));
  return best;
}

std::vector<std::size_t> NormalSeries::orders() const {
  std::vector<std::size_t> out;
  for (const auto& t : terms) out.push_back(t.order());
  return out;
}

namespace {

bool factor_is_nilpotent(const PermutationGroup& g, const Subgroup& lower, const Subgroup& upper) {
  const Projection q = quotient(g, lower);
  return is_nilpotent(as_group(q.image, image(q, upper)).group);
}

}  // namespace

void validate_series(const NormalSeries& series) {
  const PermutationGroup& g = series.ambient;
  const auto fail = [](const std::string& why) { return Error(ErrorCode::PreconditionViolated, why); };
  if (series.terms.empty()) throw fail("series has no terms");
  if (series.terms.front().order() != 1) throw fail("series must start at the trivial subgroup");
  if (series.terms.back().order() != g.order()) throw fail("series must end at G");
  for (std::size_t i = 0; i < series.terms.size(); ++i) {
    const Subgroup& term = series.terms[i];
    if (term.parent_order() != g.order()) throw fail("series term is not a subset of G");
    if (!is_normal(g, term)) throw fail("series term G_" + std::to_string(i) + " is not normal in G");
    if (i == 0) continue;
    const Subgroup& prev = series.terms[i - 1];
    if (!prev.is_subset_of(term) || prev.order() == term.order())
      throw fail("series terms must be strictly increasing");
    if (!factor_is_nilpotent(g, prev, term))
      throw fail("factor G_" + std::to_string(i) + "/G_" + std::to_string(i - 1) + " is not nilpotent");
  }
}

namespace {

/// Minimal normal subgroup choices of G/cur, each checked nilpotent and pulled
/// back to G.
std::vector<Subgroup> next_terms(const PermutationGroup& g, const Subgroup& cur, bool first_only) {
  const Projection q = quotient(g, cur);
  std::vector<Subgroup> out;
  for (const auto& n : minimal_normal_subgroups(q.image)) {
    if (!is_nilpotent(as_group(q.image, n).group))
      throw Error(ErrorCode::NotSolvable, "minimal normal subgroup of order " + std::to_string(n.order()) +
                                              " of a quotient of order " + std::to_string(q.image.order()) +
                                              " is not nilpotent");
    out.push_back(preimage(q, n));
    if (first_only) break;
  }
  return out;
}

}  // namespace

NormalSeries build_nilpotent_series(const PermutationGroup& g, bool shortcut_nilpotent) {
  NormalSeries series{g, {Subgroup::trivial(g)}};
  if (g.order() == 1) return series;
  if (shortcut_nilpotent && is_nilpotent(g)) {
    series.terms.push_back(Subgroup::whole(g.order()));
    return series;
  }
  while (series.terms.back().order() < g.order())
    series.terms.push_back(next_terms(g, series.terms.back(), true).front());
  return series;
}

std::vector<NormalSeries> all_nilpotent_series(const PermutationGroup& g) {
  using Chain = std::vector<Subgroup>;
  const Subgroup whole = Subgroup::whole(g.order());
  std::map<std::vector<ElementId>, std::vector<Chain>> memo;

  // Tails strictly above `cur`, ending with G.
  const std::function<const std::vector<Chain>&(const Subgroup&)> tails = [&](const Subgroup& cur) -> const std::vector<Chain>& {
    if (auto it = memo.find(cur.ids()); it != memo.end()) return it->second;
    std::vector<Chain> out;
    if (cur.order() == g.order()) {
      out.push_back({});
    } else if (is_nilpotent(quotient(g, cur).image)) {
      out.push_back({whole});
    } else {
      for (const auto& next : next_terms(g, cur, false)) {
        for (const auto& tail : tails(next)) {
          Chain c{next};
          c.insert(c.end(), tail.begin(), tail.end());
          out.push_back(std::move(c));
        }
      }
    }
    return memo.emplace(cur.ids(), std::move(out)).first->second;
  };

  std::vector<Chain> chains;
  for (const auto& tail : tails(Subgroup::trivial(g))) {
    Chain c{Subgroup::trivial(g)};
    c.insert(c.end(), tail.begin(), tail.end());
    chains.push_back(std::move(c));
  }
  std::sort(chains.begin(), chains.end());
  chains.erase(std::unique(chains.begin(), chains.end()), chains.end());

  std::vector<NormalSeries> out;
  out.reserve(chains.size());
  for (auto& c : chains) out.push_back(NormalSeries{g, std::move(c)});
  return out;
}

std::vector<FactorData> factor_data(const NormalSeries& series) {
  const PermutationGroup& g = series.ambient;
  std::vector<FactorData> out;
  for (std::size_t i = 1; i < series.terms.size(); ++i) {
    const Subgroup& lower = series.terms[i - 1];
    const Subgroup& upper = series.terms[i];
    const Subgroup c = section_centralizer(g, upper, lower);

    FactorData f;
    f.index = i;
    f.factor_order = upper.order() / lower.order();
    f.prime_exponents = prime_factorization(f.factor_order).exponents;
    f.n = g.order() / c.order();
    f.e = max_element_order(quotient(g, c).image);
    f.quotient_order = g.order() / lower.order();

    // The same index computed inside G/G_{i-1}, where the section becomes an
    // honest subgroup and its centralizer is the classical one.
    const Projection q = quotient(g, lower);
    const Subgroup c_in_quotient = centralizer(q.image, image(q, upper));
    if (q.image.order() / c_in_quotient.order() != f.n)
      throw Error(ErrorCode::PreconditionViolated, "centralizer index disagrees between G and G/G_{i-1}");
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace malle
