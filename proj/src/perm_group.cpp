#include "malle/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "malle/error.hpp"

namespace malle {

// ---------------------------------------------------------------------------
// CayleyTable

CayleyTable::CayleyTable(std::size_t order, ElementId identity, std::vector<ElementId> products)
    : order_(order), identity_(identity), products_(std::move(products)), inverses_(order), orders_(order, 0) {
  for (ElementId a = 0; a < order_; ++a) {
    for (ElementId b = 0; b < order_; ++b) {
      if (mul(a, b) == identity_) {
        inverses_[a] = b;
        break;
      }
    }
  }
  for (ElementId a = 0; a < order_; ++a) {
    std::size_t k = 1;
    for (ElementId x = a; x != identity_; x = mul(x, a)) ++k;
    orders_[a] = k;
  }
}

ElementId CayleyTable::power(ElementId a, std::uint64_t k) const noexcept {
  k %= orders_[a];
  ElementId result = identity_;
  ElementId base = a;
  while (k > 0) {
    if (k & 1u) result = mul(result, base);
    base = mul(base, base);
    k >>= 1u;
  }
  return result;
}

// ---------------------------------------------------------------------------
// PermutationGroup

struct PermutationGroup::State {
  int degree = 0;
  std::vector<Permutation> generators;
  std::vector<Permutation> elements;
  std::unordered_map<Permutation, ElementId, PermutationHash> index;
  ElementId identity = 0;

  mutable std::once_flag table_once;
  mutable CayleyTable table;
};

PermutationGroup::PermutationGroup(int degree, std::vector<Permutation> generators, std::size_t cap)
    : state_(std::make_shared<State>()) {
  if (degree < 1) throw Error(ErrorCode::DegreeMismatch, "degree must be positive");
  for (const auto& g : generators)
    if (g.degree() != degree)
      throw Error(ErrorCode::DegreeMismatch, "generator " + g.to_cycle_string() + " has degree " +
                                                 std::to_string(g.degree()) + ", expected " + std::to_string(degree));
  if (generators.empty()) generators.push_back(Permutation::identity(degree));
  state_->degree = degree;
  state_->generators = std::move(generators);

  std::unordered_set<Permutation, PermutationHash> seen;
  std::deque<Permutation> queue;
  const Permutation id = Permutation::identity(degree);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    const Permutation x = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : state_->generators) {
      Permutation y = x * s;
      if (seen.insert(y).second) {
        if (seen.size() > cap)
          throw Error(ErrorCode::GroupTooLarge, "closure exceeds the cap of " + std::to_string(cap) + " elements");
        queue.push_back(std::move(y));
      }
    }
  }
  state_->elements.assign(seen.begin(), seen.end());
  std::sort(state_->elements.begin(), state_->elements.end());
  build_index(*state_);
}

PermutationGroup PermutationGroup::trivial(int degree) { return PermutationGroup(degree, {Permutation::identity(degree)}); }

PermutationGroup PermutationGroup::from_parts(int degree, std::vector<Permutation> generators,
                                              std::vector<Permutation> elements, CayleyTable table) {
  auto s = std::make_shared<State>();
  s->degree = degree;
  s->generators = std::move(generators);
  if (s->generators.empty()) s->generators.push_back(Permutation::identity(degree));
  s->elements = std::move(elements);
  build_index(*s);
  std::call_once(s->table_once, [&] { s->table = std::move(table); });
  return PermutationGroup(std::move(s));
}

void PermutationGroup::build_index(State& s) {
  s.index.reserve(s.elements.size());
  for (std::size_t i = 0; i < s.elements.size(); ++i) s.index.emplace(s.elements[i], static_cast<ElementId>(i));
  s.identity = s.index.at(Permutation::identity(s.degree));
}

int PermutationGroup::degree() const noexcept { return state_->degree; }
const std::vector<Permutation>& PermutationGroup::generators() const noexcept { return state_->generators; }
std::size_t PermutationGroup::order() const noexcept { return state_->elements.size(); }
const std::vector<Permutation>& PermutationGroup::elements() const noexcept { return state_->elements; }
ElementId PermutationGroup::identity_id() const noexcept { return state_->identity; }

std::vector<ElementId> PermutationGroup::generator_ids() const {
  std::vector<ElementId> ids;
  for (const auto& g : state_->generators) ids.push_back(state_->index.at(g));
  return ids;
}

std::optional<ElementId> PermutationGroup::find(const Permutation& p) const {
  auto it = state_->index.find(p);
  if (it == state_->index.end()) return std::nullopt;
  return it->second;
}

const CayleyTable& PermutationGroup::table() const {
  std::call_once(state_->table_once, [this] {
    const auto& el = state_->elements;
    const std::size_t n = el.size();
    std::vector<ElementId> products(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) products[a * n + b] = state_->index.at(el[a] * el[b]);
    state_->table = CayleyTable(n, state_->identity, std::move(products));
  });
  return state_->table;
}

bool PermutationGroup::is_transitive() const {
  const int n = degree();
  std::vector<bool> reached(static_cast<std::size_t>(n), false);
  std::vector<int> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (const auto& g : state_->generators) {
      const int y = g.raw()[static_cast<std::size_t>(x)];
      if (!reached[static_cast<std::size_t>(y)]) {
        reached[static_cast<std::size_t>(y)] = true;
        stack.push_back(y);
      }
    }
  }
  return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup::Subgroup(std::size_t parent_order, std::vector<ElementId> ids) : ids_(std::move(ids)), mask_(parent_order, false) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  for (ElementId id : ids_) {
    if (id >= parent_order) throw Error(ErrorCode::ElementNotInGroup, "element id out of range");
    mask_[id] = true;
  }
}

Subgroup Subgroup::whole(std::size_t parent_order) {
  std::vector<ElementId> ids(parent_order);
  std::iota(ids.begin(), ids.end(), ElementId{0});
  return Subgroup(parent_order, std::move(ids));
}

Subgroup Subgroup::trivial(const PermutationGroup& parent) { return Subgroup(parent.order(), {parent.identity_id()}); }

bool Subgroup::is_subset_of(const Subgroup& other) const {
  if (order() > other.order()) return false;
  return std::all_of(ids_.begin(), ids_.end(), [&](ElementId id) { return other.contains(id); });
}

bool operator<(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.ids_ < b.ids_;
}

// ---------------------------------------------------------------------------
// Subgroup generation

Subgroup generate_subgroup(const PermutationGroup& g, std::span<const ElementId> generators) {
  const CayleyTable& t = g.table();
  std::vector<bool> in(t.order(), false);
  std::vector<ElementId> elements{t.identity()};
  in[t.identity()] = true;
  std::vector<ElementId> gens;
  for (ElementId s : generators) {
    if (s >= t.order()) throw Error(ErrorCode::ElementNotInGroup, "generator id out of range");
    if (in[s]) continue;
    gens.push_back(s);
    // Re-close: every element times every generator, until stable.
    for (std::size_t k = 0; k < elements.size(); ++k) {
      for (ElementId h : gens) {
        const ElementId y = t.mul(elements[k], h);
        if (!in[y]) {
          in[y] = true;
          elements.push_back(y);
        }
      }
    }
  }
  return Subgroup(t.order(), std::move(elements));
}

bool is_subgroup(const PermutationGroup& g, const Subgroup& h) {
  const CayleyTable& t = g.table();
  if (h.parent_order() != t.order() || !h.contains(t.identity())) return false;
  for (ElementId a : h.ids())
    for (ElementId b : h.ids())
      if (!h.contains(t.mul(a, b))) return false;
  return true;
}

std::vector<ElementId> small_generating_set(const PermutationGroup& g, const Subgroup& h) {
  const CayleyTable& t = g.table();
  std::vector<ElementId> candidates = h.ids();
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](ElementId a, ElementId b) { return t.element_order(a) > t.element_order(b); });
  std::vector<ElementId> gens;
  Subgroup current = Subgroup::trivial(g);
  for (ElementId x : candidates) {
    if (current.order() == h.order()) break;
    if (current.contains(x)) continue;
    gens.push_back(x);
    current = generate_subgroup(g, gens);
  }
  return gens;
}

// ---------------------------------------------------------------------------
// Coset actions and subgroups as groups

namespace {

CayleyTable induced_table(const CayleyTable& parent, const std::vector<ElementId>& rep,
                          const std::vector<ElementId>& map) {
  const std::size_t n = rep.size();
  std::vector<ElementId> products(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) products[a * n + b] = map[parent.mul(rep[a], rep[b])];
  ElementId identity = map[parent.identity()];
  return CayleyTable(n, identity, std::move(products));
}

}  // namespace

Projection coset_action(const PermutationGroup& g, const Subgroup& h) {
  if (h.parent_order() != g.order() || !is_subgroup(g, h))
    throw Error(ErrorCode::NotASubgroup, "coset action needs a subgroup of the acting group");
  const CayleyTable& t = g.table();
  const std::size_t n = g.order();

  std::vector<int> coset_of(n, -1);
  std::vector<ElementId> coset_rep;
  for (ElementId x = 0; x < n; ++x) {
    if (coset_of[x] >= 0) continue;
    const int c = static_cast<int>(coset_rep.size());
    coset_rep.push_back(x);
    for (ElementId y : h.ids()) coset_of[t.mul(x, y)] = c;
  }
  const int k = static_cast<int>(coset_rep.size());

  const auto action_of = [&](ElementId x) {
    std::vector<int> img(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) img[static_cast<std::size_t>(c)] = coset_of[t.mul(x, coset_rep[static_cast<std::size_t>(c)])] + 1;
    return Permutation::from_images(img);
  };

  std::unordered_map<Permutation, std::vector<ElementId>, PermutationHash> fibres;
  std::vector<Permutation> images(n);
  for (ElementId x = 0; x < n; ++x) {
    images[x] = action_of(x);
    fibres[images[x]].push_back(x);
  }
  std::vector<Permutation> elements;
  elements.reserve(fibres.size());
  for (const auto& [p, _] : fibres) elements.push_back(p);
  std::sort(elements.begin(), elements.end());

  std::unordered_map<Permutation, ElementId, PermutationHash> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], static_cast<ElementId>(i));
  std::vector<ElementId> map(n);
  std::vector<ElementId> rep(elements.size());
  for (auto x = static_cast<ElementId>(n); x-- > 0;) {
    map[x] = index.at(images[x]);
    rep[map[x]] = x;  // ends at the smallest preimage
  }

  std::vector<Permutation> gens;
  for (ElementId s : g.generator_ids()) {
    const Permutation& p = elements[map[s]];
    if (!p.is_identity() && std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(p);
  }
  CayleyTable table = induced_table(t, rep, map);
  return Projection{PermutationGroup::from_parts(k, std::move(gens), std::move(elements), std::move(table)),
                    std::move(map)};
}

Projection coset_action(const PermutationGroup& g, std::span<const Permutation> h_generators) {
  std::vector<ElementId> ids;
  for (const auto& p : h_generators) {
    if (p.degree() != g.degree())
      throw Error(ErrorCode::DegreeMismatch, p.to_cycle_string() + " has the wrong degree");
    auto id = g.find(p);
    if (!id) throw Error(ErrorCode::NotASubgroup, p.to_cycle_string() + " is not an element of the group");
    ids.push_back(*id);
  }
  return coset_action(g, generate_subgroup(g, ids));
}

SubgroupGroup as_group(const PermutationGroup& parent, const Subgroup& h) {
  if (h.parent_order() != parent.order() || !is_subgroup(parent, h))
    throw Error(ErrorCode::NotASubgroup, "not a subgroup of the parent group");
  const CayleyTable& t = parent.table();
  const std::vector<ElementId>& to_parent = h.ids();  // ascending, so canonical order is preserved
  std::vector<ElementId> from_parent(parent.order(), 0);
  for (std::size_t i = 0; i < to_parent.size(); ++i) from_parent[to_parent[i]] = static_cast<ElementId>(i);

  std::vector<Permutation> elements;
  elements.reserve(to_parent.size());
  for (ElementId id : to_parent) elements.push_back(parent.element(id));
  std::vector<Permutation> gens;
  for (ElementId id : small_generating_set(parent, h)) gens.push_back(parent.element(id));

  const std::size_t n = to_parent.size();
  std::vector<ElementId> products(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) products[a * n + b] = from_parent[t.mul(to_parent[a], to_parent[b])];
  CayleyTable table(n, from_parent[t.identity()], std::move(products));
  return SubgroupGroup{PermutationGroup::from_parts(parent.degree(), std::move(gens), std::move(elements), std::move(table)),
                       to_parent};
}

}  // namespace malle
