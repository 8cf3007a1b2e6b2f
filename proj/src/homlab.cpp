#include "malle/homlab.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "malle/error.hpp"
#include "malle/invariants.hpp"

namespace malle {

namespace {

constexpr ElementId kUnset = std::numeric_limits<ElementId>::max();

std::vector<ElementId> distinct_generators(const PermutationGroup& h) {
  std::vector<ElementId> out;
  for (ElementId s : h.generator_ids())
    if (s != h.identity_id() && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  return out;
}

void check_search_space(std::size_t target_order, std::size_t generators, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < generators; ++i) {
    if (total > cap / std::max<std::size_t>(target_order, 1) + 1) {
      total = cap + 1;
      break;
    }
    total *= target_order;
  }
  if (total > cap)
    throw Error(ErrorCode::SearchSpaceTooLarge, std::to_string(target_order) + "^" + std::to_string(generators) +
                                                    " candidate generator images exceed the cap of " +
                                                    std::to_string(cap));
}

/// Backtracking over generator images. Level j fixes the image of generator
/// j and extends f over <s_0..s_j> along right multiplication, checking every
/// edge x -> x s_t with t <= j. Those edge identities imply the cocycle
/// identity on all pairs of the generated subgroup.
class CocycleSearch {
 public:
  CocycleSearch(const PermutationGroup& h, const PermutationGroup& g, const GroupAction* phi)
      : ht_(h.table()), gt_(g.table()), gens_(distinct_generators(h)), phi_(phi), f_(h.order(), kUnset),
        gval_(gens_.size()) {
    f_[h.identity_id()] = g.identity_id();
    defined_.push_back(h.identity_id());
  }

  std::vector<GroupMap> run() {
    descend(0);
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  void descend(std::size_t j) {
    if (j == gens_.size()) {
      out_.push_back(f_);
      return;
    }
    for (ElementId v = 0; v < gt_.order(); ++v) {
      const std::size_t mark = defined_.size();
      gval_[j] = v;
      if (extend(j, mark)) descend(j + 1);
      while (defined_.size() > mark) {
        f_[defined_.back()] = kUnset;
        defined_.pop_back();
      }
    }
  }

  bool extend(std::size_t j, std::size_t old_size) {
    for (std::size_t idx = 0; idx < defined_.size(); ++idx) {
      const ElementId x = defined_[idx];
      // Older elements already satisfy the edges for generators below j.
      for (std::size_t t = idx < old_size ? j : 0; t <= j; ++t) {
        const ElementId y = ht_.mul(x, gens_[t]);
        const ElementId twisted = phi_ ? phi_->apply(x, gval_[t]) : gval_[t];
        const ElementId value = gt_.mul(f_[x], twisted);
        if (f_[y] == kUnset) {
          f_[y] = value;
          defined_.push_back(y);
        } else if (f_[y] != value) {
          return false;
        }
      }
    }
    return true;
  }

  const CayleyTable& ht_;
  const CayleyTable& gt_;
  std::vector<ElementId> gens_;
  const GroupAction* phi_;
  GroupMap f_;
  std::vector<ElementId> gval_;
  std::vector<ElementId> defined_;
  std::vector<GroupMap> out_;
};

std::vector<ElementId> inverse_index(const SubgroupGroup& n, std::size_t parent_order) {
  std::vector<ElementId> back(parent_order, kUnset);
  for (ElementId i = 0; i < n.to_parent.size(); ++i) back[n.to_parent[i]] = i;
  return back;
}

}  // namespace

WordTable::WordTable(PermutationGroup h)
    : h_(std::move(h)), gens_(distinct_generators(h_)), parent_(h_.order(), kUnset), last_(h_.order(), 0) {
  const CayleyTable& t = h_.table();
  const ElementId e = h_.identity_id();
  parent_[e] = e;
  order_.push_back(e);
  for (std::size_t idx = 0; idx < order_.size(); ++idx) {
    const ElementId x = order_[idx];
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      const ElementId y = t.mul(x, gens_[k]);
      if (parent_[y] == kUnset) {
        parent_[y] = x;
        last_[y] = k;
        order_.push_back(y);
      }
    }
  }
}

std::vector<std::size_t> WordTable::word(ElementId x) const {
  std::vector<std::size_t> w;
  for (; x != h_.identity_id(); x = parent_[x]) w.push_back(last_[x]);
  std::reverse(w.begin(), w.end());
  return w;
}

GroupAction GroupAction::trivial(const PermutationGroup& h, const PermutationGroup& g) {
  std::vector<ElementId> id(g.order());
  for (ElementId y = 0; y < id.size(); ++y) id[y] = y;
  return GroupAction(h, g, std::vector<std::vector<ElementId>>(h.order(), id));
}

GroupAction GroupAction::conjugation(const PermutationGroup& h, const PermutationGroup& g, const GroupMap& hom,
                                     const SubgroupGroup& n) {
  if (hom.size() != h.order()) throw Error(ErrorCode::InvalidAction, "map does not cover H");
  const CayleyTable& gt = g.table();
  const auto back = inverse_index(n, g.order());
  std::vector<std::vector<ElementId>> maps(h.order(), std::vector<ElementId>(n.group.order()));
  for (ElementId x = 0; x < h.order(); ++x) {
    for (ElementId y = 0; y < n.group.order(); ++y) {
      const ElementId img = back[gt.conj(hom[x], n.to_parent[y])];
      if (img == kUnset) throw Error(ErrorCode::InvalidAction, "conjugation does not preserve N");
      maps[x][y] = img;
    }
  }
  return GroupAction(h, n.group, std::move(maps));
}

GroupAction GroupAction::from_maps(const PermutationGroup& h, const PermutationGroup& g,
                                   std::vector<std::vector<ElementId>> maps) {
  GroupAction a(h, g, std::move(maps));
  a.validate();
  return a;
}

void GroupAction::validate() const {
  const auto bad = [](const std::string& why) { return Error(ErrorCode::InvalidAction, why); };
  if (maps_.size() != h_.order()) throw bad("need one map per element of H");
  const CayleyTable& ht = h_.table();
  const CayleyTable& gt = g_.table();
  for (const auto& m : maps_) {
    if (m.size() != g_.order()) throw bad("map does not cover G");
    std::vector<bool> hit(g_.order(), false);
    for (ElementId y : m) {
      if (y >= g_.order() || hit[y]) throw bad("map is not a bijection of G");
      hit[y] = true;
    }
    for (ElementId a = 0; a < g_.order(); ++a)
      for (ElementId b = 0; b < g_.order(); ++b)
        if (m[gt.mul(a, b)] != gt.mul(m[a], m[b])) throw bad("map does not preserve products in G");
  }
  for (ElementId x = 0; x < h_.order(); ++x)
    for (ElementId y = 0; y < h_.order(); ++y) {
      const auto& xy = maps_[ht.mul(x, y)];
      for (ElementId z = 0; z < g_.order(); ++z)
        if (xy[z] != maps_[x][maps_[y][z]]) throw bad("action is not a homomorphism H -> Aut(G)");
    }
}

Subgroup GroupAction::kernel() const {
  std::vector<ElementId> ids;
  for (ElementId x = 0; x < h_.order(); ++x) {
    bool trivial = true;
    for (ElementId y = 0; y < g_.order() && trivial; ++y) trivial = maps_[x][y] == y;
    if (trivial) ids.push_back(x);
  }
  return Subgroup(h_.order(), std::move(ids));
}

std::vector<ElementId> GroupAction::key() const {
  std::vector<ElementId> k;
  for (ElementId s : distinct_generators(h_)) k.insert(k.end(), maps_[s].begin(), maps_[s].end());
  return k;
}

std::vector<GroupMap> hom_set(const PermutationGroup& h, const PermutationGroup& g, std::uint64_t cap) {
  check_search_space(g.order(), distinct_generators(h).size(), cap);
  return CocycleSearch(h, g, nullptr).run();
}

std::vector<GroupMap> crossed_hom_set(const GroupAction& phi, std::uint64_t cap) {
  check_search_space(phi.target().order(), distinct_generators(phi.acting()).size(), cap);
  if (phi.is_trivial()) return CocycleSearch(phi.acting(), phi.target(), nullptr).run();
  return CocycleSearch(phi.acting(), phi.target(), &phi).run();
}

bool is_homomorphism(const PermutationGroup& h, const PermutationGroup& g, const GroupMap& f) {
  if (f.size() != h.order()) return false;
  const CayleyTable& ht = h.table();
  const CayleyTable& gt = g.table();
  for (ElementId x = 0; x < h.order(); ++x)
    for (ElementId y = 0; y < h.order(); ++y)
      if (f[ht.mul(x, y)] != gt.mul(f[x], f[y])) return false;
  return true;
}

bool is_crossed_homomorphism(const GroupAction& phi, const GroupMap& f) {
  const PermutationGroup& h = phi.acting();
  if (f.size() != h.order()) return false;
  const CayleyTable& ht = h.table();
  const CayleyTable& gt = phi.target().table();
  for (ElementId x = 0; x < h.order(); ++x)
    for (ElementId y = 0; y < h.order(); ++y)
      if (f[ht.mul(x, y)] != gt.mul(f[x], phi.apply(x, f[y]))) return false;
  return true;
}

std::optional<BigInt> HomReport::value(std::string_view name) const {
  for (const auto& [k, v] : values)
    if (k == name) return v;
  return std::nullopt;
}

namespace {

void fail(HomReport& r, std::string description, GroupMap map = {}) {
  if (r.holds) r.counterexample = Counterexample{std::move(description), std::move(map)};
  r.holds = false;
}

/// Z^1 sets memoized by action key.
class CocycleCache {
 public:
  explicit CocycleCache(std::uint64_t cap) : cap_(cap) {}
  const std::vector<GroupMap>& get(const GroupAction& phi) {
    auto key = phi.key();
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(std::move(key), crossed_hom_set(phi, cap_)).first;
    return it->second;
  }

 private:
  std::uint64_t cap_;
  std::map<std::vector<ElementId>, std::vector<GroupMap>> cache_;
};

}  // namespace

HomReport fiber_check(const PermutationGroup& h, const PermutationGroup& g, const Subgroup& n, std::uint64_t cap) {
  return fiber_check(h, g, n, hom_set(h, g, cap), cap);
}

HomReport fiber_check(const PermutationGroup& h, const PermutationGroup& g, const Subgroup& n,
                      const std::vector<GroupMap>& homs, std::uint64_t cap) {
  HomReport r;
  r.lemma = "fiber";
  const Projection q = quotient(g, n);
  const auto homs_q = hom_set(h, q.image, cap);
  const SubgroupGroup ng = as_group(g, n);
  const CayleyTable& gt = g.table();

  std::map<GroupMap, std::vector<std::size_t>> fibers;
  for (std::size_t i = 0; i < homs.size(); ++i) {
    GroupMap pushed(h.order());
    for (ElementId x = 0; x < h.order(); ++x) pushed[x] = q.map[homs[i][x]];
    fibers[std::move(pushed)].push_back(i);
  }

  CocycleCache cache(cap);
  std::size_t total = 0;
  std::size_t largest = 0;
  for (const auto& [gbar, members] : fibers) {
    ++r.checks;
    if (!std::binary_search(homs_q.begin(), homs_q.end(), gbar))
      fail(r, "pushforward is not a homomorphism into G/N", gbar);
    const GroupMap& base = homs[members.front()];
    const auto& z1 = cache.get(GroupAction::conjugation(h, g, base, ng));

    std::vector<GroupMap> star;
    star.reserve(z1.size());
    for (const auto& f : z1) {
      GroupMap m(h.order());
      for (ElementId x = 0; x < h.order(); ++x) m[x] = gt.mul(ng.to_parent[f[x]], base[x]);
      star.push_back(std::move(m));
    }
    std::sort(star.begin(), star.end());

    std::vector<GroupMap> fiber;
    fiber.reserve(members.size());
    for (std::size_t i : members) fiber.push_back(homs[i]);
    ++r.checks;
    if (star != fiber) fail(r, "fiber differs from Z1 * g for the base point g shown", base);
    ++r.checks;
    if (z1.size() != fiber.size()) fail(r, "fiber size differs from |Z1|", base);
    total += fiber.size();
    largest = std::max(largest, fiber.size());
  }
  ++r.checks;
  if (total != homs.size()) fail(r, "fiber sizes do not add up to |Hom(H,G)|");

  r.values = {{"|Hom(H,G)|", homs.size()},
              {"|Hom(H,G/N)|", homs_q.size()},
              {"image points", fibers.size()},
              {"largest fiber", largest}};
  if (fibers.size() < homs_q.size())
    r.notes.push_back(std::to_string(homs_q.size() - fibers.size()) + " homomorphisms into G/N do not lift");
  return r;
}

HomReport restriction_fiber_check(const GroupAction& phi, std::uint64_t cap) {
  HomReport r;
  r.lemma = "restriction";
  const PermutationGroup& h = phi.acting();
  const PermutationGroup& g = phi.target();
  const CayleyTable& ht = h.table();
  const CayleyTable& gt = g.table();
  const Subgroup k = phi.kernel();
  const auto z1 = crossed_hom_set(phi, cap);

  std::map<std::vector<ElementId>, std::size_t> fibers;
  for (const auto& f : z1) {
    bool hom = true;
    for (ElementId x : k.ids())
      for (ElementId y : k.ids())
        if (f[ht.mul(x, y)] != gt.mul(f[x], f[y])) hom = false;
    ++r.checks;
    if (!hom) fail(r, "restriction to ker phi is not a homomorphism", f);
    std::vector<ElementId> restricted;
    restricted.reserve(k.order());
    for (ElementId x : k.ids()) restricted.push_back(f[x]);
    ++fibers[std::move(restricted)];
  }

  const std::size_t index = h.order() / k.order();
  const BigInt stated = pow(BigInt(index), g.order());
  const BigInt maps_bound = pow(BigInt(g.order()), index);
  std::size_t largest = 0;
  for (const auto& [restricted, size] : fibers) {
    largest = std::max(largest, size);
    r.checks += 2;
    if (BigInt(size) > stated) fail(r, "fiber larger than |H/ker phi|^|G|");
    if (BigInt(size) > maps_bound) fail(r, "fiber larger than |G|^[H:ker phi]");
  }
  if (z1.empty()) r.notes.push_back("Z1 is empty; the bound holds vacuously");
  r.values = {{"|Z1|", z1.size()},
              {"[H:ker phi]", index},
              {"image points", fibers.size()},
              {"largest fiber", largest},
              {"|H/ker phi|^|G|", stated},
              {"|G|^[H:ker phi]", maps_bound}};
  return r;
}

HomReport product_bound_check(const PermutationGroup& h, const NormalSeries& series, std::uint64_t cap) {
  validate_series(series);
  HomReport r;
  r.lemma = "product";
  const PermutationGroup& g = series.ambient;
  const std::size_t m = series.length();
  const auto factors = factor_data(series);

  // counts[i] = |Hom(H, G/G_i)|
  std::vector<Projection> quotients;
  std::vector<std::vector<GroupMap>> homs;
  for (std::size_t i = 0; i < m; ++i) {
    quotients.push_back(quotient(g, series.terms[i]));
    homs.push_back(hom_set(h, quotients.back().image, cap));
  }
  const BigInt lhs = m == 0 ? BigInt(1) : BigInt(homs[0].size());

  BigInt rhs = 1;
  CocycleCache cache(cap);
  for (std::size_t i = 1; i <= m; ++i) {
    const PermutationGroup& cur = quotients[i - 1].image;
    const std::vector<GroupMap>& cur_homs = homs[i - 1];
    const std::string tag = "step " + std::to_string(i) + ": ";
    if (i == m) {
      rhs *= cur_homs.size();  // M_m = H
      r.values.emplace_back(tag + "|Hom(H,G/G_{m-1})|", cur_homs.size());
      break;
    }
    const Subgroup n = image(quotients[i - 1], series.terms[i]);
    const SubgroupGroup ng = as_group(cur, n);

    // The homomorphism with the largest Z1, earliest in canonical order.
    std::size_t best = 0;
    std::size_t best_size = 0;
    for (std::size_t k = 0; k < cur_homs.size(); ++k) {
      const std::size_t size = cache.get(GroupAction::conjugation(h, cur, cur_homs[k], ng)).size();
      if (size > best_size) {
        best = k;
        best_size = size;
      }
    }
    const GroupMap& chosen = cur_homs[best];
    const Subgroup mi = GroupAction::conjugation(h, cur, chosen, ng).kernel();

    const Subgroup c = centralizer(cur, n);
    std::vector<ElementId> pulled;
    for (ElementId x = 0; x < h.order(); ++x)
      if (c.contains(chosen[x])) pulled.push_back(x);
    r.checks += 4;
    if (Subgroup(h.order(), std::move(pulled)) != mi) fail(r, tag + "ker(kappa g) differs from g^-1(C(N))", chosen);
    if (!is_normal(h, mi)) fail(r, tag + "M is not normal in H", chosen);
    const std::size_t quotient_index = cur.order() / c.order();
    if (quotient_index != factors[i - 1].n) fail(r, tag + "|G_cur/C(N)| differs from N_i", chosen);
    const std::size_t h_index = h.order() / mi.order();
    if (quotient_index % h_index != 0) fail(r, tag + "|H/M| does not divide |G_cur/C(N)|", chosen);

    const auto homs_mn = hom_set(as_group(h, mi).group, ng.group, cap);
    const BigInt next = homs[i].size();
    const BigInt step = pow(BigInt(h_index), cur.order()) * homs_mn.size();
    const BigInt z1_bound = pow(BigInt(h_index), ng.group.order()) * homs_mn.size();
    r.checks += 3;
    if (BigInt(cur_homs.size()) > next * best_size) fail(r, tag + "|Hom(H,G)| exceeds |Hom(H,G/N)| max|Z1|", chosen);
    if (BigInt(best_size) > z1_bound) fail(r, tag + "|Z1| exceeds |H/M|^|N| |Hom(M,N)|", chosen);
    if (BigInt(cur_homs.size()) > step * next) fail(r, tag + "single-step inequality fails", chosen);

    rhs *= step;
    r.values.emplace_back(tag + "|H/M|", h_index);
    r.values.emplace_back(tag + "max |Z1|", best_size);
    r.values.emplace_back(tag + "|Hom(M,N)|", homs_mn.size());
  }
  ++r.checks;
  if (lhs > rhs) fail(r, "|Hom(H,G)| exceeds the product bound");
  r.values.insert(r.values.begin(), {{"|Hom(H,G)|", lhs}, {"bound", rhs}});
  return r;
}

NormalSeries central_composition_series(const PermutationGroup& g) {
  const auto ucs = upper_central_series(g);
  if (ucs.back().order() != g.order()) throw Error(ErrorCode::NotNilpotent, "group is not nilpotent");
  const CayleyTable& t = g.table();
  NormalSeries out{g, {Subgroup::trivial(g)}};
  while (out.terms.back().order() < g.order()) {
    const Subgroup& cur = out.terms.back();
    std::size_t j = 0;
    while (ucs[j].is_subset_of(cur)) ++j;
    // Z_{j-1} lies in cur, so Z_j maps into the center of G/cur.
    ElementId z = 0;
    for (ElementId x : ucs[j].ids())
      if (!cur.contains(x)) {
        z = x;
        break;
      }
    std::uint64_t order_mod = 1;
    while (!cur.contains(t.power(z, order_mod))) ++order_mod;
    const std::uint64_t ell = prime_factorization(order_mod).exponents.begin()->first;
    std::vector<ElementId> gens = small_generating_set(g, cur);
    gens.push_back(t.power(z, order_mod / ell));
    out.terms.push_back(generate_subgroup(g, gens));
  }
  return out;
}

HomReport nilpotent_product_check(const PermutationGroup& h, const PermutationGroup& g, std::uint64_t cap) {
  if (!is_nilpotent(g)) throw Error(ErrorCode::NotNilpotent, "nilpotent_product_check needs a nilpotent group");
  HomReport r;
  r.lemma = "nilpotent";
  const NormalSeries series = central_composition_series(g);
  for (std::size_t i = 1; i < series.terms.size(); ++i) {
    r.checks += 2;
    const std::size_t step = series.terms[i].order() / series.terms[i - 1].order();
    if (!is_prime(step)) fail(r, "step " + std::to_string(i) + " is not of prime order");
    if (section_centralizer(g, series.terms[i], series.terms[i - 1]).order() != g.order())
      fail(r, "step " + std::to_string(i) + " is not central");
  }

  const BigInt lhs = hom_set(h, g, cap).size();
  BigInt rhs = 1;
  for (const auto& [ell, e] : prime_factorization(g.order()).exponents) {
    std::vector<int> cycle(ell);
    for (std::uint64_t k = 0; k < ell; ++k) cycle[k] = static_cast<int>((k + 1) % ell) + 1;
    const PermutationGroup c(static_cast<int>(ell), {Permutation::from_images(cycle)});
    rhs *= pow(BigInt(hom_set(h, c, cap).size()), static_cast<std::uint64_t>(e));
  }
  ++r.checks;
  if (lhs > rhs) fail(r, "|Hom(H,G)| exceeds prod_l |Hom(H,C_l)|^e_l");

  // Along this series every M_i is H, so the general product bound is the
  // same number.
  const HomReport general = product_bound_check(h, series, cap);
  ++r.checks;
  if (!general.holds) fail(r, "product bound fails on the central series: " + general.counterexample->description);
  if (*general.value("bound") != rhs) fail(r, "product bound along the central series differs from prod_l");
  r.values = {{"|Hom(H,G)|", lhs}, {"bound", rhs}, {"series length", series.length()}};
  return r;
}

}  // namespace malle
