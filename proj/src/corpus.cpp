#include "malle/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <mutex>
#include <thread>

#include "malle/error.hpp"

namespace malle {

std::string_view to_string(Lemma lemma) {
  switch (lemma) {
    case Lemma::Fiber:
      return "fiber";
    case Lemma::Restriction:
      return "restriction";
    case Lemma::Product:
      return "product";
    case Lemma::Nilpotent:
      return "nilpotent";
  }
  return "?";
}

std::vector<Lemma> parse_lemmas(std::string_view text) {
  if (text == "all") return {Lemma::Fiber, Lemma::Restriction, Lemma::Product, Lemma::Nilpotent};
  for (Lemma l : {Lemma::Fiber, Lemma::Restriction, Lemma::Product, Lemma::Nilpotent})
    if (text == to_string(l)) return {l};
  throw Error(ErrorCode::PreconditionViolated, "unknown lemma '" + std::string(text) + "'");
}

namespace {

struct PairResult {
  std::vector<LemmaTally> tallies;
  std::vector<CorpusFailure> failures;
};

/// What each G contributes independently of H.
struct TargetData {
  const CorpusEntry* entry;
  std::vector<Subgroup> normals;
  std::vector<SubgroupGroup> normal_groups;
  std::vector<std::pair<std::string, NormalSeries>> series;
  bool nilpotent;
};

TargetData prepare(const CorpusEntry& e) {
  TargetData t{&e, normal_subgroups(e.group), {}, {}, is_nilpotent(e.group)};
  for (const auto& n : t.normals) t.normal_groups.push_back(as_group(e.group, n));
  t.series.emplace_back("greedy series", build_nilpotent_series(e.group));
  if (t.nilpotent) {
    NormalSeries full = build_nilpotent_series(e.group, false);
    if (!(full == t.series.front().second)) t.series.emplace_back("greedy series without short cut", std::move(full));
  }
  return t;
}

PairResult run_pair(const CorpusEntry& h, const TargetData& target, const CorpusOptions& options) {
  PairResult out;
  const PermutationGroup& g = target.entry->group;
  const auto homs = hom_set(h.group, g, options.cap);

  const auto record = [&](Lemma lemma, const HomReport& r, std::string context) {
    auto it = std::find_if(out.tallies.begin(), out.tallies.end(), [&](const LemmaTally& t) { return t.lemma == lemma; });
    if (it == out.tallies.end()) it = out.tallies.insert(out.tallies.end(), LemmaTally{lemma});
    ++it->cases;
    it->checks += r.checks;
    if (!r.holds) {
      ++it->failures;
      out.failures.push_back(CorpusFailure{lemma, h.label, target.entry->label, std::move(context), r});
    }
  };
  const auto wanted = [&](Lemma l) {
    return std::find(options.lemmas.begin(), options.lemmas.end(), l) != options.lemmas.end();
  };
  const auto normal_context = [&](std::size_t k) { return "N of order " + std::to_string(target.normals[k].order()) + " (#" + std::to_string(k) + ")"; };

  if (wanted(Lemma::Fiber))
    for (std::size_t k = 0; k < target.normals.size(); ++k)
      record(Lemma::Fiber, fiber_check(h.group, g, target.normals[k], homs, options.cap), normal_context(k));

  if (wanted(Lemma::Restriction)) {
    for (std::size_t k = 0; k < target.normals.size(); ++k) {
      std::set<std::vector<ElementId>> seen;
      for (const auto& hom : homs) {
        GroupAction phi = GroupAction::conjugation(h.group, g, hom, target.normal_groups[k]);
        if (!seen.insert(phi.key()).second) continue;
        record(Lemma::Restriction, restriction_fiber_check(phi, options.cap), normal_context(k));
      }
    }
  }

  if (wanted(Lemma::Product))
    for (const auto& [name, s] : target.series) record(Lemma::Product, product_bound_check(h.group, s, options.cap), name);

  if (wanted(Lemma::Nilpotent) && target.nilpotent)
    record(Lemma::Nilpotent, nilpotent_product_check(h.group, g, options.cap), "central series");
  return out;
}

}  // namespace

CorpusResult run_corpus(const std::vector<CorpusEntry>& groups, const CorpusOptions& options) {
  std::vector<const CorpusEntry*> hs;
  std::vector<TargetData> gs;
  for (const auto& e : groups) {
    if (e.group.order() <= options.max_h) hs.push_back(&e);
    if (e.group.order() <= options.max_g) gs.push_back(prepare(e));
  }

  const std::size_t total = hs.size() * gs.size();
  std::vector<PairResult> results(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < total;) {
      try {
        results[i] = run_pair(*hs[i / gs.size()], gs[i % gs.size()], options);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  unsigned jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(total, 1)));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  CorpusResult out;
  out.pairs = total;
  for (Lemma l : options.lemmas) out.tallies.push_back(LemmaTally{l});
  for (auto& pr : results) {
    for (const auto& t : pr.tallies) {
      auto it = std::find_if(out.tallies.begin(), out.tallies.end(), [&](const LemmaTally& x) { return x.lemma == t.lemma; });
      it->cases += t.cases;
      it->checks += t.checks;
      it->failures += t.failures;
    }
    for (auto& f : pr.failures) out.failures.push_back(std::move(f));
  }
  return out;
}

}  // namespace malle
