#include "abcprop/axioms.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "abcprop/errors.hpp"
#include "abcprop/pricing.hpp"

namespace abcprop {

namespace {

class WorkCounter {
 public:
  explicit WorkCounter(std::uint64_t limit) : limit_(limit) {}
  void tick(std::uint64_t amount = 1) {
    used_ += amount;
    if (used_ > limit_)
      throw BudgetExceeded("verifier search exceeded " + std::to_string(limit_) + " examined subsets");
  }

 private:
  std::uint64_t used_ = 0;
  std::uint64_t limit_;
};

// Finds a witness set T of exactly `size` candidates such that at least
// size·n/k voters of the pool reach their threshold |A_v ∩ T| >= θ_v.
//
// Depth-first over candidates in index order (so the first hit is the
// lexicographically smallest T), pruning when too few voters can still reach
// their threshold. With `heavy_level` > 0 the search also requires T to
// contain a candidate with |N_c ∩ pool|·k >= heavy_level·n, which every
// witness of a uniform-threshold violation must (averaging argument).
class WitnessSearch {
 public:
  WitnessSearch(const Election& e, WorkCounter& counter) : e_(e), counter_(counter) {}

  std::optional<CandidateSet> find(std::vector<int> voters, std::vector<int> thresholds, int size, int heavy_level) {
    const long long n = e_.num_voters();
    const long long k = e_.committee_size();
    const long long need = static_cast<long long>(size) * n;

    // Drop voters that can never qualify; their approvals no longer count
    // toward the candidate universe, which may drop further voters.
    CandidateSet universe;
    while (true) {
      universe.clear();
      for (int v : voters) universe |= e_.approvals(v);
      std::vector<int> kept_v, kept_t;
      for (std::size_t i = 0; i < voters.size(); ++i)
        if (thresholds[i] <= size && e_.approvals(voters[i]).count_and(universe) >= thresholds[i]) {
          kept_v.push_back(voters[i]);
          kept_t.push_back(thresholds[i]);
        }
      const bool stable = kept_v.size() == voters.size();
      voters = std::move(kept_v);
      thresholds = std::move(kept_t);
      if (stable) break;
    }
    if (static_cast<long long>(voters.size()) * k < need) return std::nullopt;
    if (universe.count() < size) return std::nullopt;

    voters_ = std::move(voters);
    thresholds_ = std::move(thresholds);
    size_ = size;
    candidates_ = universe.to_vector();
    const int pool = static_cast<int>(voters_.size());
    approvers_.assign(candidates_.size(), {});
    heavy_.assign(candidates_.size(), heavy_level <= 0);
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      for (int j = 0; j < pool; ++j)
        if (e_.approvals(voters_[j]).test(candidates_[i])) approvers_[i].push_back(j);
      if (heavy_level > 0)
        heavy_[i] = static_cast<long long>(approvers_[i].size()) * k >= static_cast<long long>(heavy_level) * n;
    }
    heavy_suffix_.assign(candidates_.size() + 1, 0);
    for (int i = static_cast<int>(candidates_.size()) - 1; i >= 0; --i)
      heavy_suffix_[i] = heavy_suffix_[i + 1] + (heavy_[i] ? 1 : 0);
    if (heavy_suffix_[0] == 0) return std::nullopt;

    hits_.assign(pool, 0);
    remaining_.assign(pool, 0);
    for (int j = 0; j < pool; ++j) remaining_[j] = e_.approvals(voters_[j]).count_and(universe);
    chosen_.clear();
    found_.reset();
    dfs(0, 0, false);
    return found_;
  }

 private:
  bool qualifies_now() const {
    long long count = 0;
    for (std::size_t j = 0; j < voters_.size(); ++j)
      if (hits_[j] >= thresholds_[j]) ++count;
    return count * e_.committee_size() >= static_cast<long long>(size_) * e_.num_voters();
  }

  bool dfs(int index, int picked, bool has_heavy) {
    counter_.tick();
    if (picked == size_) {
      if (!qualifies_now()) return false;
      found_ = chosen_;
      return true;
    }
    const int left = static_cast<int>(candidates_.size()) - index;
    if (left < size_ - picked) return false;
    if (!has_heavy && heavy_suffix_[index] == 0) return false;
    long long reachable = 0;
    const int slots = size_ - picked;
    for (std::size_t j = 0; j < voters_.size(); ++j)
      if (hits_[j] + std::min(slots, remaining_[j]) >= thresholds_[j]) ++reachable;
    if (reachable * e_.committee_size() < static_cast<long long>(size_) * e_.num_voters()) return false;

    const auto& who = approvers_[index];
    for (int j : who) --remaining_[j];
    bool done = false;
    for (int j : who) ++hits_[j];
    chosen_.set(candidates_[index]);
    done = dfs(index + 1, picked + 1, has_heavy || heavy_[index]);
    chosen_.reset(candidates_[index]);
    for (int j : who) --hits_[j];
    if (!done) done = dfs(index + 1, picked, has_heavy);
    for (int j : who) ++remaining_[j];
    return done;
  }

  const Election& e_;
  WorkCounter& counter_;
  std::vector<int> voters_;
  std::vector<int> thresholds_;
  int size_ = 0;
  std::vector<int> candidates_;
  std::vector<std::vector<int>> approvers_;
  std::vector<bool> heavy_;
  std::vector<int> heavy_suffix_;
  std::vector<int> hits_;
  std::vector<int> remaining_;
  CandidateSet chosen_;
  std::optional<CandidateSet> found_;
};

// Voters whose approved winners all lie in a set R ⊆ W. Only "closed" sets R
// (those equal to the union of their pool's approved winners) are listed;
// any coalition S falls in the pool of the closed set W ∩ ⋃_{v∈S} A_v, so
// scanning closed sets of size < l covers every coalition with collective
// utility < l.
struct RepresentationPool {
  CandidateSet allowed;
  int allowed_size = 0;
  std::vector<int> voters;
};

std::vector<RepresentationPool> closed_pools(const Election& e, const Committee& w, int max_size, WorkCounter& counter) {
  std::unordered_set<CandidateSet, BitsetHash> closed{CandidateSet{}};
  for (int v = 0; v < e.num_voters(); ++v) {
    const CandidateSet mine = e.approvals(v) & w.members;
    if (mine.count() > max_size) continue;
    std::vector<CandidateSet> snapshot(closed.begin(), closed.end());
    for (const auto& r : snapshot) {
      CandidateSet u = r | mine;
      if (u.count() <= max_size && closed.insert(u).second) counter.tick();
    }
  }
  std::vector<RepresentationPool> pools;
  for (const auto& r : closed) {
    RepresentationPool p{r, r.count(), {}};
    for (int v = 0; v < e.num_voters(); ++v)
      if ((e.approvals(v) & w.members).is_subset_of(r)) p.voters.push_back(v);
    if (!p.voters.empty()) pools.push_back(std::move(p));
  }
  std::sort(pools.begin(), pools.end(), [](const RepresentationPool& a, const RepresentationPool& b) {
    if (a.allowed_size != b.allowed_size) return a.allowed_size < b.allowed_size;
    return a.allowed.to_vector() < b.allowed.to_vector();
  });
  return pools;
}

void check_committee(const Election& e, const Committee& w) {
  if (!w.members.is_subset_of(e.all_candidates())) throw InputError("committee member out of range");
  if (w.size() > e.committee_size()) throw InputError("committee larger than k");
}

int witness_cap(const Election& e, const VerifierBudget& budget) {
  const int k = e.committee_size();
  return budget.max_witness_size < 0 ? k : std::min(k, budget.max_witness_size);
}

void exhausted_cap(const Election& e, int cap, const char* axiom) {
  if (cap < e.committee_size())
    throw BudgetExceeded(std::string(axiom) + ": witness sizes above " + std::to_string(cap) +
                         " were not searched; no verdict");
}

std::vector<int> utilities(const Election& e, const Committee& w) {
  std::vector<int> u(e.num_voters());
  for (int v = 0; v < e.num_voters(); ++v) u[v] = e.approvals(v).count_and(w.members);
  return u;
}

VoterSet reaching(const Election& e, const std::vector<int>& pool, const CandidateSet& t, int level) {
  VoterSet s;
  for (int v : pool)
    if (e.approvals(v).count_and(t) >= level) s.set(v);
  return s;
}

AxiomReport violated(Axiom axiom, Certificate cert) { return AxiomReport{axiom, false, std::move(cert)}; }

// Shared driver for the four cohesion axioms. `exact_size` ties |T| to l
// (unanimous cohesion); `collective` selects the R-pool formulation.
AxiomReport cohesion_search(Axiom axiom, const Election& e, const Committee& w, const VerifierBudget& budget,
                            bool exact_size, bool collective) {
  check_committee(e, w);
  WorkCounter counter(budget.max_subsets_examined);
  WitnessSearch search(e, counter);
  const long long n = e.num_voters();
  const long long k = e.committee_size();
  const int cap = witness_cap(e, budget);
  const auto util = utilities(e, w);

  std::vector<RepresentationPool> pools;
  if (collective) pools = closed_pools(e, w, e.committee_size() - 1, counter);

  auto try_pool = [&](const std::vector<int>& pool, int level, int size) -> std::optional<AxiomReport> {
    if (static_cast<long long>(pool.size()) * k < static_cast<long long>(size) * n) return std::nullopt;
    auto t = search.find(pool, std::vector<int>(pool.size(), level), size, level);
    if (!t) return std::nullopt;
    return violated(axiom, CohesionCertificate{reaching(e, pool, *t, level), *t, level});
  };

  for (int size = 1; size <= cap; ++size) {
    for (int level = exact_size ? size : 1; level <= size; ++level) {
      if (collective) {
        for (const auto& p : pools) {
          if (p.allowed_size > level - 1) break;
          if (auto r = try_pool(p.voters, level, size)) return *r;
        }
      } else {
        std::vector<int> pool;
        for (int v = 0; v < e.num_voters(); ++v)
          if (util[v] < level) pool.push_back(v);
        if (auto r = try_pool(pool, level, size)) return *r;
      }
    }
  }
  exhausted_cap(e, cap, axiom_name(axiom).c_str());
  return AxiomReport{axiom, true, std::nullopt};
}

}  // namespace

AxiomReport verify_jr(const Election& e, const Committee& w) {
  check_committee(e, w);
  const auto util = utilities(e, w);
  for (int c = 0; c < e.num_candidates(); ++c) {
    VoterSet s;
    for (int v : e.approvers(c))
      if (util[v] == 0) s.set(v);
    if (static_cast<long long>(s.count()) * e.committee_size() >= e.num_voters()) {
      CandidateSet t;
      t.set(c);
      return violated(Axiom::kJR, CohesionCertificate{s, t, 1});
    }
  }
  return AxiomReport{Axiom::kJR, true, std::nullopt};
}

AxiomReport verify_pjr(const Election& e, const Committee& w, const VerifierBudget& budget) {
  return cohesion_search(Axiom::kPJR, e, w, budget, true, true);
}

AxiomReport verify_ejr(const Election& e, const Committee& w, const VerifierBudget& budget) {
  return cohesion_search(Axiom::kEJR, e, w, budget, true, false);
}

AxiomReport verify_fpjr(const Election& e, const Committee& w, const VerifierBudget& budget) {
  return cohesion_search(Axiom::kFPJR, e, w, budget, false, true);
}

AxiomReport verify_fjr(const Election& e, const Committee& w, const VerifierBudget& budget) {
  return cohesion_search(Axiom::kFJR, e, w, budget, false, false);
}

AxiomReport verify_core(const Election& e, const Committee& w, const VerifierBudget& budget) {
  check_committee(e, w);
  WorkCounter counter(budget.max_subsets_examined);
  WitnessSearch search(e, counter);
  const auto util = utilities(e, w);
  std::vector<int> pool(e.num_voters()), thresholds(e.num_voters());
  for (int v = 0; v < e.num_voters(); ++v) {
    pool[v] = v;
    thresholds[v] = util[v] + 1;
  }
  const int cap = witness_cap(e, budget);
  for (int size = 1; size <= cap; ++size) {
    if (auto t = search.find(pool, thresholds, size, 0)) {
      VoterSet s;
      for (int v = 0; v < e.num_voters(); ++v)
        if (e.approvals(v).count_and(*t) > util[v]) s.set(v);
      return violated(Axiom::kCore, CoreDeviation{s, *t});
    }
  }
  exhausted_cap(e, cap, "core");
  return AxiomReport{Axiom::kCore, true, std::nullopt};
}

AxiomReport verify_ejr_plus(const Election& e, const Committee& w) {
  check_committee(e, w);
  const auto util = utilities(e, w);
  for (int level = 1; level <= e.committee_size(); ++level)
    for (int c = 0; c < e.num_candidates(); ++c) {
      if (w.members.test(c)) continue;
      VoterSet s;
      for (int v : e.approvers(c))
        if (util[v] < level) s.set(v);
      if (s.any() && static_cast<long long>(s.count()) * e.committee_size() >= static_cast<long long>(level) * e.num_voters())
        return violated(Axiom::kEJRPlus, Deprivation{s, c, level});
    }
  return AxiomReport{Axiom::kEJRPlus, true, std::nullopt};
}

AxiomReport verify_pjr_plus(const Election& e, const Committee& w, const VerifierBudget& budget) {
  check_committee(e, w);
  WorkCounter counter(budget.max_subsets_examined);
  const auto pools = closed_pools(e, w, e.committee_size() - 1, counter);
  for (int level = 1; level <= e.committee_size(); ++level)
    for (const auto& p : pools) {
      if (p.allowed_size > level - 1) break;
      VoterSet pool = VoterSet::from(p.voters);
      for (int c = 0; c < e.num_candidates(); ++c) {
        if (w.members.test(c)) continue;
        counter.tick();
        VoterSet s = e.approvers(c) & pool;
        if (s.any() &&
            static_cast<long long>(s.count()) * e.committee_size() >= static_cast<long long>(level) * e.num_voters())
          return violated(Axiom::kPJRPlus, Deprivation{s, c, level});
      }
    }
  return AxiomReport{Axiom::kPJRPlus, true, std::nullopt};
}

AxiomReport verify_axiom(Axiom axiom, const Election& e, const Committee& w, const VerifierBudget& budget) {
  switch (axiom) {
    case Axiom::kJR: return verify_jr(e, w);
    case Axiom::kPJR: return verify_pjr(e, w, budget);
    case Axiom::kEJR: return verify_ejr(e, w, budget);
    case Axiom::kFJR: return verify_fjr(e, w, budget);
    case Axiom::kFPJR: return verify_fpjr(e, w, budget);
    case Axiom::kCore: return verify_core(e, w, budget);
    case Axiom::kEJRPlus: return verify_ejr_plus(e, w);
    case Axiom::kPJRPlus: return verify_pjr_plus(e, w, budget);
    case Axiom::kPriceable: {
      check_committee(e, w);
      auto r = check_priceable(e, w);
      if (r.priceable) return AxiomReport{axiom, true, std::nullopt};
      return violated(axiom, r.reason);
    }
    case Axiom::kPER: {
      check_committee(e, w);
      if (check_per(e, w)) return AxiomReport{axiom, true, std::nullopt};
      if (e.num_voters() % e.committee_size() != 0) return violated(axiom, std::string("k does not divide n"));
      if (w.size() != e.committee_size()) return violated(axiom, std::string("committee has fewer than k members"));
      return violated(axiom, std::string("no equal partition with unanimous distinct winners exists"));
    }
  }
  throw InputError("unknown axiom");
}

bool certificate_is_valid(const Election& e, const Committee& w, const AxiomReport& report) {
  if (report.satisfied || !report.certificate) return false;
  const long long n = e.num_voters();
  const long long k = e.committee_size();
  const auto& cert = *report.certificate;
  auto in_range = [&](const VoterSet& s) { return s.any() && s.is_subset_of(e.all_voters()); };

  switch (report.axiom) {
    case Axiom::kJR:
    case Axiom::kPJR:
    case Axiom::kEJR: {
      const auto* c = std::get_if<CohesionCertificate>(&cert);
      if (!c || !in_range(c->coalition) || c->level < 1) return false;
      if (!c->witness.is_subset_of(e.all_candidates()) || c->witness.count() < c->level) return false;
      if (report.axiom == Axiom::kJR && c->level != 1) return false;
      if (static_cast<long long>(c->coalition.count()) * k < static_cast<long long>(c->level) * n) return false;
      for (int v : c->coalition)
        if (!c->witness.is_subset_of(e.approvals(v))) return false;
      if (report.axiom == Axiom::kPJR) return collective_utility(e, c->coalition, w.members) < c->level;
      for (int v : c->coalition)
        if (e.approvals(v).count_and(w.members) >= c->level) return false;
      return true;
    }
    case Axiom::kFJR:
    case Axiom::kFPJR: {
      const auto* c = std::get_if<CohesionCertificate>(&cert);
      if (!c || !check_weak_cohesion(e, *c)) return false;
      if (report.axiom == Axiom::kFPJR) return collective_utility(e, c->coalition, w.members) < c->level;
      for (int v : c->coalition)
        if (e.approvals(v).count_and(w.members) >= c->level) return false;
      return true;
    }
    case Axiom::kCore: {
      const auto* d = std::get_if<CoreDeviation>(&cert);
      if (!d || !in_range(d->coalition) || !d->alternative.is_subset_of(e.all_candidates())) return false;
      if (static_cast<long long>(d->coalition.count()) * k < static_cast<long long>(d->alternative.count()) * n)
        return false;
      for (int v : d->coalition)
        if (e.approvals(v).count_and(d->alternative) <= e.approvals(v).count_and(w.members)) return false;
      return true;
    }
    case Axiom::kEJRPlus:
    case Axiom::kPJRPlus: {
      const auto* d = std::get_if<Deprivation>(&cert);
      if (!d || !in_range(d->coalition) || d->level < 1) return false;
      if (d->candidate < 0 || d->candidate >= e.num_candidates() || w.members.test(d->candidate)) return false;
      if (static_cast<long long>(d->coalition.count()) * k < static_cast<long long>(d->level) * n) return false;
      for (int v : d->coalition)
        if (!e.approvals(v).test(d->candidate)) return false;
      if (report.axiom == Axiom::kPJRPlus) return collective_utility(e, d->coalition, w.members) < d->level;
      for (int v : d->coalition)
        if (e.approvals(v).count_and(w.members) >= d->level) return false;
      return true;
    }
    case Axiom::kPriceable:
      return std::holds_alternative<std::string>(cert) && !check_priceable(e, w).priceable;
    case Axiom::kPER:
      return std::holds_alternative<std::string>(cert) && !check_per(e, w);
  }
  return false;
}

}  // namespace abcprop
