#include "abcprop/lab.hpp"

#include <algorithm>

#include "abcprop/errors.hpp"

namespace abcprop {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

LabRng::LabRng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

LabRng LabRng::for_trial(std::uint64_t master_seed, std::uint64_t trial) {
  return LabRng(splitmix64(master_seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
}

std::uint64_t LabRng::next() { return engine_(); }

std::uint64_t LabRng::below(std::uint64_t bound) {
  if (bound == 0) throw InputError("empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return x % bound;
}

int LabRng::between(int lo, int hi) {
  if (hi < lo) throw InputError("empty range");
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double LabRng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::string culture_name(CultureModel model) {
  switch (model) {
    case CultureModel::kImpartial: return "impartial";
    case CultureModel::kPartyList: return "party-list";
    case CultureModel::kUrn: return "urn";
  }
  return "?";
}

std::optional<CultureModel> parse_culture(const std::string& name) {
  if (name == "impartial" || name == "ic" || name == "impartial-culture") return CultureModel::kImpartial;
  if (name == "party-list" || name == "party") return CultureModel::kPartyList;
  if (name == "urn" || name == "urn-like") return CultureModel::kUrn;
  return std::nullopt;
}

namespace {

CandidateSet impartial_ballot(LabRng& rng, int m, double p) {
  CandidateSet a;
  for (int c = 0; c < m; ++c)
    if (rng.unit() < p) a.set(c);
  return a;
}

}  // namespace

Election generate(const BallotCulture& culture, int n, int m, int k) {
  if (n < 1 || n > kMaxVoters) throw InputError("voter count out of range");
  if (m < 1 || m > kMaxCandidates) throw InputError("candidate count out of range");
  if (k < 1 || k > m) throw InputError("committee size must be in [1, m]");
  if (!(culture.approval_probability > 0.0 && culture.approval_probability < 1.0))
    throw InputError("approval probability must lie in (0, 1)");

  LabRng rng(culture.seed);
  std::vector<CandidateSet> ballots;
  ballots.reserve(n);
  switch (culture.model) {
    case CultureModel::kImpartial:
      for (int v = 0; v < n; ++v) ballots.push_back(impartial_ballot(rng, m, culture.approval_probability));
      break;
    case CultureModel::kPartyList: {
      const int parties = culture.parties;
      if (parties < 1 || parties > m) throw InputError("party count must be in [1, m]");
      std::vector<CandidateSet> blocks(parties);
      for (int c = 0; c < m; ++c) blocks[static_cast<long long>(c) * parties / m].set(c);
      if (!culture.party_sizes.empty()) {
        if (static_cast<int>(culture.party_sizes.size()) != parties) throw InputError("one size per party required");
        long long total = 0;
        for (int s : culture.party_sizes) {
          if (s < 0) throw InputError("negative party size");
          total += s;
        }
        if (total != n) throw InputError("party sizes must sum to the voter count");
        for (int p = 0; p < parties; ++p)
          for (int i = 0; i < culture.party_sizes[p]; ++i) ballots.push_back(blocks[p]);
      } else {
        for (int v = 0; v < n; ++v) ballots.push_back(blocks[rng.below(parties)]);
      }
      break;
    }
    case CultureModel::kUrn:
      if (!(culture.mixing >= 0.0 && culture.mixing <= 1.0)) throw InputError("mixing must lie in [0, 1]");
      for (int v = 0; v < n; ++v) {
        if (v > 0 && rng.unit() < culture.mixing)
          ballots.push_back(ballots[rng.below(v)]);
        else
          ballots.push_back(impartial_ballot(rng, m, culture.approval_probability));
      }
      break;
  }
  return Election(m, k, std::move(ballots));
}

const std::vector<AxiomPair>& proven_implications() {
  static const std::vector<AxiomPair> arrows = {
      {Axiom::kCore, Axiom::kFJR},         {Axiom::kFJR, Axiom::kEJR},        {Axiom::kFJR, Axiom::kFPJR},
      {Axiom::kEJR, Axiom::kPJR},          {Axiom::kFPJR, Axiom::kPJR},       {Axiom::kEJRPlus, Axiom::kEJR},
      {Axiom::kEJRPlus, Axiom::kPJRPlus},  {Axiom::kPJRPlus, Axiom::kPJR},    {Axiom::kPriceable, Axiom::kFPJR},
      {Axiom::kPriceable, Axiom::kPJRPlus}, {Axiom::kPER, Axiom::kPriceable}, {Axiom::kPJR, Axiom::kJR},
  };
  return arrows;
}

ImplicationMatrix::ImplicationMatrix(std::vector<Axiom> axioms)
    : axioms_(std::move(axioms)), counts_(axioms_.size() * axioms_.size()) {}

int ImplicationMatrix::index_of(Axiom a) const {
  for (std::size_t i = 0; i < axioms_.size(); ++i)
    if (axioms_[i] == a) return static_cast<int>(i);
  throw InputError("axiom " + axiom_name(a) + " not tracked by this matrix");
}

const PairCounts& ImplicationMatrix::counts(Axiom premise, Axiom conclusion) const {
  return counts_[index_of(premise) * axioms_.size() + index_of(conclusion)];
}

std::vector<const StoredCounterexample*> ImplicationMatrix::examples(Axiom premise, Axiom conclusion) const {
  std::vector<const StoredCounterexample*> out;
  for (const auto& c : counterexamples_)
    if (c.premise == premise && c.conclusion == conclusion) out.push_back(&c);
  return out;
}

void ImplicationMatrix::record(const std::vector<bool>& satisfied) {
  if (satisfied.size() != axioms_.size()) throw InputError("verdict count does not match axioms");
  ++samples_;
  const std::size_t a = axioms_.size();
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < a; ++j) {
      auto& cell = counts_[i * a + j];
      if (!satisfied[i])
        ++cell.premise_violated;
      else if (satisfied[j])
        ++cell.both_satisfied;
      else
        ++cell.premise_only;
    }
}

void ImplicationMatrix::merge(const ImplicationMatrix& other) {
  if (other.axioms_ != axioms_) throw InputError("cannot merge matrices over different axioms");
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    counts_[i].both_satisfied += other.counts_[i].both_satisfied;
    counts_[i].premise_only += other.counts_[i].premise_only;
    counts_[i].premise_violated += other.counts_[i].premise_violated;
  }
  samples_ += other.samples_;
  inconclusive_ += other.inconclusive_;
  empty_ += other.empty_;
  counterexamples_.insert(counterexamples_.end(), other.counterexamples_.begin(), other.counterexamples_.end());
}

Election trial_election(const LabConfig& config, int trial) {
  LabRng rng = LabRng::for_trial(config.culture.seed, static_cast<std::uint64_t>(trial));
  const int m = rng.between(config.min_candidates, config.max_candidates);
  const int k = rng.between(std::max(1, config.min_committee), std::min(config.max_committee, m));
  int n;
  if (config.committee_divides_voters) {
    const int lo = std::max(1, (config.min_voters + k - 1) / k);
    const int hi = config.max_voters / k;
    if (hi < lo) throw InputError("no voter count in range is a multiple of k");
    n = k * rng.between(lo, hi);
  } else {
    n = rng.between(config.min_voters, config.max_voters);
  }
  BallotCulture culture = config.culture;
  culture.seed = rng.next();
  culture.parties = std::min(culture.parties, m);
  return generate(culture, n, m, k);
}

namespace {

// Verdicts for every axiom with k := |W|, or nullopt if any search gave up.
std::optional<std::vector<bool>> judge(const Election& e, const Committee& w, const std::vector<Axiom>& axioms,
                                       const VerifierBudget& budget) {
  const Election sized = e.with_committee_size(w.size());
  std::vector<bool> out;
  try {
    for (Axiom a : axioms) out.push_back(verify_axiom(a, sized, w, budget).satisfied);
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
  return out;
}

void add_sample(ImplicationMatrix& matrix, const LabConfig& config, const std::string& origin, const Election& e,
                const Committee& w) {
  if (w.size() == 0) {
    matrix.record_empty();
    return;
  }
  const auto verdicts = judge(e, w, config.axioms, config.budget);
  if (!verdicts) {
    matrix.record_inconclusive();
    return;
  }
  matrix.record(*verdicts);
  const auto& ax = config.axioms;
  for (std::size_t i = 0; i < ax.size(); ++i)
    for (std::size_t j = 0; j < ax.size(); ++j) {
      if (!(*verdicts)[i] || (*verdicts)[j]) continue;
      if (static_cast<int>(matrix.examples(ax[i], ax[j]).size()) >= config.examples_per_pair) continue;
      auto keep = [&](const Election& ce, const Committee& cw) {
        if (cw.size() == 0) return false;
        const Election sized = ce.with_committee_size(cw.size());
        try {
          return verify_axiom(ax[i], sized, cw, config.budget).satisfied &&
                 !verify_axiom(ax[j], sized, cw, config.budget).satisfied;
        } catch (const BudgetExceeded&) {
          return false;
        }
      };
      const Election sized = e.with_committee_size(w.size());
      auto [me, mw] = config.minimize ? minimize_instance(sized, w, keep) : std::pair{sized, w};
      matrix.store({ax[i], ax[j], origin, me.with_committee_size(mw.size()), mw});
    }
}

}  // namespace

ImplicationMatrix run_matrix(const LabConfig& config) {
  if (config.trials < 0) throw InputError("trial count must be nonnegative");
  ImplicationMatrix matrix(config.axioms);
  for (int t = 0; t < config.trials; ++t) {
    const Election e = trial_election(config, t);
    for (Rule rule : config.rules) {
      const std::string origin = rule_name(rule) + "#" + std::to_string(t);
      std::optional<Committee> w;
      try {
        w = run_rule(e, rule, config.rule_options);
      } catch (const BudgetExceeded&) {
        matrix.record_inconclusive();
        continue;
      }
      add_sample(matrix, config, origin, e, *w);
    }
  }
  for (const auto& f : config.fixtures) add_sample(matrix, config, f.label, f.election, f.committee);
  return matrix;
}

namespace {

std::optional<std::pair<Election, Committee>> without_voter(const Election& e, const Committee& w, int voter) {
  if (e.num_voters() == 1) return std::nullopt;
  std::vector<CandidateSet> ballots = e.ballots();
  ballots.erase(ballots.begin() + voter);
  return std::pair{Election(e.num_candidates(), e.committee_size(), std::move(ballots)), w};
}

CandidateSet drop_index(const CandidateSet& s, int removed) {
  CandidateSet out;
  for (int c : s)
    if (c < removed)
      out.set(c);
    else if (c > removed)
      out.set(c - 1);
  return out;
}

std::optional<std::pair<Election, Committee>> without_candidate(const Election& e, const Committee& w, int c) {
  if (e.num_candidates() - 1 < e.committee_size()) return std::nullopt;
  std::vector<CandidateSet> ballots;
  for (const auto& a : e.ballots()) ballots.push_back(drop_index(a, c));
  return std::pair{Election(e.num_candidates() - 1, e.committee_size(), std::move(ballots)),
                   Committee{drop_index(w.members, c), w.source}};
}

}  // namespace

std::pair<Election, Committee> minimize_instance(const Election& e, const Committee& w, const InstancePredicate& keep) {
  std::pair<Election, Committee> cur{e, w};
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < cur.first.num_voters() && !changed; ++v)
      if (auto next = without_voter(cur.first, cur.second, v); next && keep(next->first, next->second)) {
        cur = std::move(*next);
        changed = true;
      }
    for (int c = 0; c < cur.first.num_candidates() && !changed; ++c)
      if (auto next = without_candidate(cur.first, cur.second, c); next && keep(next->first, next->second)) {
        cur = std::move(*next);
        changed = true;
      }
  }
  return cur;
}

std::pair<Election, Committee> minimize_counterexample(const Election& e, const Committee& w, Axiom axiom,
                                                       const VerifierBudget& budget) {
  if (verify_axiom(axiom, e, w, budget).satisfied)
    throw PreconditionError("committee does not violate " + axiom_name(axiom));
  return minimize_instance(e, w, [&](const Election& ce, const Committee& cw) {
    try {
      return !verify_axiom(axiom, ce, cw, budget).satisfied;
    } catch (const BudgetExceeded&) {
      return false;
    }
  });
}

}  // namespace abcprop
