#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "abcprop/axioms.hpp"
#include "abcprop/election.hpp"
#include "abcprop/rules.hpp"

namespace abcprop {

// Deterministic 64-bit generator. mt19937_64 output is fully specified by the
// standard; the derived helpers avoid std distributions, whose results vary
// between library implementations.
class LabRng {
 public:
  explicit LabRng(std::uint64_t seed);
  // Independent stream for one trial of a run.
  static LabRng for_trial(std::uint64_t master_seed, std::uint64_t trial);

  std::uint64_t next();
  std::uint64_t below(std::uint64_t bound);  // uniform in [0, bound)
  int between(int lo, int hi);               // uniform in [lo, hi]
  double unit();                             // uniform in [0, 1)

 private:
  std::mt19937_64 engine_;
};

enum class CultureModel { kImpartial, kPartyList, kUrn };

std::string culture_name(CultureModel model);  // "impartial", "party-list", "urn"
std::optional<CultureModel> parse_culture(const std::string& name);

struct BallotCulture {
  CultureModel model = CultureModel::kImpartial;
  double approval_probability = 0.5;  // impartial; also fresh ballots in urn
  int parties = 2;                    // party-list
  std::vector<int> party_sizes;       // optional voters per party; must sum to n
  double mixing = 0.5;                // urn: chance of copying an earlier ballot
  std::uint64_t seed = 0;
};

// impartial: every (voter, candidate) pair approved independently.
// party-list: candidates split into contiguous near-equal blocks, one per
//   party; each voter approves exactly its party's block. Voters are dealt to
//   parties by party_sizes in order, or uniformly at random when empty.
// urn: each voter copies a uniformly chosen earlier ballot with probability
//   `mixing`, otherwise draws an impartial ballot.
Election generate(const BallotCulture& culture, int n, int m, int k);

// Ordered pair (premise, conclusion).
using AxiomPair = std::pair<Axiom, Axiom>;

// The implications known to hold for every committee of size k.
const std::vector<AxiomPair>& proven_implications();

struct StoredCounterexample {
  Axiom premise;
  Axiom conclusion;
  std::string origin;  // rule name and trial, or fixture label
  Election election;
  Committee committee;
};

struct PairCounts {
  std::uint64_t both_satisfied = 0;
  std::uint64_t premise_only = 0;      // premise satisfied, conclusion violated
  std::uint64_t premise_violated = 0;
};

// Counts over evaluated (election, committee) samples. Every sample that
// reaches a verdict for all axioms is counted in every pair. Samples where a
// rule or verifier ran out of budget only increment `inconclusive`; empty
// committees, which have no size to judge against, only increment
// `empty_committees`.
class ImplicationMatrix {
 public:
  ImplicationMatrix() = default;
  explicit ImplicationMatrix(std::vector<Axiom> axioms);

  const std::vector<Axiom>& axioms() const { return axioms_; }
  const PairCounts& counts(Axiom premise, Axiom conclusion) const;
  std::uint64_t samples() const { return samples_; }
  std::uint64_t inconclusive() const { return inconclusive_; }
  std::uint64_t empty_committees() const { return empty_; }
  std::uint64_t conclusive() const { return samples_ - inconclusive_ - empty_; }
  const std::vector<StoredCounterexample>& counterexamples() const { return counterexamples_; }
  // Stored examples of premise-satisfied, conclusion-violated.
  std::vector<const StoredCounterexample*> examples(Axiom premise, Axiom conclusion) const;

  // Adds one conclusive sample given verdicts aligned with axioms().
  void record(const std::vector<bool>& satisfied);
  void record_inconclusive() { ++samples_; ++inconclusive_; }
  void record_empty() { ++samples_; ++empty_; }
  void store(StoredCounterexample example) { counterexamples_.push_back(std::move(example)); }
  // Folds another matrix over the same axioms into this one.
  void merge(const ImplicationMatrix& other);

 private:
  int index_of(Axiom a) const;

  std::vector<Axiom> axioms_;
  std::vector<PairCounts> counts_;  // row-major premise × conclusion
  std::uint64_t samples_ = 0;
  std::uint64_t inconclusive_ = 0;
  std::uint64_t empty_ = 0;
  std::vector<StoredCounterexample> counterexamples_;
};

struct InjectedFixture {
  std::string label;
  Election election;
  Committee committee;
};

struct LabConfig {
  int trials = 0;
  BallotCulture culture;
  int min_voters = 1, max_voters = 8;
  int min_candidates = 1, max_candidates = 8;
  int min_committee = 1, max_committee = 4;
  bool committee_divides_voters = false;  // draw n as a multiple of k
  std::vector<Rule> rules;
  std::vector<Axiom> axioms;
  std::vector<InjectedFixture> fixtures;
  VerifierBudget budget;
  RuleOptions rule_options;
  int examples_per_pair = 1;
  bool minimize = true;
};

// Election for trial `trial` of `config`: sizes drawn from the configured
// ranges, then ballots from the culture, all from the trial's own stream.
// The party count is capped at the drawn number of candidates.
Election trial_election(const LabConfig& config, int trial);

// Evaluates every rule on every trial election, and every injected fixture,
// against every configured axiom. A rule's committee W is judged with k set
// to |W|, which only differs from the election's k for rules that may stop
// early (Equal Shares). Counterexamples to pairs (A, B) with A satisfied and
// B violated are stored, minimized, up to examples_per_pair each.
ImplicationMatrix run_matrix(const LabConfig& config);

using InstancePredicate = std::function<bool(const Election&, const Committee&)>;

// Greedy shrinking: repeatedly deletes the first voter, then the first
// candidate, whose removal keeps `keep` true, until no single deletion does.
// Candidate indices above a deleted one shift down; k is kept unless the
// deletion would leave fewer than k candidates, which is never attempted.
std::pair<Election, Committee> minimize_instance(const Election& e, const Committee& w, const InstancePredicate& keep);

// minimize_instance with "the axiom is violated". Throws PreconditionError if
// (e, w) does not violate it to begin with.
std::pair<Election, Committee> minimize_counterexample(const Election& e, const Committee& w, Axiom axiom,
                                                       const VerifierBudget& budget = {});

}  // namespace abcprop
