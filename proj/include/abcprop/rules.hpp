#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abcprop/election.hpp"
#include "abcprop/rational.hpp"

namespace abcprop {

// Exact rules refuse instances with more than this many size-k committees.
inline constexpr std::uint64_t kDefaultCommitteeBudget = 10'000'000;

// C(n, r), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int r);

// H(t) = 1 + 1/2 + ... + 1/t, H(0) = 0.
Rational harmonic(int t);

// Σ_v H(|A_v ∩ W|).
Rational pav_score(const Election& e, const Committee& w);

// Size-k committee maximising the PAV score; ties go to the lexicographically
// smallest sorted member list. Branch and bound over all C(m, k) committees;
// throws BudgetExceeded when C(m, k) > max_committees.
Committee pav_exact(const Election& e, std::uint64_t max_committees = kDefaultCommitteeBudget);

// Greedy PAV: k rounds, each adding the candidate with the largest marginal
// PAV gain (lowest index on ties).
Committee seq_pav(const Election& e);

// n / k², the default swap threshold for ls_pav.
Rational default_ls_pav_delta(const Election& e);

// Local-search PAV starting from seq_pav. Applies the first swap (outgoing
// member ascending, then incoming candidate ascending) that raises the score
// by at least delta, until none exists. delta must be positive.
Committee ls_pav(const Election& e, std::optional<Rational> delta = std::nullopt);

// Voter -> committee member assignment with per-member load between
// floor(n/k) and ceil(n/k).
struct MonroeAssignment {
  std::vector<int> assignment;  // indexed by voter
  int score = 0;                // voters assigned to a member they approve
};

// Best capacity-respecting assignment for a committee of exactly k members,
// via min-cost flow with lower bounds.
MonroeAssignment monroe_optimal_assignment(const Election& e, const Committee& w);

struct MonroeResult {
  Committee committee;
  MonroeAssignment assignment;
};

// Exact Monroe: the lexicographically first committee whose optimal
// assignment score is maximum. Same budget semantics as pav_exact.
MonroeResult monroe_exact(const Election& e, std::uint64_t max_committees = kDefaultCommitteeBudget);

MonroeResult greedy_monroe(const Election& e);

// Per-voter budgets and the fixed per-candidate price n/k.
struct BudgetState {
  std::vector<Rational> budgets;
  Rational price;
};

struct EqualSharesRound {
  int candidate;
  Rational max_payment;  // the smallest affordable per-voter cap q
};

struct EqualSharesResult {
  Committee committee;
  std::vector<EqualSharesRound> rounds;
  BudgetState state;
};

// Method of Equal Shares without a completion phase: may return fewer than k
// members once nothing is affordable.
EqualSharesResult equal_shares_run(const Election& e);
Committee equal_shares(const Election& e);

struct LoadState {
  std::vector<Rational> loads;
};

struct PhragmenResult {
  Committee committee;
  LoadState state;
};

// Sequential Phragmén, continuous-load form. Stops early if no unelected
// candidate has a supporter.
PhragmenResult seq_phragmen_run(const Election& e);
Committee seq_phragmen(const Election& e);

enum class Rule { kPav, kSeqPav, kLsPav, kMonroe, kGreedyMonroe, kEqualShares, kSeqPhragmen };

std::string rule_name(Rule rule);
std::optional<Rule> parse_rule(const std::string& name);
const std::vector<Rule>& all_rules();

struct RuleOptions {
  std::uint64_t max_committees = kDefaultCommitteeBudget;
  std::optional<Rational> ls_pav_delta;
};

Committee run_rule(const Election& e, Rule rule, const RuleOptions& options = {});

}  // namespace abcprop
