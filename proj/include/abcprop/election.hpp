#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "abcprop/bitset.hpp"

namespace abcprop {

// An approval election: n ballots over m candidates and a target committee
// size k. Voters and candidates are dense 0-based indices. Immutable after
// construction, so instances can be shared freely between threads.
class Election {
 public:
  Election(int num_candidates, int committee_size, std::vector<CandidateSet> ballots);
  Election(int num_candidates, int committee_size, const std::vector<std::vector<int>>& ballots);

  int num_voters() const { return static_cast<int>(ballots_.size()); }
  int num_candidates() const { return num_candidates_; }
  int committee_size() const { return committee_size_; }

  // Unchecked accessors for hot loops; see the free functions below for the
  // validated variants.
  const CandidateSet& approvals(int voter) const { return ballots_[voter]; }
  const VoterSet& approvers(int candidate) const { return supporters_[candidate]; }
  const std::vector<CandidateSet>& ballots() const { return ballots_; }

  CandidateSet all_candidates() const { return CandidateSet::prefix(num_candidates_); }
  VoterSet all_voters() const { return VoterSet::prefix(num_voters()); }

  // Same ballots, different k.
  Election with_committee_size(int k) const;

  friend bool operator==(const Election& a, const Election& b) {
    return a.num_candidates_ == b.num_candidates_ && a.committee_size_ == b.committee_size_ &&
           a.ballots_ == b.ballots_;
  }

 private:
  int num_candidates_;
  int committee_size_;
  std::vector<CandidateSet> ballots_;
  std::vector<VoterSet> supporters_;
};

// A proposed set of winners and where it came from ("pav", "external", ...).
struct Committee {
  CandidateSet members;
  std::string source = "external";

  int size() const { return members.count(); }
  std::vector<int> list() const { return members.to_vector(); }
};

// Validates indices and |W| <= k.
Committee make_committee(const Election& e, const std::vector<int>& members, std::string source = "external");

// Coalition S, witness set T and level l.
struct CohesionCertificate {
  VoterSet coalition;
  CandidateSet witness;
  int level = 0;
};

// Coalition S that strictly prefers the alternative T to the committee.
struct CoreDeviation {
  VoterSet coalition;
  CandidateSet alternative;
};

// Coalition S unanimously approving the non-winner `candidate`, at level l.
struct Deprivation {
  VoterSet coalition;
  int candidate = -1;
  int level = 0;
};

using Certificate = std::variant<CohesionCertificate, CoreDeviation, Deprivation, std::string>;

enum class Axiom { kJR, kPJR, kEJR, kFJR, kFPJR, kCore, kEJRPlus, kPJRPlus, kPriceable, kPER };

std::string axiom_name(Axiom axiom);
// Accepts the CLI spellings ("fpjr", "ejr+", "ejr-plus", ...).
std::optional<Axiom> parse_axiom(const std::string& name);

struct AxiomReport {
  Axiom axiom;
  bool satisfied = true;
  std::optional<Certificate> certificate;
};

// N_c. Throws InputError for an out-of-range candidate.
VoterSet supporters(const Election& e, int candidate);

// |A_v ∩ s|. Throws InputError for an out-of-range voter.
int utility(const Election& e, int voter, const CandidateSet& s);

// |s ∩ ⋃_{v∈S} A_v|.
int collective_utility(const Election& e, const VoterSet& coalition, const CandidateSet& s);

// ⋃_{v∈S} A_v.
CandidateSet approved_by_any(const Election& e, const VoterSet& coalition);

// True iff |S|·k >= |T|·n and every voter in S approves at least `level`
// members of T. Exact integer arithmetic.
bool check_weak_cohesion(const Election& e, const CohesionCertificate& cert);

// Some c ∈ T with |N_c ∩ S|·k >= l·n. Such a candidate always exists for a
// weakly l-cohesive coalition (averaging over T); the lowest index is
// returned. Throws PreconditionError if the certificate is not valid.
int lemma1_witness(const Election& e, const CohesionCertificate& cert);

}  // namespace abcprop
