#include "abcprop/election.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>

#include "abcprop/errors.hpp"

namespace abcprop {

namespace {

void check_dimensions(int m, int k, std::size_t n) {
  if (m < 1) throw InputError("election needs at least one candidate");
  if (m > kMaxCandidates) throw InputError("at most " + std::to_string(kMaxCandidates) + " candidates supported");
  if (k < 1 || k > m) throw InputError("committee size must satisfy 1 <= k <= m");
  if (n < 1) throw InputError("election needs at least one voter");
  if (n > static_cast<std::size_t>(kMaxVoters))
    throw InputError("at most " + std::to_string(kMaxVoters) + " voters supported");
}

}  // namespace

Election::Election(int num_candidates, int committee_size, std::vector<CandidateSet> ballots)
    : num_candidates_(num_candidates), committee_size_(committee_size), ballots_(std::move(ballots)) {
  check_dimensions(num_candidates_, committee_size_, ballots_.size());
  const CandidateSet universe = all_candidates();
  supporters_.assign(num_candidates_, VoterSet{});
  for (int v = 0; v < num_voters(); ++v) {
    if (!ballots_[v].is_subset_of(universe))
      throw InputError("voter " + std::to_string(v) + " approves a candidate outside [0, m)");
    for (int c : ballots_[v]) supporters_[c].set(v);
  }
}

Election::Election(int num_candidates, int committee_size, const std::vector<std::vector<int>>& ballots)
    : num_candidates_(num_candidates), committee_size_(committee_size) {
  check_dimensions(num_candidates_, committee_size_, ballots.size());
  ballots_.reserve(ballots.size());
  for (std::size_t v = 0; v < ballots.size(); ++v) {
    CandidateSet b;
    for (int c : ballots[v]) {
      if (c < 0 || c >= num_candidates_)
        throw InputError("voter " + std::to_string(v) + " approves out-of-range candidate " + std::to_string(c));
      b.set(c);
    }
    ballots_.push_back(b);
  }
  supporters_.assign(num_candidates_, VoterSet{});
  for (int v = 0; v < num_voters(); ++v)
    for (int c : ballots_[v]) supporters_[c].set(v);
}

Election Election::with_committee_size(int k) const { return Election(num_candidates_, k, ballots_); }

Committee make_committee(const Election& e, const std::vector<int>& members, std::string source) {
  Committee w;
  w.source = std::move(source);
  for (int c : members) {
    if (c < 0 || c >= e.num_candidates()) throw InputError("committee member " + std::to_string(c) + " out of range");
    if (w.members.test(c)) throw InputError("committee member " + std::to_string(c) + " listed twice");
    w.members.set(c);
  }
  if (w.size() > e.committee_size()) throw InputError("committee larger than k");
  return w;
}

std::string axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::kJR: return "jr";
    case Axiom::kPJR: return "pjr";
    case Axiom::kEJR: return "ejr";
    case Axiom::kFJR: return "fjr";
    case Axiom::kFPJR: return "fpjr";
    case Axiom::kCore: return "core";
    case Axiom::kEJRPlus: return "ejr+";
    case Axiom::kPJRPlus: return "pjr+";
    case Axiom::kPriceable: return "priceable";
    case Axiom::kPER: return "per";
  }
  return "?";
}

std::optional<Axiom> parse_axiom(const std::string& name) {
  std::string s;
  for (char ch : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (s == "jr") return Axiom::kJR;
  if (s == "pjr") return Axiom::kPJR;
  if (s == "ejr") return Axiom::kEJR;
  if (s == "fjr") return Axiom::kFJR;
  if (s == "fpjr") return Axiom::kFPJR;
  if (s == "core") return Axiom::kCore;
  if (s == "ejr+" || s == "ejr-plus" || s == "ejrplus") return Axiom::kEJRPlus;
  if (s == "pjr+" || s == "pjr-plus" || s == "pjrplus") return Axiom::kPJRPlus;
  if (s == "priceable" || s == "priceability") return Axiom::kPriceable;
  if (s == "per") return Axiom::kPER;
  return std::nullopt;
}

VoterSet supporters(const Election& e, int candidate) {
  if (candidate < 0 || candidate >= e.num_candidates())
    throw InputError("candidate " + std::to_string(candidate) + " out of range");
  return e.approvers(candidate);
}

int utility(const Election& e, int voter, const CandidateSet& s) {
  if (voter < 0 || voter >= e.num_voters()) throw InputError("voter " + std::to_string(voter) + " out of range");
  return e.approvals(voter).count_and(s);
}

CandidateSet approved_by_any(const Election& e, const VoterSet& coalition) {
  CandidateSet all;
  for (int v : coalition) {
    if (v >= e.num_voters()) throw InputError("voter " + std::to_string(v) + " out of range");
    all |= e.approvals(v);
  }
  return all;
}

int collective_utility(const Election& e, const VoterSet& coalition, const CandidateSet& s) {
  return approved_by_any(e, coalition).count_and(s);
}

bool check_weak_cohesion(const Election& e, const CohesionCertificate& cert) {
  const long long n = e.num_voters();
  const long long k = e.committee_size();
  if (!cert.coalition.is_subset_of(e.all_voters()) || !cert.witness.is_subset_of(e.all_candidates())) return false;
  if (cert.coalition.none() || cert.witness.none() || cert.level < 1) return false;
  if (static_cast<long long>(cert.coalition.count()) * k < static_cast<long long>(cert.witness.count()) * n) return false;
  for (int v : cert.coalition)
    if (e.approvals(v).count_and(cert.witness) < cert.level) return false;
  return true;
}

int lemma1_witness(const Election& e, const CohesionCertificate& cert) {
  if (!check_weak_cohesion(e, cert)) throw PreconditionError("lemma1_witness needs a valid weak-cohesion certificate");
  const long long need = static_cast<long long>(cert.level) * e.num_voters();
  for (int c : cert.witness)
    if (static_cast<long long>(e.approvers(c).count_and(cert.coalition)) * e.committee_size() >= need) return c;
  throw PreconditionError("no witness candidate found for a valid certificate");
}

}  // namespace abcprop
