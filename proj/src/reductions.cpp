#include "abcprop/reductions.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "abcprop/errors.hpp"

namespace abcprop {

BipartiteGraph::BipartiteGraph(int left, int right, const std::vector<std::pair<int, int>>& edges)
    : left_(left), right_(right) {
  if (left < 1 || right < 1) throw InputError("graph sides must be non-empty");
  if (right > kMaxVoters) throw InputError("right side too large");
  adjacency_.assign(left, VoterSet{});
  for (auto [u, v] : edges) {
    if (u < 0 || u >= left || v < 0 || v >= right)
      throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range");
    if (adjacency_[u].test(v))
      throw InputError("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    adjacency_[u].set(v);
  }
  for (int u = 0; u < left; ++u)
    for (int v : adjacency_[u]) edges_.push_back({u, v});
}

std::vector<int> BipartiteGraph::left_neighbours(int v) const {
  std::vector<int> out;
  for (int u = 0; u < left_; ++u)
    if (adjacency_[u].test(v)) out.push_back(u);
  return out;
}

BipartiteGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::optional<std::pair<int, int>> sizes;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long a, b;
    if (!(fields >> a)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError(line_no, 1, "expected two integers");
    }
    std::string rest;
    if (!(fields >> b) || (fields >> rest)) throw ParseError(line_no, 1, "expected exactly two integers");
    if (a < 0 || b < 0 || a > 1'000'000 || b > 1'000'000) throw ParseError(line_no, 1, "value out of range");
    if (!sizes) {
      sizes = {static_cast<int>(a), static_cast<int>(b)};
      if (a < 1 || b < 1) throw ParseError(line_no, 1, "graph sides must be non-empty");
      continue;
    }
    if (a >= sizes->first || b >= sizes->second) throw ParseError(line_no, 1, "edge endpoint out of range");
    if (std::find(edges.begin(), edges.end(), std::pair<int, int>(a, b)) != edges.end())
      throw ParseError(line_no, 1, "duplicate edge");
    edges.push_back({static_cast<int>(a), static_cast<int>(b)});
  }
  if (!sizes) throw ParseError(std::max(line_no, 1), 1, "missing \"|L| |R|\" header");
  return BipartiteGraph(sizes->first, sizes->second, edges);
}

std::string serialize_graph(const BipartiteGraph& g) {
  std::ostringstream out;
  out << g.left_size() << ' ' << g.right_size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

std::optional<Biclique> biclique_exists(const BipartiteGraph& g, int ell) {
  if (ell < 1) throw InputError("biclique size must be positive");
  if (ell > g.left_size() || ell > g.right_size()) return std::nullopt;
  std::vector<int> pick;
  std::optional<Biclique> found;
  auto rec = [&](auto&& self, int next, const VoterSet& common) -> bool {
    if (common.count() < ell) return false;
    if (static_cast<int>(pick.size()) == ell) {
      auto right = common.to_vector();
      right.resize(ell);
      found = Biclique{pick, right};
      return true;
    }
    for (int u = next; u <= g.left_size() - (ell - static_cast<int>(pick.size())); ++u) {
      pick.push_back(u);
      if (self(self, u + 1, common & g.right_neighbours(u))) return true;
      pick.pop_back();
    }
    return false;
  };
  rec(rec, 0, VoterSet::prefix(g.right_size()));
  return found;
}

namespace {

void check_reduction_input(const BipartiteGraph& g, int ell) {
  if (ell < 3) throw InputError("reduction requires l >= 3");
  if (g.right_size() < ell) throw InputError("reduction requires |R| >= l");
}

int require_size(long long value, const char* what) {
  if (value < 0) throw InputError(std::string("negative derived size for ") + what);
  if (value > 100'000) throw InputError(std::string("derived size too large for ") + what);
  return static_cast<int>(value);
}

}  // namespace

ReductionOutput reduce_alg1(const BipartiteGraph& g, int ell) {
  check_reduction_input(g, ell);
  const long long s = g.right_size();
  const int c1 = g.left_size();
  const int c2 = require_size(ell - 1, "C2");
  const int c3 = require_size(ell * s + 2LL * ell - 3 * s - 2, "C3");
  const int v2 = require_size(ell * s, "V2");
  const int v3 = c3;
  const int m = c1 + c2 + c3;
  const int k = 2 * (ell - 1);

  ReductionOutput out{Election(1, 1, std::vector<CandidateSet>{CandidateSet{}}), {}, {}, {}, {}, static_cast<int>(s), ell};
  std::vector<CandidateSet> ballots;
  for (int r = 0; r < s; ++r) {
    CandidateSet a;
    for (int u : g.left_neighbours(r)) a.set(u);
    ballots.push_back(a);
    out.voter_groups.push_back("V1");
  }
  CandidateSet c1c2 = CandidateSet::prefix(c1 + c2);
  for (int i = 0; i < v2; ++i) {
    ballots.push_back(c1c2);
    out.voter_groups.push_back("V2");
  }
  for (int i = 0; i < v3; ++i) {
    const int c = c1 + c2 + i;
    CandidateSet a;
    a.set(c);
    out.phi.push_back({static_cast<int>(ballots.size()), c});
    ballots.push_back(a);
    out.voter_groups.push_back("V3");
  }
  for (int c = 0; c < m; ++c) out.candidate_groups.push_back(c < c1 ? "C1" : c < c1 + c2 ? "C2" : "C3");

  if (m > kMaxCandidates || static_cast<int>(ballots.size()) > kMaxVoters)
    throw InputError("reduction output exceeds supported election size");
  const long long n = static_cast<long long>(ballots.size());
  if (n != k * (s + 1)) throw PreconditionError("voter count is not k·(s+1)");
  out.election = Election(m, k, std::move(ballots));

  CandidateSet w;
  for (int i = 0; i < c2; ++i) w.set(c1 + i);
  for (int i = 0; i < ell - 1; ++i) w.set(c1 + c2 + i);
  out.winners = Committee{w, "reduction-pjr"};
  return out;
}

ReductionOutput reduce_alg2(const BipartiteGraph& g, int ell) {
  check_reduction_input(g, ell);
  const long long s = g.right_size();
  const int c1 = g.left_size();
  const int c2 = require_size(ell - 1, "C2");
  const int c3 = c2;
  const int c4 = require_size(s * ell - 3 * s + ell, "C4");
  const int v2 = require_size(ell * (s - 1), "V2");
  const int v3 = c4;
  const int m = c1 + c2 + c3 + c4;
  const int k = 2 * (ell - 1);
  const int c2_begin = c1, c3_begin = c1 + c2, c4_begin = c1 + c2 + c3;

  ReductionOutput out{Election(1, 1, std::vector<CandidateSet>{CandidateSet{}}), {}, {}, {}, {}, static_cast<int>(s), ell};
  CandidateSet group2, group3;
  for (int i = 0; i < c2; ++i) group2.set(c2_begin + i);
  for (int i = 0; i < c3; ++i) group3.set(c3_begin + i);

  std::vector<CandidateSet> ballots;
  for (int r = 0; r < s; ++r) {
    CandidateSet a = group2;
    for (int u : g.left_neighbours(r)) a.set(u);
    ballots.push_back(a);
    out.voter_groups.push_back("V1");
  }
  const CandidateSet v2_ballot = CandidateSet::prefix(c1) | group3;
  for (int i = 0; i < v2; ++i) {
    ballots.push_back(v2_ballot);
    out.voter_groups.push_back("V2");
  }
  for (int i = 0; i < v3; ++i) {
    const int c = c4_begin + i;
    CandidateSet a;
    a.set(c);
    out.phi.push_back({static_cast<int>(ballots.size()), c});
    ballots.push_back(a);
    out.voter_groups.push_back("V3");
  }
  for (int c = 0; c < m; ++c)
    out.candidate_groups.push_back(c < c2_begin ? "C1" : c < c3_begin ? "C2" : c < c4_begin ? "C3" : "C4");

  if (m > kMaxCandidates || static_cast<int>(ballots.size()) > kMaxVoters)
    throw InputError("reduction output exceeds supported election size");
  const long long n = static_cast<long long>(ballots.size());
  if (n != 2 * s * (ell - 1) || n != k * s) throw PreconditionError("voter count is not k·s");
  out.election = Election(m, k, std::move(ballots));
  out.winners = Committee{group2 | group3, "reduction-ejr"};
  return out;
}

}  // namespace abcprop
