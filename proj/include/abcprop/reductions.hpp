#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abcprop/election.hpp"

namespace abcprop {

// Bipartite graph with left vertices 0..|L|-1 and right vertices 0..|R|-1.
class BipartiteGraph {
 public:
  // Throws InputError on empty sides, out-of-range endpoints or repeated edges.
  BipartiteGraph(int left, int right, const std::vector<std::pair<int, int>>& edges);

  int left_size() const { return left_; }
  int right_size() const { return right_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool has_edge(int u, int v) const { return adjacency_[u].test(v); }
  // Left neighbours of right vertex v.
  std::vector<int> left_neighbours(int v) const;
  // Right neighbours of left vertex u, as a bitmask over R.
  const VoterSet& right_neighbours(int u) const { return adjacency_[u]; }

 private:
  int left_;
  int right_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<VoterSet> adjacency_;
};

// "|L| |R|" on the first line, then one "u v" edge per line. Blank lines and
// '#' comments are ignored.
BipartiteGraph parse_graph(const std::string& text);
std::string serialize_graph(const BipartiteGraph& g);

struct Biclique {
  std::vector<int> left;
  std::vector<int> right;
};

// Brute force over left subsets of size l; the first biclique in
// lexicographic order of its left side is returned.
std::optional<Biclique> biclique_exists(const BipartiteGraph& g, int ell);

struct ReductionOutput {
  Election election;
  Committee winners;
  std::vector<std::string> voter_groups;      // "V1".."V3"
  std::vector<std::string> candidate_groups;  // "C1".."C4"
  std::vector<std::pair<int, int>> phi;       // (V3 voter, its single candidate)
  int segment = 0;                            // s = |R|
  int ell = 0;
};

// Instance whose committee violates FPJR (and PJR) iff the graph has an
// l×l biclique. Candidates are laid out C1 = L, C2, C3; voters V1 = R, V2, V3.
// Requires |R| >= l >= 3.
ReductionOutput reduce_alg1(const BipartiteGraph& g, int ell);

// Instance whose committee violates FJR, EJR and the core iff the graph has an
// l×l biclique. Candidates C1 = L, C2, C3, C4; voters V1 = R, V2, V3.
// Requires |R| >= l >= 3.
ReductionOutput reduce_alg2(const BipartiteGraph& g, int ell);

}  // namespace abcprop
