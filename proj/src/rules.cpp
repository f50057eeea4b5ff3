#include "abcprop/rules.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "abcprop/errors.hpp"
#include "abcprop/flow.hpp"

namespace abcprop {

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= r; ++i) {
    acc = acc * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

Rational harmonic(int t) {
  Rational h = 0;
  for (int i = 1; i <= t; ++i) h += Rational(1, i);
  return h;
}

Rational pav_score(const Election& e, const Committee& w) {
  Rational total = 0;
  for (int v = 0; v < e.num_voters(); ++v) total += harmonic(e.approvals(v).count_and(w.members));
  return total;
}

namespace {

// PAV arithmetic in a chosen score type. With k <= 36 all harmonic numbers up
// to H(k) are integers after scaling by lcm(1..k), and n·lcm·H(k) fits in 64
// bits; beyond that exact rationals are used.
template <typename Score>
struct PavTable {
  Score scale;                  // 1 in the rational case
  std::vector<Score> marginal;  // marginal[t] = scale / (t + 1)
  std::vector<Score> prefix;    // prefix[t] = scale · H(t)

  Rational to_rational(const Score& s) const {
    if constexpr (std::is_same_v<Score, Rational>)
      return s;
    else
    {
      Rational q(mpz_class(std::to_string(s)), mpz_class(std::to_string(scale)));
      q.canonicalize();
      return q;
    }
  }
};

template <typename Fn>
decltype(auto) with_pav_table(int k, Fn&& fn) {
  if (k <= 36) {
    std::int64_t lcm = 1;
    for (int i = 1; i <= k; ++i) lcm = std::lcm(lcm, static_cast<std::int64_t>(i));
    PavTable<std::int64_t> t{lcm, {}, {0}};
    for (int i = 1; i <= k; ++i) {
      t.marginal.push_back(lcm / i);
      t.prefix.push_back(t.prefix.back() + lcm / i);
    }
    return fn(t);
  }
  PavTable<Rational> t{Rational(1), {}, {Rational(0)}};
  for (int i = 1; i <= k; ++i) {
    t.marginal.push_back(Rational(1, i));
    t.prefix.push_back(t.prefix.back() + Rational(1, i));
  }
  return fn(t);
}

template <typename Score>
Score scaled_score(const Election& e, const PavTable<Score>& table, const CandidateSet& w) {
  Score total = 0;
  for (int v = 0; v < e.num_voters(); ++v) total += table.prefix[e.approvals(v).count_and(w)];
  return total;
}

template <typename Score>
Committee seq_pav_impl(const Election& e, const PavTable<Score>& table) {
  std::vector<int> util(e.num_voters(), 0);
  Committee w;
  w.source = "seq-pav";
  for (int round = 0; round < e.committee_size(); ++round) {
    int best = -1;
    Score best_gain = 0;
    for (int c = 0; c < e.num_candidates(); ++c) {
      if (w.members.test(c)) continue;
      Score gain = 0;
      for (int v : e.approvers(c)) gain += table.marginal[util[v]];
      if (best < 0 || gain > best_gain) {
        best = c;
        best_gain = gain;
      }
    }
    w.members.set(best);
    for (int v : e.approvers(best)) ++util[v];
  }
  return w;
}

template <typename Score>
class PavBranchAndBound {
 public:
  PavBranchAndBound(const Election& e, const PavTable<Score>& table) : e_(e), table_(table), util_(e.num_voters(), 0) {}

  CandidateSet run() {
    dfs(0, 0, Score(0));
    return best_set_;
  }

 private:
  Score gain(int c) const {
    Score g = 0;
    for (int v : e_.approvers(c)) g += table_.marginal[util_[v]];
    return g;
  }

  void dfs(int next, int chosen, Score current) {
    const int k = e_.committee_size();
    const int m = e_.num_candidates();
    if (chosen == k) {
      if (!have_best_ || current > best_) {
        best_ = current;
        best_set_ = current_set_;
        have_best_ = true;
      }
      return;
    }
    const int slots = k - chosen;
    if (m - next < slots) return;
    if (have_best_) {
      // Marginal gains only shrink as members are added, so the best `slots`
      // current gains bound any completion.
      std::vector<Score> gains;
      gains.reserve(m - next);
      for (int c = next; c < m; ++c) gains.push_back(gain(c));
      std::partial_sort(gains.begin(), gains.begin() + slots, gains.end(), std::greater<>());
      Score bound = current;
      for (int i = 0; i < slots; ++i) bound += gains[i];
      if (bound <= best_) return;
    }
    for (int c = next; c <= m - slots; ++c) {
      const Score g = gain(c);
      for (int v : e_.approvers(c)) ++util_[v];
      current_set_.set(c);
      dfs(c + 1, chosen + 1, current + g);
      current_set_.reset(c);
      for (int v : e_.approvers(c)) --util_[v];
    }
  }

  const Election& e_;
  const PavTable<Score>& table_;
  std::vector<int> util_;
  CandidateSet current_set_;
  CandidateSet best_set_;
  Score best_ = 0;
  bool have_best_ = false;
};

void check_committee_budget(const Election& e, std::uint64_t max_committees, const char* rule, const char* hint) {
  const auto count = binomial(e.num_candidates(), e.committee_size());
  if (count > max_committees)
    throw BudgetExceeded(std::string(rule) + ": C(m,k) = " + std::to_string(count) + " committees exceeds the limit " +
                         std::to_string(max_committees) + "; " + hint);
}

}  // namespace

Committee pav_exact(const Election& e, std::uint64_t max_committees) {
  check_committee_budget(e, max_committees, "pav", "use seq-pav or ls-pav instead");
  return with_pav_table(e.committee_size(), [&](const auto& table) {
    using Score = typename std::decay_t<decltype(table.scale)>;
    PavBranchAndBound<Score> search(e, table);
    return Committee{search.run(), "pav"};
  });
}

Committee seq_pav(const Election& e) {
  return with_pav_table(e.committee_size(), [&](const auto& table) { return seq_pav_impl(e, table); });
}

Rational default_ls_pav_delta(const Election& e) {
  return make_rational(e.num_voters(), e.committee_size() * e.committee_size());
}

Committee ls_pav(const Election& e, std::optional<Rational> delta) {
  const Rational threshold = delta.value_or(default_ls_pav_delta(e));
  if (threshold <= 0) throw InputError("ls-pav threshold must be positive");
  return with_pav_table(e.committee_size(), [&](const auto& table) {
    Committee w = seq_pav_impl(e, table);
    w.source = "ls-pav";
    auto current = scaled_score(e, table, w.members);
    bool improved = true;
    while (improved) {
      improved = false;
      for (int out : w.members.to_vector()) {
        for (int in = 0; in < e.num_candidates() && !improved; ++in) {
          if (w.members.test(in)) continue;
          CandidateSet next = w.members;
          next.reset(out);
          next.set(in);
          const auto score = scaled_score(e, table, next);
          if (table.to_rational(score - current) >= threshold) {
            w.members = next;
            current = score;
            improved = true;
          }
        }
        if (improved) break;
      }
    }
    return w;
  });
}

MonroeAssignment monroe_optimal_assignment(const Election& e, const Committee& w) {
  const int n = e.num_voters();
  const int k = e.committee_size();
  if (w.size() != k) throw PreconditionError("Monroe assignment needs a committee of exactly k members");
  const auto members = w.list();
  // Nodes: source 0, members 1..k, voters k+1..k+n, sink k+n+1.
  const int source = 0;
  const int sink = k + n + 1;
  FlowNetwork net(k + n + 2, source, sink);
  const std::int64_t lo = n / k;
  const std::int64_t hi = (n + k - 1) / k;
  std::vector<std::vector<int>> arc_of(k, std::vector<int>(n));
  for (int i = 0; i < k; ++i) {
    net.add_arc(source, 1 + i, hi, 0, lo);
    for (int v = 0; v < n; ++v)
      arc_of[i][v] = net.add_arc(1 + i, k + 1 + v, 1, e.approvals(v).test(members[i]) ? -1 : 0);
  }
  for (int v = 0; v < n; ++v) net.add_arc(k + 1 + v, sink, 1);
  auto flow = min_cost_flow_with_bounds(net, n);
  if (!flow) throw PreconditionError("Monroe capacities infeasible");  // impossible when |W| = k
  MonroeAssignment out;
  out.assignment.assign(n, -1);
  out.score = static_cast<int>(-flow->cost);
  for (int i = 0; i < k; ++i)
    for (int v = 0; v < n; ++v)
      if (flow->arc_flow[arc_of[i][v]] == 1) out.assignment[v] = members[i];
  return out;
}

MonroeResult monroe_exact(const Election& e, std::uint64_t max_committees) {
  check_committee_budget(e, max_committees, "monroe", "use greedy-monroe instead");
  const int n = e.num_voters();
  const int k = e.committee_size();
  const int m = e.num_candidates();
  const int hi = (n + k - 1) / k;

  std::optional<MonroeResult> best;
  std::vector<int> combo(k);
  std::iota(combo.begin(), combo.end(), 0);
  while (true) {
    Committee w;
    w.source = "monroe";
    int bound = 0;
    for (int c : combo) {
      w.members.set(c);
      bound += std::min(hi, e.approvers(c).count());
    }
    if (!best || std::min(bound, n) > best->assignment.score) {
      auto a = monroe_optimal_assignment(e, w);
      if (!best || a.score > best->assignment.score) best = MonroeResult{w, std::move(a)};
      if (best->assignment.score == n) break;
    }
    // Next combination in lexicographic order.
    int i = k - 1;
    while (i >= 0 && combo[i] == m - k + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return *best;
}

MonroeResult greedy_monroe(const Election& e) {
  const int n = e.num_voters();
  const int k = e.committee_size();
  VoterSet unassigned = e.all_voters();
  MonroeResult out;
  out.committee.source = "greedy-monroe";
  out.assignment.assignment.assign(n, -1);
  for (int round = 0; round < k; ++round) {
    int best = -1;
    int best_count = -1;
    for (int c = 0; c < e.num_candidates(); ++c) {
      if (out.committee.members.test(c)) continue;
      const int count = e.approvers(c).count_and(unassigned);
      if (count > best_count) {
        best = c;
        best_count = count;
      }
    }
    // ceil(remaining voters / remaining slots): ceil(n/k) until the remainder
    // divides evenly, floor(n/k) afterwards.
    const int remaining = unassigned.count();
    const int slots = k - round;
    int quota = (remaining + slots - 1) / slots;
    for (int pass = 0; pass < 2 && quota > 0; ++pass) {
      for (int v : unassigned) {
        if (quota == 0) break;
        if (pass == 0 && !e.approvals(v).test(best)) continue;
        out.assignment.assignment[v] = best;
        if (e.approvals(v).test(best)) ++out.assignment.score;
        --quota;
      }
      for (int v = 0; v < n; ++v)
        if (out.assignment.assignment[v] == best) unassigned.reset(v);
    }
    out.committee.members.set(best);
  }
  return out;
}

EqualSharesResult equal_shares_run(const Election& e) {
  const int n = e.num_voters();
  const int k = e.committee_size();
  EqualSharesResult out;
  out.committee.source = "equal-shares";
  out.state.price = make_rational(n, k);
  out.state.budgets.assign(n, Rational(1));
  auto& budgets = out.state.budgets;
  const Rational& price = out.state.price;

  while (out.committee.size() < k) {
    int best = -1;
    Rational best_q;
    for (int c = 0; c < e.num_candidates(); ++c) {
      if (out.committee.members.test(c) || e.approvers(c).none()) continue;
      std::vector<Rational> b;
      for (int v : e.approvers(c)) b.push_back(budgets[v]);
      std::sort(b.begin(), b.end());
      // Smallest q with Σ min(b_v, q) = price.
      Rational paid = 0;
      std::optional<Rational> q;
      for (std::size_t i = 0; i < b.size(); ++i) {
        const Rational rest = price - paid;
        const int payers = static_cast<int>(b.size() - i);
        if (b[i] * payers >= rest) {
          q = rest / payers;
          break;
        }
        paid += b[i];
      }
      if (q && (best < 0 || *q < best_q)) {
        best = c;
        best_q = *q;
      }
    }
    if (best < 0) break;
    for (int v : e.approvers(best)) budgets[v] -= std::min(budgets[v], best_q);
    out.committee.members.set(best);
    out.rounds.push_back({best, best_q});
  }
  return out;
}

Committee equal_shares(const Election& e) { return equal_shares_run(e).committee; }

PhragmenResult seq_phragmen_run(const Election& e) {
  PhragmenResult out;
  out.committee.source = "seq-phragmen";
  out.state.loads.assign(e.num_voters(), Rational(0));
  auto& loads = out.state.loads;
  for (int round = 0; round < e.committee_size(); ++round) {
    int best = -1;
    Rational best_t;
    for (int c = 0; c < e.num_candidates(); ++c) {
      if (out.committee.members.test(c)) continue;
      const int support = e.approvers(c).count();
      if (support == 0) continue;
      Rational t = 1;
      for (int v : e.approvers(c)) t += loads[v];
      t /= support;
      if (best < 0 || t < best_t) {
        best = c;
        best_t = t;
      }
    }
    if (best < 0) break;
    for (int v : e.approvers(best)) loads[v] = best_t;
    out.committee.members.set(best);
  }
  return out;
}

Committee seq_phragmen(const Election& e) { return seq_phragmen_run(e).committee; }

std::string rule_name(Rule rule) {
  switch (rule) {
    case Rule::kPav: return "pav";
    case Rule::kSeqPav: return "seq-pav";
    case Rule::kLsPav: return "ls-pav";
    case Rule::kMonroe: return "monroe";
    case Rule::kGreedyMonroe: return "greedy-monroe";
    case Rule::kEqualShares: return "equal-shares";
    case Rule::kSeqPhragmen: return "seq-phragmen";
  }
  return "?";
}

std::optional<Rule> parse_rule(const std::string& name) {
  for (Rule r : all_rules())
    if (rule_name(r) == name) return r;
  return std::nullopt;
}

const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules = {Rule::kPav,          Rule::kSeqPav,      Rule::kLsPav,       Rule::kMonroe,
                                          Rule::kGreedyMonroe, Rule::kEqualShares, Rule::kSeqPhragmen};
  return rules;
}

Committee run_rule(const Election& e, Rule rule, const RuleOptions& options) {
  switch (rule) {
    case Rule::kPav: return pav_exact(e, options.max_committees);
    case Rule::kSeqPav: return seq_pav(e);
    case Rule::kLsPav: return ls_pav(e, options.ls_pav_delta);
    case Rule::kMonroe: return monroe_exact(e, options.max_committees).committee;
    case Rule::kGreedyMonroe: return greedy_monroe(e).committee;
    case Rule::kEqualShares: return equal_shares(e);
    case Rule::kSeqPhragmen: return seq_phragmen(e);
  }
  throw InputError("unknown rule");
}

}  // namespace abcprop
