#include "abcprop/pricing.hpp"

#include <map>
#include <set>
#include <utility>

#include "abcprop/errors.hpp"
#include "abcprop/flow.hpp"

namespace abcprop {

std::vector<Rational> PriceSystem::remaining_budgets(int num_voters) const {
  std::vector<Rational> b(num_voters, Rational(1));
  for (const auto& pay : payments)
    if (pay.voter >= 0 && pay.voter < num_voters) b[pay.voter] -= pay.amount;
  return b;
}

bool validate_price_system(const Election& e, const Committee& w, const PriceSystem& ps) {
  if (ps.price <= 0) return false;
  std::set<std::pair<int, int>> seen;
  std::vector<Rational> collected(e.num_candidates(), Rational(0));
  for (const auto& pay : ps.payments) {
    if (pay.voter < 0 || pay.voter >= e.num_voters() || pay.candidate < 0 || pay.candidate >= e.num_candidates())
      return false;
    if (!seen.insert({pay.voter, pay.candidate}).second) return false;
    if (pay.amount < 0 || pay.amount > 1) return false;
    if (pay.amount > 0 && (!w.members.test(pay.candidate) || !e.approvals(pay.voter).test(pay.candidate)))
      return false;
    collected[pay.candidate] += pay.amount;
  }
  const auto budget = ps.remaining_budgets(e.num_voters());
  for (const auto& b : budget)
    if (b < 0 || b > 1) return false;
  for (int c = 0; c < e.num_candidates(); ++c) {
    if (w.members.test(c)) {
      if (collected[c] != ps.price) return false;
    } else {
      Rational leftover = 0;
      for (int v : e.approvers(c)) leftover += budget[v];
      if (leftover > ps.price) return false;
    }
  }
  return true;
}

PriceabilityResult check_priceable(const Election& e, const Committee& w) {
  PriceabilityResult out;
  if (w.members.none()) {
    PriceSystem ps;
    ps.price = std::max(1, e.num_voters());
    out.priceable = true;
    out.status = LpStatus::kUnbounded;
    out.max_price = ps.price;
    out.system = std::move(ps);
    return out;
  }
  for (int c : w.members)
    if (e.approvers(c).none()) {
      out.reason = "winner " + std::to_string(c) + " has no supporters, so it cannot collect a positive price";
      return out;
    }

  // Variables: p, then one payment per (voter, approved winner).
  LinearProgram lp;
  const int price = lp.add_variable(Rational(0), std::nullopt, Rational(1));
  std::vector<std::vector<std::pair<int, int>>> voter_vars(e.num_voters());  // (candidate, var)
  std::map<int, std::vector<int>> winner_vars;
  for (int v = 0; v < e.num_voters(); ++v)
    for (int c : e.approvals(v) & w.members) {
      const int x = lp.add_variable(Rational(0));
      voter_vars[v].push_back({c, x});
      winner_vars[c].push_back(x);
    }
  for (int v = 0; v < e.num_voters(); ++v) {
    if (voter_vars[v].empty()) continue;
    std::vector<std::pair<int, Rational>> terms;
    for (auto [c, x] : voter_vars[v]) terms.push_back({x, Rational(1)});
    lp.add_constraint(std::move(terms), ConstraintSense::kLessEqual, Rational(1));
  }
  for (int c : w.members) {
    std::vector<std::pair<int, Rational>> terms{{price, Rational(-1)}};
    for (int x : winner_vars[c]) terms.push_back({x, Rational(1)});
    lp.add_constraint(std::move(terms), ConstraintSense::kEqual, Rational(0));
  }
  // Σ_{v∈N_c} (1 - spent_v) <= p  ⇔  -Σ spent_v - p <= -|N_c|.
  for (int c = 0; c < e.num_candidates(); ++c) {
    if (w.members.test(c) || e.approvers(c).none()) continue;
    std::vector<std::pair<int, Rational>> terms{{price, Rational(-1)}};
    for (int v : e.approvers(c))
      for (auto [_, x] : voter_vars[v]) terms.push_back({x, Rational(-1)});
    lp.add_constraint(std::move(terms), ConstraintSense::kLessEqual, Rational(-e.approvers(c).count()));
  }

  const auto sol = simplex_max(lp);
  out.status = sol.status;
  if (sol.status == LpStatus::kInfeasible) {
    out.reason = "no payment scheme keeps every non-winner's supporters at or below the price";
    return out;
  }
  if (sol.status == LpStatus::kUnbounded) throw PreconditionError("priceability LP unbounded");  // budgets bound p
  out.max_price = sol.optimum;
  if (sol.optimum <= 0) {
    out.reason = "the only supporting price is zero";
    return out;
  }
  PriceSystem ps;
  ps.price = sol.values[price];
  for (int v = 0; v < e.num_voters(); ++v)
    for (auto [c, x] : voter_vars[v])
      if (sol.values[x] != 0) ps.payments.push_back({v, c, sol.values[x]});
  out.priceable = true;
  out.system = std::move(ps);
  return out;
}

bool validate_per_partition(const Election& e, const Committee& w, const PerPartition& pp) {
  const int n = e.num_voters();
  const int k = e.committee_size();
  if (n % k != 0 || w.size() != k) return false;
  if (static_cast<int>(pp.parts.size()) != k || static_cast<int>(pp.assigned.size()) != k) return false;
  VoterSet covered;
  CandidateSet used;
  for (int i = 0; i < k; ++i) {
    const int c = pp.assigned[i];
    if (c < 0 || c >= e.num_candidates() || !w.members.test(c) || used.test(c)) return false;
    used.set(c);
    if (static_cast<int>(pp.parts[i].size()) != n / k) return false;
    for (int v : pp.parts[i]) {
      if (v < 0 || v >= n || covered.test(v) || !e.approvals(v).test(c)) return false;
      covered.set(v);
    }
  }
  return covered.count() == n;
}

std::optional<PerPartition> check_per(const Election& e, const Committee& w) {
  const int n = e.num_voters();
  const int k = e.committee_size();
  if (n % k != 0 || w.size() != k) return std::nullopt;
  const auto members = w.list();
  const int source = 0;
  const int sink = 1 + k + n;
  FlowNetwork net(k + n + 2, source, sink);
  std::vector<std::vector<std::pair<int, int>>> arcs(k);  // (voter, arc)
  for (int i = 0; i < k; ++i) {
    net.add_arc(source, 1 + i, n / k);
    for (int v : e.approvers(members[i])) arcs[i].push_back({v, net.add_arc(1 + i, 1 + k + v, 1)});
  }
  for (int v = 0; v < n; ++v) net.add_arc(1 + k + v, sink, 1);
  const auto flow = max_flow(net);
  if (flow.value != n) return std::nullopt;
  PerPartition pp;
  pp.parts.resize(k);
  for (int i = 0; i < k; ++i) {
    pp.assigned.push_back(members[i]);
    for (auto [v, a] : arcs[i])
      if (flow.arc_flow[a] == 1) pp.parts[i].push_back(v);
  }
  return pp;
}

PriceSystem per_implies_priceable_witness(const Election& e, const Committee& w, const PerPartition& pp) {
  if (!validate_per_partition(e, w, pp)) throw PreconditionError("invalid perfect-representation partition");
  PriceSystem ps;
  ps.price = make_rational(e.num_voters(), e.committee_size());
  for (std::size_t i = 0; i < pp.parts.size(); ++i)
    for (int v : pp.parts[i]) ps.payments.push_back({v, pp.assigned[i], Rational(1)});
  return ps;
}

}  // namespace abcprop
