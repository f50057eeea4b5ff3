#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abcprop/election.hpp"
#include "abcprop/rational.hpp"
#include "abcprop/simplex.hpp"

namespace abcprop {

struct Payment {
  int voter;
  int candidate;
  Rational amount;
};

// Price p and sparse payments p_v(c); omitted pairs pay zero.
struct PriceSystem {
  Rational price;
  std::vector<Payment> payments;

  // b_v = 1 - Σ_c p_v(c).
  std::vector<Rational> remaining_budgets(int num_voters) const;
};

// Checks every price-system constraint for supporting `w`, exactly:
// p > 0, payments in [0,1] and only to approved winners, per-voter spending
// at most 1, every winner collects exactly p, and no non-winner's supporters
// hold more than p of unspent budget.
bool validate_price_system(const Election& e, const Committee& w, const PriceSystem& ps);

struct PriceabilityResult {
  bool priceable = false;
  std::optional<PriceSystem> system;  // witness at the maximum price
  LpStatus status = LpStatus::kInfeasible;
  Rational max_price;  // LP optimum when status is optimal
  std::string reason;  // why not, when not priceable
};

// Maximises p over price systems supporting `w` with an exact LP. The
// election's k plays no role: priceability only concerns |W|. The empty
// committee is priceable at any large enough price; it reports status
// kUnbounded with price max(1, n).
PriceabilityResult check_priceable(const Election& e, const Committee& w);

// Voter groups of size n/k, group i unanimously approving assigned[i].
struct PerPartition {
  std::vector<std::vector<int>> parts;
  std::vector<int> assigned;
};

bool validate_per_partition(const Election& e, const Committee& w, const PerPartition& pp);

// Perfect representation via max-flow. nullopt when k does not divide n, when
// |W| != k, or when no partition exists.
std::optional<PerPartition> check_per(const Election& e, const Committee& w);

// Each group spends its whole budget on its own candidate: p = n/k and every
// voter pays 1. Throws PreconditionError for an invalid partition.
PriceSystem per_implies_priceable_witness(const Election& e, const Committee& w, const PerPartition& pp);

}  // namespace abcprop
