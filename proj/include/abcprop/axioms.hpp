#pragma once

#include <cstdint>

#include "abcprop/election.hpp"

namespace abcprop {

// Work limits for the exponential verifiers. A search that would need to go
// beyond either limit throws BudgetExceeded instead of returning a verdict.
struct VerifierBudget {
  int max_witness_size = -1;                    // -1: k
  std::uint64_t max_subsets_examined = 200'000'000;  // search nodes
};

// Polynomial scan over candidates.
AxiomReport verify_jr(const Election& e, const Committee& w);

// Violations are searched in order of witness size |T|, then level l, so the
// reported certificate is the smallest one; its coalition is the largest S
// that works for that (T, l).
AxiomReport verify_pjr(const Election& e, const Committee& w, const VerifierBudget& budget = {});
AxiomReport verify_ejr(const Election& e, const Committee& w, const VerifierBudget& budget = {});
AxiomReport verify_fpjr(const Election& e, const Committee& w, const VerifierBudget& budget = {});
AxiomReport verify_fjr(const Election& e, const Committee& w, const VerifierBudget& budget = {});
AxiomReport verify_core(const Election& e, const Committee& w, const VerifierBudget& budget = {});

// Polynomial: iterate non-winners c and levels l.
AxiomReport verify_ejr_plus(const Election& e, const Committee& w);
AxiomReport verify_pjr_plus(const Election& e, const Committee& w, const VerifierBudget& budget = {});

// Dispatches to the verifiers above; priceability and PER go through the
// pricing module and report a textual reason when they fail.
AxiomReport verify_axiom(Axiom axiom, const Election& e, const Committee& w, const VerifierBudget& budget = {});

// Re-validates a violated report's certificate against the raw axiom
// definition. Returns false for satisfied reports and for certificates of
// the wrong kind.
bool certificate_is_valid(const Election& e, const Committee& w, const AxiomReport& report);

}  // namespace abcprop
