#include <doctest.h>

#include "abcprop/errors.hpp"
#include "abcprop/io.hpp"
#include "abcprop/lab.hpp"
#include "abcprop/pricing.hpp"

using namespace abcprop;

namespace {

Election example_one(int k = 12, int extra_voters = 0, int extra_candidates = 0) {
  std::vector<std::vector<int>> ballots = {{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 2, 5}, {6, 7, 8}, {9, 10, 11}, {12, 13, 14}};
  for (int i = 0; i < extra_voters; ++i) ballots.push_back({});
  return Election(15 + extra_candidates, k, ballots);
}

const std::vector<int> kPavWinners = {0, 1, 2, 6, 7, 8, 9, 10, 11, 12, 13, 14};

std::vector<Axiom> every_axiom() {
  return {Axiom::kJR,   Axiom::kPJR,     Axiom::kEJR,     Axiom::kFJR,       Axiom::kFPJR,
          Axiom::kCore, Axiom::kEJRPlus, Axiom::kPJRPlus, Axiom::kPriceable, Axiom::kPER};
}

}  // namespace

TEST_CASE("generation is deterministic per seed") {
  for (auto model : {CultureModel::kImpartial, CultureModel::kPartyList, CultureModel::kUrn}) {
    BallotCulture c;
    c.model = model;
    c.seed = 99;
    c.parties = 3;
    const auto a = generate(c, 9, 7, 3);
    const auto b = generate(c, 9, 7, 3);
    CHECK(serialize_election(a) == serialize_election(b));
    c.seed = 100;
    const auto d = generate(c, 9, 7, 3);
    CHECK(d.num_voters() == 9);
  }
}

TEST_CASE("impartial culture approval rate") {
  BallotCulture c;
  c.approval_probability = 0.5;
  long long total = 0;
  for (int draw = 0; draw < 1000; ++draw) {
    c.seed = static_cast<std::uint64_t>(draw);
    const auto e = generate(c, 6, 6, 3);
    for (const auto& b : e.ballots()) total += b.count();
  }
  const double mean = static_cast<double>(total) / 6000.0;
  CHECK(mean == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("party-list culture admits perfect representation") {
  BallotCulture c;
  c.model = CultureModel::kPartyList;
  c.parties = 3;
  c.party_sizes = {2, 2, 2};
  const auto e = generate(c, 6, 6, 3);
  // Blocks {0,1}, {2,3}, {4,5}; one member per party.
  const Committee w = make_committee(e, {0, 2, 4});
  CHECK(check_per(e, w).has_value());
  c.party_sizes = {2, 2};
  CHECK_THROWS_AS(generate(c, 6, 6, 3), InputError);
}

TEST_CASE("generation validates parameters") {
  BallotCulture c;
  CHECK_THROWS_AS(generate(c, 0, 3, 1), InputError);
  CHECK_THROWS_AS(generate(c, 3, 3, 4), InputError);
  c.approval_probability = 1.0;
  CHECK_THROWS_AS(generate(c, 3, 3, 1), InputError);
  c.approval_probability = 0.5;
  c.model = CultureModel::kPartyList;
  c.parties = 4;
  CHECK_THROWS_AS(generate(c, 3, 3, 1), InputError);
}

TEST_CASE("trial elections depend only on seed and trial index") {
  LabConfig config;
  config.culture.seed = 5;
  const auto a = trial_election(config, 17);
  const auto b = trial_election(config, 17);
  CHECK(a == b);
  config.committee_divides_voters = true;
  for (int t = 0; t < 50; ++t) {
    const auto e = trial_election(config, t);
    CHECK(e.num_voters() % e.committee_size() == 0);
  }
}

TEST_CASE("zero trials give an empty matrix") {
  LabConfig config;
  config.trials = 0;
  config.rules = all_rules();
  config.axioms = every_axiom();
  const auto m = run_matrix(config);
  CHECK(m.samples() == 0);
  CHECK(m.counterexamples().empty());
  CHECK(m.counts(Axiom::kEJR, Axiom::kPJR).both_satisfied == 0);
}

TEST_CASE("implication matrix counts and proven arrows") {
  LabConfig config;
  config.trials = 40;
  config.culture.seed = 2024;
  config.max_voters = 7;
  config.max_candidates = 6;
  config.max_committee = 3;
  config.rules = all_rules();
  config.axioms = every_axiom();
  config.fixtures.push_back({"first-example", example_one(), make_committee(example_one(), kPavWinners)});
  const auto m = run_matrix(config);
  CHECK(m.samples() == 40 * all_rules().size() + 1);
  const auto conclusive = m.conclusive();
  for (Axiom a : config.axioms)
    for (Axiom b : config.axioms) {
      const auto& c = m.counts(a, b);
      CHECK(c.both_satisfied + c.premise_only + c.premise_violated == conclusive);
    }
  for (auto [a, b] : proven_implications()) {
    CHECK_MESSAGE(m.counts(a, b).premise_only == 0, axiom_name(a), " => ", axiom_name(b));
    CHECK(m.examples(a, b).empty());
  }
  // The injected example separates EJR from FPJR.
  CHECK(m.counts(Axiom::kEJR, Axiom::kFPJR).premise_only >= 1);
  const auto ex = m.examples(Axiom::kEJR, Axiom::kFPJR);
  REQUIRE(!ex.empty());
  for (const auto& stored : m.counterexamples()) {
    CHECK(stored.election.committee_size() == stored.committee.size());
    CHECK(verify_axiom(stored.premise, stored.election, stored.committee).satisfied);
    CHECK_FALSE(verify_axiom(stored.conclusion, stored.election, stored.committee).satisfied);
  }
}

TEST_CASE("matrix runs are reproducible") {
  LabConfig config;
  config.trials = 15;
  config.culture.seed = 8;
  config.culture.model = CultureModel::kUrn;
  config.rules = {Rule::kSeqPav, Rule::kGreedyMonroe};
  config.axioms = every_axiom();
  CHECK(matrix_to_json(run_matrix(config)) == matrix_to_json(run_matrix(config)));
}

TEST_CASE("merging matrices adds counts") {
  ImplicationMatrix a({Axiom::kJR, Axiom::kPJR});
  ImplicationMatrix b({Axiom::kJR, Axiom::kPJR});
  a.record({true, false});
  b.record({true, true});
  b.record_inconclusive();
  b.record_empty();
  a.merge(b);
  CHECK(a.samples() == 4);
  CHECK(a.inconclusive() == 1);
  CHECK(a.empty_committees() == 1);
  CHECK(a.conclusive() == 2);
  CHECK(a.counts(Axiom::kJR, Axiom::kPJR).premise_only == 1);
  CHECK(a.counts(Axiom::kJR, Axiom::kPJR).both_satisfied == 1);
  CHECK(a.counts(Axiom::kPJR, Axiom::kJR).premise_violated == 1);
  CHECK_THROWS_AS(a.merge(ImplicationMatrix({Axiom::kJR})), InputError);
}

TEST_CASE("minimization keeps the violation and drops padding") {
  // Three extra voters approving nothing; k and m raised so that the
  // original group is still large enough for its six-candidate witness.
  const Election padded = example_one(18, 3, 3);
  const Committee w = make_committee(padded, kPavWinners);
  REQUIRE_FALSE(verify_axiom(Axiom::kFPJR, padded, w).satisfied);
  const auto [me, mw] = minimize_counterexample(padded, w, Axiom::kFPJR);
  CHECK_FALSE(verify_axiom(Axiom::kFPJR, me, mw).satisfied);
  CHECK(me.num_voters() <= 6);
  CHECK(me.num_candidates() <= padded.num_candidates());
  for (const auto& b : me.ballots()) CHECK(b.any());
}

TEST_CASE("minimization requires a violation to start from") {
  // With k = 12 the padded group of nine voters no longer reaches 6n/k.
  const Election padded = example_one(12, 3);
  const Committee w = make_committee(padded, kPavWinners);
  CHECK(verify_axiom(Axiom::kFPJR, padded, w).satisfied);
  CHECK_THROWS_AS(minimize_counterexample(padded, w, Axiom::kFPJR), PreconditionError);
}

TEST_CASE("minimal instances are left alone") {
  const Election e(1, 1, std::vector<std::vector<int>>{{0}});
  const Committee w;
  const auto [me, mw] = minimize_counterexample(e, w, Axiom::kJR);
  CHECK(me == e);
  CHECK(mw.members == w.members);
}
