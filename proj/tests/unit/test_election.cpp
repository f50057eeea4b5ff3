#include <doctest.h>

#include "abcprop/election.hpp"
#include "abcprop/errors.hpp"
#include "abcprop/lab.hpp"
#include "oracles.hpp"

using namespace abcprop;

namespace {

Election example_one() {
  return Election(15, 12, std::vector<std::vector<int>>{{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 2, 5}, {6, 7, 8}, {9, 10, 11}, {12, 13, 14}});
}

}  // namespace

TEST_CASE("election construction validates dimensions") {
  CHECK_THROWS_AS(Election(0, 1, std::vector<std::vector<int>>{{}}), InputError);
  CHECK_THROWS_AS(Election(3, 0, std::vector<std::vector<int>>{{}}), InputError);
  CHECK_THROWS_AS(Election(3, 4, std::vector<std::vector<int>>{{}}), InputError);
  CHECK_THROWS_AS(Election(3, 1, std::vector<std::vector<int>>{}), InputError);
  CHECK_THROWS_AS(Election(3, 1, std::vector<std::vector<int>>{{3}}), InputError);
  CHECK_THROWS_AS(Election(3, 1, std::vector<std::vector<int>>{{-1}}), InputError);
  CHECK_NOTHROW(Election(1, 1, std::vector<std::vector<int>>{{}}));
}

TEST_CASE("supporters and utilities") {
  const Election e = example_one();
  CHECK(e.num_voters() == 6);
  CHECK(supporters(e, 0).to_vector() == std::vector<int>{0, 1, 2});
  CHECK(supporters(e, 3).to_vector() == std::vector<int>{0});
  CHECK_THROWS_AS(supporters(e, 15), InputError);
  const CandidateSet w{0, 1, 2, 6, 7, 8, 9, 10, 11, 12, 13, 14};
  CHECK(utility(e, 0, w) == 3);
  CHECK(utility(e, 3, w) == 3);
  CHECK_THROWS_AS(utility(e, 6, w), InputError);
  CHECK(collective_utility(e, VoterSet{0, 1, 2}, w) == 3);
  CHECK(approved_by_any(e, VoterSet{0, 1}).to_vector() == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("committee construction") {
  const Election e = example_one();
  CHECK(make_committee(e, {2, 0}).list() == std::vector<int>{0, 2});
  CHECK_THROWS_AS(make_committee(e, {15}), InputError);
  CHECK_THROWS_AS(make_committee(e, {1, 1}), InputError);
  std::vector<int> too_many(13);
  for (int i = 0; i < 13; ++i) too_many[i] = i;
  CHECK_THROWS_AS(make_committee(e, too_many), InputError);
}

TEST_CASE("axiom names round trip") {
  for (Axiom a : {Axiom::kJR, Axiom::kPJR, Axiom::kEJR, Axiom::kFJR, Axiom::kFPJR, Axiom::kCore, Axiom::kEJRPlus,
                  Axiom::kPJRPlus, Axiom::kPriceable, Axiom::kPER})
    CHECK(parse_axiom(axiom_name(a)) == a);
  CHECK(parse_axiom("ejr-plus") == Axiom::kEJRPlus);
  CHECK_FALSE(parse_axiom("bogus").has_value());
}

TEST_CASE("weak cohesion check uses exact cross-multiplication") {
  const Election e = example_one();
  // 3·12 >= 6·6 holds with equality.
  CHECK(check_weak_cohesion(e, {VoterSet{0, 1, 2}, CandidateSet{0, 1, 2, 3, 4, 5}, 4}));
  CHECK_FALSE(check_weak_cohesion(e, {VoterSet{0, 1, 2}, CandidateSet{0, 1, 2, 3, 4, 5}, 5}));
  CHECK_FALSE(check_weak_cohesion(e, {VoterSet{0, 1}, CandidateSet{0, 1, 2, 3, 4, 5}, 4}));
  CHECK_FALSE(check_weak_cohesion(e, {VoterSet{}, CandidateSet{0}, 1}));
  CHECK_FALSE(check_weak_cohesion(e, {VoterSet{0}, CandidateSet{0}, 0}));
}

TEST_CASE("heavy candidate exists for weakly cohesive groups") {
  const Election e = example_one();
  const CohesionCertificate cert{VoterSet{0, 1, 2}, CandidateSet{0, 1, 2, 3, 4, 5}, 4};
  const int c = lemma1_witness(e, cert);
  CHECK(c == 0);
  CHECK(static_cast<long long>((supporters(e, c) & cert.coalition).count()) * e.committee_size() >=
        4LL * e.num_voters());
  CHECK_THROWS_AS(lemma1_witness(e, {VoterSet{0}, CandidateSet{0, 1, 2, 3, 4, 5}, 4}), PreconditionError);
}

TEST_CASE("heavy candidate property on random certificates") {
  LabRng rng(77);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Election e = oracle::random_election(rng, 8, 8, 4);
    for (int attempt = 0; attempt < 20; ++attempt) {
      VoterSet s;
      CandidateSet t;
      for (int v = 0; v < e.num_voters(); ++v)
        if (rng.unit() < 0.6) s.set(v);
      for (int c = 0; c < e.num_candidates(); ++c)
        if (rng.unit() < 0.4) t.set(c);
      const int level = rng.between(1, 3);
      const CohesionCertificate cert{s, t, level};
      if (!check_weak_cohesion(e, cert)) continue;
      ++checked;
      const int c = lemma1_witness(e, cert);
      CHECK(t.test(c));
      CHECK(static_cast<long long>((e.approvers(c) & s).count()) * e.committee_size() >=
            static_cast<long long>(level) * e.num_voters());
    }
  }
  CHECK(checked > 100);
}
