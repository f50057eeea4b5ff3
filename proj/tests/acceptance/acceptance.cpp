// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "abcprop/axioms.hpp"
#include "abcprop/io.hpp"
#include "abcprop/lab.hpp"
#include "abcprop/pricing.hpp"
#include "abcprop/reductions.hpp"
#include "abcprop/rules.hpp"
#include "oracles.hpp"

using namespace abcprop;

namespace {

Election load(const char* name) { return parse_election(read_text_file(std::string(ABCPROP_FIXTURE_DIR) + "/" + name)); }

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& text) { notes.push_back(text); }
};

std::string str(const std::vector<int>& v) { return "{" + format_index_list(v) + "}"; }

const std::vector<int> kFirstExampleWinners = {0, 1, 2, 6, 7, 8, 9, 10, 11, 12, 13, 14};

Outcome first_example() {
  Outcome o;
  const Election e = load("e1.appr");
  const Committee pav = pav_exact(e);
  const Committee seq = seq_pav(e);
  o.require(pav.list() == kFirstExampleWinners, "pav_exact returned " + str(pav.list()));
  o.require(seq.list() == kFirstExampleWinners, "seq_pav returned " + str(seq.list()));
  const auto fpjr = verify_fpjr(e, pav);
  o.require(!fpjr.satisfied, "verify_fpjr reported satisfied");
  if (!fpjr.satisfied) {
    const auto* cert = std::get_if<CohesionCertificate>(&*fpjr.certificate);
    o.require(cert != nullptr, "certificate kind");
    if (cert) {
      o.require(check_weak_cohesion(e, *cert), "certificate fails weak cohesion");
      o.require(cert->level == 4, "level " + std::to_string(cert->level));
      o.require(cert->witness.count() == 6, "|T| = " + std::to_string(cert->witness.count()));
      o.require(collective_utility(e, cert->coalition, pav.members) < cert->level, "coalition already represented");
      o.note("S=" + str(cert->coalition.to_vector()) + " T=" + str(cert->witness.to_vector()) +
             " l=" + std::to_string(cert->level));
    }
  }
  o.require(verify_ejr(e, pav).satisfied, "verify_ejr reported violated");
  o.require(verify_pjr(e, pav).satisfied, "verify_pjr reported violated");
  return o;
}

Outcome second_example() {
  Outcome o;
  const Election e = load("e2.appr");
  const auto monroe = monroe_exact(e);
  o.require(monroe.assignment.score == 5, "monroe score " + std::to_string(monroe.assignment.score));
  int best_with_singletons = 0;
  oracle::for_each_committee(e.num_candidates(), e.committee_size(), [&](oracle::Mask mask) {
    std::vector<int> members;
    for (int c = 0; c < e.num_candidates(); ++c)
      if (mask >> c & 1) members.push_back(c);
    const Committee w = make_committee(e, members);
    if (monroe_optimal_assignment(e, w).score != 5) return;
    if (!w.members.test(0) && !w.members.test(1)) return;
    ++best_with_singletons;
    o.require(!check_priceable(e, w).priceable, "max-score committee " + str(members) + " is priceable");
  });
  o.require(best_with_singletons > 0, "no max-score committee contains candidate 0 or 1");
  o.note(std::to_string(best_with_singletons) + " max-score committees contain candidate 0 or 1, none priceable");
  const Committee supported = make_committee(e, {2, 3, 4});
  const auto r = check_priceable(e, supported);
  o.require(r.priceable, "{2,3,4} not priceable");
  o.require(r.max_price >= Rational(4, 3), "LP optimum " + to_fraction_string(r.max_price));
  o.require(r.system && validate_price_system(e, supported, *r.system), "price system does not validate");
  o.note("LP optimum price " + to_fraction_string(r.max_price));
  return o;
}

Outcome third_example() {
  Outcome o;
  const Election e = load("e3.appr");
  const Committee w = make_committee(e, {1, 2, 3, 4, 5, 6});
  o.require(verify_fpjr(e, w).satisfied, "verify_fpjr reported violated");
  const auto r = verify_pjr_plus(e, w);
  o.require(!r.satisfied, "verify_pjr_plus reported satisfied");
  if (!r.satisfied) {
    const auto& d = std::get<Deprivation>(*r.certificate);
    o.require(d.candidate == 0, "candidate " + std::to_string(d.candidate));
    o.require(d.level == 3, "level " + std::to_string(d.level));
    const int cu = collective_utility(e, d.coalition, w.members);
    o.require(cu == 2, "collective utility " + std::to_string(cu));
    o.require(certificate_is_valid(e, w, r), "certificate re-check");
    o.note("S=" + str(d.coalition.to_vector()) + " c=0 l=3 collective utility " + std::to_string(cu));
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  LabRng rng(0xACCE55);
  int mismatches = 0, violations = 0, bad_certs = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Election e = oracle::random_election(rng, 6, 6, 3);
    const Committee w = oracle::random_committee(rng, e, rng.unit() < 0.75);
    const auto in = oracle::from(e, w);
    for (Axiom a : oracle::searchable_axioms()) {
      const auto r = verify_axiom(a, e, w);
      if (r.satisfied == oracle::violates(in, oracle::kind_of(a))) {
        ++mismatches;
        o.notes.push_back("mismatch: " + axiom_name(a) + " on\n" + serialize_election(e) + "committee " +
                          str(w.list()));
      }
      if (!r.satisfied) {
        ++violations;
        if (!certificate_is_valid(e, w, r)) ++bad_certs;
      }
    }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " verdict mismatches");
  o.require(bad_certs == 0, std::to_string(bad_certs) + " invalid certificates");
  o.note("1600 verdicts compared, " + std::to_string(violations) + " violations, all certificates re-validated");
  return o;
}

std::vector<Axiom> every_axiom() {
  return {Axiom::kJR,   Axiom::kPJR,     Axiom::kEJR,     Axiom::kFJR,       Axiom::kFPJR,
          Axiom::kCore, Axiom::kEJRPlus, Axiom::kPJRPlus, Axiom::kPriceable, Axiom::kPER};
}

Outcome implication_lattice() {
  Outcome o;
  const std::vector<CultureModel> models = {CultureModel::kImpartial, CultureModel::kUrn, CultureModel::kPartyList};
  ImplicationMatrix total(every_axiom());
  const int per_model[] = {500, 300, 200};
  for (std::size_t i = 0; i < models.size(); ++i) {
    LabConfig config;
    config.trials = per_model[i];
    config.culture.model = models[i];
    config.culture.seed = 1000 + i;
    config.culture.parties = 3;
    config.max_voters = 8;
    config.max_candidates = 8;
    config.max_committee = 4;
    config.rules = all_rules();
    config.axioms = every_axiom();
    total.merge(run_matrix(config));
  }
  int broken = 0;
  for (auto [a, b] : proven_implications()) {
    const auto n = total.counts(a, b).premise_only;
    if (n) {
      ++broken;
      o.notes.push_back("counterexamples to " + axiom_name(a) + " => " + axiom_name(b) + ": " + std::to_string(n));
    }
  }
  o.require(broken == 0, std::to_string(broken) + " proven implications contradicted");
  o.require(total.inconclusive() == 0, std::to_string(total.inconclusive()) + " inconclusive samples");
  o.note(std::to_string(total.conclusive()) + " of " + std::to_string(total.samples()) +
         " rule outputs on 1000 elections judged, " + std::to_string(total.empty_committees()) +
         " empty committees skipped");

  LabConfig fixtures;
  fixtures.axioms = every_axiom();
  const Election e1 = load("e1.appr");
  const Election e3 = load("e3.appr");
  fixtures.fixtures.push_back({"first-example", e1, make_committee(e1, kFirstExampleWinners)});
  fixtures.fixtures.push_back({"third-example", e3, make_committee(e3, {1, 2, 3, 4, 5, 6})});
  const auto m = run_matrix(fixtures);
  o.require(!m.examples(Axiom::kEJR, Axiom::kFPJR).empty(), "no EJR-satisfied, FPJR-violated witness");
  o.require(!m.examples(Axiom::kFPJR, Axiom::kPJRPlus).empty(), "no FPJR-satisfied, PJR+-violated witness");
  for (auto [a, b] : proven_implications()) o.require(m.counts(a, b).premise_only == 0, "fixture contradicts arrow");
  return o;
}

Outcome rule_theorems() {
  Outcome o;
  int checked = 0, monroe_bad = 0, greedy_bad = 0, es_unpriced = 0, es_bad = 0, ph_unpriced = 0, ph_bad = 0;
  const std::vector<CultureModel> models = {CultureModel::kImpartial, CultureModel::kUrn, CultureModel::kPartyList};
  for (int trial = 0; trial < 500; ++trial) {
    LabConfig config;
    config.culture.model = models[trial % 3];
    config.culture.seed = 5000;
    config.culture.parties = 1 + trial % 3;
    config.culture.approval_probability = 0.3 + 0.1 * (trial % 5);
    config.max_voters = 12;
    config.max_candidates = 8;
    config.max_committee = 4;
    config.committee_divides_voters = true;
    Election e = trial_election(config, trial);
    ++checked;
    if (!verify_fpjr(e, monroe_exact(e).committee).satisfied) ++monroe_bad;
    if (!verify_fpjr(e, greedy_monroe(e).committee).satisfied) ++greedy_bad;
    const Committee es = equal_shares(e);
    if (!check_priceable(e, es).priceable) ++es_unpriced;
    if (!verify_fpjr(e, es).satisfied) ++es_bad;
    const Committee ph = seq_phragmen(e);
    if (!check_priceable(e, ph).priceable) ++ph_unpriced;
    if (!verify_fpjr(e, ph).satisfied) ++ph_bad;
  }
  o.require(monroe_bad == 0, std::to_string(monroe_bad) + " Monroe FPJR violations");
  o.require(greedy_bad == 0, std::to_string(greedy_bad) + " greedy Monroe FPJR violations");
  o.require(es_unpriced == 0, std::to_string(es_unpriced) + " unpriceable Equal Shares committees");
  o.require(es_bad == 0, std::to_string(es_bad) + " Equal Shares FPJR violations");
  o.require(ph_unpriced == 0, std::to_string(ph_unpriced) + " unpriceable Phragmen committees");
  o.require(ph_bad == 0, std::to_string(ph_bad) + " Phragmen FPJR violations");
  o.note(std::to_string(checked) + " elections with k | n");
  return o;
}

BipartiteGraph graph_from_mask(int l, int r, unsigned mask) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < l; ++u)
    for (int v = 0; v < r; ++v)
      if (mask >> (u * r + v) & 1) edges.push_back({u, v});
  return BipartiteGraph(l, r, edges);
}

Outcome reduction_equivalences() {
  Outcome o;
  int disagreements = 0, with_biclique = 0, total = 0;
  auto check = [&](const BipartiteGraph& g, int ell) {
    ++total;
    const bool b = biclique_exists(g, ell).has_value();
    with_biclique += b;
    const auto r1 = reduce_alg1(g, ell);
    const auto r2 = reduce_alg2(g, ell);
    const bool fpjr = !verify_fpjr(r1.election, r1.winners).satisfied;
    const bool fjr = !verify_fjr(r2.election, r2.winners).satisfied;
    const bool core = !verify_core(r2.election, r2.winners).satisfied;
    if (fpjr != b || fjr != b || core != b) {
      ++disagreements;
      o.notes.push_back("disagreement on graph\n" + serialize_graph(g) + "l=" + std::to_string(ell));
    }
  };
  for (unsigned mask = 0; mask < 512; ++mask) check(graph_from_mask(3, 3, mask), 3);
  LabRng rng(0x61A9);
  for (int i = 0; i < 100; ++i) {
    const int l = rng.between(1, 5);
    const int r = rng.between(3, 5);
    const double density = 0.4 + 0.55 * rng.unit();
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < l; ++u)
      for (int v = 0; v < r; ++v)
        if (rng.unit() < density) edges.push_back({u, v});
    check(BipartiteGraph(l, r, edges), rng.between(3, r));
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  o.note(std::to_string(total) + " graphs, " + std::to_string(with_biclique) + " with a biclique");
  return o;
}

Outcome lemma_suite() {
  Outcome o;
  LabRng rng(0x1E44A);
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const int m = rng.between(1, 8);
    const int k = rng.between(1, m);
    const int n = rng.between(1, 10);
    const int t = rng.between(1, k);
    const int level = rng.between(1, t);
    const int need = (t * n + k - 1) / k;
    const int size = rng.between(need, n);
    // Witness: t random candidates; coalition: the first `size` voters after a shuffle.
    std::vector<int> cands(m), voters(n);
    for (int c = 0; c < m; ++c) cands[c] = c;
    for (int v = 0; v < n; ++v) voters[v] = v;
    for (int j = 0; j < m; ++j) std::swap(cands[j], cands[j + rng.below(m - j)]);
    for (int j = 0; j < n; ++j) std::swap(voters[j], voters[j + rng.below(n - j)]);
    CandidateSet witness;
    for (int j = 0; j < t; ++j) witness.set(cands[j]);
    VoterSet coalition;
    std::vector<CandidateSet> ballots(n);
    for (int j = 0; j < n; ++j) {
      const int v = voters[j];
      for (int c = 0; c < m; ++c)
        if (rng.unit() < 0.3) ballots[v].set(c);
      if (j < size) {
        coalition.set(v);
        std::vector<int> w = witness.to_vector();
        for (int x = 0; x < t; ++x) std::swap(w[x], w[x + rng.below(t - x)]);
        const int take = rng.between(level, t);
        for (int x = 0; x < take; ++x) ballots[v].set(w[x]);
      }
    }
    const Election e(m, k, ballots);
    const CohesionCertificate cert{coalition, witness, level};
    if (!check_weak_cohesion(e, cert)) {
      ++failures;
      continue;
    }
    const int c = lemma1_witness(e, cert);
    if (!witness.test(c) || static_cast<long long>((e.approvers(c) & coalition).count()) * k <
                                static_cast<long long>(level) * n)
      ++failures;
  }
  o.require(failures == 0, std::to_string(failures) + " heavy-candidate failures");
  o.note("10000 weakly cohesive certificates");

  // Unhappy coalitions of size >= n/k under an optimal Monroe assignment
  // have all their common approvals inside the committee.
  int monroe_failures = 0, coalitions = 0;
  LabConfig config;
  config.culture.seed = 0x30A20E;
  config.max_voters = 10;
  config.max_candidates = 7;
  config.max_committee = 3;
  config.committee_divides_voters = true;
  for (int trial = 0; trial < 100; ++trial) {
    config.culture.model = trial % 2 ? CultureModel::kUrn : CultureModel::kImpartial;
    const Election e = trial_election(config, trial);
    const auto r = monroe_exact(e);
    std::vector<int> unhappy;
    for (int v = 0; v < e.num_voters(); ++v)
      if (!e.approvals(v).test(r.assignment.assignment[v])) unhappy.push_back(v);
    const int u = static_cast<int>(unhappy.size());
    for (unsigned mask = 1; mask < (1u << u); ++mask) {
      const int size = __builtin_popcount(mask);
      if (static_cast<long long>(size) * e.committee_size() < e.num_voters()) continue;
      ++coalitions;
      CandidateSet shared = e.all_candidates();
      for (int j = 0; j < u; ++j)
        if (mask >> j & 1) shared &= e.approvals(unhappy[j]);
      if (!shared.is_subset_of(r.committee.members)) ++monroe_failures;
    }
  }
  o.require(monroe_failures == 0, std::to_string(monroe_failures) + " Monroe coalition failures");
  o.note(std::to_string(coalitions) + " unhappy coalitions checked on 100 Monroe outcomes");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "first example: PAV committee satisfies EJR and PJR, violates FPJR", 1, first_example},
      {2, "second example: Monroe score and priceability", 1, second_example},
      {3, "third example: FPJR holds, PJR+ fails on candidate 0", 5, third_example},
      {4, "verifiers match exhaustive oracles on 200 elections", 300, oracle_equivalence},
      {5, "implication lattice over 1000 elections and fixture witnesses", 1800, implication_lattice},
      {6, "Monroe, greedy Monroe, Equal Shares and Phragmen on 500 elections with k | n", 1800, rule_theorems},
      {7, "biclique reductions on 612 graphs", 1800, reduction_equivalences},
      {8, "heavy-candidate lemma and Monroe coalition lemma", 600, lemma_suite},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      o.pass = false;
      o.notes.push_back("time limit " + std::to_string(c.limit_seconds) + " s exceeded");
    }
    std::printf("%s criterion %d: %s (%.3f s, limit %.0f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.limit_seconds);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
