#include <doctest.h>

#include "abcprop/axioms.hpp"
#include "abcprop/errors.hpp"
#include "abcprop/io.hpp"
#include "abcprop/pricing.hpp"

using namespace abcprop;

namespace {

std::string fixture(const std::string& name) { return read_text_file(std::string(ABCPROP_FIXTURE_DIR) + "/" + name); }

int error_line(const std::string& text) {
  try {
    parse_election(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

int error_column(const std::string& text) {
  try {
    parse_election(text);
  } catch (const ParseError& e) {
    return e.column();
  }
  return -1;
}

}  // namespace

TEST_CASE("fixture files parse") {
  const auto e1 = parse_election(fixture("e1.appr"));
  CHECK(e1.num_voters() == 6);
  CHECK(e1.num_candidates() == 15);
  CHECK(e1.committee_size() == 12);
  CHECK(e1.approvals(3).to_vector() == std::vector<int>{6, 7, 8});
  const auto e2 = parse_election(fixture("e2.appr"));
  CHECK(e2.num_voters() == 6);
  const auto e3 = parse_election(fixture("e3.appr"));
  CHECK(e3.num_voters() == 12);
}

TEST_CASE("empty ballots and comments") {
  const auto e = parse_election("1 1\n\n");
  CHECK(e.num_voters() == 1);
  CHECK(e.approvals(0).none());
  const auto f = parse_election("# header follows\n3 2\n  # skipped\n2 0 # trailing\n\n1\n");
  CHECK(f.num_voters() == 3);
  CHECK(f.approvals(0).to_vector() == std::vector<int>{0, 2});
  CHECK(f.approvals(1).none());
  CHECK(parse_election("2 1\r\n1\r\n").num_voters() == 1);
}

TEST_CASE("parse errors carry locations") {
  CHECK(error_line("3 2\n0 1\n0 3\n") == 3);
  CHECK(error_column("3 2\n0 1\n0 3\n") == 3);
  CHECK(error_line("3 2\n1 1\n") == 2);
  CHECK(error_column("3 2\n2 0 2\n") == 5);
  CHECK(error_line("3\n0\n") == 1);
  CHECK(error_line("2 3\n0\n") == 1);
  CHECK(error_line("0 0\n") == 1);
  CHECK(error_line("3 2\n0 x\n") == 2);
  CHECK(error_line("3 2\n-1\n") == 2);
  CHECK(error_line("3 2\n") == 1);
  CHECK(error_line("") == 1);
  CHECK(error_line("# only a comment\n") == 1);
}

TEST_CASE("serialization is canonical and round-trips") {
  for (const char* name : {"e1.appr", "e2.appr", "e3.appr"}) {
    const auto e = parse_election(fixture(name));
    const auto text = serialize_election(e);
    CHECK(parse_election(text) == e);
    CHECK(serialize_election(parse_election(text)) == text);
  }
  const auto e = parse_election("4 2\n3 1\n\n");
  CHECK(serialize_election(e) == "4 2\n1 3\n\n");
  CHECK(parse_election(serialize_election(e)) == e);
}

TEST_CASE("digest depends only on canonical content") {
  const auto a = parse_election("4 2\n3 1\n0\n");
  const auto b = parse_election("# same election\n4 2\n1 3\n0   \n");
  CHECK(election_digest(a) == election_digest(b));
  CHECK(election_digest(a).rfind("fnv1a64:", 0) == 0);
  CHECK(election_digest(a) != election_digest(parse_election("4 2\n1 3\n1\n")));
}

TEST_CASE("index lists") {
  CHECK(parse_index_list("0, 3,5") == std::vector<int>{0, 3, 5});
  CHECK(parse_index_list("").empty());
  CHECK_THROWS_AS(parse_index_list("1,,2"), InputError);
  CHECK_THROWS_AS(parse_index_list("1,a"), InputError);
  CHECK(format_index_list({4, 1}) == "4,1");
}

TEST_CASE("certificates and price systems survive JSON") {
  const Certificate c1 = CohesionCertificate{VoterSet{0, 2}, CandidateSet{1, 5}, 2};
  const auto back = certificate_from_json(certificate_to_json(c1));
  const auto& cc = std::get<CohesionCertificate>(back);
  CHECK(cc.coalition.to_vector() == std::vector<int>{0, 2});
  CHECK(cc.witness.to_vector() == std::vector<int>{1, 5});
  CHECK(cc.level == 2);
  const Certificate c2 = Deprivation{VoterSet{1}, 4, 3};
  CHECK(std::get<Deprivation>(certificate_from_json(certificate_to_json(c2))).candidate == 4);
  const Certificate c3 = CoreDeviation{VoterSet{1}, CandidateSet{0}};
  CHECK(std::get<CoreDeviation>(certificate_from_json(certificate_to_json(c3))).alternative.test(0));

  PriceSystem ps{Rational(4, 3), {{2, 3, Rational(2, 6)}}};
  const auto j = price_system_to_json(ps);
  CHECK(j.at("price") == "4/3");
  CHECK(j.at("payments")[0].at("amount") == "1/3");
  CHECK(price_system_from_json(j).payments[0].amount == Rational(1, 3));
}

TEST_CASE("reports re-check from the document alone") {
  const auto e = parse_election(fixture("e1.appr"));
  const Committee w = make_committee(e, {0, 1, 2, 6, 7, 8, 9, 10, 11, 12, 13, 14});
  auto doc = base_report(e, w);
  add_axiom_report(doc, verify_fpjr(e, w));
  auto r = recheck_report(e, doc);
  CHECK(r.consistent);
  CHECK(r.certified);

  auto tampered = doc;
  tampered["certificate"]["level"] = 3;
  CHECK_FALSE(recheck_report(e, tampered).consistent);  // the group already holds 3 winners
  tampered["certificate"]["coalition"] = std::vector<int>{0, 1};
  CHECK_FALSE(recheck_report(e, tampered).consistent);

  auto wrong_election = doc;
  wrong_election["election_digest"] = "fnv1a64:0000000000000000";
  CHECK_FALSE(recheck_report(e, wrong_election).consistent);

  auto satisfied = base_report(e, w);
  add_axiom_report(satisfied, verify_ejr(e, w));
  r = recheck_report(e, satisfied);
  CHECK(r.consistent);
  CHECK_FALSE(r.certified);

  const auto e2 = parse_election(fixture("e2.appr"));
  const Committee w2 = make_committee(e2, {2, 3, 4});
  auto priced = base_report(e2, w2);
  add_axiom_report(priced, verify_axiom(Axiom::kPriceable, e2, w2));
  priced["price_system"] = price_system_to_json(*check_priceable(e2, w2).system);
  CHECK(recheck_report(e2, priced).certified);
  priced["price_system"]["price"] = "1/2";
  CHECK_FALSE(recheck_report(e2, priced).consistent);

  auto jr_claim = base_report(e, Committee{});
  jr_claim["axiom"] = "jr";
  jr_claim["verdict"] = "satisfied";
  CHECK_FALSE(recheck_report(e, jr_claim).consistent);
}
