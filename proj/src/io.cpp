#include "abcprop/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "abcprop/axioms.hpp"
#include "abcprop/errors.hpp"
#include "abcprop/rational.hpp"

namespace abcprop {

using nlohmann::json;

namespace {

struct Token {
  long long value;
  int column;
};

// Splits a comment-stripped line into nonnegative integers.
std::vector<Token> read_integers(const std::string& line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char ch = line[i];
    if (ch == ' ' || ch == '\t') {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw ParseError(line_no, static_cast<int>(i) + 1, std::string("unexpected character '") + ch + "'");
    const int column = static_cast<int>(i) + 1;
    long long value = 0;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
      value = value * 10 + (line[i] - '0');
      if (value > 1'000'000'000) throw ParseError(line_no, column, "number too large");
      ++i;
    }
    if (i < line.size() && line[i] != ' ' && line[i] != '\t')
      throw ParseError(line_no, static_cast<int>(i) + 1, std::string("unexpected character '") + line[i] + "'");
    out.push_back({value, column});
  }
  return out;
}

}  // namespace

Election parse_election(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }

  std::optional<std::pair<int, int>> header;
  int header_line = 0;
  std::vector<CandidateSet> ballots;
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const int line_no = static_cast<int>(idx) + 1;
    std::string line = lines[idx];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] == '#') continue;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto tokens = read_integers(line, line_no);

    if (!header) {
      if (tokens.empty()) {
        if (first == std::string::npos) continue;
        throw ParseError(line_no, 1, "expected header \"m k\"");
      }
      if (tokens.size() != 2) throw ParseError(line_no, tokens.size() < 2 ? 1 : tokens[2].column, "header must be \"m k\"");
      const long long m = tokens[0].value, k = tokens[1].value;
      if (m < 1 || m > kMaxCandidates)
        throw ParseError(line_no, tokens[0].column, "candidate count must be in [1, " + std::to_string(kMaxCandidates) + "]");
      if (k < 1 || k > m) throw ParseError(line_no, tokens[1].column, "committee size must satisfy 1 <= k <= m");
      header = {static_cast<int>(m), static_cast<int>(k)};
      header_line = line_no;
      continue;
    }
    CandidateSet ballot;
    for (const auto& t : tokens) {
      if (t.value >= header->first)
        throw ParseError(line_no, t.column, "candidate " + std::to_string(t.value) + " out of range [0, " +
                                                std::to_string(header->first) + ")");
      if (ballot.test(static_cast<int>(t.value)))
        throw ParseError(line_no, t.column, "candidate " + std::to_string(t.value) + " listed twice");
      ballot.set(static_cast<int>(t.value));
    }
    if (static_cast<int>(ballots.size()) >= kMaxVoters)
      throw ParseError(line_no, 1, "at most " + std::to_string(kMaxVoters) + " voters supported");
    ballots.push_back(ballot);
  }
  if (!header) throw ParseError(std::max<int>(1, static_cast<int>(lines.size())), 1, "missing header \"m k\"");
  if (ballots.empty()) throw ParseError(header_line, 1, "election has no voters");
  return Election(header->first, header->second, std::move(ballots));
}

std::string serialize_election(const Election& e) {
  std::string out = std::to_string(e.num_candidates()) + " " + std::to_string(e.committee_size()) + "\n";
  for (const auto& b : e.ballots()) {
    bool first = true;
    for (int c : b) {
      if (!first) out += ' ';
      out += std::to_string(c);
      first = false;
    }
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::string election_digest(const Election& e) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_election(e)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  if (text.find_first_not_of(" \t") == std::string::npos) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError("empty entry in index list \"" + text + "\"");
    item = item.substr(b, e - b + 1);
    if (!std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); }) || item.size() > 9)
      throw InputError("bad index \"" + item + "\"");
    out.push_back(std::stoi(item));
  }
  return out;
}

std::string format_index_list(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

json certificate_to_json(const Certificate& cert) {
  return std::visit(
      [](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CohesionCertificate>)
          return {{"kind", "cohesion"}, {"coalition", c.coalition.to_vector()}, {"witness", c.witness.to_vector()},
                  {"level", c.level}};
        else if constexpr (std::is_same_v<T, CoreDeviation>)
          return {{"kind", "core-deviation"}, {"coalition", c.coalition.to_vector()},
                  {"alternative", c.alternative.to_vector()}};
        else if constexpr (std::is_same_v<T, Deprivation>)
          return {{"kind", "deprivation"}, {"coalition", c.coalition.to_vector()}, {"candidate", c.candidate},
                  {"level", c.level}};
        else
          return {{"kind", "reason"}, {"reason", c}};
      },
      cert);
}

namespace {

template <typename Set>
Set set_from_json(const json& j, int limit) {
  Set s;
  for (const auto& x : j) {
    const int i = x.get<int>();
    if (i < 0 || i >= limit) throw InputError("index out of range in report");
    s.set(i);
  }
  return s;
}

}  // namespace

Certificate certificate_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "cohesion")
    return CohesionCertificate{set_from_json<VoterSet>(j.at("coalition"), kMaxVoters),
                               set_from_json<CandidateSet>(j.at("witness"), kMaxCandidates), j.at("level").get<int>()};
  if (kind == "core-deviation")
    return CoreDeviation{set_from_json<VoterSet>(j.at("coalition"), kMaxVoters),
                         set_from_json<CandidateSet>(j.at("alternative"), kMaxCandidates)};
  if (kind == "deprivation")
    return Deprivation{set_from_json<VoterSet>(j.at("coalition"), kMaxVoters), j.at("candidate").get<int>(),
                       j.at("level").get<int>()};
  if (kind == "reason") return j.at("reason").get<std::string>();
  throw InputError("unknown certificate kind \"" + kind + "\"");
}

json price_system_to_json(const PriceSystem& ps) {
  json payments = json::array();
  for (const auto& p : ps.payments)
    payments.push_back({{"voter", p.voter}, {"candidate", p.candidate}, {"amount", to_fraction_string(p.amount)}});
  return {{"price", to_fraction_string(ps.price)}, {"payments", payments}};
}

PriceSystem price_system_from_json(const json& j) {
  PriceSystem ps;
  ps.price = parse_fraction(j.at("price").get<std::string>());
  for (const auto& p : j.at("payments"))
    ps.payments.push_back(
        {p.at("voter").get<int>(), p.at("candidate").get<int>(), parse_fraction(p.at("amount").get<std::string>())});
  return ps;
}

json partition_to_json(const PerPartition& pp) {
  json parts = json::array();
  for (std::size_t i = 0; i < pp.parts.size(); ++i)
    parts.push_back({{"candidate", pp.assigned[i]}, {"voters", pp.parts[i]}});
  return parts;
}

PerPartition partition_from_json(const json& j) {
  PerPartition pp;
  for (const auto& part : j) {
    pp.assigned.push_back(part.at("candidate").get<int>());
    pp.parts.push_back(part.at("voters").get<std::vector<int>>());
  }
  return pp;
}

json base_report(const Election& e, const Committee& w) {
  return {{"election_digest", election_digest(e)}, {"committee", w.list()}};
}

void add_axiom_report(json& doc, const AxiomReport& report) {
  doc["axiom"] = axiom_name(report.axiom);
  doc["verdict"] = report.satisfied ? "satisfied" : "violated";
  if (report.certificate) doc["certificate"] = certificate_to_json(*report.certificate);
}

json matrix_to_json(const ImplicationMatrix& matrix) {
  json axioms = json::array();
  for (Axiom a : matrix.axioms()) axioms.push_back(axiom_name(a));
  json pairs = json::array();
  for (Axiom a : matrix.axioms())
    for (Axiom b : matrix.axioms()) {
      if (a == b) continue;
      const auto& c = matrix.counts(a, b);
      pairs.push_back({{"premise", axiom_name(a)},
                       {"conclusion", axiom_name(b)},
                       {"both_satisfied", c.both_satisfied},
                       {"premise_satisfied_conclusion_violated", c.premise_only},
                       {"premise_violated", c.premise_violated}});
    }
  json examples = json::array();
  for (const auto& x : matrix.counterexamples())
    examples.push_back({{"premise", axiom_name(x.premise)},
                        {"conclusion", axiom_name(x.conclusion)},
                        {"origin", x.origin},
                        {"election", serialize_election(x.election)},
                        {"election_digest", election_digest(x.election)},
                        {"committee", x.committee.list()}});
  json violated = json::array();
  for (auto [a, b] : proven_implications()) {
    const auto& ax = matrix.axioms();
    if (std::find(ax.begin(), ax.end(), a) == ax.end() || std::find(ax.begin(), ax.end(), b) == ax.end()) continue;
    if (matrix.counts(a, b).premise_only > 0) violated.push_back(axiom_name(a) + "=>" + axiom_name(b));
  }
  return {{"axioms", axioms},
          {"samples", matrix.samples()},
          {"inconclusive", matrix.inconclusive()},
          {"empty_committees", matrix.empty_committees()},
          {"pairs", pairs},
          {"counterexamples", examples},
          {"broken_implications", violated}};
}

json reduction_to_json(const ReductionOutput& out) {
  json phi = json::array();
  for (auto [v, c] : out.phi) phi.push_back({v, c});
  return {{"election", serialize_election(out.election)},
          {"election_digest", election_digest(out.election)},
          {"committee", out.winners.list()},
          {"voter_groups", out.voter_groups},
          {"candidate_groups", out.candidate_groups},
          {"phi", phi},
          {"s", out.segment},
          {"ell", out.ell}};
}

RecheckResult recheck_report(const Election& e, const json& doc) {
  RecheckResult r;
  try {
    if (doc.contains("election_digest") && doc.at("election_digest").get<std::string>() != election_digest(e)) {
      r.message = "election digest does not match";
      return r;
    }
    const Committee w = make_committee(e, doc.at("committee").get<std::vector<int>>());
    const std::string verdict = doc.at("verdict").get<std::string>();

    if (doc.contains("price_system")) {
      if (!validate_price_system(e, w, price_system_from_json(doc.at("price_system")))) {
        r.message = "price system does not support the committee";
        return r;
      }
    }
    if (doc.contains("partition")) {
      if (!validate_per_partition(e, w, partition_from_json(doc.at("partition")))) {
        r.message = "partition is not a perfect representation";
        return r;
      }
    }
    if (!doc.contains("axiom")) {
      r.consistent = true;
      r.certified = doc.contains("price_system") || doc.contains("partition");
      r.message = r.certified ? "witness verified" : "nothing to verify";
      return r;
    }
    const auto axiom = parse_axiom(doc.at("axiom").get<std::string>());
    if (!axiom) {
      r.message = "unknown axiom";
      return r;
    }
    if (verdict == "violated") {
      if (!doc.contains("certificate")) {
        r.message = "violated verdict without certificate";
        return r;
      }
      AxiomReport report{*axiom, false, certificate_from_json(doc.at("certificate"))};
      r.consistent = certificate_is_valid(e, w, report);
      r.certified = r.consistent;
      r.message = r.consistent ? "certificate verified" : "certificate does not establish a violation";
      return r;
    }
    if (verdict != "satisfied") {
      r.message = "verdict \"" + verdict + "\" cannot be checked";
      return r;
    }
    switch (*axiom) {
      case Axiom::kJR:
      case Axiom::kEJRPlus:
      case Axiom::kPJRPlus:
        r.consistent = verify_axiom(*axiom, e, w).satisfied;
        r.certified = true;
        r.message = r.consistent ? "polynomial check agrees" : "polynomial check finds a violation";
        return r;
      case Axiom::kPriceable:
        r.consistent = doc.contains("price_system");
        r.certified = r.consistent;
        r.message = r.consistent ? "price system verified" : "satisfied verdict without price system";
        return r;
      case Axiom::kPER:
        r.consistent = doc.contains("partition");
        r.certified = r.consistent;
        r.message = r.consistent ? "partition verified" : "satisfied verdict without partition";
        return r;
      default:
        r.consistent = true;
        r.certified = false;
        r.message = "satisfied verdict carries no certificate";
        return r;
    }
  } catch (const json::exception& ex) {
    r.message = std::string("malformed report: ") + ex.what();
  } catch (const InputError& ex) {
    r.message = std::string("malformed report: ") + ex.what();
  }
  return r;
}

}  // namespace abcprop
