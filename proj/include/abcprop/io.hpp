#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "abcprop/election.hpp"
#include "abcprop/lab.hpp"
#include "abcprop/pricing.hpp"
#include "abcprop/reductions.hpp"

namespace abcprop {

// .appr text: first non-comment line "m k", then one line per voter listing
// approved 0-based candidate indices separated by spaces (an empty line is a
// voter approving nothing). '#' starts a comment; a line holding only a
// comment is skipped. Indices may appear in any order and are stored sorted;
// repeats are an error. Throws ParseError with the offending line and column.
Election parse_election(const std::string& text);

// Canonical form: sorted indices, LF line endings, one trailing newline.
std::string serialize_election(const Election& e);

// Reads and parses a file; I/O failures are reported as InputError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// "fnv1a64:<16 hex digits>" of the canonical serialization.
std::string election_digest(const Election& e);

// "0,3,5" -> {0,3,5}; an empty string is the empty committee.
std::vector<int> parse_index_list(const std::string& text);
std::string format_index_list(const std::vector<int>& values);

nlohmann::json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);
nlohmann::json price_system_to_json(const PriceSystem& ps);
PriceSystem price_system_from_json(const nlohmann::json& j);
nlohmann::json partition_to_json(const PerPartition& pp);
PerPartition partition_from_json(const nlohmann::json& j);

// Skeleton report: digest and committee.
nlohmann::json base_report(const Election& e, const Committee& w);
// Adds axiom, verdict and certificate to a base report.
void add_axiom_report(nlohmann::json& doc, const AxiomReport& report);

nlohmann::json matrix_to_json(const ImplicationMatrix& matrix);
nlohmann::json reduction_to_json(const ReductionOutput& out);

struct RecheckResult {
  bool consistent = false;
  bool certified = false;  // false when the verdict carries nothing to re-check
  std::string message;
};

// Re-validates a report against an election using only the data in the
// document: certificates of violation, price systems and partitions are
// checked directly, and the polynomial axioms (JR, EJR+, PJR+) are re-run.
// Satisfied verdicts of the search-based axioms carry no certificate.
RecheckResult recheck_report(const Election& e, const nlohmann::json& doc);

}  // namespace abcprop
