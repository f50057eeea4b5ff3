#include "abcprop/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <optional>

#include "abcprop/axioms.hpp"
#include "abcprop/errors.hpp"
#include "abcprop/io.hpp"
#include "abcprop/lab.hpp"
#include "abcprop/pricing.hpp"
#include "abcprop/reductions.hpp"
#include "abcprop/rules.hpp"

namespace abcprop {

using nlohmann::json;

namespace {

struct Options {
  bool json_output = false;
  std::string input;
  std::optional<std::string> committee;
  std::string rule;
  std::string axiom;
  std::string output;
  std::string report;
  std::uint64_t max_committees = kDefaultCommitteeBudget;
  std::string delta;
  int max_witness = -1;
  std::uint64_t max_nodes = VerifierBudget{}.max_subsets_examined;
  // reduce / biclique
  std::string alg;
  std::string graph;
  int ell = 0;
  // lab
  int trials = 100;
  std::string model = "impartial";
  std::uint64_t seed = 0;
  int n = 6, m = 6, k = 3;
  double p = 0.5;
  int parties = 2;
  double mixing = 0.5;
  std::string rules;
  std::string axioms;
  bool divisible = false;
};

std::string join_sets(const std::vector<int>& v) { return "{" + format_index_list(v) + "}"; }

Election load_election(const std::string& path) {
  try {
    return parse_election(read_text_file(path));
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Rule require_rule(const std::string& name) {
  if (auto r = parse_rule(name)) return *r;
  throw InputError("unknown rule \"" + name + "\"");
}

Axiom require_axiom(const std::string& name) {
  if (auto a = parse_axiom(name)) return *a;
  throw InputError("unknown axiom \"" + name + "\"");
}

RuleOptions rule_options(const Options& o) {
  RuleOptions ro;
  ro.max_committees = o.max_committees;
  if (!o.delta.empty()) ro.ls_pav_delta = parse_fraction(o.delta);
  return ro;
}

// The committee under test: --committee wins, else --rule is run.
Committee committee_for(const Election& e, const Options& o) {
  if (o.committee) return make_committee(e, parse_index_list(*o.committee));
  if (o.rule.empty()) throw InputError("one of --committee or --rule is required");
  return run_rule(e, require_rule(o.rule), rule_options(o));
}

std::string describe(const Certificate& cert) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CohesionCertificate>)
          return "S=" + join_sets(c.coalition.to_vector()) + " T=" + join_sets(c.witness.to_vector()) +
                 " l=" + std::to_string(c.level);
        else if constexpr (std::is_same_v<T, CoreDeviation>)
          return "S=" + join_sets(c.coalition.to_vector()) + " T=" + join_sets(c.alternative.to_vector());
        else if constexpr (std::is_same_v<T, Deprivation>)
          return "S=" + join_sets(c.coalition.to_vector()) + " c=" + std::to_string(c.candidate) +
                 " l=" + std::to_string(c.level);
        else
          return c;
      },
      cert);
}

void print_price_system(std::ostream& out, const PriceSystem& ps) {
  out << "price " << to_fraction_string(ps.price) << "\n";
  for (const auto& p : ps.payments)
    out << "pay voter " << p.voter << " -> " << p.candidate << " " << to_fraction_string(p.amount) << "\n";
}

void print_partition(std::ostream& out, const PerPartition& pp) {
  for (std::size_t i = 0; i < pp.parts.size(); ++i)
    out << "group " << pp.assigned[i] << ": " << join_sets(pp.parts[i]) << "\n";
}

int cmd_elect(const Options& o, std::ostream& out) {
  const Election e = load_election(o.input);
  const Rule rule = require_rule(o.rule);
  const Committee w = run_rule(e, rule, rule_options(o));
  if (o.json_output) {
    json doc = base_report(e, w);
    doc["rule"] = rule_name(rule);
    doc["verdict"] = "computed";
    out << doc.dump(2) << "\n";
  } else {
    out << rule_name(rule) << ": " << join_sets(w.list()) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Election e = load_election(o.input);
  const Axiom axiom = require_axiom(o.axiom);
  const Committee w = committee_for(e, o);
  const VerifierBudget budget{o.max_witness, o.max_nodes};
  const AxiomReport report = verify_axiom(axiom, e, w, budget);

  std::optional<PriceSystem> ps;
  std::optional<PerPartition> pp;
  if (report.satisfied && axiom == Axiom::kPriceable) ps = check_priceable(e, w).system;
  if (report.satisfied && axiom == Axiom::kPER) pp = check_per(e, w);

  if (o.json_output) {
    json doc = base_report(e, w);
    if (!o.committee) doc["rule"] = o.rule;
    add_axiom_report(doc, report);
    if (ps) doc["price_system"] = price_system_to_json(*ps);
    if (pp) doc["partition"] = partition_to_json(*pp);
    out << doc.dump(2) << "\n";
  } else {
    out << axiom_name(axiom) << ": " << (report.satisfied ? "satisfied" : "violated") << "\n";
    if (report.certificate) out << "certificate: " << describe(*report.certificate) << "\n";
    if (ps) print_price_system(out, *ps);
    if (pp) print_partition(out, *pp);
  }
  return report.satisfied ? kExitOk : kExitViolated;
}

int cmd_price(const Options& o, std::ostream& out) {
  const Election e = load_election(o.input);
  const Committee w = committee_for(e, o);
  const auto result = check_priceable(e, w);
  if (o.json_output) {
    json doc = base_report(e, w);
    doc["axiom"] = "priceable";
    doc["verdict"] = result.priceable ? "satisfied" : "violated";
    if (result.system) doc["price_system"] = price_system_to_json(*result.system);
    if (!result.priceable) doc["certificate"] = certificate_to_json(Certificate{result.reason});
    out << doc.dump(2) << "\n";
  } else if (result.priceable) {
    out << "priceable (maximum price " << to_fraction_string(result.max_price) << ")\n";
    print_price_system(out, *result.system);
  } else {
    out << "not priceable: " << result.reason << "\n";
  }
  return result.priceable ? kExitOk : kExitViolated;
}

int cmd_per(const Options& o, std::ostream& out) {
  const Election e = load_election(o.input);
  const Committee w = committee_for(e, o);
  const AxiomReport report = verify_axiom(Axiom::kPER, e, w);
  const auto pp = check_per(e, w);
  if (o.json_output) {
    json doc = base_report(e, w);
    add_axiom_report(doc, report);
    if (pp) doc["partition"] = partition_to_json(*pp);
    out << doc.dump(2) << "\n";
  } else if (pp) {
    out << "perfect representation\n";
    print_partition(out, *pp);
  } else {
    out << "no perfect representation: " << std::get<std::string>(*report.certificate) << "\n";
  }
  return pp ? kExitOk : kExitViolated;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const BipartiteGraph g = parse_graph(read_text_file(o.graph));
  ReductionOutput r = [&] {
    if (o.alg == "pjr") return reduce_alg1(g, o.ell);
    if (o.alg == "ejr") return reduce_alg2(g, o.ell);
    throw InputError("--alg must be pjr or ejr");
  }();
  if (!o.output.empty()) write_text_file(o.output, serialize_election(r.election));
  if (o.json_output) {
    out << reduction_to_json(r).dump(2) << "\n";
  } else {
    if (o.output.empty()) out << serialize_election(r.election);
    out << "# committee " << format_index_list(r.winners.list()) << "\n";
  }
  return kExitOk;
}

int cmd_biclique(const Options& o, std::ostream& out) {
  const BipartiteGraph g = parse_graph(read_text_file(o.graph));
  const auto b = biclique_exists(g, o.ell);
  if (o.json_output) {
    json doc = {{"ell", o.ell}, {"found", b.has_value()}};
    if (b) doc["biclique"] = {{"left", b->left}, {"right", b->right}};
    out << doc.dump(2) << "\n";
  } else if (b) {
    out << "biclique L'=" << join_sets(b->left) << " R'=" << join_sets(b->right) << "\n";
  } else {
    out << "no " << o.ell << "x" << o.ell << " biclique\n";
  }
  return kExitOk;
}

template <typename T, typename F>
std::vector<T> parse_names(const std::string& list, F parse_one, const std::vector<T>& fallback) {
  if (list.empty()) return fallback;
  std::vector<T> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_one(item));
  return out;
}

int cmd_lab(const Options& o, std::ostream& out) {
  LabConfig config;
  config.trials = o.trials;
  const auto model = parse_culture(o.model);
  if (!model) throw InputError("unknown model \"" + o.model + "\"");
  config.culture.model = *model;
  config.culture.seed = o.seed;
  config.culture.approval_probability = o.p;
  config.culture.parties = o.parties;
  config.culture.mixing = o.mixing;
  config.min_voters = config.max_voters = o.n;
  config.min_candidates = config.max_candidates = o.m;
  config.min_committee = config.max_committee = o.k;
  config.committee_divides_voters = o.divisible;
  if (o.k > o.m || o.k < 1) throw InputError("--k must be in [1, m]");
  config.rules = parse_names<Rule>(o.rules, require_rule, all_rules());
  std::vector<Axiom> every = {Axiom::kJR,   Axiom::kPJR,     Axiom::kEJR,     Axiom::kFJR,       Axiom::kFPJR,
                              Axiom::kCore, Axiom::kEJRPlus, Axiom::kPJRPlus, Axiom::kPriceable, Axiom::kPER};
  config.axioms = parse_names<Axiom>(o.axioms, require_axiom, every);
  config.budget = VerifierBudget{o.max_witness, o.max_nodes};
  config.rule_options = rule_options(o);

  const ImplicationMatrix matrix = run_matrix(config);
  const json doc = matrix_to_json(matrix);
  if (o.json_output) {
    out << doc.dump(2) << "\n";
  } else {
    out << "samples " << matrix.samples() << ", inconclusive " << matrix.inconclusive()
        << ", empty committees " << matrix.empty_committees() << "\n";
    for (Axiom a : matrix.axioms()) {
      std::uint64_t sat = matrix.counts(a, a).both_satisfied;
      out << axiom_name(a) << ": satisfied " << sat << "/" << matrix.conclusive() << "\n";
    }
    for (const auto& x : matrix.counterexamples())
      out << axiom_name(x.premise) << " without " << axiom_name(x.conclusion) << " (" << x.origin
          << "): committee " << join_sets(x.committee.list()) << "\n"
          << serialize_election(x.election);
    for (const auto& b : doc.at("broken_implications")) out << "BROKEN IMPLICATION " << b.get<std::string>() << "\n";
  }
  return doc.at("broken_implications").empty() ? kExitOk : kExitViolated;
}

int cmd_minimize(const Options& o, std::ostream& out) {
  const Election e = load_election(o.input);
  const Axiom axiom = require_axiom(o.axiom);
  const Committee w = committee_for(e, o);
  auto [me, mw] = minimize_counterexample(e, w, axiom, VerifierBudget{o.max_witness, o.max_nodes});
  if (!o.output.empty()) write_text_file(o.output, serialize_election(me));
  if (o.json_output) {
    json doc = base_report(me, mw);
    add_axiom_report(doc, verify_axiom(axiom, me, mw, VerifierBudget{o.max_witness, o.max_nodes}));
    doc["election"] = serialize_election(me);
    out << doc.dump(2) << "\n";
  } else {
    if (o.output.empty()) out << serialize_election(me);
    out << "# committee " << format_index_list(mw.list()) << "\n";
  }
  return kExitOk;
}

int cmd_recheck(const Options& o, std::ostream& out) {
  const Election e = load_election(o.input);
  json doc;
  try {
    doc = json::parse(read_text_file(o.report));
  } catch (const json::parse_error& ex) {
    throw InputError(o.report + ": " + ex.what());
  }
  const RecheckResult r = recheck_report(e, doc);
  if (o.json_output)
    out << json{{"consistent", r.consistent}, {"certified", r.certified}, {"message", r.message}}.dump(2) << "\n";
  else
    out << (r.consistent ? "consistent" : "inconsistent") << ": " << r.message << "\n";
  return r.consistent ? kExitOk : kExitViolated;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proportional committee elections: rules, axiom verifiers and experiments", "abcprop"};
  app.require_subcommand(1);
  Options o;

  auto add_json = [&](CLI::App* c) { c->add_flag("--json", o.json_output, "Print a JSON report"); };
  auto add_input = [&](CLI::App* c) { c->add_option("--input", o.input, ".appr election file")->required(); };
  auto add_budget = [&](CLI::App* c) {
    c->add_option("--max-witness", o.max_witness, "Largest witness set searched (default k)");
    c->add_option("--max-nodes", o.max_nodes, "Search node limit for exponential verifiers");
  };
  auto add_rule_opts = [&](CLI::App* c) {
    c->add_option("--max-committees", o.max_committees, "Committee limit for exact rules");
    c->add_option("--delta", o.delta, "LS-PAV improvement threshold, as a fraction");
  };

  auto* elect = app.add_subcommand("elect", "Compute a committee with a voting rule");
  add_input(elect);
  elect->add_option("--rule", o.rule, "pav, seq-pav, ls-pav, monroe, greedy-monroe, equal-shares, seq-phragmen")
      ->required();
  add_rule_opts(elect);
  add_json(elect);

  auto* verify = app.add_subcommand("verify", "Check a committee against an axiom");
  add_input(verify);
  verify->add_option("--axiom", o.axiom, "jr, pjr, ejr, fjr, fpjr, core, ejr+, pjr+, priceable, per")->required();
  verify->add_option("--committee", o.committee, "Comma-separated candidate indices");
  verify->add_option("--rule", o.rule, "Verify this rule's committee instead");
  add_rule_opts(verify);
  add_budget(verify);
  add_json(verify);

  auto* price = app.add_subcommand("price", "Find a price system supporting a committee");
  add_input(price);
  price->add_option("--committee", o.committee, "Comma-separated candidate indices");
  price->add_option("--rule", o.rule, "Use this rule's committee instead");
  add_rule_opts(price);
  add_json(price);

  auto* per = app.add_subcommand("per", "Find a perfect-representation partition");
  add_input(per);
  per->add_option("--committee", o.committee, "Comma-separated candidate indices");
  per->add_option("--rule", o.rule, "Use this rule's committee instead");
  add_rule_opts(per);
  add_json(per);

  auto* reduce = app.add_subcommand("reduce", "Build a hardness instance from a bipartite graph");
  reduce->add_option("--alg", o.alg, "pjr or ejr")->required();
  reduce->add_option("--ell", o.ell, "Biclique size")->required();
  reduce->add_option("--graph", o.graph, "Edge-list file")->required();
  reduce->add_option("--output", o.output, "Write the election here");
  add_json(reduce);

  auto* biclique = app.add_subcommand("biclique", "Search a bipartite graph for a balanced biclique");
  biclique->add_option("--graph", o.graph, "Edge-list file")->required();
  biclique->add_option("--ell", o.ell, "Biclique size")->required();
  add_json(biclique);

  auto* lab = app.add_subcommand("lab", "Run random elections through rules and axioms");
  lab->add_option("--trials", o.trials, "Number of random elections");
  lab->add_option("--model", o.model, "impartial, party-list or urn");
  lab->add_option("--seed", o.seed, "Master seed");
  lab->add_option("--n", o.n, "Voters");
  lab->add_option("--m", o.m, "Candidates");
  lab->add_option("--k", o.k, "Committee size");
  lab->add_option("--p", o.p, "Approval probability");
  lab->add_option("--parties", o.parties, "Parties (party-list)");
  lab->add_option("--mixing", o.mixing, "Copy probability (urn)");
  lab->add_option("--rules", o.rules, "Comma-separated rules (default all)");
  lab->add_option("--axioms", o.axioms, "Comma-separated axioms (default all)");
  add_rule_opts(lab);
  add_budget(lab);
  add_json(lab);

  auto* minimize = app.add_subcommand("minimize", "Shrink an instance while it keeps violating an axiom");
  add_input(minimize);
  minimize->add_option("--axiom", o.axiom, "Axiom the committee violates")->required();
  minimize->add_option("--committee", o.committee, "Comma-separated candidate indices");
  minimize->add_option("--rule", o.rule, "Use this rule's committee instead");
  minimize->add_option("--output", o.output, "Write the minimized election here");
  add_rule_opts(minimize);
  add_budget(minimize);
  add_json(minimize);

  auto* recheck = app.add_subcommand("recheck", "Re-validate a JSON report against an election");
  add_input(recheck);
  recheck->add_option("--report", o.report, "JSON report written by --json")->required();
  add_json(recheck);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (elect->parsed()) return cmd_elect(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (price->parsed()) return cmd_price(o, out);
    if (per->parsed()) return cmd_per(o, out);
    if (reduce->parsed()) return cmd_reduce(o, out);
    if (biclique->parsed()) return cmd_biclique(o, out);
    if (lab->parsed()) return cmd_lab(o, out);
    if (minimize->parsed()) return cmd_minimize(o, out);
    if (recheck->parsed()) return cmd_recheck(o, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace abcprop
