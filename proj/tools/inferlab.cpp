#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "inferlab/adversary.hpp"
#include "inferlab/catalog.hpp"
#include "inferlab/combinators.hpp"
#include "inferlab/external_opponent.hpp"
#include "inferlab/harness.hpp"
#include "inferlab/serialize.hpp"

using namespace inferlab;

namespace {

constexpr int kOk = 0;
constexpr int kUnmet = 1;
constexpr int kError = 2;

std::optional<std::uint64_t> seed_from_env() {
  const char* raw = std::getenv("INFERLAB_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ConfigError({"INFERLAB_SEED must be a natural number, got '" + std::string(raw) + "'"});
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read config '" + path + "'"});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RenderMode render_mode(const std::string& format) {
  return format == "machine" ? RenderMode::Machine : RenderMode::Text;
}

int cmd_check(const std::string& path, const std::string& format, const std::string& output) {
  const ExperimentConfig cfg = validate_config(read_file(path), seed_from_env());
  const Report report = run_experiment(cfg);
  const std::string rendered = render_report(report, render_mode(format));
  std::cout << rendered;
  const std::string target = output.empty() ? cfg.output : output;
  if (!target.empty()) {
    std::ofstream out(target);
    if (!out) throw ConfigError({"cannot write report to '" + target + "'"});
    out << render_report(report, RenderMode::Machine);
  }
  return report.all_met() ? kOk : kUnmet;
}

int cmd_adversary(const std::string& id, const std::string& opponent_id, const std::vector<std::string>& external,
                  int timeout_ms, const Bounds& bounds, const std::string& expect, const std::string& format) {
  const Learner opponent = external.empty() ? catalog::learner(opponent_id)
                                            : external_opponent(external, std::chrono::milliseconds(timeout_ms));
  if (id == "mindchange" && opponent.interface() != Interface::Sd) {
    throw ConfigError({"mindchange needs a set-driven opponent"});
  }
  Report report;
  report.version = INFERLAB_VERSION;
  AdversaryResult result;
  result.id = id;
  result.expect = parse_adversary_expectation(expect);
  result.witness = run_adversary(id, opponent, bounds);
  result.verified = verify_witness(result.witness, opponent);
  const bool found = result.witness.kind != WitnessKind::Exhausted;
  result.met = result.expect == AdversaryExpectation::Witness ? found && result.verified : !found;
  report.adversaries.push_back(result);
  std::cout << render_report(report, render_mode(format));
  return report.all_met() ? kOk : kUnmet;
}

int cmd_algebra(const std::vector<std::string>& args) {
  if (args.empty()) throw ConfigError({"algebra needs an operation"});
  const std::string& op = args[0];
  auto arity = [&](std::size_t n) {
    if (args.size() != n + 1) throw ConfigError({"algebra " + op + " takes " + std::to_string(n) + " operands"});
  };
  auto set = [&](std::size_t i) { return UPSet::parse(args[i]); };
  if (op == "relate") {
    arity(2);
    std::cout << to_string(relate(set(1), set(2))) << "\n";
  } else if (op == "union" || op == "intersection" || op == "difference") {
    arity(2);
    const SetOp kind = op == "union" ? SetOp::Union : op == "intersection" ? SetOp::Intersection : SetOp::Difference;
    std::cout << combine(kind, set(1), set(2)).to_string() << "\n";
  } else if (op == "complement") {
    arity(1);
    std::cout << complement(set(1)).to_string() << "\n";
  } else if (op == "normalize") {
    arity(1);
    std::cout << set(1).to_string() << "\n";
  } else if (op == "member") {
    arity(2);
    std::cout << (set(1).contains(std::stoull(args[2])) ? "true" : "false") << "\n";
  } else if (op == "elements") {
    arity(2);
    std::string out;
    for (Natural x : bounded_elements(set(1), std::stoull(args[2]))) out += (out.empty() ? "" : ",") + std::to_string(x);
    std::cout << "{" << out << "}\n";
  } else if (op == "language") {
    if (args.size() < 2 || args.size() > 3) throw ConfigError({"algebra language takes an id and optional params"});
    std::cout << catalog::language(args[1], args.size() == 3 ? catalog::parse_params(args[2]) : catalog::Params{})
                     .to_string()
              << "\n";
  } else {
    throw ConfigError({"unknown algebra operation '" + op + "'"});
  }
  return kOk;
}

struct DemoLine {
  std::string claim;
  bool ok;
  std::string detail;
};

DemoLine demo_adversary(const std::string& claim, const std::string& id, const std::string& opponent_id,
                        WitnessKind expected) {
  const Learner opponent = catalog::learner(opponent_id);
  const Witness w = run_adversary(id, opponent, Bounds{});
  std::string detail = id + " vs " + opponent_id + ": " + to_string(w.kind);
  for (const auto& [k, v] : w.params) detail += " " + k + "=" + std::to_string(v);
  if (w.kind == WitnessKind::RestrictionViolation) {
    detail += " s=" + std::to_string(w.s) + " t=" + std::to_string(w.t);
  }
  if (w.kind == WitnessKind::MindchangeTranscript) detail += " rounds=" + std::to_string(w.rounds.size());
  return {claim, w.kind == expected && verify_witness(w, opponent), detail};
}

DemoLine demo_checks(const std::string& claim, const Learner& learner, const UPSet& target, const Informant& I,
                     std::size_t horizon, const std::vector<Restriction>& expected) {
  const HypSequence p = run(learner, I, horizon);
  bool ok = true;
  std::string detail = learner.name() + " on " + target.to_string() + ":";
  for (Restriction r : expected) {
    const Verdict v = check(r, p, I);
    ok = ok && v.satisfied;
    detail += " " + to_string(r) + "=" + (v.satisfied ? "yes" : "no");
    if (v.stabilization) detail += "(n*=" + std::to_string(*v.stabilization) + ")";
  }
  return {claim, ok, detail};
}

int cmd_demo() {
  using R = Restriction;
  std::vector<DemoLine> lines;
  const UPSet cof = UPSet::cofinite({1});
  lines.push_back(demo_adversary("cofinite sets: Mon+Bc learnable, not target-cautious", "caut_tar", "COFINITE",
                                 WitnessKind::RestrictionViolation));
  lines.push_back(demo_adversary("cofinite sets: not infinitely cautious", "caut_inf", "COFINITE",
                                 WitnessKind::RestrictionViolation));
  lines.push_back(demo_adversary("N or finite: Bc learnable, not finitely cautious", "caut_fin", "N_OR_FIN",
                                 WitnessKind::RestrictionViolation));
  lines.push_back(demo_adversary("finite sets: SMon, not SMon^d", "smon_vs_dual", "FIN_POS",
                                 WitnessKind::RestrictionViolation));
  lines.push_back(demo_adversary("segments or N: SMon^d, not SMon", "dual_vs_smon", "SEGMENT",
                                 WitnessKind::RestrictionViolation));
  lines.push_back(demo_adversary("3i-streams: Mon, not Mon^d", "mon_vs_dual", "STREAM_MON",
                                 WitnessKind::RestrictionViolation));
  lines.push_back(demo_adversary("even family: Mon^d, not Mon", "dual_vs_mon", "EVEN_DUALMON",
                                 WitnessKind::RestrictionViolation));
  lines.push_back(demo_adversary("Bc vs Ex: forced mind changes", "mindchange", "MEMORIZER",
                                 WitnessKind::MindchangeTranscript));
  lines.push_back(demo_adversary("Bc vs Ex: a constant learner is split", "mindchange", "CONST_N",
                                 WitnessKind::SplitPair));
  lines.push_back(demo_adversary("FIN_POS never overgeneralizes", "caut_tar", "FIN_POS", WitnessKind::Exhausted));
  lines.push_back(demo_checks("patching keeps Mon and adds Cons", patched_learner(catalog::learner("COFINITE")), cof,
                              Informant::scheduled(cof, 7, {Directive::shuffle(8)}), 30, {R::Cons, R::Mon, R::Bc}));
  lines.push_back(demo_checks("consistent weakly monotone wrapper", cons_wmon_wrapper(catalog::learner("COFINITE")),
                              cof, Informant::canonical(cof), 30, {R::Cons, R::WMon, R::Bc}));
  const UPSet seg = UPSet::segment(3);
  lines.push_back(demo_checks("poisoning keeps WMon^d and adds Cons", dual_wmon_poison(catalog::learner("SEGMENT")),
                              seg, Informant::scheduled(seg, 3, {Directive::shuffle(4)}), 30,
                              {R::Cons, R::WMonDual, R::Bc}));
  lines.push_back(demo_checks("set-driven reduction of a G learner", to_set_driven(catalog::learner("SEGMENT")), seg,
                              Informant::scheduled(seg, 5, {Directive::shuffle(8)}), 30, {R::SMonDual, R::Bc}));
  bool all = true;
  for (const DemoLine& l : lines) {
    all = all && l.ok;
    std::cout << (l.ok ? "ok    " : "FAIL  ") << l.claim << " -> " << l.detail << "\n";
  }
  return all ? kOk : kUnmet;
}

void cmd_list(const std::string& kind) {
  if (kind == "families") {
    for (const auto& f : catalog::families()) std::cout << f.id << "  (" << f.params << ")  " << f.note << "\n";
  } else if (kind == "learners") {
    for (const auto& l : catalog::learners()) {
      std::string sat, sep;
      for (Restriction r : l.satisfies) sat += (sat.empty() ? "" : ",") + to_string(r);
      for (Restriction r : l.separated_from) sep += (sep.empty() ? "" : ",") + to_string(r);
      std::cout << l.id << "  " << to_string(l.interface) << "  family=" << (l.family.empty() ? "-" : l.family)
                << "  satisfies=" << sat << "  violates=" << (sep.empty() ? "-" : sep) << "  " << l.note << "\n";
    }
  } else if (kind == "restrictions") {
    for (Restriction r : all_restrictions()) std::cout << to_string(r) << "\n";
  } else if (kind == "adversaries") {
    for (const auto& id : adversary_ids()) std::cout << id << "\n";
  } else if (kind == "combinators") {
    for (const auto& id : combinator_ids()) std::cout << id << "\n";
  } else {
    throw ConfigError({"unknown listing '" + kind + "'"});
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-horizon experiments on learning from informants"};
  app.set_version_flag("--version", std::string(INFERLAB_VERSION));
  app.require_subcommand(1);

  std::string config_path, format = "text", output;
  auto* check = app.add_subcommand("check", "Run an experiment config");
  check->add_option("config", config_path, "JSON config file")->required();
  check->add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  check->add_option("--output", output, "Also write the machine report here");

  std::string adversary_id, opponent_id = "COFINITE", expect = "exhausted";
  std::vector<std::string> external;
  int timeout_ms = 2000;
  Bounds bounds;
  auto* adversary = app.add_subcommand("adversary", "Run one adversary against an opponent");
  adversary->add_option("id", adversary_id, "Adversary id")->required()->check(CLI::IsMember(adversary_ids()));
  adversary->add_option("--opponent", opponent_id, "Catalog learner id");
  adversary->add_option("--external", external, "Command of an external opponent")->expected(1, -1);
  adversary->add_option("--timeout-ms", timeout_ms, "External opponent reply timeout");
  adversary->add_option("--n-bound", bounds.n_bound);
  adversary->add_option("--t-bound", bounds.t_bound);
  adversary->add_option("--rounds", bounds.max_rounds);
  adversary->add_option("--expect", expect, "witness or exhausted")->check(CLI::IsMember({"witness", "exhausted"}));
  adversary->add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));

  std::vector<std::string> algebra_args;
  auto* algebra = app.add_subcommand("algebra", "UPSet calculator");
  algebra->add_option("args", algebra_args,
                      "relate A B | union|intersection|difference A B | complement A | normalize A | member A x | "
                      "elements A bound | language ID [k=v,...]")
      ->required();

  auto* demo = app.add_subcommand("demo", "Replay each separation and construction on its reference instance");

  std::string list_kind;
  auto* list = app.add_subcommand("list", "List catalog entries");
  list->add_option("kind", list_kind, "families, learners, restrictions, adversaries or combinators")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*check) return cmd_check(config_path, format, output);
    if (*adversary) return cmd_adversary(adversary_id, opponent_id, external, timeout_ms, bounds, expect, format);
    if (*algebra) return cmd_algebra(algebra_args);
    if (*demo) return cmd_demo();
    if (*list) {
      cmd_list(list_kind);
      return kOk;
    }
  } catch (const ConfigError& e) {
    for (const auto& err : e.errors()) std::cerr << "error: " << err << "\n";
    return kError;
  } catch (const OpponentError& e) {
    std::cerr << "opponent error: " << e.what() << "\n";
    return kError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
