#include "inferlab/harness.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "inferlab/combinators.hpp"
#include "inferlab/external_opponent.hpp"
#include "inferlab/serialize.hpp"

namespace inferlab {
namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

/// Collects errors while walking the config; every accessor records a
/// message instead of throwing.
class Resolver {
 public:
  std::vector<std::string> errors;

  template <typename F>
  void attempt(const std::string& where, F&& f) {
    try {
      f();
    } catch (const json::exception& e) {
      errors.push_back(where + ": " + e.what());
    } catch (const std::exception& e) {
      errors.push_back(where + ": " + e.what());
    }
  }

  std::optional<Learner> learner(const json& spec, const std::string& where) {
    std::optional<Learner> out;
    attempt(where, [&] {
      if (spec.is_string()) {
        out = catalog::learner(spec.get<std::string>());
        return;
      }
      if (!spec.is_object()) throw std::invalid_argument("learner must be an id or an object");
      if (spec.contains("external")) {
        const auto argv = spec.at("external").get<std::vector<std::string>>();
        if (argv.empty()) throw std::invalid_argument("external command is empty");
        const auto ms = spec.value("timeout_ms", 2000);
        out = external_opponent(argv, std::chrono::milliseconds(ms));
      } else {
        const std::string id = spec.at("id").get<std::string>();
        if (id == "CONST") {
          out = catalog::constant_learner(UPSet::parse(spec.at("set").get<std::string>()));
        } else {
          out = catalog::learner(id);
        }
      }
      if (spec.contains("pipeline")) {
        const auto ids = spec.at("pipeline").get<std::vector<std::string>>();
        for (const std::string& id : ids) {
          if (std::find(combinator_ids().begin(), combinator_ids().end(), id) == combinator_ids().end()) {
            throw std::invalid_argument("unknown combinator id '" + id + "'");
          }
        }
        out = apply_pipeline(*out, ids);
      }
    });
    return out;
  }
};

catalog::Params params_from_json(const json& j) {
  catalog::Params out;
  for (const auto& [key, value] : j.items()) {
    out[key] = value.is_array() ? value.get<std::vector<Natural>>() : std::vector<Natural>{value.get<Natural>()};
  }
  return out;
}

std::vector<catalog::LanguageInstance> sampled_targets(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<catalog::LanguageInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    Bits prefix(rng() % 7), period(1 + rng() % 4);
    for (std::size_t k = 0; k < prefix.size(); ++k) prefix[k] = rng() % 2;
    for (std::size_t k = 0; k < period.size(); ++k) period[k] = rng() % 2;
    UPSet s = UPSet::normalize(prefix, period);
    out.push_back({"sampled#" + std::to_string(i), {}, std::move(s)});
  }
  return out;
}

std::string verdict_text(const Verdict& v) {
  std::string out = v.satisfied ? "satisfied" : "violated";
  if (v.stabilization) out += " n*=" + std::to_string(*v.stabilization);
  if (v.s && v.t) out += " s=" + std::to_string(*v.s) + " t=" + std::to_string(*v.t);
  if (!v.relation.empty()) out += " (" + v.relation + ")";
  return out;
}

std::string witness_text(const Witness& w) {
  std::string out = to_string(w.kind);
  std::vector<std::string> params;
  for (const auto& [k, v] : w.params) params.push_back(k + "=" + std::to_string(v));
  if (!params.empty()) out += " [" + join(params, " ") + "]";
  switch (w.kind) {
    case WitnessKind::RestrictionViolation:
      out += " " + to_string(w.restriction) + " on " + w.target.to_string() + " at s=" + std::to_string(w.s) +
             " t=" + std::to_string(w.t);
      if (w.t < w.conjectures.size()) {
        out += ": " + w.conjectures[w.s].to_string() + " then " + w.conjectures[w.t].to_string();
      }
      break;
    case WitnessKind::MindchangeTranscript: out += " rounds=" + std::to_string(w.rounds.size()); break;
    case WitnessKind::SplitPair:
      out += " " + w.first.to_string() + " / " + w.second.to_string() + " label=" + std::to_string(w.label);
      break;
    case WitnessKind::Exhausted: out += " (" + w.note + ")"; break;
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error("invalid config: " + join(errors, "; ")), errors_(std::move(errors)) {}

Informant ScheduleSpec::for_target(const UPSet& target) const {
  return canonical ? Informant::canonical(target) : Informant::scheduled(target, seed, plan);
}

ExperimentConfig validate_config(std::string_view text, std::optional<std::uint64_t> seed_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
  }
  if (!doc.is_object()) throw ConfigError({"config must be a JSON object"});

  static const std::vector<std::string> known{"learner", "targets", "families", "schedules", "horizon",
                                              "checks",  "adversaries", "global", "output"};
  Resolver res;
  ExperimentConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) res.errors.push_back("unknown key '" + key + "'");
  }

  if (doc.contains("learner")) cfg.learner = res.learner(doc["learner"], "learner");

  if (doc.contains("targets")) {
    const json& targets = doc["targets"];
    for (std::size_t i = 0; i < targets.size(); ++i) {
      res.attempt("targets[" + std::to_string(i) + "]", [&] {
        const json& t = targets.at(i);
        if (t.contains("upset")) {
          const std::string text = t.at("upset").get<std::string>();
          cfg.targets.push_back({"upset", {}, UPSet::parse(text)});
        } else {
          const std::string id = t.at("language").get<std::string>();
          catalog::Params params = t.contains("params") ? params_from_json(t.at("params")) : catalog::Params{};
          UPSet set = catalog::language(id, params);
          cfg.targets.push_back({id, std::move(params), std::move(set)});
        }
      });
    }
  }

  if (doc.contains("families")) {
    const json& families = doc["families"];
    for (std::size_t i = 0; i < families.size(); ++i) {
      res.attempt("families[" + std::to_string(i) + "]", [&] {
        const json& f = families.at(i);
        catalog::SweepBounds b;
        b.value_bound = f.value("value_bound", b.value_bound);
        b.max_size = f.value("max_size", b.max_size);
        b.n_max = f.value("n_max", b.n_max);
        b.m_max = f.value("m_max", b.m_max);
        for (auto& inst : catalog::family(f.at("id").get<std::string>(), b)) cfg.targets.push_back(std::move(inst));
      });
    }
  }

  if (doc.contains("schedules")) {
    const json& schedules = doc["schedules"];
    std::uint64_t seeded = 0;
    for (std::size_t i = 0; i < schedules.size(); ++i) {
      res.attempt("schedules[" + std::to_string(i) + "]", [&] {
        const json& s = schedules.at(i);
        if (s.is_string() && s.get<std::string>() == "canonical") {
          cfg.schedules.push_back({});
          return;
        }
        if (!s.is_object() || !s.contains("seed")) {
          throw std::invalid_argument("schedule must be \"canonical\" or an object with an explicit seed");
        }
        ScheduleSpec spec;
        spec.canonical = false;
        spec.seed = seed_override ? *seed_override + seeded : s.at("seed").get<std::uint64_t>();
        ++seeded;
        for (const json& d : s.value("plan", json::array({"default"}))) {
          spec.plan.push_back(Directive::parse(d.get<std::string>()));
        }
        cfg.schedules.push_back(std::move(spec));
      });
    }
  } else {
    cfg.schedules.push_back({});
  }

  if (doc.contains("horizon")) {
    res.attempt("horizon", [&] {
      cfg.horizon = doc["horizon"].get<std::size_t>();
      if (cfg.horizon == 0) throw std::invalid_argument("horizon must be at least 1");
    });
  } else if (cfg.learner) {
    res.errors.push_back("horizon: missing");
  }

  if (doc.contains("checks")) {
    if (!doc.contains("learner")) res.errors.push_back("checks: no learner to check");
    const json& checks = doc["checks"];
    for (std::size_t i = 0; i < checks.size(); ++i) {
      res.attempt("checks[" + std::to_string(i) + "]", [&] {
        const json& c = checks.at(i);
        CheckSpec spec;
        if (c.is_string()) {
          spec.restriction = parse_restriction(c.get<std::string>());
        } else {
          spec.restriction = parse_restriction(c.at("id").get<std::string>());
          if (c.contains("expect")) spec.expect = parse_expectation(c.at("expect").get<std::string>());
        }
        cfg.checks.push_back(spec);
      });
    }
  }

  if (doc.contains("adversaries")) {
    const json& advs = doc["adversaries"];
    for (std::size_t i = 0; i < advs.size(); ++i) {
      const std::string where = "adversaries[" + std::to_string(i) + "]";
      res.attempt(where, [&] {
        const json& a = advs.at(i);
        const std::string id = a.at("id").get<std::string>();
        if (std::find(adversary_ids().begin(), adversary_ids().end(), id) == adversary_ids().end()) {
          throw std::invalid_argument("unknown adversary id '" + id + "'");
        }
        auto opponent = res.learner(a.at("opponent"), where + ".opponent");
        if (!opponent) return;
        Bounds b;
        b.n_bound = a.value("n_bound", b.n_bound);
        b.t_bound = a.value("t_bound", b.t_bound);
        b.max_rounds = a.value("max_rounds", b.max_rounds);
        if (id == "mindchange" && opponent->interface() != Interface::Sd) {
          throw std::invalid_argument("mindchange needs a set-driven opponent, got " + to_string(opponent->interface()));
        }
        AdversarySpec spec{id, *opponent, b, AdversaryExpectation::Exhausted};
        if (a.contains("expect")) spec.expect = parse_adversary_expectation(a.at("expect").get<std::string>());
        cfg.adversaries.push_back(std::move(spec));
      });
    }
  }

  if (doc.contains("global")) {
    res.attempt("global", [&] {
      const json& g = doc["global"];
      std::size_t samples = 8;
      std::uint64_t seed = 1;
      if (g.is_boolean()) {
        cfg.global = g.get<bool>();
      } else {
        cfg.global = true;
        samples = g.value("samples", samples);
        seed = g.at("seed").get<std::uint64_t>();
      }
      if (seed_override) seed = *seed_override + 1000;
      cfg.global_seed = seed;
      if (cfg.global) {
        for (auto& inst : sampled_targets(samples, seed)) cfg.targets.push_back(std::move(inst));
      }
    });
  }

  if (doc.contains("output")) res.attempt("output", [&] { cfg.output = doc["output"].get<std::string>(); });

  // Seeded schedules must accept every target (insert labels are target-specific).
  for (std::size_t i = 0; i < cfg.schedules.size(); ++i) {
    for (const auto& target : cfg.targets) {
      res.attempt("schedules[" + std::to_string(i) + "] for " + target.describe(),
                  [&] { (void)cfg.schedules[i].for_target(target.set); });
    }
  }

  if (!res.errors.empty()) throw ConfigError(std::move(res.errors));
  return cfg;
}

Report run_experiment(const ExperimentConfig& cfg) {
  Report report;
  report.version = INFERLAB_VERSION;
  report.horizon = cfg.horizon;
  report.learner = cfg.learner ? cfg.learner->name() : "";
  report.scope = cfg.global ? "global (sampled)" : "local";
  for (const ScheduleSpec& s : cfg.schedules)
    if (!s.canonical) report.seeds.push_back(s.seed);
  if (cfg.global) report.seeds.push_back(cfg.global_seed);

  if (cfg.learner && !cfg.checks.empty()) {
    for (const auto& target : cfg.targets) {
      for (const ScheduleSpec& schedule : cfg.schedules) {
        const Informant I = schedule.for_target(target.set);
        const HypSequence p = run(*cfg.learner, I, cfg.horizon);
        for (const CheckSpec& c : cfg.checks) {
          CellResult cell;
          cell.language = target.describe();
          cell.target = target.set;
          cell.informant = I.describe();
          cell.restriction = c.restriction;
          cell.expect = c.expect;
          cell.verdict = check(c.restriction, p, I);
          cell.met = cell.verdict.satisfied == (c.expect == Expectation::Satisfied);
          report.cells.push_back(std::move(cell));
        }
      }
    }
  }
  std::stable_sort(report.cells.begin(), report.cells.end(), [](const CellResult& a, const CellResult& b) {
    return std::tie(a.language, a.informant, a.restriction) < std::tie(b.language, b.informant, b.restriction);
  });

  for (const AdversarySpec& a : cfg.adversaries) {
    AdversaryResult result;
    result.id = a.id;
    result.expect = a.expect;
    result.witness = run_adversary(a.id, a.opponent, a.bounds);
    result.verified = verify_witness(result.witness, a.opponent);
    const bool found = result.witness.kind != WitnessKind::Exhausted;
    switch (a.expect) {
      case AdversaryExpectation::Witness: result.met = found && result.verified; break;
      case AdversaryExpectation::Exhausted: result.met = !found; break;
    }
    report.adversaries.push_back(std::move(result));
  }
  return report;
}

std::string render_report(const Report& r, RenderMode mode) {
  if (mode == RenderMode::Machine) return report_to_json(r).dump(2) + "\n";
  std::ostringstream out;
  std::vector<std::string> seeds;
  for (auto s : r.seeds) seeds.push_back(std::to_string(s));
  std::size_t unmet = 0;
  for (const auto& c : r.cells) unmet += c.met ? 0 : 1;
  for (const auto& a : r.adversaries) unmet += a.met ? 0 : 1;
  out << "inferlab " << r.version << " report\n";
  out << "learner: " << (r.learner.empty() ? "-" : r.learner) << "  scope: " << r.scope << "  horizon: " << r.horizon
      << "  seeds: " << (seeds.empty() ? "-" : join(seeds, ",")) << "\n";
  out << "cells: " << r.cells.size() << "  adversaries: " << r.adversaries.size() << "  unmet: " << unmet << "\n";
  for (const CellResult& c : r.cells) {
    out << (c.met ? "ok    " : "UNMET ") << c.language << " " << c.target.to_string() << " | " << c.informant << " | "
        << to_string(c.restriction) << " | " << verdict_text(c.verdict) << " (expect " << to_string(c.expect)
        << ")\n";
  }
  for (const AdversaryResult& a : r.adversaries) {
    out << (a.met ? "ok    " : "UNMET ") << "adversary " << a.id << " vs " << a.witness.opponent << " | "
        << witness_text(a.witness) << " | verified=" << (a.verified ? "yes" : "no") << " (expect "
        << to_string(a.expect) << ")\n";
  }
  return out.str();
}

Report parse_report(std::string_view text) {
  try {
    return report_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

}  // namespace inferlab
