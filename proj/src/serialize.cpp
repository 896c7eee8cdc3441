#include "inferlab/serialize.hpp"

#include <stdexcept>

namespace inferlab {
namespace {

using nlohmann::json;

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

json dataset_json(const DataSet& d) { return d.to_string(); }
DataSet dataset_from(const json& j) { return DataSet::parse(j.get<std::string>()); }

json round_to_json(const MindchangeRound& r) {
  return {{"before", dataset_json(r.before)}, {"p", r.p},
          {"b", r.b},
          {"t", r.t},
          {"after", dataset_json(r.after)},
          {"label_before", r.label_before},
          {"label_after", r.label_after}};
}

MindchangeRound round_from_json(const json& j) {
  return {dataset_from(j.at("before")),          j.at("p").get<Natural>(),
          j.at("b").get<unsigned>(),             j.at("t").get<std::size_t>(),
          dataset_from(j.at("after")),           j.at("label_before").get<Label>(),
          j.at("label_after").get<Label>()};
}

}  // namespace

bool Report::all_met() const {
  for (const CellResult& c : cells)
    if (!c.met) return false;
  for (const AdversaryResult& a : adversaries)
    if (!a.met) return false;
  return true;
}

std::string to_string(Expectation e) { return e == Expectation::Satisfied ? "satisfied" : "violated"; }

Expectation parse_expectation(std::string_view text) {
  if (text == "satisfied") return Expectation::Satisfied;
  if (text == "violated") return Expectation::Violated;
  throw std::invalid_argument("expect must be 'satisfied' or 'violated', got '" + std::string(text) + "'");
}

std::string to_string(AdversaryExpectation e) {
  switch (e) {
    case AdversaryExpectation::Witness: return "witness";
    case AdversaryExpectation::Exhausted: return "exhausted";
  }
  return "?";
}

AdversaryExpectation parse_adversary_expectation(std::string_view text) {
  if (text == "witness") return AdversaryExpectation::Witness;
  if (text == "exhausted") return AdversaryExpectation::Exhausted;
  throw std::invalid_argument("adversary expect must be 'witness' or 'exhausted', got '" +
                              std::string(text) + "'");
}

json verdict_to_json(const Verdict& v) {
  return {{"restriction", to_string(v.restriction)},
          {"satisfied", v.satisfied},
          {"s", optional_json(v.s)},
          {"t", optional_json(v.t)},
          {"stabilization", optional_json(v.stabilization)},
          {"relation", v.relation}};
}

Verdict verdict_from_json(const json& j) {
  Verdict v;
  v.restriction = parse_restriction(j.at("restriction").get<std::string>());
  v.satisfied = j.at("satisfied").get<bool>();
  v.s = optional_from<std::size_t>(j.at("s"));
  v.t = optional_from<std::size_t>(j.at("t"));
  v.stabilization = optional_from<std::size_t>(j.at("stabilization"));
  v.relation = j.at("relation").get<std::string>();
  return v;
}

json witness_to_json(const Witness& w) {
  json conjectures = json::array();
  for (const UPSet& e : w.conjectures) conjectures.push_back(e.to_string());
  json rounds = json::array();
  for (const MindchangeRound& r : w.rounds) rounds.push_back(round_to_json(r));
  return {{"kind", to_string(w.kind)},
          {"adversary", w.adversary},
          {"opponent", w.opponent},
          {"bounds", {{"n_bound", w.bounds.n_bound}, {"t_bound", w.bounds.t_bound}, {"max_rounds", w.bounds.max_rounds}}},
          {"params", w.params},
          {"restriction", to_string(w.restriction)},
          {"target", w.target.to_string()},
          {"head", w.head},
          {"s", w.s},
          {"t", w.t},
          {"conjectures", conjectures},
          {"rounds", rounds},
          {"base", dataset_json(w.base)},
          {"first", w.first.to_string()},
          {"second", w.second.to_string()},
          {"label", w.label},
          {"note", w.note}};
}

Witness witness_from_json(const json& j) {
  Witness w;
  w.kind = parse_witness_kind(j.at("kind").get<std::string>());
  w.adversary = j.at("adversary").get<std::string>();
  w.opponent = j.at("opponent").get<std::string>();
  const json& b = j.at("bounds");
  w.bounds = {b.at("n_bound").get<std::size_t>(), b.at("t_bound").get<std::size_t>(),
              b.at("max_rounds").get<std::size_t>()};
  w.params = j.at("params").get<std::map<std::string, Natural>>();
  w.restriction = parse_restriction(j.at("restriction").get<std::string>());
  w.target = UPSet::parse(j.at("target").get<std::string>());
  w.head = j.at("head").get<std::vector<Natural>>();
  w.s = j.at("s").get<std::size_t>();
  w.t = j.at("t").get<std::size_t>();
  for (const json& e : j.at("conjectures")) w.conjectures.push_back(UPSet::parse(e.get<std::string>()));
  for (const json& r : j.at("rounds")) w.rounds.push_back(round_from_json(r));
  w.base = dataset_from(j.at("base"));
  w.first = UPSet::parse(j.at("first").get<std::string>());
  w.second = UPSet::parse(j.at("second").get<std::string>());
  w.label = j.at("label").get<Label>();
  w.note = j.at("note").get<std::string>();
  return w;
}

json report_to_json(const Report& r) {
  json cells = json::array();
  for (const CellResult& c : r.cells) {
    cells.push_back({{"language", c.language},
                     {"target", c.target.to_string()},
                     {"informant", c.informant},
                     {"restriction", to_string(c.restriction)},
                     {"expect", to_string(c.expect)},
                     {"verdict", verdict_to_json(c.verdict)},
                     {"met", c.met}});
  }
  json adversaries = json::array();
  for (const AdversaryResult& a : r.adversaries) {
    adversaries.push_back({{"id", a.id},
                           {"expect", to_string(a.expect)},
                           {"witness", witness_to_json(a.witness)},
                           {"verified", a.verified},
                           {"met", a.met}});
  }
  std::size_t unmet = 0;
  for (const CellResult& c : r.cells) unmet += c.met ? 0 : 1;
  for (const AdversaryResult& a : r.adversaries) unmet += a.met ? 0 : 1;
  return {{"version", r.version},
          {"seeds", r.seeds},
          {"horizon", r.horizon},
          {"learner", r.learner},
          {"scope", r.scope},
          {"cells", cells},
          {"adversaries", adversaries},
          {"summary", {{"cells", r.cells.size()}, {"adversaries", r.adversaries.size()}, {"unmet", unmet}}}};
}

Report report_from_json(const json& j) {
  try {
    Report r;
    r.version = j.at("version").get<std::string>();
    r.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    r.horizon = j.at("horizon").get<std::size_t>();
    r.learner = j.at("learner").get<std::string>();
    r.scope = j.at("scope").get<std::string>();
    for (const json& c : j.at("cells")) {
      r.cells.push_back({c.at("language").get<std::string>(), UPSet::parse(c.at("target").get<std::string>()),
                         c.at("informant").get<std::string>(),
                         parse_restriction(c.at("restriction").get<std::string>()),
                         parse_expectation(c.at("expect").get<std::string>()), verdict_from_json(c.at("verdict")),
                         c.at("met").get<bool>()});
    }
    for (const json& a : j.at("adversaries")) {
      r.adversaries.push_back({a.at("id").get<std::string>(),
                               parse_adversary_expectation(a.at("expect").get<std::string>()),
                               witness_from_json(a.at("witness")), a.at("verified").get<bool>(),
                               a.at("met").get<bool>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

}  // namespace inferlab
