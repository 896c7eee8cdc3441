#include "inferlab/catalog.hpp"

#include <charconv>
#include <stdexcept>

namespace inferlab::catalog {
namespace {

Natural scalar(const Params& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end() || it->second.size() != 1) {
    throw std::invalid_argument("parameter '" + key + "' must be a single natural number");
  }
  return it->second.front();
}

FiniteSet set_param(const Params& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) return {};
  return FiniteSet(it->second.begin(), it->second.end());
}

void expect_keys(std::string_view id, const Params& params, std::initializer_list<const char*> allowed) {
  for (const auto& [key, values] : params) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw std::invalid_argument("language '" + std::string(id) + "' takes no parameter '" + key + "'");
  }
}

void expect_order(Natural n, Natural m) {
  if (n >= m) {
    throw std::invalid_argument("Z needs n < m, got n=" + std::to_string(n) + " m=" + std::to_string(m));
  }
}

UPSet stream_x() { return UPSet::residue_class(0, 3); }

UPSet stream_y(Natural n) {
  Bits prefix;
  for (Natural i = 0; i <= n; ++i) prefix.insert(prefix.end(), {true, false, false});
  return UPSet::normalize(std::move(prefix), {false, true, false});
}

UPSet stream_z(Natural n, Natural m) {
  expect_order(n, m);
  FiniteSet s;
  for (Natural i = 0; i <= n; ++i) s.insert(3 * i);
  for (Natural i = n + 1; i <= m; ++i) s.insert(3 * i + 1);
  s.insert(3 * m + 2);
  return UPSet::from_finite(s);
}

FiniteSet even_y_elements(Natural n) {
  FiniteSet s{2 * n + 1};
  for (Natural i = 0; i <= n; ++i) s.insert(2 * i);
  return s;
}

UPSet even_z(Natural n, Natural m) {
  expect_order(n, m);
  FiniteSet s = even_y_elements(n);
  s.insert(2 * m);
  return UPSet::from_finite(s);
}

Hypothesis named(std::string_view id, UPSet extension) {
  const Label label = program_label(std::string(id) + ":" + extension.to_string());
  return make_hypothesis(label, std::move(extension));
}

/// Subsets of {0..bound-1} with at most max_size elements, by size then
/// lexicographically.
std::vector<FiniteSet> small_subsets(Natural bound, std::size_t max_size) {
  std::vector<FiniteSet> out{FiniteSet{}};
  std::vector<FiniteSet> layer{FiniteSet{}};
  for (std::size_t size = 1; size <= max_size; ++size) {
    std::vector<FiniteSet> next;
    for (const FiniteSet& s : layer) {
      const Natural start = s.empty() ? 0 : *s.rbegin() + 1;
      for (Natural x = start; x < bound; ++x) {
        FiniteSet grown = s;
        grown.insert(x);
        next.push_back(std::move(grown));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

LanguageInstance instance(std::string id, Params params) {
  UPSet set = language(id, params);
  return {std::move(id), std::move(params), std::move(set)};
}

}  // namespace

UPSet language(std::string_view id, const Params& params) {
  if (id == "finite") {
    expect_keys(id, params, {"elements"});
    return UPSet::from_finite(set_param(params, "elements"));
  }
  if (id == "cofinite") {
    expect_keys(id, params, {"remove"});
    return UPSet::cofinite(set_param(params, "remove"));
  }
  if (id == "segment") {
    expect_keys(id, params, {"n"});
    return UPSet::segment(scalar(params, "n"));
  }
  if (id == "nat" || id == "empty" || id == "streamX" || id == "evenX") {
    expect_keys(id, params, {});
    if (id == "nat") return UPSet::naturals();
    if (id == "empty") return UPSet::empty();
    if (id == "streamX") return stream_x();
    return UPSet::residue_class(0, 2);
  }
  if (id == "streamY" || id == "evenY") {
    expect_keys(id, params, {"n"});
    const Natural n = scalar(params, "n");
    return id == "streamY" ? stream_y(n) : UPSet::from_finite(even_y_elements(n));
  }
  if (id == "streamZ" || id == "evenZ") {
    expect_keys(id, params, {"n", "m"});
    const Natural n = scalar(params, "n");
    const Natural m = scalar(params, "m");
    return id == "streamZ" ? stream_z(n, m) : even_z(n, m);
  }
  throw std::invalid_argument("unknown language id '" + std::string(id) + "'");
}

Params parse_params(std::string_view text) {
  Params out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw std::invalid_argument("parameter must be key=value: '" + std::string(item) + "'");
    }
    std::vector<Natural> values;
    std::string_view rest = item.substr(eq + 1);
    while (!rest.empty()) {
      const auto semi = rest.find(';');
      const auto token = rest.substr(0, semi);
      Natural v = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
        throw std::invalid_argument("parameter value must be natural: '" + std::string(token) + "'");
      }
      values.push_back(v);
      if (semi == std::string_view::npos) break;
      rest.remove_prefix(semi + 1);
    }
    out[std::string(item.substr(0, eq))] = std::move(values);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string params_to_string(const Params& params) {
  std::string out;
  for (const auto& [key, values] : params) {
    if (!out.empty()) out.push_back(',');
    out += key + "=";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out.push_back(';');
      out += std::to_string(values[i]);
    }
  }
  return out;
}

std::string LanguageInstance::describe() const {
  return params.empty() ? id : id + "(" + params_to_string(params) + ")";
}

std::vector<LanguageInstance> family(std::string_view id, const SweepBounds& b) {
  std::vector<LanguageInstance> out;
  auto finite_sets = [&](const char* lang, const char* key) {
    for (const FiniteSet& s : small_subsets(b.value_bound, b.max_size)) {
      out.push_back(instance(lang, {{key, std::vector<Natural>(s.begin(), s.end())}}));
    }
  };
  if (id == "finite") {
    finite_sets("finite", "elements");
  } else if (id == "cofinite") {
    finite_sets("cofinite", "remove");
  } else if (id == "segments_or_N") {
    out.push_back(instance("nat", {}));
    for (Natural n = 0; n <= b.n_max; ++n) out.push_back(instance("segment", {{"n", {n}}}));
  } else if (id == "N_or_finite") {
    out.push_back(instance("nat", {}));
    finite_sets("finite", "elements");
  } else if (id == "streamXYZ" || id == "evenXYZ") {
    const std::string prefix = id == "streamXYZ" ? "stream" : "even";
    out.push_back(instance(prefix + "X", {}));
    for (Natural n = 0; n <= b.n_max; ++n) out.push_back(instance(prefix + "Y", {{"n", {n}}}));
    for (Natural n = 0; n <= b.n_max; ++n) {
      for (Natural m = n + 1; m <= b.m_max; ++m) out.push_back(instance(prefix + "Z", {{"n", {n}}, {"m", {m}}}));
    }
  } else {
    throw std::invalid_argument("unknown family id '" + std::string(id) + "'");
  }
  return out;
}

Learner constant_learner(const UPSet& target) {
  const std::string name = "CONST(" + target.to_string() + ")";
  const Hypothesis h = named("CONST", target);
  return Learner::set_driven(name, [h](const DataSet&) { return h; });
}

Learner learner(std::string_view id) {
  const std::string name(id);
  if (id == "FIN_POS") {
    return Learner::set_driven(name, [](const DataSet& d) { return named("FIN_POS", UPSet::from_finite(pos(d))); });
  }
  if (id == "COFINITE") {
    return Learner::set_driven(name, [](const DataSet& d) { return named("COFINITE", UPSet::cofinite(neg(d))); });
  }
  if (id == "MAXPOS") {
    return Learner::set_driven(name, [](const DataSet& d) {
      const FiniteSet positives = pos(d);
      const Label label = positives.empty() ? program_label("MAXPOS:none") : *positives.rbegin();
      return make_hypothesis(label, UPSet::from_finite(positives));
    });
  }
  if (id == "SEGMENT") {
    return Learner::gold(name, [](const DataSequence& s) {
      const FiniteSet negatives = neg(s);
      if (negatives.empty()) return named("SEGMENT", UPSet::naturals());
      const Natural first = *negatives.begin();
      return named("SEGMENT", first == 0 ? UPSet::empty() : UPSet::segment(first - 1));
    });
  }
  if (id == "STREAM_MON") {
    return Learner::gold(name, [](const DataSequence& s) {
      const FiniteSet positives = pos(s);
      for (Natural x : positives) {
        if (x % 3 != 0 || positives.count(x + 4) == 0) continue;
        const Natural n = x / 3;
        for (Natural y : positives) {
          if (y % 3 == 2 && y / 3 > n) return named("STREAM_MON", stream_z(n, y / 3));
        }
        return named("STREAM_MON", stream_y(n));
      }
      return named("STREAM_MON", stream_x());
    });
  }
  if (id == "EVEN_DUALMON") {
    return Learner::gold(name, [](const DataSequence& s) {
      const FiniteSet positives = pos(s);
      for (Natural x : positives) {
        if (x % 2 != 0 || positives.count(x + 1) == 0) continue;
        const Natural n = x / 2;
        for (Natural y : positives) {
          if (y % 2 == 0 && y / 2 > n) return named("EVEN_DUALMON", even_z(n, y / 2));
        }
        return named("EVEN_DUALMON", UPSet::from_finite(even_y_elements(n)));
      }
      return named("EVEN_DUALMON", UPSet::residue_class(0, 2));
    });
  }
  if (id == "N_OR_FIN") {
    return Learner::gold(name, [](const DataSequence& s) {
      if (neg(s).empty()) return named("N_OR_FIN", UPSet::naturals());
      return named("N_OR_FIN", UPSet::from_finite(pos(s)));
    });
  }
  if (id == "CONST_EMPTY") {
    return Learner::set_driven(name, [](const DataSet&) { return named("CONST_EMPTY", UPSet::empty()); });
  }
  if (id == "CONST_N") {
    return Learner::set_driven(name, [](const DataSet&) { return named("CONST_N", UPSet::naturals()); });
  }
  if (id == "MEMORIZER") {
    return Learner::set_driven(name, [](const DataSet& d) {
      return make_hypothesis(program_label("MEMORIZER:" + d.to_string()), UPSet::from_finite(pos(d)));
    });
  }
  if (id == "ITER_POS") {
    return Learner::iterative(name, [](const Hypothesis& previous, const Example& next) {
      UPSet extension = previous.extension;
      if (next.positive) extension = set_union(extension, UPSet::from_finite({next.value}));
      return named("ITER_POS", std::move(extension));
    });
  }
  throw std::invalid_argument("unknown learner id '" + std::string(id) + "'");
}

const std::vector<LearnerInfo>& learners() {
  using R = Restriction;
  static const std::vector<LearnerInfo> all{
      {"FIN_POS", Interface::Sd, "finite", {R::SMon, R::Bc}, {R::SMonDual}, "conjectures pos(D)"},
      {"COFINITE", Interface::Sd, "cofinite", {R::Mon, R::Bc}, {R::CautTar, R::CautInf, R::Caut},
       "conjectures N \\ neg(D)"},
      {"MAXPOS", Interface::Sd, "finite", {R::Bc}, {R::Ex},
       "label max(pos(D)) over extension pos(D); mind-change reference opponent"},
      {"SEGMENT", Interface::G, "segments_or_N", {R::SMonDual, R::Bc}, {R::SMon},
       "N until a negative example, then {0..min(neg)-1}"},
      {"STREAM_MON", Interface::G, "streamXYZ", {R::Mon, R::Bc}, {R::MonDual}, "X, then Y_n, then Z_{n,m}"},
      {"EVEN_DUALMON", Interface::G, "evenXYZ", {R::MonDual, R::Bc}, {R::Mon}, "2N, then Y_n, then Z_{n,m}"},
      {"N_OR_FIN", Interface::G, "N_or_finite", {R::Bc}, {R::CautFin}, "N until a negative example, then pos"},
      {"CONST_EMPTY", Interface::Sd, "", {R::SMonBoth, R::Caut}, {}, "always the empty set"},
      {"CONST_N", Interface::Sd, "", {R::SMonBoth, R::Caut}, {}, "always N"},
      {"MEMORIZER", Interface::Sd, "finite", {R::SMon, R::Bc}, {R::Ex}, "fresh label per distinct content"},
      {"ITER_POS", Interface::It, "finite", {R::SMon, R::Bc}, {}, "iteratively accumulates positives"},
  };
  return all;
}

const std::vector<FamilyInfo>& families() {
  static const std::vector<FamilyInfo> all{
      {"finite", "value_bound, max_size", "finite sets; FIN_POS is SMon and Bc"},
      {"cofinite", "value_bound, max_size", "cofinite sets; COFINITE is Mon and Bc, not CautTar"},
      {"segments_or_N", "n_max", "N and {0..n}; SEGMENT is SMon^d and Bc"},
      {"N_or_finite", "value_bound, max_size", "N and finite sets; N_OR_FIN is Bc, not CautFin"},
      {"streamXYZ", "n_max, m_max", "3i-streams X, Y_n, Z_{n,m}; STREAM_MON is Mon and Bc"},
      {"evenXYZ", "n_max, m_max", "2N, Y_n, Z_{n,m}; EVEN_DUALMON is Mon^d and Bc"},
  };
  return all;
}

}  // namespace inferlab::catalog
