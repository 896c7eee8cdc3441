#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "inferlab/catalog.hpp"
#include "inferlab/report.hpp"

namespace inferlab {

/// All problems found in a config, reported together.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

struct ScheduleSpec {
  bool canonical = true;
  std::uint64_t seed = 0;
  std::vector<Directive> plan;

  Informant for_target(const UPSet& target) const;
};

struct CheckSpec {
  Restriction restriction = Restriction::Bc;
  Expectation expect = Expectation::Satisfied;
};

struct AdversarySpec {
  std::string id;
  Learner opponent;
  Bounds bounds;
  AdversaryExpectation expect = AdversaryExpectation::Exhausted;
};

struct ExperimentConfig {
  std::optional<Learner> learner;
  std::vector<catalog::LanguageInstance> targets;
  std::vector<ScheduleSpec> schedules;
  std::size_t horizon = 0;
  std::vector<CheckSpec> checks;
  std::vector<AdversarySpec> adversaries;
  bool global = false;
  std::uint64_t global_seed = 1;
  std::string output;
};

/// Parses and resolves a JSON config. A non-empty `seed_override` replaces
/// the seed of the i-th seeded schedule by override + i. Throws ConfigError
/// listing every problem.
ExperimentConfig validate_config(std::string_view text, std::optional<std::uint64_t> seed_override = {});

/// Deterministic; cells are sorted by (language, informant, restriction).
Report run_experiment(const ExperimentConfig& cfg);

enum class RenderMode { Text, Machine };

std::string render_report(const Report& r, RenderMode mode);
/// Inverse of the machine rendering.
Report parse_report(std::string_view text);

}  // namespace inferlab
