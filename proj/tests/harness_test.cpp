#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "inferlab/harness.hpp"

using namespace inferlab;

namespace {

const char* kMinimal = R"({
  "learner": "COFINITE",
  "targets": [{"language": "cofinite", "params": {"remove": [1]}}],
  "horizon": 10,
  "checks": ["bc", "mon", {"id": "caut_tar", "expect": "violated"}]
})";

const CellResult& cell(const Report& r, Restriction id) {
  for (const auto& c : r.cells)
    if (c.restriction == id) return c;
  throw std::logic_error("no cell");
}

std::vector<std::string> errors_of(std::string_view text) {
  try {
    validate_config(text);
  } catch (const ConfigError& e) {
    return e.errors();
  }
  return {};
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() / ("inferlab_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string write(const std::string& name, std::string_view text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

int cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(INFERLAB_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Harness, MinimalConfigRuns) {
  const ExperimentConfig cfg = validate_config(kMinimal);
  ASSERT_EQ(cfg.targets.size(), 1u);
  EXPECT_EQ(cfg.targets[0].set, UPSet::cofinite({1}));
  const Report r = run_experiment(cfg);
  ASSERT_EQ(r.cells.size(), 3u);
  EXPECT_TRUE(cell(r, Restriction::Bc).verdict.satisfied);
  EXPECT_EQ(cell(r, Restriction::Bc).verdict.stabilization, 2u);
  EXPECT_TRUE(cell(r, Restriction::Mon).verdict.satisfied);
  EXPECT_FALSE(cell(r, Restriction::CautTar).verdict.satisfied);
  EXPECT_EQ(cell(r, Restriction::CautTar).verdict.s, 0u);
  EXPECT_TRUE(r.all_met());
  EXPECT_EQ(r.scope, "local");
}

TEST(Harness, ConfigErrors) {
  auto has = [](const std::vector<std::string>& errs, std::string_view needle) {
    for (const auto& e : errs)
      if (e.find(needle) != std::string::npos) return true;
    return false;
  };
  EXPECT_TRUE(has(errors_of(R"({"learner": "NOPE", "horizon": 5})"), "NOPE"));
  EXPECT_FALSE(errors_of(R"({"learner": "FIN_POS", "targets": [{"upset": "1|"}], "horizon": 5})").empty());
  EXPECT_FALSE(errors_of(R"({"learner": "FIN_POS", "horizon": 0, "checks": ["bc"]})").empty());
  EXPECT_TRUE(has(errors_of(R"({"learner": "FIN_POS", "horizon": 5, "colour": 1})"), "colour"));
  EXPECT_FALSE(errors_of("{not json").empty());
  // Every problem is reported, not just the first.
  const auto many = errors_of(R"({"learner": "NOPE", "targets": [{"upset": "2|1"}], "checks": ["strong"], "horizon": 5})");
  EXPECT_GE(many.size(), 3u);
}

TEST(Harness, WrapperPipeline) {
  const Report r = run_experiment(validate_config(R"({
    "learner": {"id": "COFINITE", "pipeline": ["cons_wmon"]},
    "targets": [{"language": "cofinite", "params": {"remove": [1]}}],
    "horizon": 10,
    "checks": ["cons", "wmon", "bc"]
  })"));
  ASSERT_EQ(r.cells.size(), 3u);
  for (const auto& c : r.cells) EXPECT_TRUE(c.verdict.satisfied) << to_string(c.restriction);
}

TEST(Harness, MindchangeAdversary) {
  const Report r = run_experiment(validate_config(R"({
    "adversaries": [{"id": "mindchange", "opponent": "MEMORIZER", "max_rounds": 5, "expect": "witness"}]
  })"));
  ASSERT_EQ(r.adversaries.size(), 1u);
  EXPECT_EQ(r.adversaries[0].witness.rounds.size(), 5u);
  EXPECT_TRUE(r.adversaries[0].met);
  EXPECT_TRUE(r.all_met());
}

TEST(Harness, RenderingAndRoundTrip) {
  const Report empty = run_experiment(validate_config(R"({"horizon": 3})"));
  const std::string text = render_report(empty, RenderMode::Text);
  EXPECT_NE(text.find("cells: 0"), std::string::npos);

  const Report r = run_experiment(validate_config(kMinimal));
  const std::string shown = render_report(r, RenderMode::Text);
  EXPECT_NE(shown.find("10|1"), std::string::npos);
  EXPECT_NE(shown.find("caut_tar"), std::string::npos);
  const std::string machine = render_report(r, RenderMode::Machine);
  EXPECT_EQ(parse_report(machine), r);
  EXPECT_EQ(render_report(run_experiment(validate_config(kMinimal)), RenderMode::Machine), machine);
  EXPECT_THROW(parse_report("[1,"), std::invalid_argument);
}

TEST(Harness, SeededSchedulesAndOverride) {
  const char* cfg_text = R"({
    "learner": "FIN_POS",
    "families": [{"id": "finite", "value_bound": 4, "max_size": 2}],
    "schedules": ["canonical", {"seed": 3, "plan": ["shuffle:4", "dup:1:2"]}, {"seed": 9}],
    "horizon": 30,
    "checks": ["smon", "bc"],
    "global": {"samples": 4, "seed": 2}
  })";
  const ExperimentConfig cfg = validate_config(cfg_text);
  EXPECT_EQ(cfg.schedules[1].seed, 3u);
  EXPECT_EQ(cfg.schedules[2].plan, (std::vector<Directive>{Directive::shuffle(8)}));
  const ExperimentConfig over = validate_config(cfg_text, 100);
  EXPECT_EQ(over.schedules[1].seed, 100u);
  EXPECT_EQ(over.schedules[2].seed, 101u);
  EXPECT_EQ(over.global_seed, 1100u);
  const Report r = run_experiment(cfg);
  EXPECT_EQ(r.scope, "global (sampled)");
  EXPECT_FALSE(r.cells.empty());
  for (std::size_t i = 1; i < r.cells.size(); ++i) {
    const auto& a = r.cells[i - 1];
    const auto& b = r.cells[i];
    EXPECT_LE(std::tie(a.language, a.informant), std::tie(b.language, b.informant));
  }
}

TEST(Harness, CliExitCodes) {
  TempDir dir;
  const std::string ok = dir.write("ok.json", kMinimal);
  const std::string unmet = dir.write("unmet.json", R"({
    "learner": "COFINITE",
    "targets": [{"language": "cofinite", "params": {"remove": [1]}}],
    "horizon": 10,
    "checks": ["caut_tar"]
  })");
  const std::string bad = dir.write("bad.json", R"({"learner": "NOPE", "horizon": 5})");
  const std::string ext = dir.write("ext.json", std::string(R"({"adversaries": [{"id": "caut_tar", "opponent": {"external": [")") +
                                                  OPPONENT_STUB + R"(", "silent"], "timeout_ms": 200}}]})");
  EXPECT_EQ(cli("check " + ok), 0);
  EXPECT_EQ(cli("check " + unmet), 1);
  EXPECT_EQ(cli("check " + bad), 2);
  EXPECT_EQ(cli("check " + dir.file("missing.json")), 2);
  EXPECT_EQ(cli("check " + ext), 2);
  EXPECT_EQ(cli("check " + ok, "INFERLAB_SEED=abc"), 2);
  EXPECT_EQ(cli("adversary caut_tar --opponent COFINITE --expect witness"), 0);
  EXPECT_EQ(cli("adversary caut_tar --opponent COFINITE"), 1);
  EXPECT_EQ(cli("adversary caut_tar --opponent FIN_POS"), 0);
  EXPECT_EQ(cli("adversary caut_tar --opponent NOPE"), 2);
  EXPECT_EQ(cli("algebra relate '|10' '|01'"), 0);
  EXPECT_EQ(cli("algebra relate '1|' '|01'"), 2);
  EXPECT_EQ(cli("--no-such-flag"), 2);
}

TEST(Harness, CliReportsAreReproducible) {
  TempDir dir;
  const std::string cfg = dir.write("cfg.json", R"({
    "learner": "FIN_POS",
    "targets": [{"upset": "101|0"}],
    "schedules": [{"seed": 4}],
    "horizon": 12,
    "checks": ["smon", "bc"]
  })");
  const std::string a = dir.file("a.json"), b = dir.file("b.json"), c = dir.file("c.json");
  EXPECT_EQ(cli("check " + cfg + " --format machine --output " + a, "INFERLAB_SEED=7"), 0);
  EXPECT_EQ(cli("check " + cfg + " --format machine --output " + b, "INFERLAB_SEED=7"), 0);
  EXPECT_EQ(cli("check " + cfg + " --format machine --output " + c), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
  const Report ra = parse_report(slurp(a));
  const Report rc = parse_report(slurp(c));
  EXPECT_EQ(ra.seeds, (std::vector<std::uint64_t>{7}));
  EXPECT_EQ(rc.seeds, (std::vector<std::uint64_t>{4}));
}
