#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <sys/stat.h>
#include <sys/wait.h>

#include "dba/cli.hpp"
#include "dba/io.hpp"
#include "dba/text.hpp"
#include "test_support.hpp"

using namespace dba;
using testing_support::data_dir;
using testing_support::TempDir;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dba");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string table1(const std::string& f) { return (data_dir() / "table1" / f).string(); }

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"simulate"}).code, 2);
  EXPECT_EQ(run_cli({"analyze", "a", "b", "c", "--norm", "median"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, SimulateIsDeterministic) {
  TempDir tmp;
  const auto cfg = (data_dir() / "session.json").string();
  ASSERT_EQ(run_cli({"simulate", cfg, (tmp / "a").string(), "--seed", "42"}).code, 0);
  ASSERT_EQ(run_cli({"simulate", cfg, (tmp / "b").string(), "--seed", "42"}).code, 0);
  ASSERT_EQ(run_cli({"simulate", cfg, (tmp / "c").string(), "--seed", "43"}).code, 0);
  for (const char* f : {"session.jsonl", "beverages.csv", "scorecards.csv", "costs.csv", "summary.json"}) {
    EXPECT_EQ(io::read_file(tmp / "a" / f), io::read_file(tmp / "b" / f)) << f;
  }
  EXPECT_NE(io::read_file(tmp / "a" / "session.jsonl"), io::read_file(tmp / "c" / "session.jsonl"));
}

TEST(Cli, SimulateBadProbabilitiesExitTwo) {
  TempDir tmp;
  io::write_file(tmp / "bad.json", R"({"federation": [
    {"id": "A", "is_expert": true, "leader_probability": 0.5},
    {"id": "B", "is_expert": true, "leader_probability": 0.6}],
    "pool": [{"brewery": "X", "beer_name": "Y", "abv_percent": 5}]})");
  auto o = run_cli({"simulate", (tmp / "bad.json").string(), (tmp / "out").string()});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("sum to 1.1"), std::string::npos) << o.err;
  EXPECT_FALSE(fs::exists(tmp / "out"));
}

TEST(Cli, SimulateMissingConfigExitTwo) {
  TempDir tmp;
  EXPECT_EQ(run_cli({"simulate", (tmp / "none.json").string(), (tmp / "out").string()}).code, 2);
}

TEST(Cli, SimulateUnwritableOutputExitThree) {
  TempDir tmp;
  io::write_file(tmp / "file", "x");  // a regular file where a directory is needed
  auto o = run_cli({"simulate", (data_dir() / "session.json").string(), (tmp / "file" / "sub").string()});
  EXPECT_EQ(o.code, 3);
}

TEST(Cli, AnalyzeFixtureWritesEightTables) {
  TempDir tmp;
  auto o = run_cli({"analyze", table1("scorecards.csv"), table1("beverages.csv"), tmp.path().string()});
  ASSERT_EQ(o.code, 0) << o.err;
  for (const char* t : {"style_counts", "abv_bands", "judge_stats", "agreement", "top10", "bottom10", "per_style",
                        "divisive"})
    EXPECT_TRUE(fs::exists(tmp / (std::string(t) + ".csv"))) << t;
  EXPECT_TRUE(fs::exists(tmp / "report.json"));
}

TEST(Cli, AnalyzeMissingReviewsExitFourUnlessLenient) {
  TempDir tmp;
  auto sc = io::read_file(table1("scorecards.csv"));
  // Keep only judge A's Mango Sour review.
  std::string filtered;
  for (const auto& line : text::split(sc, '\n')) {
    if (line.empty()) continue;
    if (line.find(",Mango Sour,") != std::string::npos && line.rfind("A,", 0) != 0) continue;
    filtered += line + "\n";
  }
  io::write_file(tmp / "sc.csv", filtered);
  auto o = run_cli({"analyze", (tmp / "sc.csv").string(), table1("beverages.csv"), (tmp / "out").string()});
  EXPECT_EQ(o.code, 4);
  EXPECT_NE(o.err.find("MISSING_REVIEWS"), std::string::npos) << o.err;
  EXPECT_FALSE(fs::exists(tmp / "out"));

  auto lenient = run_cli(
      {"analyze", (tmp / "sc.csv").string(), table1("beverages.csv"), (tmp / "out").string(), "--lenient"});
  EXPECT_EQ(lenient.code, 0) << lenient.err;
  EXPECT_NE(lenient.err.find("warning: [MISSING_REVIEWS]"), std::string::npos);
  EXPECT_TRUE(fs::exists(tmp / "out" / "top10.csv"));
}

TEST(Cli, AnalyzeParseAndIoErrors) {
  TempDir tmp;
  io::write_file(tmp / "sc.csv", "judge_id,beer_name,raw_score\nA,Mango Sour,9\n");
  EXPECT_EQ(run_cli({"analyze", (tmp / "sc.csv").string(), table1("beverages.csv"), tmp.path().string()}).code, 4);
  EXPECT_EQ(run_cli({"analyze", (tmp / "missing.csv").string(), table1("beverages.csv"), tmp.path().string()}).code,
            3);
  EXPECT_EQ(run_cli({"analyze", table1("scorecards.csv"), table1("beverages.csv"), tmp.path().string(), "--families",
                     (tmp / "nofam.json").string()})
                .code,
            2);
}

TEST(Cli, AnalyzeIsDeterministic) {
  TempDir tmp;
  ASSERT_EQ(run_cli({"analyze", table1("scorecards.csv"), table1("beverages.csv"), (tmp / "a").string()}).code, 0);
  ASSERT_EQ(run_cli({"analyze", table1("scorecards.csv"), table1("beverages.csv"), (tmp / "b").string()}).code, 0);
  for (const auto& entry : fs::directory_iterator(tmp / "a"))
    EXPECT_EQ(io::read_file(entry.path()), io::read_file(tmp / "b" / entry.path().filename()));
}

TEST(Cli, EvalRecsTableOneFixture) {
  TempDir tmp;
  auto o = run_cli({"eval-recs", table1("recs/*.json"), table1("scorecards.csv"), table1("beverages.csv"),
                    (tmp / "t1.csv").string(), "--profiles", table1("profiles.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto lines = text::split(io::read_file(tmp / "t1.csv"), '\n');
  ASSERT_EQ(lines.size(), 8u);  // header, six rows, trailing empty
  EXPECT_EQ(lines[0], "Model,Mean rating,Mean percentile,Hit@5,nDCG@5,Coverage");
  bool saw_qwen3 = false;
  for (std::size_t i = 1; i < 7; ++i) {
    const auto cells = text::split(lines[i], ',');
    ASSERT_EQ(cells.size(), 6u);
    if (cells[0] == "Qwen3 4B") {
      saw_qwen3 = true;
      EXPECT_EQ(cells[5], "0.867");
    } else {
      EXPECT_EQ(cells[5], "1.000");
    }
  }
  EXPECT_TRUE(saw_qwen3);
  auto j = nlohmann::json::parse(io::read_file(tmp / "t1.json"));
  EXPECT_EQ(j["models"].size(), 6u);
}

TEST(Cli, EvalRecsEmptyGlobWarnsAndSucceeds) {
  TempDir tmp;
  auto o = run_cli({"eval-recs", (tmp / "nothing*.json").string(), table1("scorecards.csv"), table1("beverages.csv"),
                    (tmp / "t.csv").string()});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.err.find("EMPTY_GLOB"), std::string::npos);
  EXPECT_EQ(io::read_file(tmp / "t.csv"), "Model,Mean rating,Mean percentile,Hit@5,nDCG@5,Coverage\n");
}

TEST(Cli, EvalRecsUnreadableFileSkippedOrStrict) {
  TempDir tmp;
  fs::create_directories(tmp / "recs");
  fs::copy_file(table1("recs/phi-4.json"), tmp / "recs" / "good.json");
  io::write_file(tmp / "recs" / "broken.json", "{ not json");
  const std::vector<std::string> base{"eval-recs", (tmp / "recs" / "*.json").string(), table1("scorecards.csv"),
                                      table1("beverages.csv"), (tmp / "t.csv").string()};
  auto o = run_cli(base);
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.err.find("UNREADABLE_RECS"), std::string::npos);
  EXPECT_EQ(text::split(io::read_file(tmp / "t.csv"), '\n').size(), 3u);

  auto strict = base;
  strict.push_back("--strict");
  EXPECT_EQ(run_cli(strict).code, 5);
}

TEST(Cli, JsonErrorsOnStderr) {
  TempDir tmp;
  auto o = run_cli({"--json-errors", "eval-recs", (tmp / "none*.json").string(), table1("scorecards.csv"),
                    table1("beverages.csv"), (tmp / "t.csv").string()});
  EXPECT_EQ(o.code, 0);
  auto j = nlohmann::json::parse(text::split(o.err, '\n')[0]);
  EXPECT_EQ(j["level"], "warning");
  EXPECT_EQ(j["code"], "EMPTY_GLOB");
}

TEST(Cli, EvalRecsProfileWithoutScorecard) {
  TempDir tmp;
  io::write_file(tmp / "p.json", R"([{"profile_id": "A"}, {"profile_id": "Nobody"}])");
  auto o = run_cli({"eval-recs", table1("recs/*.json"), table1("scorecards.csv"), table1("beverages.csv"),
                    (tmp / "t.csv").string(), "--profiles", (tmp / "p.json").string()});
  EXPECT_EQ(o.code, 4);
}

TEST(Cli, BinaryExitCodes) {
  // The installed binary maps outcomes to the same process exit codes.
  TempDir tmp;
  auto status = [](const std::string& cmd) {
    const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  const std::string bin = DBA_CLI_PATH;
  EXPECT_EQ(status(bin + " --help"), 0);
  EXPECT_EQ(status(bin + " simulate /nonexistent.json " + (tmp / "o").string()), 2);
  EXPECT_EQ(status(bin + " eval-recs '" + table1("recs/*.json") + "' " + table1("scorecards.csv") + " " +
                   table1("beverages.csv") + " " + (tmp / "t.csv").string()),
            0);
}
