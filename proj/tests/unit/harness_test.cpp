// Copyright 2026 The raterscore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "raterscore/commands.hpp"
#include "raterscore/errors.hpp"
#include "raterscore/ingestion.hpp"
#include "raterscore/leaderboard.hpp"
#include "raterscore/service.hpp"
#include "raterscore/synth.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

namespace raterscore
{
namespace
{

using nlohmann::json;
using testing::TempDir;

LeaderboardEntry entry(std::string who, double rfs_value, std::optional<double> ade_value, std::string at)
{
  LeaderboardEntry e;
  e.submitter = std::move(who);
  e.method = "m";
  e.mean_rfs = rfs_value;
  e.mean_ade = ade_value;
  e.submitted_at = std::move(at);
  return e;
}

TEST(RanksBefore, TieBreakChain)
{
  const auto a = entry("a", 8.0, 2.0, "2026-01-01T00:00:00Z");
  const auto b = entry("b", 7.0, 0.5, "2026-01-01T00:00:00Z");
  EXPECT_TRUE(ranks_before(a, b));
  const auto c = entry("c", 8.0, 1.0, "2026-01-02T00:00:00Z");
  EXPECT_TRUE(ranks_before(c, a));
  const auto d = entry("d", 8.0, std::nullopt, "2026-01-01T00:00:00Z");
  EXPECT_TRUE(ranks_before(a, d));
  const auto e = entry("e", 8.0, 2.0, "2025-12-31T00:00:00Z");
  EXPECT_TRUE(ranks_before(e, a));
  const auto f = entry("f", 8.0, 2.0, "2026-01-01T00:00:00Z");
  EXPECT_TRUE(ranks_before(a, f));
}

TEST(RanksBefore, StrictTotalOrder)
{
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> pick(0, 2);
  const double rfs_values[] = {5.0, 7.5, 9.0};
  const std::optional<double> ade_values[] = {std::nullopt, 0.5, 1.5};
  const char * stamps[] = {"2026-01-01", "2026-01-02", "2026-01-03"};
  std::vector<LeaderboardEntry> xs;
  for (int i = 0; i < 60; ++i) {
    xs.push_back(entry("s" + std::to_string(i % 7), rfs_values[pick(rng)], ade_values[pick(rng)], stamps[pick(rng)]));
    xs.back().method = "m" + std::to_string(i / 7);
  }
  for (const auto & x : xs) {
    EXPECT_FALSE(ranks_before(x, x));
    for (const auto & y : xs) {
      if (x == y) {
        continue;
      }
      // Exactly one direction holds for distinct (submitter, method).
      if (x.submitter != y.submitter || x.method != y.method) {
        EXPECT_NE(ranks_before(x, y), ranks_before(y, x));
      }
      for (const auto & z : xs) {
        if (ranks_before(x, y) && ranks_before(y, z)) {
          EXPECT_TRUE(ranks_before(x, z));
        }
      }
    }
  }
}

ScoreReport report_for(
  const std::vector<Scenario> & scenarios, SubmissionMode mode, const std::string & who,
  const std::string & method, const std::string & at)
{
  Submission sub = make_reference_submission(scenarios, mode, who, method);
  sub.metadata.submitted_at = at;
  return evaluate_submission(scenarios, sub);
}

TEST(Leaderboard, RecordUpsertAndReplay)
{
  TempDir dir;
  const auto scenarios = synth::generate_scenarios(std::nullopt, 12, 8);
  const auto r1 = report_for(scenarios, SubmissionMode::kRank1, "alice", "a", "2026-01-01T00:00:00Z");
  const auto r2 = report_for(scenarios, SubmissionMode::kZeros, "bob", "b", "2026-01-01T00:00:01Z");
  const auto r3 = report_for(scenarios, SubmissionMode::kLog, "alice", "a", "2026-01-01T00:00:02Z");
  std::vector<LeaderboardEntry> before;
  {
    Leaderboard board(dir.path());
    EXPECT_EQ(board.record(r1, serialize_report(r1)).report_id, "r000001");
    EXPECT_EQ(board.record(r2, serialize_report(r2)).report_id, "r000002");
    EXPECT_EQ(board.snapshot()->size(), 2u);
    const LeaderboardEntry e3 = board.record(r3, serialize_report(r3));
    EXPECT_EQ(e3.report_id, "r000003");
    // Same (submitter, method): replaced, count unchanged.
    ASSERT_EQ(board.snapshot()->size(), 2u);
    const auto alice = std::find_if(board.snapshot()->begin(), board.snapshot()->end(), [](const auto & e) {
      return e.submitter == "alice";
    });
    EXPECT_EQ(alice->report_id, "r000003");
    EXPECT_EQ(board.report_text("r000001"), serialize_report(r1));
    EXPECT_FALSE(board.report_text("r999999"));
    EXPECT_FALSE(board.report_text("../leaderboard"));
    before = *board.snapshot();
  }
  Leaderboard reopened(dir.path());
  EXPECT_EQ(*reopened.snapshot(), before);
  EXPECT_EQ(reopened.record(r2, serialize_report(r2)).report_id, "r000004");
}

TEST(Leaderboard, SnapshotIsSorted)
{
  TempDir dir;
  const auto scenarios = synth::generate_scenarios(std::nullopt, 6, 9);
  Leaderboard board(dir.path());
  const SubmissionMode modes[] = {SubmissionMode::kZeros, SubmissionMode::kLog, SubmissionMode::kRank1};
  int i = 0;
  for (const auto mode : modes) {
    const auto r = report_for(scenarios, mode, "team" + std::to_string(i), "m", "2026-02-01T00:00:0" + std::to_string(i));
    board.record(r, serialize_report(r));
    ++i;
  }
  const auto snap = board.snapshot();
  ASSERT_EQ(snap->size(), 3u);
  EXPECT_TRUE(std::is_sorted(snap->begin(), snap->end(), ranks_before));
  const json parsed = json::parse(leaderboard_to_json(*snap));
  ASSERT_EQ(parsed.size(), 3u);
  EXPECT_EQ(parsed[0]["submitter"], (*snap)[0].submitter);
}

TEST(Leaderboard, CorruptLogIsStructuralError)
{
  TempDir dir;
  write_file(dir / "leaderboard.jsonl", "{not json\n");
  EXPECT_THROW(Leaderboard{dir.path()}, StructuralError);
}

class CommandTest : public ::testing::Test
{
protected:
  void SetUp() override
  {
    GenRequest gen;
    gen.count = 9;
    gen.seed = 4;
    gen.out_path = dir / "s.jsonl";
    gen.submission_mode = SubmissionMode::kRank1;
    gen.submission_path = dir / "sub.jsonl";
    std::ostringstream out;
    std::ostringstream err;
    ASSERT_EQ(cmd_gen(gen, out, err), kExitOk) << err.str();
    config.scenarios_path = dir / "s.jsonl";
    config.submission_path = dir / "sub.jsonl";
    config.report_path = dir / "report.jsonl";
    config.parallelism = 2;
  }

  TempDir dir;
  RunConfig config;
  std::ostringstream out;
  std::ostringstream err;
};

TEST_F(CommandTest, ValidateCleanFixtures)
{
  EXPECT_EQ(cmd_validate(config, out, err), kExitOk);
  EXPECT_NE(out.str().find("0 error(s), 0 warning(s)"), std::string::npos);
}

TEST_F(CommandTest, ValidateShortRaterTrajectory)
{
  std::string text = read_file(config.scenarios_path);
  const std::string first = text.substr(0, text.find('\n'));
  json record = json::parse(first);
  record["raters"][0]["waypoints"].erase(0);
  write_file(dir / "bad.jsonl", record.dump() + "\n");
  config.scenarios_path = dir / "bad.jsonl";
  config.submission_path.clear();
  EXPECT_EQ(cmd_validate(config, out, err), kExitValidation);
  EXPECT_NE(out.str().find("1 error(s), 0 warning(s)"), std::string::npos);
  EXPECT_NE(out.str().find("expected 20 waypoints, got 19"), std::string::npos);
}

TEST_F(CommandTest, ValidateUnreadablePath)
{
  config.scenarios_path = dir / "missing.jsonl";
  EXPECT_EQ(cmd_validate(config, out, err), kExitUsage);
  EXPECT_FALSE(err.str().empty());
}

TEST_F(CommandTest, EvaluateWritesReport)
{
  ASSERT_EQ(cmd_evaluate(config, out, err), kExitOk) << err.str();
  EXPECT_NE(out.str().find("mean_rfs: 10.0000"), std::string::npos);
  const ScoreReport r = parse_report(config.report_path);
  EXPECT_EQ(r.aggregates.count, 9u);
  EXPECT_EQ(r.aggregates.mean_rfs, 10.0);
}

TEST_F(CommandTest, EvaluateStrictMissingFailsLenientPasses)
{
  std::string text = read_file(config.submission_path);
  text.erase(text.rfind('\n', text.size() - 2) + 1);
  write_file(config.submission_path, text);
  EXPECT_EQ(cmd_evaluate(config, out, err), kExitValidation);
  EXPECT_FALSE(std::filesystem::exists(config.report_path));
  config.lenient_missing = true;
  EXPECT_EQ(cmd_evaluate(config, out, err), kExitOk);
  EXPECT_EQ(parse_report(config.report_path).aggregates.missing_count, 1u);
}

TEST_F(CommandTest, EvaluateParallelismIsDeterministic)
{
  config.parallelism = 1;
  ASSERT_EQ(cmd_evaluate(config, out, err), kExitOk);
  const std::string a = read_file(config.report_path);
  config.parallelism = 8;
  ASSERT_EQ(cmd_evaluate(config, out, err), kExitOk);
  EXPECT_EQ(read_file(config.report_path), a);
}

TEST_F(CommandTest, ReportFormats)
{
  ASSERT_EQ(cmd_evaluate(config, out, err), kExitOk);
  ReportRequest req;
  req.report_paths = {config.report_path};

  std::ostringstream text;
  ASSERT_EQ(cmd_report(req, text, err), kExitOk);
  EXPECT_NE(text.str().find("floored (rfs=4.0): 0"), std::string::npos);

  req.format = ReportFormat::kCsv;
  std::ostringstream csv;
  ASSERT_EQ(cmd_report(req, csv, err), kExitOk);
  const ScoreReport r = parse_report(config.report_path);
  const std::string table = csv.str();
  const auto rows = static_cast<std::size_t>(std::count(table.begin(), table.end(), '\n'));
  EXPECT_EQ(rows, r.aggregates.per_category.size() + 1);
  EXPECT_EQ(table.substr(0, table.find('\n')), "category,count,mean_rfs,mean_ade");
}

TEST_F(CommandTest, FlooredCountInTextOutput)
{
  GenRequest gen;
  gen.count = 6;
  gen.seed = 100;
  gen.speed = 15.0;
  gen.out_path = dir / "fast.jsonl";
  gen.submission_mode = SubmissionMode::kZeros;
  gen.submission_path = dir / "zeros.jsonl";
  ASSERT_EQ(cmd_gen(gen, out, err), kExitOk);
  config.scenarios_path = gen.out_path;
  config.submission_path = gen.submission_path;
  std::ostringstream text;
  ASSERT_EQ(cmd_evaluate(config, text, err), kExitOk);
  EXPECT_NE(text.str().find("floored (rfs=4.0): 6"), std::string::npos);
}

TEST_F(CommandTest, PlotdataOverStoreEntries)
{
  const auto scenarios = parse_scenarios(config.scenarios_path).scenarios;
  Leaderboard board(dir / "store");
  const SubmissionMode modes[] = {SubmissionMode::kRank1, SubmissionMode::kLog, SubmissionMode::kZeros};
  for (const auto mode : modes) {
    const auto r = report_for(scenarios, mode, "t", std::to_string(static_cast<int>(mode)), "2026-01-01T00:00:00Z");
    board.record(r, serialize_report(r));
  }
  ReportRequest req;
  req.store_dir = dir / "store";
  req.format = ReportFormat::kPlotdata;
  std::ostringstream plot;
  ASSERT_EQ(cmd_report(req, plot, err), kExitOk);
  const std::string data = plot.str();
  EXPECT_EQ(std::count(data.begin(), data.end(), '\n'), 4);
  EXPECT_EQ(data.substr(0, data.find('\n')), "label,mean_ade,mean_rfs");
}

TEST_F(CommandTest, ReportErrors)
{
  ReportRequest req;
  EXPECT_EQ(cmd_report(req, out, err), kExitUsage);
  req.report_paths = {dir / "none.jsonl"};
  EXPECT_EQ(cmd_report(req, out, err), kExitUsage);
  write_file(dir / "junk.jsonl", "{}\n");
  req.report_paths = {dir / "junk.jsonl"};
  EXPECT_EQ(cmd_report(req, out, err), kExitValidation);
  EXPECT_FALSE(parse_report_format("pdf"));
}

class ServiceTest : public ::testing::Test
{
protected:
  void SetUp() override { scenarios = synth::generate_scenarios(std::nullopt, 10, 31); }

  std::string body(SubmissionMode mode, const std::string & who, const std::string & method) const
  {
    return serialize_submission(make_reference_submission(scenarios, mode, who, method));
  }

  ServiceConfig config() const
  {
    ServiceConfig c;
    c.store_dir = dir / "store";
    c.evaluation.parallelism = 2;
    return c;
  }

  TempDir dir;
  std::vector<Scenario> scenarios;
};

TEST_F(ServiceTest, PostThenLeaderboard)
{
  ScoringService service(scenarios, config());
  const HttpReply posted = service.post_submission(body(SubmissionMode::kRank1, "alice", "replay"));
  ASSERT_EQ(posted.status, 201) << posted.body;
  const json reply = json::parse(posted.body);
  EXPECT_EQ(reply["mean_rfs"].get<double>(), 10.0);

  const json board = json::parse(service.get_leaderboard().body);
  ASSERT_EQ(board.size(), 1u);
  EXPECT_EQ(board[0]["submitter"], "alice");
  EXPECT_EQ(board[0]["mean_rfs"].get<double>(), 10.0);

  const HttpReply report = service.get_report(reply["report_id"].get<std::string>());
  EXPECT_EQ(report.status, 200);
  EXPECT_EQ(parse_report_text(report.body).aggregates.count, 10u);
  EXPECT_EQ(service.get_report("r424242").status, 404);
}

TEST_F(ServiceTest, ServiceMatchesEvaluateOnSameBytes)
{
  ScoringService service(scenarios, config());
  const std::string text = body(SubmissionMode::kLog, "bob", "log");
  const HttpReply posted = service.post_submission(text);
  ASSERT_EQ(posted.status, 201);
  const ScoreReport served = parse_report_text(service.get_report(json::parse(posted.body)["report_id"]).body);
  const ScoringOutcome local = score_submission_text(scenarios, text, EvaluationOptions{});
  ASSERT_TRUE(local.report);
  ScoreReport expected = *local.report;
  expected.metadata.submitted_at = served.metadata.submitted_at;
  EXPECT_EQ(serialize_report(served), serialize_report(expected));
}

TEST_F(ServiceTest, DuplicateSubmitterMethodReplaces)
{
  ScoringService service(scenarios, config());
  ASSERT_EQ(service.post_submission(body(SubmissionMode::kZeros, "carol", "x")).status, 201);
  ASSERT_EQ(service.post_submission(body(SubmissionMode::kRank1, "dave", "y")).status, 201);
  ASSERT_EQ(service.post_submission(body(SubmissionMode::kRank1, "carol", "x")).status, 201);
  const json board = json::parse(service.get_leaderboard().body);
  EXPECT_EQ(board.size(), 2u);
  for (const auto & e : board) {
    EXPECT_EQ(e["mean_rfs"].get<double>(), 10.0);
  }
}

TEST_F(ServiceTest, RejectsInvalidAndOversized)
{
  ServiceConfig c = config();
  c.max_body_bytes = 4096;
  ScoringService service(scenarios, c);
  const HttpReply big = service.post_submission(body(SubmissionMode::kRank1, "e", "f"));
  EXPECT_EQ(big.status, 413);

  const HttpReply bad = service.post_submission("{\"submitter\":\"e\",\"method\":\"f\"}\n");
  EXPECT_EQ(bad.status, 400);
  const json issues = json::parse(bad.body)["issues"];
  EXPECT_EQ(issues.size(), scenarios.size());
  EXPECT_EQ(issues[0]["message"], "missing submission for scenario");
  EXPECT_EQ(json::parse(service.get_leaderboard().body).size(), 0u);
}

TEST_F(ServiceTest, RestartReplaysLeaderboard)
{
  std::string before;
  {
    ScoringService service(scenarios, config());
    const SubmissionMode modes[] = {
      SubmissionMode::kRank1, SubmissionMode::kLog, SubmissionMode::kZeros, SubmissionMode::kRank1,
      SubmissionMode::kLog};
    int i = 0;
    for (const auto mode : modes) {
      ASSERT_EQ(service.post_submission(body(mode, "team" + std::to_string(i), "m")).status, 201);
      ++i;
    }
    before = service.get_leaderboard().body;
  }
  ScoringService restarted(scenarios, config());
  EXPECT_EQ(restarted.get_leaderboard().body, before);
  EXPECT_EQ(json::parse(before).size(), 5u);
}

TEST_F(ServiceTest, RealHttpRoundTrip)
{
  ServiceConfig c = config();
  c.max_body_bytes = 1u << 20;
  ScoringService service(scenarios, c);
  const int port = service.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread server([&] { service.run(); });
  service.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  const auto posted = client.Post("/submissions", body(SubmissionMode::kRank1, "http", "m"), "application/x-ndjson");
  ASSERT_TRUE(posted);
  EXPECT_EQ(posted->status, 201);
  const std::string id = json::parse(posted->body)["report_id"];

  const auto report = client.Get("/reports/" + id);
  ASSERT_TRUE(report);
  EXPECT_EQ(report->status, 200);
  const auto board = client.Get("/leaderboard");
  ASSERT_TRUE(board);
  EXPECT_EQ(json::parse(board->body).size(), 1u);
  const auto missing = client.Get("/reports/r000777");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);

  const auto too_big = client.Post("/submissions", std::string((1u << 20) + 10, ' '), "text/plain");
  ASSERT_TRUE(too_big);
  EXPECT_EQ(too_big->status, 413);

  service.stop();
  server.join();
}

}  // namespace
}  // namespace raterscore
