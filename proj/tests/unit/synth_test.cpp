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

#include "raterscore/errors.hpp"
#include "raterscore/ingestion.hpp"
#include "raterscore/metrics.hpp"
#include "raterscore/synth.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace raterscore
{
namespace
{

using synth::TemplateKind;

constexpr TemplateKind kAllKinds[] = {
  TemplateKind::kStraightFollow, TemplateKind::kLeftTurn, TemplateKind::kRightTurn,
  TemplateKind::kLaneChange, TemplateKind::kHardBrake, TemplateKind::kSwerveAvoid};

TEST(GenerateScenario, Deterministic)
{
  for (const auto kind : kAllKinds) {
    const synth::ScenarioTemplate tmpl{kind, 9.37, 1234};
    EXPECT_EQ(serialize_scenario(synth::generate_scenario(tmpl)), serialize_scenario(synth::generate_scenario(tmpl)));
  }
}

TEST(GenerateScenario, StraightFollowAtTen)
{
  const Scenario s = synth::generate_scenario({TemplateKind::kStraightFollow, 10.0, 3});
  const Trajectory & r1 = s.rater_with_rank(1).trajectory();
  EXPECT_EQ(s.rater_with_rank(1).score(), 10.0);
  EXPECT_NEAR(r1[0].x, 2.5, 1e-12);
  EXPECT_NEAR(r1[0].y, 0.0, 1e-12);
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_NEAR(r1[i].x, 2.5 * static_cast<double>(i + 1), 1e-9);
    EXPECT_NEAR(r1[i].y, 0.0, 1e-12);
  }
  EXPECT_EQ(s.routing(), RoutingCommand::kGoStraight);
}

TEST(GenerateScenario, RaterScoreBands)
{
  const auto scenarios = synth::generate_scenarios(std::nullopt, 120, 1);
  for (const auto & s : scenarios) {
    EXPECT_EQ(s.rater_with_rank(1).score(), 10.0);
    EXPECT_GE(s.rater_with_rank(2).score(), 6.0);
    EXPECT_LE(s.rater_with_rank(2).score(), 9.0);
    EXPECT_GE(s.rater_with_rank(3).score(), 0.0);
    EXPECT_LE(s.rater_with_rank(3).score(), 5.0);
    EXPECT_TRUE(s.log_future().has_value());
    EXPECT_TRUE(s.future_route_10s().has_value());
    EXPECT_EQ(s.cameras().size(), kCameraCount);
  }
}

TEST(GenerateScenario, RoutingMatchesTurnDirection)
{
  EXPECT_EQ(synth::generate_scenario({TemplateKind::kLeftTurn, 8.0, 1}).routing(), RoutingCommand::kGoLeft);
  EXPECT_EQ(synth::generate_scenario({TemplateKind::kRightTurn, 8.0, 1}).routing(), RoutingCommand::kGoRight);
  EXPECT_EQ(synth::generate_scenario({TemplateKind::kLaneChange, 15.0, 1}).routing(), RoutingCommand::kGoStraight);
}

TEST(GenerateScenario, AlwaysPassesValidation)
{
  std::string text;
  for (const auto & s : synth::generate_scenarios(std::nullopt, 200, 50)) {
    text += serialize_scenario(s) + "\n";
  }
  const ScenarioParseResult r = parse_scenarios_text(text);
  EXPECT_TRUE(r.issues.empty()) << (r.issues.empty() ? "" : format_issue(r.issues[0]));
  EXPECT_EQ(r.scenarios.size(), 200u);
}

TEST(GenerateScenario, ZeroSpeedStillValid)
{
  for (const auto kind : kAllKinds) {
    const Scenario s = synth::generate_scenario({kind, 0.0, 9});
    EXPECT_EQ(s.rater_with_rank(1).score(), 10.0);
  }
}

TEST(GenerateScenario, RejectsBadSpeed)
{
  EXPECT_THROW(synth::generate_scenario({TemplateKind::kLeftTurn, -1.0, 1}), DomainError);
  EXPECT_THROW(synth::generate_scenario({TemplateKind::kLeftTurn, std::nan(""), 1}), DomainError);
}

TEST(TemplateKind, StringRoundTrip)
{
  for (const auto kind : kAllKinds) {
    EXPECT_EQ(synth::parse_template_kind(synth::to_string(kind)), kind);
  }
  EXPECT_FALSE(synth::parse_template_kind("u_turn"));
}

// Constant-speed candidate ending at lateral offset `y_end`.
Trajectory candidate(double speed, double y_end)
{
  return testing::from_fn([=](double t) { return Waypoint{speed * t, y_end * t / 5.0}; });
}

TEST(BucketAndSample, ThreeLateralClassesPickExtremesAndMedian)
{
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> y(-6.0, 6.0);
  std::vector<Trajectory> cands;
  for (int i = 0; i < 64; ++i) {
    cands.push_back(candidate(8.0, y(rng)));
  }
  // Oracle: per class, sort by (final y, index) and take min, median, max.
  std::map<synth::LateralClass, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const double fy = cands[i][19].y;
    const auto c = fy > 1.75 ? synth::LateralClass::kLeft
                 : fy < -1.75 ? synth::LateralClass::kRight
                              : synth::LateralClass::kCenter;
    by_class[c].push_back(i);
  }
  ASSERT_EQ(by_class.size(), 3u);
  std::set<std::size_t> expected;
  for (auto & [c, idx] : by_class) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return std::make_pair(cands[a][19].y, a) < std::make_pair(cands[b][19].y, b);
    });
    expected.insert(idx.front());
    expected.insert(idx[(idx.size() - 1) / 2]);
    expected.insert(idx.back());
  }
  const auto picked = synth::bucket_and_sample_indices(cands, 9);
  ASSERT_EQ(picked.size(), 9u);
  EXPECT_EQ(std::set<std::size_t>(picked.begin(), picked.end()), expected);
  // Grouped by bucket, each group left to right.
  for (std::size_t g = 0; g < 3; ++g) {
    EXPECT_GE(cands[picked[3 * g]][19].y, cands[picked[3 * g + 1]][19].y);
    EXPECT_GE(cands[picked[3 * g + 1]][19].y, cands[picked[3 * g + 2]][19].y);
  }
}

TEST(BucketAndSample, Singleton)
{
  const std::vector<Trajectory> one{candidate(5.0, 0.3)};
  const auto out = synth::bucket_and_sample(one, 1);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], one[0]);
}

TEST(BucketAndSample, Errors)
{
  const std::vector<Trajectory> none;
  EXPECT_THROW(synth::bucket_and_sample(none, 0), DomainError);
  const std::vector<Trajectory> two{candidate(5.0, 0.3), candidate(5.0, 1.0)};
  EXPECT_THROW(synth::bucket_and_sample(two, 3), DomainError);
}

TEST(BucketAndSample, MembersClassifyToTheirKey)
{
  std::mt19937_64 rng(2);
  std::vector<Trajectory> cands;
  for (int i = 0; i < 200; ++i) {
    cands.push_back(testing::random_future(rng));
  }
  for (const auto & b : synth::bucket_candidates(cands)) {
    for (const std::size_t m : b.members) {
      EXPECT_EQ(synth::classify(cands[m]), b.key);
    }
  }
}

TEST(BucketAndSample, PermutationChangesOnlyTieBreaks)
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> y(-6.0, 6.0);
  std::uniform_real_distribution<double> v(0.5, 20.0);
  std::vector<Trajectory> cands;
  for (int i = 0; i < 50; ++i) {
    cands.push_back(candidate(v(rng), y(rng)));
  }
  const auto base = synth::bucket_and_sample(cands, 12);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Trajectory> shuffled = cands;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    // Distinct final offsets, so no tie-break is exercised.
    EXPECT_EQ(synth::bucket_and_sample(shuffled, 12), base);
  }
}

TEST(BucketAndSample, TiesResolvedByIndex)
{
  const std::vector<Trajectory> cands(5, candidate(8.0, 0.0));
  const auto picked = synth::bucket_and_sample_indices(cands, 3);
  // Leftmost is the highest index, rightmost the lowest, middle (n-1)/2.
  EXPECT_EQ(picked, (std::vector<std::size_t>{4, 2, 0}));
}

TEST(RfsOracle, Trivial)
{
  const Scenario s = synth::generate_scenario({TemplateKind::kLaneChange, 13.0, 5});
  const auto & raters = s.raters();
  EXPECT_EQ(synth::rfs_bruteforce_oracle(s.rater_with_rank(1).trajectory(), raters), 10.0);
  const Trajectory far = testing::from_fn([](double t) { return Waypoint{-100.0 - t, 200.0}; });
  EXPECT_EQ(synth::rfs_bruteforce_oracle(far, raters), 4.0);
}

TEST(RfsOracle, AgreesOnGeneratedScenarios)
{
  std::mt19937_64 rng(6);
  for (const auto & s : synth::generate_scenarios(std::nullopt, 300, 600)) {
    const Trajectory pred = testing::jitter(*s.log_future(), rng, 0.8);
    EXPECT_NEAR(rfs(pred, s.raters()).final_score, synth::rfs_bruteforce_oracle(pred, s.raters()), 1e-9);
  }
}

TEST(DivergentPair, AdeAndRfsDisagree)
{
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto pair = synth::make_ade_rfs_divergent_pair(seed);
    const Trajectory & log = *pair.scenario.log_future();
    const double rfs_a = rfs(pair.pred_a, pair.scenario.raters()).final_score;
    const double rfs_b = rfs(pair.pred_b, pair.scenario.raters()).final_score;
    EXPECT_LT(ade(pair.pred_a, log), ade(pair.pred_b, log));
    EXPECT_LT(rfs_a, rfs_b);
    EXPECT_EQ(rfs_a, 4.0);
  }
}

TEST(DivergentPair, DeterministicPerSeed)
{
  const auto a = synth::make_ade_rfs_divergent_pair(17);
  const auto b = synth::make_ade_rfs_divergent_pair(17);
  EXPECT_EQ(a.pred_a, b.pred_a);
  EXPECT_EQ(a.pred_b, b.pred_b);
  EXPECT_EQ(serialize_scenario(a.scenario), serialize_scenario(b.scenario));
}

}  // namespace
}  // namespace raterscore
