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

#ifndef RATERSCORE__METRICS_HPP_
#define RATERSCORE__METRICS_HPP_

#include "raterscore/geometry.hpp"
#include "raterscore/scenario.hpp"
#include "raterscore/types.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace raterscore
{

/// Horizons (seconds after the anchor) at which the trust regions are checked.
inline constexpr std::array<double, 2> kEvaluationTimes{3.0, 5.0};

/// Lower bound applied to the time-averaged score.
inline constexpr double kScoreFloor = 4.0;

/// Trust-region size multiplier in [0.5, 1]: 0.5 below 1.4 m/s, 1 from
/// 11 m/s, linear in between. Throws DomainError for negative or NaN `v`.
double speed_scale(double v);

/// Half-extents of the rectangular trust region at one horizon. The
/// longitudinal extent is always four times the lateral one.
class TrustThresholds
{
public:
  TrustThresholds(double tau_lat, double t);

  double tau_lng() const { return 4.0 * tau_lat_; }
  double tau_lat() const { return tau_lat_; }
  double t() const { return t_; }

private:
  double tau_lat_;
  double t_;
};

/// Speed-scaled thresholds. Base (lng, lat) is (4.0, 1.0) at t = 3 and
/// (7.2, 1.8) at t = 5; any other `t` throws DomainError.
TrustThresholds thresholds_for(double t, double v);

/// s_rater * 0.1^max(max(d_lng / tau_lng, d_lat / tau_lat) - 1, 0).
double per_rater_score(double rater_score, const ErrorDecomposition & err, const TrustThresholds & th);

struct TimeBreakdown
{
  double t{0.0};
  std::vector<double> per_rater_scores;
  double best{0.0};
};

struct RfsBreakdown
{
  std::array<TimeBreakdown, kEvaluationTimes.size()> per_time;
  double final_score{kScoreFloor};
};

/// Rater feedback score of `predicted` against the rated candidates.
///
/// For each horizon the best per-rater score wins; the two horizon bests are
/// averaged and floored at 4. Each rater's trust region is sized from that
/// rater's own initial speed. `raters` normally holds the three labelled
/// trajectories but any non-empty subset is accepted. Throws StructuralError
/// on wrong waypoint counts or an empty rater list.
RfsBreakdown rfs(const Trajectory & predicted, std::span<const RaterTrajectory> raters);

/// Mean Euclidean distance over aligned waypoints. Throws StructuralError on
/// mismatched or zero lengths.
double ade(const Trajectory & predicted, const Trajectory & reference);

enum class AdeReference { kLogFuture, kRank1Rater, kNone };

std::string_view to_string(AdeReference reference);
std::optional<AdeReference> parse_ade_reference(std::string_view text);

/// Score of one submission entry against one scenario.
struct ScenarioScore
{
  std::string id;
  ScenarioCategory category{ScenarioCategory::kOthers};
  double rfs{kScoreFloor};
  /// Absent when the entry was missing and floored in lenient mode.
  std::optional<double> ade;
  AdeReference ade_reference{AdeReference::kNone};
  bool missing{false};
  std::vector<TimeBreakdown> per_time;
};

struct CategoryAggregate
{
  std::size_t count{0};
  double mean_rfs{0.0};
  std::optional<double> mean_ade;
};

struct Aggregates
{
  std::size_t count{0};
  double mean_rfs{0.0};
  std::optional<double> mean_ade;
  std::size_t floored_count{0};
  std::size_t missing_count{0};
  std::map<ScenarioCategory, CategoryAggregate> per_category;
};

/// Unweighted means overall and per category. Scores are reduced in id order
/// so the result does not depend on input order. Throws DomainError when empty.
Aggregates aggregate(std::span<const ScenarioScore> scores);

struct ScoreReport
{
  SubmissionMetadata metadata;
  Aggregates aggregates;
  std::map<std::string, ScenarioScore> per_scenario;
};

}  // namespace raterscore

#endif  // RATERSCORE__METRICS_HPP_
