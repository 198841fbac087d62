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

#include "raterscore/metrics.hpp"

#include "raterscore/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace raterscore
{

namespace
{

constexpr double kSlowSpeed = 1.4;
constexpr double kFastSpeed = 11.0;
constexpr double kMinScale = 0.5;
constexpr double kDecayBase = 0.1;

// Lateral base thresholds; longitudinal is 4x.
constexpr double kBaseLatAt3s = 1.0;
constexpr double kBaseLatAt5s = 1.8;

double mean_of(double sum, std::size_t n) { return sum / static_cast<double>(n); }

// Rounding in the running sum must not push a mean outside the sample range.
double bounded_mean(double sum, std::size_t n, double lo, double hi)
{
  return std::clamp(mean_of(sum, n), lo, hi);
}

}  // namespace

double speed_scale(double v)
{
  if (!(v >= 0.0)) {
    throw DomainError("speed must be non-negative, got " + std::to_string(v));
  }
  if (v < kSlowSpeed) {
    return kMinScale;
  }
  if (v >= kFastSpeed) {
    return 1.0;
  }
  return kMinScale + kMinScale * (v - kSlowSpeed) / (kFastSpeed - kSlowSpeed);
}

TrustThresholds::TrustThresholds(double tau_lat, double t) : tau_lat_(tau_lat), t_(t)
{
  if (!(tau_lat_ > 0.0) || !std::isfinite(tau_lat_)) {
    throw DomainError("trust thresholds must be positive and finite");
  }
}

TrustThresholds thresholds_for(double t, double v)
{
  double base_lat = 0.0;
  if (t == kEvaluationTimes[0]) {
    base_lat = kBaseLatAt3s;
  } else if (t == kEvaluationTimes[1]) {
    base_lat = kBaseLatAt5s;
  } else {
    throw DomainError("trust thresholds are defined for t in {3, 5}, got " + std::to_string(t));
  }
  return TrustThresholds(speed_scale(v) * base_lat, t);
}

double per_rater_score(
  double rater_score, const ErrorDecomposition & err, const TrustThresholds & th)
{
  const double ratio = std::max(err.delta_lng / th.tau_lng(), err.delta_lat / th.tau_lat());
  const double exponent = std::max(ratio - 1.0, 0.0);
  if (exponent == 0.0) {
    return rater_score;
  }
  return rater_score * std::pow(kDecayBase, exponent);
}

RfsBreakdown rfs(const Trajectory & predicted, std::span<const RaterTrajectory> raters)
{
  if (predicted.size() != kFutureWaypoints) {
    throw StructuralError(
      "prediction: expected 20 waypoints, got " + std::to_string(predicted.size()));
  }
  if (raters.empty()) {
    throw StructuralError("rfs needs at least one rater trajectory");
  }

  RfsBreakdown result;
  double sum_of_bests = 0.0;
  for (std::size_t k = 0; k < kEvaluationTimes.size(); ++k) {
    const double t = kEvaluationTimes[k];
    const Waypoint at_t = waypoint_at_time(predicted, t);

    TimeBreakdown & slot = result.per_time[k];
    slot.t = t;
    slot.per_rater_scores.reserve(raters.size());
    for (const RaterTrajectory & rater : raters) {
      const TrustThresholds th = thresholds_for(t, initial_speed(rater.trajectory()));
      const ErrorDecomposition err = decompose_error(at_t, rater.trajectory(), t);
      slot.per_rater_scores.push_back(per_rater_score(rater.score(), err, th));
    }
    slot.best = *std::max_element(slot.per_rater_scores.begin(), slot.per_rater_scores.end());
    sum_of_bests += slot.best;
  }
  result.final_score =
    std::max(sum_of_bests / static_cast<double>(kEvaluationTimes.size()), kScoreFloor);
  return result;
}

double ade(const Trajectory & predicted, const Trajectory & reference)
{
  if (predicted.size() != reference.size()) {
    throw StructuralError(
      "ade: length mismatch " + std::to_string(predicted.size()) + " vs " +
      std::to_string(reference.size()));
  }
  if (predicted.empty()) {
    throw StructuralError("ade of empty trajectories");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    sum += std::hypot(predicted[i].x - reference[i].x, predicted[i].y - reference[i].y);
  }
  return mean_of(sum, predicted.size());
}

std::string_view to_string(AdeReference reference)
{
  switch (reference) {
    case AdeReference::kLogFuture:
      return "log_future";
    case AdeReference::kRank1Rater:
      return "rank1_rater";
    case AdeReference::kNone:
      return "none";
  }
  return "none";
}

std::optional<AdeReference> parse_ade_reference(std::string_view text)
{
  for (const auto ref : {AdeReference::kLogFuture, AdeReference::kRank1Rater, AdeReference::kNone}) {
    if (to_string(ref) == text) {
      return ref;
    }
  }
  return std::nullopt;
}

Aggregates aggregate(std::span<const ScenarioScore> scores)
{
  if (scores.empty()) {
    throw DomainError("cannot aggregate an empty score list");
  }

  std::vector<const ScenarioScore *> ordered;
  ordered.reserve(scores.size());
  for (const auto & s : scores) {
    ordered.push_back(&s);
  }
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto * a, const auto * b) {
    return a->id < b->id;
  });

  struct Accumulator
  {
    std::size_t count{0};
    double rfs_sum{0.0};
    double rfs_min{std::numeric_limits<double>::infinity()};
    double rfs_max{-std::numeric_limits<double>::infinity()};
    std::size_t ade_count{0};
    double ade_sum{0.0};
    double ade_min{std::numeric_limits<double>::infinity()};
    double ade_max{-std::numeric_limits<double>::infinity()};

    void add(const ScenarioScore & s)
    {
      ++count;
      rfs_sum += s.rfs;
      rfs_min = std::min(rfs_min, s.rfs);
      rfs_max = std::max(rfs_max, s.rfs);
      if (s.ade) {
        ++ade_count;
        ade_sum += *s.ade;
        ade_min = std::min(ade_min, *s.ade);
        ade_max = std::max(ade_max, *s.ade);
      }
    }

    double mean_rfs() const { return bounded_mean(rfs_sum, count, rfs_min, rfs_max); }
    std::optional<double> mean_ade() const
    {
      if (ade_count == 0) {
        return std::nullopt;
      }
      return bounded_mean(ade_sum, ade_count, ade_min, ade_max);
    }
  };

  Accumulator total;
  std::map<ScenarioCategory, Accumulator> by_category;
  Aggregates out;
  for (const ScenarioScore * s : ordered) {
    total.add(*s);
    by_category[s->category].add(*s);
    if (s->rfs == kScoreFloor) {
      ++out.floored_count;
    }
    if (s->missing) {
      ++out.missing_count;
    }
  }

  out.count = total.count;
  out.mean_rfs = total.mean_rfs();
  out.mean_ade = total.mean_ade();
  for (const auto & [category, acc] : by_category) {
    out.per_category.emplace(category, CategoryAggregate{acc.count, acc.mean_rfs(), acc.mean_ade()});
  }
  return out;
}

}  // namespace raterscore
