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

#ifndef RATERSCORE__SYNTH_HPP_
#define RATERSCORE__SYNTH_HPP_

#include "raterscore/scenario.hpp"
#include "raterscore/types.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace raterscore::synth
{

enum class TemplateKind {
  kStraightFollow,
  kLeftTurn,
  kRightTurn,
  kLaneChange,
  kHardBrake,
  kSwerveAvoid,
};

inline constexpr std::size_t kTemplateKindCount = 6;

std::string_view to_string(TemplateKind kind);
std::optional<TemplateKind> parse_template_kind(std::string_view text);

struct ScenarioTemplate
{
  TemplateKind kind{TemplateKind::kStraightFollow};
  double speed{0.0};
  std::uint64_t noise_seed{0};
};

/// Deterministic scenario for `tmpl`.
///
/// Rank 1 is the ideal path of the template (score 10), rank 2 a perturbed
/// copy scored 9 or 8 (one minor or one major deduction) and rank 3 a
/// different maneuver scored in [0, 5]. The log future is rank 1 with small
/// noise, routing is derived from the generated 10 s route and all eight
/// cameras carry a nominal calibration. Throws DomainError for a negative or
/// non-finite speed.
Scenario generate_scenario(const ScenarioTemplate & tmpl);

/// `count` scenarios with seeds `seed .. seed + count - 1`. Without a fixed
/// kind the kinds cycle; without a fixed speed each seed draws one in [0, 20).
std::vector<Scenario> generate_scenarios(
  std::optional<TemplateKind> kind, std::size_t count, std::uint64_t seed,
  std::optional<double> speed = std::nullopt);

/// Ideal waypoint of a template maneuver `t` seconds after the anchor.
Waypoint maneuver_position(TemplateKind kind, double speed, double t);

enum class SpeedClass { kSlow, kMedium, kFast };
enum class LateralClass { kLeft, kCenter, kRight };

struct BucketKey
{
  SpeedClass speed{SpeedClass::kSlow};
  LateralClass lateral{LateralClass::kCenter};

  friend auto operator<=>(const BucketKey &, const BucketKey &) = default;
};

/// Half a lane: final lateral offsets beyond this are left / right.
inline constexpr double kLateralClassThreshold = 1.75;

/// Speed class from the last step (split at 1.4 and 11 m/s), lateral class
/// from the signed y of the final waypoint.
BucketKey classify(const Trajectory & trajectory);

struct DecisionBucket
{
  BucketKey key;
  /// Indices into the candidate list, ordered by final lateral offset
  /// (right to left), ties by index.
  std::vector<std::size_t> members;
};

/// Non-empty buckets in key order.
std::vector<DecisionBucket> bucket_candidates(std::span<const Trajectory> candidates);

/// Indices of a diverse subset of at most `k` candidates.
///
/// Each bucket offers its middle, leftmost and rightmost member (final
/// lateral offset; ties resolved towards the lower index for the rightmost
/// and middle picks, the higher index for the leftmost). Picks are taken
/// round-robin across buckets, middles first, until `k` are chosen. The result
/// is grouped by bucket key, left to right within a bucket. Throws
/// DomainError for an empty candidate list or `k` above the candidate count.
std::vector<std::size_t> bucket_and_sample_indices(
  std::span<const Trajectory> candidates, std::size_t k);

std::vector<Trajectory> bucket_and_sample(std::span<const Trajectory> candidates, std::size_t k);

/// Straight-line re-derivation of the rater feedback score that shares no
/// code with the metrics module. Test use only.
double rfs_bruteforce_oracle(const Trajectory & predicted, std::span<const RaterTrajectory> raters);

struct DivergentPair
{
  Scenario scenario;
  /// Close to the logged future but between the rated maneuvers.
  Trajectory pred_a;
  /// Far from the log but inside the rank-1 trust region.
  Trajectory pred_b;
};

/// Scenario plus two predictions where the one with lower ADE has the lower
/// rater feedback score (floored at 4).
DivergentPair make_ade_rfs_divergent_pair(std::uint64_t seed);

}  // namespace raterscore::synth

#endif  // RATERSCORE__SYNTH_HPP_
