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

#include "raterscore/synth.hpp"

#include "raterscore/errors.hpp"
#include "raterscore/routing.hpp"

#include <Eigen/Geometry>
#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>

namespace raterscore::synth
{

namespace
{

constexpr std::array<std::pair<TemplateKind, std::string_view>, kTemplateKindCount> kKindNames{{
  {TemplateKind::kStraightFollow, "straight_follow"},
  {TemplateKind::kLeftTurn, "left_turn"},
  {TemplateKind::kRightTurn, "right_turn"},
  {TemplateKind::kLaneChange, "lane_change"},
  {TemplateKind::kHardBrake, "hard_brake"},
  {TemplateKind::kSwerveAvoid, "swerve_avoid"},
}};

// Maneuver shape parameters.
constexpr double kTurnStart = 1.0;
constexpr double kTurnDuration = 3.0;
constexpr double kLateralStart = 0.5;
constexpr double kLateralDuration = 3.0;
constexpr double kLaneWidth = 3.5;
constexpr double kSwerveOffset = 1.5;
constexpr double kHardBrakeDecel = 4.0;
// Below this speed lateral maneuvers shrink so a stopped car does not slide.
constexpr double kLateralFullSpeed = 1.4;

constexpr double kLogNoise = 0.1;

// Portable uniform draw; std:: distributions are implementation-defined.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi)
  {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }

  int integer(int lo, int hi)
  {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

private:
  std::mt19937_64 engine_;
};

double smoothstep(double u)
{
  u = std::clamp(u, 0.0, 1.0);
  return u * u * (3.0 - 2.0 * u);
}

double lateral_gain(double speed) { return std::min(1.0, speed / kLateralFullSpeed); }

Waypoint turn_position(double speed, double t, double side)
{
  if (t <= kTurnStart) {
    return {speed * t, 0.0};
  }
  const double yaw_rate = (std::numbers::pi / 2.0) / kTurnDuration;
  const double radius = speed / yaw_rate;
  const double tau = std::min(t - kTurnStart, kTurnDuration);
  const double yaw = yaw_rate * tau;
  Waypoint p{speed * kTurnStart + radius * std::sin(yaw), side * radius * (1.0 - std::cos(yaw))};
  if (t > kTurnStart + kTurnDuration) {
    const double extra = speed * (t - kTurnStart - kTurnDuration);
    p.y += side * extra;
  }
  return p;
}

Waypoint brake_position(double speed, double decel, double t)
{
  const double stop_time = speed / decel;
  const double tau = std::min(t, stop_time);
  return {speed * tau - 0.5 * decel * tau * tau, 0.0};
}

std::vector<Waypoint> sample(TemplateKind kind, double speed, std::size_t count)
{
  std::vector<Waypoint> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    points.push_back(maneuver_position(kind, speed, kStepSeconds * static_cast<double>(i + 1)));
  }
  return points;
}

TemplateKind alternative_mode(TemplateKind kind)
{
  switch (kind) {
    case TemplateKind::kStraightFollow:
      return TemplateKind::kLaneChange;
    case TemplateKind::kLeftTurn:
    case TemplateKind::kRightTurn:
    case TemplateKind::kLaneChange:
      return TemplateKind::kStraightFollow;
    case TemplateKind::kHardBrake:
      return TemplateKind::kStraightFollow;
    case TemplateKind::kSwerveAvoid:
      return TemplateKind::kHardBrake;
  }
  return TemplateKind::kStraightFollow;
}

ScenarioCategory category_for(TemplateKind kind)
{
  switch (kind) {
    case TemplateKind::kStraightFollow:
      return ScenarioCategory::kSingleLaneManeuvers;
    case TemplateKind::kLeftTurn:
    case TemplateKind::kRightTurn:
      return ScenarioCategory::kIntersection;
    case TemplateKind::kLaneChange:
      return ScenarioCategory::kMultiLaneManeuvers;
    case TemplateKind::kHardBrake:
      return ScenarioCategory::kCutIns;
    case TemplateKind::kSwerveAvoid:
      return ScenarioCategory::kForeignObjectDebris;
  }
  return ScenarioCategory::kOthers;
}

EgoStatus constant_speed_history(double speed)
{
  std::vector<Waypoint> past;
  for (std::size_t i = 0; i < kPastWaypoints; ++i) {
    past.push_back({speed * (kPastStartSeconds + kStepSeconds * static_cast<double>(i)), 0.0});
  }
  return EgoStatus(
    Trajectory::past(std::move(past)), std::vector<double>(kPastWaypoints, speed),
    std::vector<double>(kPastWaypoints, 0.0));
}

std::vector<CameraCalibration> nominal_cameras()
{
  struct Mount
  {
    CameraName name;
    double yaw_deg;
    double x;
    double y;
  };
  static constexpr std::array<Mount, kCameraCount> kMounts{{
    {CameraName::kFront, 0.0, 1.5, 0.0},
    {CameraName::kFrontLeft, 45.0, 1.4, 0.5},
    {CameraName::kFrontRight, -45.0, 1.4, -0.5},
    {CameraName::kSideLeft, 90.0, 0.5, 0.9},
    {CameraName::kSideRight, -90.0, 0.5, -0.9},
    {CameraName::kRear, 180.0, -1.5, 0.0},
    {CameraName::kRearLeft, 135.0, -1.4, 0.5},
    {CameraName::kRearRight, -135.0, -1.4, -0.5},
  }};
  std::vector<CameraCalibration> cameras;
  for (const auto & m : kMounts) {
    CameraIntrinsics k;
    k.f_u = 2000.0;
    k.f_v = 2000.0;
    k.c_u = 960.0;
    k.c_v = 640.0;
    k.width = 1920;
    k.height = 1280;
    const Eigen::Matrix3d rotation =
      Eigen::AngleAxisd(m.yaw_deg * std::numbers::pi / 180.0, Eigen::Vector3d::UnitZ())
        .toRotationMatrix();
    cameras.emplace_back(
      m.name, k, RigidTransform(rotation, Eigen::Vector3d(m.x, m.y, 1.8)),
      fmt::format("images/{}.jpg", to_string(m.name)));
  }
  return cameras;
}

std::string scenario_id(const ScenarioTemplate & tmpl)
{
  return fmt::format("{}-v{:05.2f}-s{}", to_string(tmpl.kind), tmpl.speed, tmpl.noise_seed);
}

}  // namespace

std::string_view to_string(TemplateKind kind)
{
  for (const auto & [value, name] : kKindNames) {
    if (value == kind) {
      return name;
    }
  }
  return "unknown";
}

std::optional<TemplateKind> parse_template_kind(std::string_view text)
{
  for (const auto & [value, name] : kKindNames) {
    if (name == text) {
      return value;
    }
  }
  return std::nullopt;
}

Waypoint maneuver_position(TemplateKind kind, double speed, double t)
{
  switch (kind) {
    case TemplateKind::kStraightFollow:
      return {speed * t, 0.0};
    case TemplateKind::kLeftTurn:
      return turn_position(speed, t, 1.0);
    case TemplateKind::kRightTurn:
      return turn_position(speed, t, -1.0);
    case TemplateKind::kLaneChange:
      return {
        speed * t,
        lateral_gain(speed) * kLaneWidth * smoothstep((t - kLateralStart) / kLateralDuration)};
    case TemplateKind::kHardBrake:
      return brake_position(speed, kHardBrakeDecel, t);
    case TemplateKind::kSwerveAvoid: {
      const double u = std::clamp((t - kLateralStart) / kLateralDuration, 0.0, 1.0);
      const double bump = std::sin(std::numbers::pi * u);
      return {speed * t, lateral_gain(speed) * kSwerveOffset * bump * bump};
    }
  }
  return {};
}

Scenario generate_scenario(const ScenarioTemplate & tmpl)
{
  if (!std::isfinite(tmpl.speed) || tmpl.speed < 0.0) {
    throw DomainError("template speed must be finite and non-negative");
  }
  Rng rng(tmpl.noise_seed);

  std::vector<Waypoint> ideal = sample(tmpl.kind, tmpl.speed, kFutureWaypoints);

  const double speed_factor = 1.0 + rng.uniform(-0.15, 0.15);
  const double lateral_drift = rng.uniform(-0.5, 0.5);
  std::vector<Waypoint> perturbed = sample(tmpl.kind, tmpl.speed * speed_factor, kFutureWaypoints);
  for (std::size_t i = 0; i < perturbed.size(); ++i) {
    perturbed[i].y += lateral_drift * static_cast<double>(i + 1) / kFutureWaypoints;
  }
  const double rank2_score = rng.integer(0, 1) == 0 ? 9.0 : 8.0;

  std::vector<Waypoint> other_mode = sample(alternative_mode(tmpl.kind), tmpl.speed, kFutureWaypoints);
  const double rank3_score = static_cast<double>(rng.integer(0, 5));

  std::vector<Waypoint> log = ideal;
  for (auto & p : log) {
    p.x += rng.uniform(-kLogNoise, kLogNoise);
    p.y += rng.uniform(-kLogNoise, kLogNoise);
  }

  std::vector<Waypoint> route = sample(tmpl.kind, tmpl.speed, kRouteWaypoints);
  const RoutingCommand routing = derive_command(RouteWindow(route));

  std::vector<RaterTrajectory> raters;
  raters.emplace_back(Trajectory::future(std::move(ideal)), 10.0, 1);
  raters.emplace_back(Trajectory::future(std::move(perturbed)), rank2_score, 2);
  raters.emplace_back(Trajectory::future(std::move(other_mode)), rank3_score, 3);

  return Scenario(
    scenario_id(tmpl), category_for(tmpl.kind), routing, constant_speed_history(tmpl.speed),
    std::move(raters), Trajectory::future(std::move(log)), std::move(route), nominal_cameras());
}

std::vector<Scenario> generate_scenarios(
  std::optional<TemplateKind> kind, std::size_t count, std::uint64_t seed,
  std::optional<double> speed)
{
  std::vector<Scenario> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = seed + i;
    ScenarioTemplate tmpl;
    tmpl.kind = kind ? *kind : kKindNames[s % kTemplateKindCount].first;
    if (speed) {
      tmpl.speed = *speed;
    } else {
      // Separate stream from the template's own noise seed.
      Rng speed_rng(s ^ 0x9e3779b97f4a7c15ULL);
      tmpl.speed = std::round(speed_rng.uniform(0.0, 20.0) * 100.0) / 100.0;
    }
    tmpl.noise_seed = s;
    out.push_back(generate_scenario(tmpl));
  }
  return out;
}

BucketKey classify(const Trajectory & trajectory)
{
  if (trajectory.empty()) {
    throw DomainError("cannot classify an empty trajectory");
  }
  const std::size_t n = trajectory.size();
  const Waypoint last = trajectory[n - 1];
  const Waypoint prev = n > 1 ? trajectory[n - 2] : Waypoint{};
  const double final_speed = std::hypot(last.x - prev.x, last.y - prev.y) * kCadenceHz;

  BucketKey key;
  if (final_speed < 1.4) {
    key.speed = SpeedClass::kSlow;
  } else if (final_speed < 11.0) {
    key.speed = SpeedClass::kMedium;
  } else {
    key.speed = SpeedClass::kFast;
  }
  if (last.y > kLateralClassThreshold) {
    key.lateral = LateralClass::kLeft;
  } else if (last.y < -kLateralClassThreshold) {
    key.lateral = LateralClass::kRight;
  } else {
    key.lateral = LateralClass::kCenter;
  }
  return key;
}

std::vector<DecisionBucket> bucket_candidates(std::span<const Trajectory> candidates)
{
  std::vector<DecisionBucket> buckets;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const BucketKey key = classify(candidates[i]);
    auto it = std::lower_bound(
      buckets.begin(), buckets.end(), key,
      [](const DecisionBucket & b, const BucketKey & k) { return b.key < k; });
    if (it == buckets.end() || it->key != key) {
      it = buckets.insert(it, DecisionBucket{key, {}});
    }
    it->members.push_back(i);
  }
  for (auto & bucket : buckets) {
    std::sort(bucket.members.begin(), bucket.members.end(), [&](std::size_t a, std::size_t b) {
      const double ya = candidates[a][candidates[a].size() - 1].y;
      const double yb = candidates[b][candidates[b].size() - 1].y;
      return ya != yb ? ya < yb : a < b;
    });
  }
  return buckets;
}

std::vector<std::size_t> bucket_and_sample_indices(
  std::span<const Trajectory> candidates, std::size_t k)
{
  if (candidates.empty()) {
    throw DomainError("bucket_and_sample needs at least one candidate");
  }
  if (k > candidates.size()) {
    throw DomainError("cannot sample more trajectories than candidates");
  }
  const std::vector<DecisionBucket> buckets = bucket_candidates(candidates);

  // Per bucket: slot 0 rightmost, 1 middle, 2 leftmost.
  std::vector<std::array<std::size_t, 3>> picks;
  for (const auto & b : buckets) {
    const auto & m = b.members;
    picks.push_back({m.front(), m[(m.size() - 1) / 2], m.back()});
  }

  std::vector<std::vector<std::size_t>> chosen(buckets.size());
  std::size_t taken = 0;
  for (const std::size_t slot : {std::size_t{1}, std::size_t{2}, std::size_t{0}}) {
    for (std::size_t b = 0; b < buckets.size() && taken < k; ++b) {
      const std::size_t candidate = picks[b][slot];
      auto & c = chosen[b];
      if (std::find(c.begin(), c.end(), candidate) == c.end()) {
        c.push_back(candidate);
        ++taken;
      }
    }
  }

  std::vector<std::size_t> out;
  out.reserve(taken);
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    const auto & order = buckets[b].members;
    auto c = chosen[b];
    std::sort(c.begin(), c.end(), [&](std::size_t x, std::size_t y) {
      const auto px = std::find(order.begin(), order.end(), x);
      const auto py = std::find(order.begin(), order.end(), y);
      return px > py;
    });
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::vector<Trajectory> bucket_and_sample(std::span<const Trajectory> candidates, std::size_t k)
{
  std::vector<Trajectory> out;
  for (const std::size_t i : bucket_and_sample_indices(candidates, k)) {
    out.push_back(candidates[i]);
  }
  return out;
}

double rfs_bruteforce_oracle(const Trajectory & predicted, std::span<const RaterTrajectory> raters)
{
  if (predicted.size() != 20 || raters.empty()) {
    throw StructuralError("oracle: bad input sizes");
  }
  const auto find_index = [](const Trajectory & traj, double when) {
    for (std::size_t i = 0; i < traj.size(); ++i) {
      if (std::fabs(traj.t0_offset_s() + 0.25 * static_cast<double>(i) - when) < 1e-9) {
        return i;
      }
    }
    throw RangeError("oracle: time not found");
  };

  double total = 0.0;
  for (const double when : {3.0, 5.0}) {
    const double lat_base = when == 3.0 ? 1.0 : 1.8;
    const double lng_base = when == 3.0 ? 4.0 : 7.2;
    const Waypoint p = predicted[find_index(predicted, when)];

    double best = -std::numeric_limits<double>::infinity();
    for (const RaterTrajectory & rater : raters) {
      const Trajectory & ref = rater.trajectory();
      const std::size_t idx = find_index(ref, when);

      const double v = std::sqrt(ref[0].x * ref[0].x + ref[0].y * ref[0].y) / 0.25;
      const double scale = std::clamp(0.5 + 0.5 * (v - 1.4) / 9.6, 0.5, 1.0);

      const std::size_t lo = idx == 0 ? idx : idx - 1;
      const std::size_t hi = idx + 1 == ref.size() ? idx : idx + 1;
      const double dx = ref[hi].x - ref[lo].x;
      const double dy = ref[hi].y - ref[lo].y;
      const double angle = std::sqrt(dx * dx + dy * dy) < 1e-6 ? 0.0 : std::atan2(dy, dx);

      const double ex = p.x - ref[idx].x;
      const double ey = p.y - ref[idx].y;
      const double lng = std::fabs(ex * std::cos(angle) + ey * std::sin(angle));
      const double lat = std::fabs(-ex * std::sin(angle) + ey * std::cos(angle));

      const double r = std::max(lng / (scale * lng_base), lat / (scale * lat_base));
      const double score =
        r <= 1.0 ? rater.score() : rater.score() * std::exp((r - 1.0) * std::log(0.1));
      best = std::max(best, score);
    }
    total += best;
  }
  return std::max(total / 2.0, 4.0);
}

DivergentPair make_ade_rfs_divergent_pair(std::uint64_t seed)
{
  Rng rng(seed);
  const double speed = rng.uniform(12.0, 20.0);
  constexpr double kYieldDecel = 3.0;
  constexpr double kStopDecel = 6.0;
  constexpr double kPredNoise = 0.05;

  std::vector<Waypoint> lane_change = sample(TemplateKind::kLaneChange, speed, kFutureWaypoints);
  std::vector<Waypoint> yield;
  std::vector<Waypoint> stop;
  std::vector<Waypoint> log;
  for (std::size_t i = 0; i < kFutureWaypoints; ++i) {
    const double t = kStepSeconds * static_cast<double>(i + 1);
    yield.push_back(brake_position(speed, kYieldDecel, t));
    stop.push_back(brake_position(speed, kStopDecel, t));
    log.push_back({speed * t, 0.0});
  }

  std::vector<Waypoint> pred_a = log;
  for (auto & p : pred_a) {
    p.x += rng.uniform(-kPredNoise, kPredNoise);
    p.y += rng.uniform(-kPredNoise, kPredNoise);
  }
  std::vector<Waypoint> pred_b = lane_change;
  for (auto & p : pred_b) {
    p.x += rng.uniform(-kPredNoise, kPredNoise);
    p.y += rng.uniform(-kPredNoise, kPredNoise);
  }

  std::vector<Waypoint> route = sample(TemplateKind::kStraightFollow, speed, kRouteWaypoints);

  std::vector<RaterTrajectory> raters;
  raters.emplace_back(Trajectory::future(std::move(lane_change)), 10.0, 1);
  raters.emplace_back(Trajectory::future(std::move(yield)), 8.0, 2);
  raters.emplace_back(Trajectory::future(std::move(stop)), 2.0, 3);

  Scenario scenario(
    fmt::format("divergent-s{}", seed), ScenarioCategory::kMultiLaneManeuvers,
    RoutingCommand::kGoStraight, constant_speed_history(speed), std::move(raters),
    Trajectory::future(std::move(log)), std::move(route), nominal_cameras());
  return DivergentPair{
    std::move(scenario), Trajectory::future(std::move(pred_a)), Trajectory::future(std::move(pred_b))};
}

}  // namespace raterscore::synth
