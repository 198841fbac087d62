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

#include "raterscore/types.hpp"

#include "raterscore/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace raterscore
{

namespace
{

constexpr std::array<std::pair<RoutingCommand, std::string_view>, 3> kRoutingNames{{
  {RoutingCommand::kGoStraight, "GO_STRAIGHT"},
  {RoutingCommand::kGoLeft, "GO_LEFT"},
  {RoutingCommand::kGoRight, "GO_RIGHT"},
}};

constexpr std::array<std::pair<ScenarioCategory, std::string_view>, kScenarioCategoryCount>
  kCategoryNames{{
    {ScenarioCategory::kConstruction, "Construction"},
    {ScenarioCategory::kIntersection, "Intersection"},
    {ScenarioCategory::kPedestrians, "Pedestrians"},
    {ScenarioCategory::kCyclists, "Cyclists"},
    {ScenarioCategory::kMultiLaneManeuvers, "MultiLaneManeuvers"},
    {ScenarioCategory::kSingleLaneManeuvers, "SingleLaneManeuvers"},
    {ScenarioCategory::kCutIns, "CutIns"},
    {ScenarioCategory::kForeignObjectDebris, "ForeignObjectDebris"},
    {ScenarioCategory::kSpecialVehicles, "SpecialVehicles"},
    {ScenarioCategory::kSpotlight, "Spotlight"},
    {ScenarioCategory::kOthers, "Others"},
  }};

// Grid snapping tolerance for sample times given in seconds.
constexpr double kTimeTolerance = 1e-9;

}  // namespace

bool Waypoint::is_finite() const { return std::isfinite(x) && std::isfinite(y); }

Trajectory::Trajectory(std::vector<Waypoint> waypoints, double t0_offset_s)
: waypoints_(std::move(waypoints)), t0_offset_s_(t0_offset_s)
{
  if (!std::isfinite(t0_offset_s_)) {
    throw StructuralError("trajectory start offset must be finite");
  }
  const auto bad = std::find_if(
    waypoints_.begin(), waypoints_.end(), [](const Waypoint & w) { return !w.is_finite(); });
  if (bad != waypoints_.end()) {
    throw StructuralError(
      "non-finite waypoint at index " + std::to_string(bad - waypoints_.begin()));
  }
}

Trajectory Trajectory::future(std::vector<Waypoint> waypoints)
{
  if (waypoints.size() != kFutureWaypoints) {
    throw StructuralError(
      "expected 20 waypoints, got " + std::to_string(waypoints.size()));
  }
  return Trajectory(std::move(waypoints), kFutureStartSeconds);
}

Trajectory Trajectory::past(std::vector<Waypoint> waypoints)
{
  if (waypoints.size() != kPastWaypoints) {
    throw StructuralError(
      "expected 16 waypoints, got " + std::to_string(waypoints.size()));
  }
  return Trajectory(std::move(waypoints), kPastStartSeconds);
}

double Trajectory::time_at(std::size_t index) const
{
  return t0_offset_s_ + static_cast<double>(index) * kStepSeconds;
}

std::size_t index_at_time(const Trajectory & traj, double t)
{
  if (!std::isfinite(t)) {
    throw RangeError("sample time must be finite");
  }
  const double steps = (t - traj.t0_offset_s()) / kStepSeconds;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > kTimeTolerance) {
    throw RangeError("t=" + std::to_string(t) + " is not on the 0.25 s grid");
  }
  if (rounded < 0.0 || rounded >= static_cast<double>(traj.size())) {
    throw RangeError(
      "t=" + std::to_string(t) + " outside trajectory span of " + std::to_string(traj.size()) +
      " samples");
  }
  return static_cast<std::size_t>(rounded);
}

Waypoint waypoint_at_time(const Trajectory & traj, double t) { return traj[index_at_time(traj, t)]; }

double initial_speed(const Trajectory & traj)
{
  if (traj.empty()) {
    throw StructuralError("initial speed of an empty trajectory");
  }
  const Waypoint & first = traj[0];
  return std::hypot(first.x, first.y) * kCadenceHz;
}

EgoStatus::EgoStatus(
  Trajectory past, std::vector<double> velocity, std::vector<double> acceleration)
: past_(std::move(past)), velocity_(std::move(velocity)), acceleration_(std::move(acceleration))
{
  if (velocity_.size() != past_.size() || acceleration_.size() != past_.size()) {
    throw StructuralError("velocity and acceleration must align with the past trajectory");
  }
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(velocity_.begin(), velocity_.end(), finite) ||
      !std::all_of(acceleration_.begin(), acceleration_.end(), finite)) {
    throw StructuralError("non-finite ego status value");
  }
}

std::string_view to_string(RoutingCommand command)
{
  for (const auto & [value, name] : kRoutingNames) {
    if (value == command) {
      return name;
    }
  }
  return "UNKNOWN";
}

std::optional<RoutingCommand> parse_routing_command(std::string_view text)
{
  for (const auto & [value, name] : kRoutingNames) {
    if (name == text) {
      return value;
    }
  }
  return std::nullopt;
}

std::string_view to_string(ScenarioCategory category)
{
  for (const auto & [value, name] : kCategoryNames) {
    if (value == category) {
      return name;
    }
  }
  return "Unknown";
}

std::optional<ScenarioCategory> parse_scenario_category(std::string_view text)
{
  for (const auto & [value, name] : kCategoryNames) {
    if (name == text) {
      return value;
    }
  }
  return std::nullopt;
}

RaterTrajectory::RaterTrajectory(Trajectory trajectory, double score, int rank)
: trajectory_(std::move(trajectory)), score_(score), rank_(rank)
{
  if (trajectory_.size() != kFutureWaypoints) {
    throw StructuralError(
      "expected 20 waypoints, got " + std::to_string(trajectory_.size()));
  }
  if (!std::isfinite(score_) || score_ < 0.0 || score_ > 10.0) {
    throw StructuralError("rater score must lie in [0, 10]");
  }
  if (rank_ < 1 || rank_ > 3) {
    throw StructuralError("rater rank must be 1, 2 or 3");
  }
}

}  // namespace raterscore
