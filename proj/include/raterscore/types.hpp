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

#ifndef RATERSCORE__TYPES_HPP_
#define RATERSCORE__TYPES_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace raterscore
{

// All trajectories are sampled at 4 Hz in the vehicle frame. The anchor frame
// (t = 0) is the vehicle origin with heading +x and is never stored.
inline constexpr double kCadenceHz = 4.0;
inline constexpr double kStepSeconds = 1.0 / kCadenceHz;
inline constexpr std::size_t kFutureWaypoints = 20;
inline constexpr std::size_t kPastWaypoints = 16;
inline constexpr std::size_t kRouteWaypoints = 40;
inline constexpr std::size_t kRatersPerScenario = 3;
inline constexpr double kFutureStartSeconds = kStepSeconds;
inline constexpr double kPastStartSeconds = -4.0;

/// Planar point in the vehicle frame: x forward, y left, meters.
struct Waypoint
{
  double x{0.0};
  double y{0.0};

  bool is_finite() const;
  friend bool operator==(const Waypoint &, const Waypoint &) = default;
};

/// Fixed-cadence waypoint sequence. Waypoint i is stamped at
/// `t0_offset_s() + i * 0.25` seconds relative to the anchor frame.
class Trajectory
{
public:
  Trajectory() = default;

  /// Throws StructuralError if any waypoint is non-finite.
  explicit Trajectory(std::vector<Waypoint> waypoints, double t0_offset_s = kFutureStartSeconds);

  /// 5 s future starting at 0.25 s; requires exactly 20 waypoints.
  static Trajectory future(std::vector<Waypoint> waypoints);
  /// 4 s history ending at -0.25 s; requires exactly 16 waypoints.
  static Trajectory past(std::vector<Waypoint> waypoints);

  const std::vector<Waypoint> & waypoints() const { return waypoints_; }
  std::size_t size() const { return waypoints_.size(); }
  bool empty() const { return waypoints_.empty(); }
  double t0_offset_s() const { return t0_offset_s_; }
  double time_at(std::size_t index) const;
  const Waypoint & operator[](std::size_t index) const { return waypoints_[index]; }

  friend bool operator==(const Trajectory &, const Trajectory &) = default;

private:
  std::vector<Waypoint> waypoints_;
  double t0_offset_s_{kFutureStartSeconds};
};

/// Sample index whose timestamp equals `t`. Throws RangeError if `t` is not
/// on the 0.25 s grid or falls outside the trajectory.
std::size_t index_at_time(const Trajectory & traj, double t);

Waypoint waypoint_at_time(const Trajectory & traj, double t);

/// Speed implied by the first step from the anchor origin, in m/s.
/// Throws StructuralError for an empty trajectory.
double initial_speed(const Trajectory & traj);

class EgoStatus
{
public:
  EgoStatus() = default;
  EgoStatus(Trajectory past, std::vector<double> velocity, std::vector<double> acceleration);

  const Trajectory & past() const { return past_; }
  const std::vector<double> & velocity() const { return velocity_; }
  const std::vector<double> & acceleration() const { return acceleration_; }

  friend bool operator==(const EgoStatus &, const EgoStatus &) = default;

private:
  Trajectory past_;
  std::vector<double> velocity_;
  std::vector<double> acceleration_;
};

enum class RoutingCommand { kGoStraight, kGoLeft, kGoRight };

std::string_view to_string(RoutingCommand command);
std::optional<RoutingCommand> parse_routing_command(std::string_view text);

enum class ScenarioCategory {
  kConstruction,
  kIntersection,
  kPedestrians,
  kCyclists,
  kMultiLaneManeuvers,
  kSingleLaneManeuvers,
  kCutIns,
  kForeignObjectDebris,
  kSpecialVehicles,
  kSpotlight,
  kOthers,
};

inline constexpr std::size_t kScenarioCategoryCount = 11;

std::string_view to_string(ScenarioCategory category);
std::optional<ScenarioCategory> parse_scenario_category(std::string_view text);

/// A rated 5 s candidate future. Score in [0, 10], rank in {1, 2, 3}.
class RaterTrajectory
{
public:
  RaterTrajectory(Trajectory trajectory, double score, int rank);

  const Trajectory & trajectory() const { return trajectory_; }
  double score() const { return score_; }
  int rank() const { return rank_; }

  friend bool operator==(const RaterTrajectory &, const RaterTrajectory &) = default;

private:
  Trajectory trajectory_;
  double score_;
  int rank_;
};

}  // namespace raterscore

#endif  // RATERSCORE__TYPES_HPP_
