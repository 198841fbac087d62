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

#ifndef RATERSCORE__ROUTING_HPP_
#define RATERSCORE__ROUTING_HPP_

#include "raterscore/types.hpp"

#include <span>
#include <vector>

namespace raterscore
{

inline constexpr double kDefaultBranchAngleDeg = 45.0;

/// 10 s of driven route after the anchor, 40 samples at 4 Hz.
class RouteWindow
{
public:
  /// Throws StructuralError unless exactly 40 finite points are given.
  explicit RouteWindow(std::vector<Waypoint> points);

  const std::vector<Waypoint> & points() const { return points_; }

private:
  std::vector<Waypoint> points_;
};

/// High-level command from the net heading change of a future route.
///
/// The initial tangent runs from the anchor origin to the second route sample
/// and the final tangent is the last step of the route; degenerate steps are
/// skipped. A change beyond +branch_angle is GO_LEFT, beyond -branch_angle
/// GO_RIGHT, anything else (lane changes, nudges, stationary) GO_STRAIGHT.
RoutingCommand derive_command(
  const RouteWindow & route, double branch_angle_deg = kDefaultBranchAngleDeg);

/// Same rule on an arbitrary-length route. Throws DegenerateRouteError for
/// fewer than two samples.
RoutingCommand derive_command(
  std::span<const Waypoint> route, double branch_angle_deg = kDefaultBranchAngleDeg);

/// Signed net heading change in radians, counter-clockwise positive.
double net_heading_change(std::span<const Waypoint> route);

}  // namespace raterscore

#endif  // RATERSCORE__ROUTING_HPP_
