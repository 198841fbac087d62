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

#include "raterscore/routing.hpp"

#include "raterscore/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

namespace raterscore
{

namespace
{

constexpr double kStationaryRadius = 1e-6;

struct Step
{
  double dx;
  double dy;
};

std::optional<Step> step_between(const Waypoint & from, const Waypoint & to)
{
  const Step s{to.x - from.x, to.y - from.y};
  if (std::hypot(s.dx, s.dy) < kStationaryRadius) {
    return std::nullopt;
  }
  return s;
}

}  // namespace

RouteWindow::RouteWindow(std::vector<Waypoint> points) : points_(std::move(points))
{
  if (points_.size() != kRouteWaypoints) {
    throw StructuralError("expected 40 route waypoints, got " + std::to_string(points_.size()));
  }
  if (!std::all_of(points_.begin(), points_.end(), [](const Waypoint & w) { return w.is_finite(); })) {
    throw StructuralError("non-finite waypoint in route");
  }
}

double net_heading_change(std::span<const Waypoint> route)
{
  if (route.size() < 2) {
    throw DegenerateRouteError(
      "route needs at least 2 samples, got " + std::to_string(route.size()));
  }

  // Initial tangent: central difference at the first sample, whose previous
  // sample is the implicit anchor origin.
  std::optional<Step> initial;
  const Waypoint origin{};
  for (std::size_t i = 1; i < route.size() && !initial; ++i) {
    initial = step_between(origin, route[i]);
  }
  std::optional<Step> final_step;
  for (std::size_t i = route.size() - 1; i > 0 && !final_step; --i) {
    final_step = step_between(route[i - 1], route[i]);
  }
  if (!initial || !final_step) {
    return 0.0;
  }

  const double cross = initial->dx * final_step->dy - initial->dy * final_step->dx;
  const double dot = initial->dx * final_step->dx + initial->dy * final_step->dy;
  return std::atan2(cross, dot);
}

RoutingCommand derive_command(std::span<const Waypoint> route, double branch_angle_deg)
{
  if (!(branch_angle_deg > 0.0 && branch_angle_deg < 180.0)) {
    throw DomainError("branch angle must lie in (0, 180) degrees");
  }
  const double change = net_heading_change(route);
  const double branch = branch_angle_deg * std::numbers::pi / 180.0;
  if (change > branch) {
    return RoutingCommand::kGoLeft;
  }
  if (change < -branch) {
    return RoutingCommand::kGoRight;
  }
  return RoutingCommand::kGoStraight;
}

RoutingCommand derive_command(const RouteWindow & route, double branch_angle_deg)
{
  return derive_command(std::span<const Waypoint>(route.points()), branch_angle_deg);
}

}  // namespace raterscore
