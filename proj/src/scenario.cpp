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

#include "raterscore/scenario.hpp"

#include "raterscore/errors.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace raterscore
{

Scenario::Scenario(
  std::string id, ScenarioCategory category, RoutingCommand routing, EgoStatus ego,
  std::vector<RaterTrajectory> raters, std::optional<Trajectory> log_future,
  std::optional<std::vector<Waypoint>> future_route_10s, std::vector<CameraCalibration> cameras)
: id_(std::move(id)),
  category_(category),
  routing_(routing),
  ego_(std::move(ego)),
  raters_(std::move(raters)),
  log_future_(std::move(log_future)),
  future_route_10s_(std::move(future_route_10s)),
  cameras_(std::move(cameras))
{
  if (id_.empty()) {
    throw StructuralError("scenario id must be non-empty");
  }
  if (ego_.past().size() != kPastWaypoints) {
    throw StructuralError("expected 16 past waypoints");
  }
  if (raters_.size() != kRatersPerScenario) {
    throw StructuralError("expected exactly 3 rater trajectories");
  }

  std::array<const RaterTrajectory *, 3> by_rank{};
  for (const auto & rater : raters_) {
    auto & slot = by_rank[static_cast<std::size_t>(rater.rank() - 1)];
    if (slot != nullptr) {
      throw StructuralError("duplicate rater rank " + std::to_string(rater.rank()));
    }
    slot = &rater;
  }
  if (by_rank[0]->score() < by_rank[1]->score() || by_rank[1]->score() < by_rank[2]->score()) {
    throw StructuralError("rater scores must be non-increasing with rank");
  }
  if (std::none_of(raters_.begin(), raters_.end(), [](const RaterTrajectory & r) {
        return r.score() > 6.0;
      })) {
    throw StructuralError("no rater score > 6");
  }
  if (log_future_ && log_future_->size() != kFutureWaypoints) {
    throw StructuralError("expected 20 log_future waypoints");
  }
  if (future_route_10s_) {
    if (future_route_10s_->size() != kRouteWaypoints) {
      throw StructuralError("expected 40 future route waypoints");
    }
    if (!std::all_of(future_route_10s_->begin(), future_route_10s_->end(), [](const Waypoint & w) {
          return w.is_finite();
        })) {
      throw StructuralError("non-finite waypoint in future route");
    }
  }
}

const RaterTrajectory & Scenario::rater_with_rank(int rank) const
{
  const auto it = std::find_if(
    raters_.begin(), raters_.end(), [rank](const RaterTrajectory & r) { return r.rank() == rank; });
  if (it == raters_.end()) {
    throw RangeError("no rater with rank " + std::to_string(rank));
  }
  return *it;
}

}  // namespace raterscore
