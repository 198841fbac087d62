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

#ifndef RATERSCORE__SCENARIO_HPP_
#define RATERSCORE__SCENARIO_HPP_

#include "raterscore/geometry.hpp"
#include "raterscore/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace raterscore
{

/// One rated driving moment. The constructor enforces every structural rule
/// (exactly three raters with distinct ranks, scores non-increasing with rank,
/// at least one score above 6, fixed waypoint counts) and throws
/// StructuralError otherwise.
class Scenario
{
public:
  Scenario(
    std::string id, ScenarioCategory category, RoutingCommand routing, EgoStatus ego,
    std::vector<RaterTrajectory> raters, std::optional<Trajectory> log_future = std::nullopt,
    std::optional<std::vector<Waypoint>> future_route_10s = std::nullopt,
    std::vector<CameraCalibration> cameras = {});

  const std::string & id() const { return id_; }
  ScenarioCategory category() const { return category_; }
  RoutingCommand routing() const { return routing_; }
  const EgoStatus & ego() const { return ego_; }
  const std::vector<RaterTrajectory> & raters() const { return raters_; }
  const std::optional<Trajectory> & log_future() const { return log_future_; }
  const std::optional<std::vector<Waypoint>> & future_route_10s() const
  {
    return future_route_10s_;
  }
  const std::vector<CameraCalibration> & cameras() const { return cameras_; }

  const RaterTrajectory & rater_with_rank(int rank) const;

private:
  std::string id_;
  ScenarioCategory category_;
  RoutingCommand routing_;
  EgoStatus ego_;
  std::vector<RaterTrajectory> raters_;
  std::optional<Trajectory> log_future_;
  std::optional<std::vector<Waypoint>> future_route_10s_;
  std::vector<CameraCalibration> cameras_;
};

struct SubmissionMetadata
{
  std::string submitter;
  std::string method;
  std::string submitted_at;

  friend bool operator==(const SubmissionMetadata &, const SubmissionMetadata &) = default;
};

/// Predicted 5 s futures keyed by scenario id.
struct Submission
{
  std::map<std::string, Trajectory> entries;
  SubmissionMetadata metadata;
};

}  // namespace raterscore

#endif  // RATERSCORE__SCENARIO_HPP_
