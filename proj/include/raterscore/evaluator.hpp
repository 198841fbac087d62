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

#ifndef RATERSCORE__EVALUATOR_HPP_
#define RATERSCORE__EVALUATOR_HPP_

#include "raterscore/errors.hpp"
#include "raterscore/metrics.hpp"
#include "raterscore/scenario.hpp"

#include <span>
#include <string>
#include <vector>

namespace raterscore
{

struct EvaluationOptions
{
  /// Score scenarios without a prediction at the floor instead of failing.
  bool lenient_missing{false};
  /// Worker threads for the parallel evaluator; must be >= 1.
  int parallelism{1};
};

/// Strict-mode failure: some scenarios have no usable prediction.
class MissingPredictionsError : public StructuralError
{
public:
  explicit MissingPredictionsError(std::vector<std::string> ids);
  const std::vector<std::string> & ids() const { return ids_; }

private:
  std::vector<std::string> ids_;
};

int available_cores();

/// RFS against the raters and ADE against the log future (falling back to
/// the rank-1 rater). A null prediction yields the floor score, no ADE.
ScenarioScore score_scenario(const Scenario & scenario, const Trajectory * prediction);

/// Reference implementation: scores scenarios one after another.
ScoreReport evaluate_submission_serial(
  std::span<const Scenario> scenarios, const Submission & submission,
  const EvaluationOptions & options = {});

/// Scores scenarios on `options.parallelism` OpenMP threads. The report is
/// identical to the serial one for every thread count.
ScoreReport evaluate_submission(
  std::span<const Scenario> scenarios, const Submission & submission,
  const EvaluationOptions & options = {});

}  // namespace raterscore

#endif  // RATERSCORE__EVALUATOR_HPP_
