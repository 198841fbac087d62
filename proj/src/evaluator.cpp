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

#include "raterscore/evaluator.hpp"

#include <exception>
#include <thread>
#include <utility>

namespace raterscore
{

namespace
{

std::string join_ids(const std::vector<std::string> & ids)
{
  std::string out;
  for (const auto & id : ids) {
    out += out.empty() ? "" : ", ";
    out += id;
  }
  return out;
}

// Predictions aligned with `scenarios`; null where the submission has none.
std::vector<const Trajectory *> align_predictions(
  std::span<const Scenario> scenarios, const Submission & submission,
  const EvaluationOptions & options)
{
  if (options.parallelism < 1) {
    throw DomainError("parallelism must be at least 1");
  }
  std::vector<const Trajectory *> aligned;
  aligned.reserve(scenarios.size());
  std::vector<std::string> missing;
  for (const auto & scenario : scenarios) {
    const auto it = submission.entries.find(scenario.id());
    if (it == submission.entries.end()) {
      missing.push_back(scenario.id());
      aligned.push_back(nullptr);
    } else {
      aligned.push_back(&it->second);
    }
  }
  if (!missing.empty() && !options.lenient_missing) {
    throw MissingPredictionsError(std::move(missing));
  }
  return aligned;
}

ScoreReport assemble(std::vector<ScenarioScore> scores, const Submission & submission)
{
  ScoreReport report;
  report.metadata = submission.metadata;
  report.aggregates = aggregate(scores);
  for (auto & s : scores) {
    std::string id = s.id;
    if (!report.per_scenario.emplace(std::move(id), std::move(s)).second) {
      throw StructuralError("duplicate scenario id in evaluation set");
    }
  }
  return report;
}

}  // namespace

MissingPredictionsError::MissingPredictionsError(std::vector<std::string> ids)
: StructuralError("missing predictions for: " + join_ids(ids)), ids_(std::move(ids))
{
}

int available_cores()
{
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

ScenarioScore score_scenario(const Scenario & scenario, const Trajectory * prediction)
{
  ScenarioScore score;
  score.id = scenario.id();
  score.category = scenario.category();
  if (prediction == nullptr) {
    score.missing = true;
    score.rfs = kScoreFloor;
    score.ade_reference = AdeReference::kNone;
    return score;
  }

  RfsBreakdown breakdown = rfs(*prediction, scenario.raters());
  score.rfs = breakdown.final_score;
  score.per_time.assign(
    std::make_move_iterator(breakdown.per_time.begin()),
    std::make_move_iterator(breakdown.per_time.end()));

  if (scenario.log_future()) {
    score.ade = ade(*prediction, *scenario.log_future());
    score.ade_reference = AdeReference::kLogFuture;
  } else {
    score.ade = ade(*prediction, scenario.rater_with_rank(1).trajectory());
    score.ade_reference = AdeReference::kRank1Rater;
  }
  return score;
}

ScoreReport evaluate_submission_serial(
  std::span<const Scenario> scenarios, const Submission & submission,
  const EvaluationOptions & options)
{
  const auto predictions = align_predictions(scenarios, submission, options);
  std::vector<ScenarioScore> scores;
  scores.reserve(scenarios.size());
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    scores.push_back(score_scenario(scenarios[i], predictions[i]));
  }
  return assemble(std::move(scores), submission);
}

ScoreReport evaluate_submission(
  std::span<const Scenario> scenarios, const Submission & submission,
  const EvaluationOptions & options)
{
  const auto predictions = align_predictions(scenarios, submission, options);
  const auto n = static_cast<std::ptrdiff_t>(scenarios.size());
  std::vector<ScenarioScore> scores(scenarios.size());
  std::vector<std::exception_ptr> failures(scenarios.size());

  // Each iteration writes only its own slot; the reduction happens afterwards
  // in id order inside aggregate().
#pragma omp parallel for num_threads(options.parallelism) schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      scores[static_cast<std::size_t>(i)] =
        score_scenario(scenarios[static_cast<std::size_t>(i)], predictions[static_cast<std::size_t>(i)]);
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }

  for (const auto & failure : failures) {
    if (failure) {
      std::rethrow_exception(failure);
    }
  }
  return assemble(std::move(scores), submission);
}

}  // namespace raterscore
