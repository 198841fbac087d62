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

#ifndef RATERSCORE__COMMANDS_HPP_
#define RATERSCORE__COMMANDS_HPP_

#include "raterscore/evaluator.hpp"
#include "raterscore/ingestion.hpp"
#include "raterscore/synth.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace raterscore
{

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig
{
  std::filesystem::path scenarios_path;
  std::filesystem::path submission_path;
  std::filesystem::path report_path;
  bool lenient_missing{false};
  double branch_angle_deg{kDefaultBranchAngleDeg};
  int parallelism{available_cores()};
};

/// Result of scoring one submission body. `report` is empty when the
/// submission was rejected; `issues` then explains why.
struct ScoringOutcome
{
  std::optional<ScoreReport> report;
  std::vector<ValidationIssue> issues;
  std::string error;
};

/// Single scoring path shared by `evaluate` and the service. Strict mode
/// rejects any error-severity issue; lenient mode only rejects submissions
/// without a valid header and floors every scenario lacking a prediction.
ScoringOutcome score_submission_text(
  std::span<const Scenario> scenarios, std::string_view submission_text,
  const EvaluationOptions & options);

int cmd_validate(const RunConfig & config, std::ostream & out, std::ostream & err);
int cmd_evaluate(const RunConfig & config, std::ostream & out, std::ostream & err);

enum class ReportFormat { kText, kCsv, kPlotdata };

std::optional<ReportFormat> parse_report_format(std::string_view text);

struct ReportRequest
{
  std::vector<std::filesystem::path> report_paths;
  std::optional<std::filesystem::path> store_dir;
  ReportFormat format{ReportFormat::kText};
};

std::string render_text(const ScoreReport & report);
std::string render_csv(const ScoreReport & report);

int cmd_report(const ReportRequest & request, std::ostream & out, std::ostream & err);

enum class SubmissionMode { kNone, kRank1, kLog, kZeros };

std::optional<SubmissionMode> parse_submission_mode(std::string_view text);

/// Submission that replays a reference trajectory for every scenario.
Submission make_reference_submission(
  std::span<const Scenario> scenarios, SubmissionMode mode, std::string submitter,
  std::string method);

struct GenRequest
{
  /// Empty means cycle through all template kinds.
  std::optional<synth::TemplateKind> kind;
  std::size_t count{10};
  std::uint64_t seed{0};
  std::optional<double> speed;
  std::filesystem::path out_path;
  SubmissionMode submission_mode{SubmissionMode::kNone};
  std::filesystem::path submission_path;
};

int cmd_gen(const GenRequest & request, std::ostream & out, std::ostream & err);

}  // namespace raterscore

#endif  // RATERSCORE__COMMANDS_HPP_
