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

#ifndef RATERSCORE__INGESTION_HPP_
#define RATERSCORE__INGESTION_HPP_

#include "raterscore/metrics.hpp"
#include "raterscore/routing.hpp"
#include "raterscore/scenario.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace raterscore
{

enum class Severity { kError, kWarning };

std::string_view to_string(Severity severity);

/// A single validation finding. Records with an error-severity issue are
/// never handed to evaluation.
struct ValidationIssue
{
  std::string scenario_id;
  std::string field_path;
  Severity severity{Severity::kError};
  std::string message;

  friend bool operator==(const ValidationIssue &, const ValidationIssue &) = default;
};

/// Stable sort by (scenario_id, field_path).
void sort_issues(std::vector<ValidationIssue> & issues);
bool has_errors(std::span<const ValidationIssue> issues);
std::string format_issue(const ValidationIssue & issue);

struct ParseOptions
{
  /// Used to cross-check `routing` against `future_route_10s` (warning only).
  double branch_angle_deg{kDefaultBranchAngleDeg};
};

struct ScenarioParseResult
{
  std::vector<Scenario> scenarios;
  std::vector<ValidationIssue> issues;
};

struct SubmissionParseResult
{
  Submission submission;
  std::vector<ValidationIssue> issues;
};

/// Reads one scenario record per line. Malformed or invalid records become
/// issues and are skipped; only fully valid scenarios are returned, in file
/// order. Throws IoError if the file cannot be read.
ScenarioParseResult parse_scenarios(
  const std::filesystem::path & path, const ParseOptions & options = {});
ScenarioParseResult parse_scenarios_text(std::string_view text, const ParseOptions & options = {});

/// Reads a header record {submitter, method[, submitted_at]} plus one
/// {scenario_id, waypoints} record per prediction. Missing or duplicate ids
/// and bad trajectories are errors; ids not in `scenarios` are warnings.
SubmissionParseResult parse_submission(
  const std::filesystem::path & path, std::span<const Scenario> scenarios);
SubmissionParseResult parse_submission_text(
  std::string_view text, std::span<const Scenario> scenarios);

/// Canonical single-line encoding (no trailing newline).
std::string serialize_scenario(const Scenario & scenario);
void write_scenarios(const std::filesystem::path & path, std::span<const Scenario> scenarios);

std::string serialize_submission(const Submission & submission);

/// One aggregate record, then per-scenario records in id order. Every real
/// number is printed with exactly four decimals. Throws DomainError when the
/// report has no scenarios.
std::string serialize_report(const ScoreReport & report);
void write_report(const ScoreReport & report, const std::filesystem::path & path);

/// Throws StructuralError on malformed input, IoError on unreadable files.
ScoreReport parse_report_text(std::string_view text);
ScoreReport parse_report(const std::filesystem::path & path);

std::string read_file(const std::filesystem::path & path);
void write_file(const std::filesystem::path & path, std::string_view contents);

}  // namespace raterscore

#endif  // RATERSCORE__INGESTION_HPP_
