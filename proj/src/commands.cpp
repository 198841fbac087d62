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

#include "raterscore/commands.hpp"

#include "raterscore/errors.hpp"
#include "raterscore/leaderboard.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <ostream>
#include <utility>

namespace raterscore
{

namespace
{

std::string fixed4(double v) { return fmt::format("{:.4f}", v); }
std::string fixed4(const std::optional<double> & v) { return v ? fixed4(*v) : std::string("n/a"); }

void print_issues(std::span<const ValidationIssue> issues, std::ostream & out)
{
  std::size_t errors = 0;
  for (const auto & issue : issues) {
    out << format_issue(issue) << '\n';
    errors += issue.severity == Severity::kError ? 1 : 0;
  }
  out << fmt::format("{} error(s), {} warning(s)\n", errors, issues.size() - errors);
}

bool header_rejected(std::span<const ValidationIssue> issues)
{
  return std::any_of(issues.begin(), issues.end(), [](const ValidationIssue & i) {
    return i.severity == Severity::kError && i.field_path == "header";
  });
}

}  // namespace

ScoringOutcome score_submission_text(
  std::span<const Scenario> scenarios, std::string_view submission_text,
  const EvaluationOptions & options)
{
  ScoringOutcome outcome;
  SubmissionParseResult parsed = parse_submission_text(submission_text, scenarios);
  outcome.issues = std::move(parsed.issues);

  if (!options.lenient_missing && has_errors(outcome.issues)) {
    outcome.error = "submission failed validation";
    return outcome;
  }
  if (header_rejected(outcome.issues)) {
    outcome.error = "submission header is missing or invalid";
    return outcome;
  }
  outcome.report = evaluate_submission(scenarios, parsed.submission, options);
  return outcome;
}

int cmd_validate(const RunConfig & config, std::ostream & out, std::ostream & err)
{
  try {
    ParseOptions options;
    options.branch_angle_deg = config.branch_angle_deg;
    ScenarioParseResult scenarios = parse_scenarios(config.scenarios_path, options);
    std::vector<ValidationIssue> issues = std::move(scenarios.issues);
    if (!config.submission_path.empty()) {
      SubmissionParseResult submission = parse_submission(config.submission_path, scenarios.scenarios);
      issues.insert(issues.end(), submission.issues.begin(), submission.issues.end());
      sort_issues(issues);
    }
    print_issues(issues, out);
    return has_errors(issues) ? kExitValidation : kExitOk;
  } catch (const IoError & e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_evaluate(const RunConfig & config, std::ostream & out, std::ostream & err)
{
  try {
    ParseOptions parse_options;
    parse_options.branch_angle_deg = config.branch_angle_deg;
    ScenarioParseResult scenarios = parse_scenarios(config.scenarios_path, parse_options);
    if (has_errors(scenarios.issues)) {
      print_issues(scenarios.issues, err);
      err << "error: scenario file failed validation\n";
      return kExitValidation;
    }
    if (scenarios.scenarios.empty()) {
      err << "error: scenario file contains no scenarios\n";
      return kExitValidation;
    }

    EvaluationOptions options;
    options.lenient_missing = config.lenient_missing;
    options.parallelism = config.parallelism;
    ScoringOutcome outcome =
      score_submission_text(scenarios.scenarios, read_file(config.submission_path), options);
    if (!outcome.issues.empty()) {
      print_issues(outcome.issues, err);
    }
    if (!outcome.report) {
      err << "error: " << outcome.error << '\n';
      return kExitValidation;
    }
    write_report(*outcome.report, config.report_path);
    out << render_text(*outcome.report);
    return kExitOk;
  } catch (const IoError & e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError & e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

std::optional<ReportFormat> parse_report_format(std::string_view text)
{
  if (text == "text") {
    return ReportFormat::kText;
  }
  if (text == "csv") {
    return ReportFormat::kCsv;
  }
  if (text == "plotdata") {
    return ReportFormat::kPlotdata;
  }
  return std::nullopt;
}

std::string render_text(const ScoreReport & report)
{
  const Aggregates & a = report.aggregates;
  std::string out;
  auto it = std::back_inserter(out);
  fmt::format_to(it, "submitter: {}\n", report.metadata.submitter);
  fmt::format_to(it, "method: {}\n", report.metadata.method);
  fmt::format_to(it, "scenarios: {}\n", a.count);
  fmt::format_to(it, "mean_rfs: {}\n", fixed4(a.mean_rfs));
  fmt::format_to(it, "mean_ade: {}\n", fixed4(a.mean_ade));
  fmt::format_to(it, "floored (rfs=4.0): {}\n", a.floored_count);
  fmt::format_to(it, "missing: {}\n", a.missing_count);
  out += "per category:\n";
  for (const auto & [category, c] : a.per_category) {
    fmt::format_to(
      it, "  {:<22} n={:<5} rfs={} ade={}\n", to_string(category), c.count, fixed4(c.mean_rfs),
      fixed4(c.mean_ade));
  }
  return out;
}

std::string render_csv(const ScoreReport & report)
{
  std::string out = "category,count,mean_rfs,mean_ade\n";
  for (const auto & [category, c] : report.aggregates.per_category) {
    out += fmt::format(
      "{},{},{},{}\n", to_string(category), c.count, fixed4(c.mean_rfs),
      c.mean_ade ? fixed4(*c.mean_ade) : "");
  }
  return out;
}

int cmd_report(const ReportRequest & request, std::ostream & out, std::ostream & err)
{
  try {
    if (request.format == ReportFormat::kPlotdata) {
      out << "label,mean_ade,mean_rfs\n";
      if (request.store_dir) {
        const Leaderboard board(*request.store_dir);
        for (const auto & e : *board.snapshot()) {
          out << fmt::format(
            "{}/{},{},{}\n", e.submitter, e.method, e.mean_ade ? fixed4(*e.mean_ade) : "",
            fixed4(e.mean_rfs));
        }
      }
      for (const auto & path : request.report_paths) {
        const ScoreReport r = parse_report(path);
        out << fmt::format(
          "{}/{},{},{}\n", r.metadata.submitter, r.metadata.method,
          r.aggregates.mean_ade ? fixed4(*r.aggregates.mean_ade) : "",
          fixed4(r.aggregates.mean_rfs));
      }
      return kExitOk;
    }

    if (request.report_paths.empty()) {
      err << "error: --report is required for text and csv output\n";
      return kExitUsage;
    }
    for (const auto & path : request.report_paths) {
      const ScoreReport r = parse_report(path);
      out << (request.format == ReportFormat::kText ? render_text(r) : render_csv(r));
    }
    return kExitOk;
  } catch (const IoError & e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const StructuralError & e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

std::optional<SubmissionMode> parse_submission_mode(std::string_view text)
{
  if (text == "none") {
    return SubmissionMode::kNone;
  }
  if (text == "rank1") {
    return SubmissionMode::kRank1;
  }
  if (text == "log") {
    return SubmissionMode::kLog;
  }
  if (text == "zeros") {
    return SubmissionMode::kZeros;
  }
  return std::nullopt;
}

Submission make_reference_submission(
  std::span<const Scenario> scenarios, SubmissionMode mode, std::string submitter,
  std::string method)
{
  Submission submission;
  submission.metadata.submitter = std::move(submitter);
  submission.metadata.method = std::move(method);
  for (const auto & s : scenarios) {
    switch (mode) {
      case SubmissionMode::kNone:
        break;
      case SubmissionMode::kRank1:
        submission.entries.emplace(s.id(), s.rater_with_rank(1).trajectory());
        break;
      case SubmissionMode::kLog:
        submission.entries.emplace(
          s.id(), s.log_future() ? *s.log_future() : s.rater_with_rank(1).trajectory());
        break;
      case SubmissionMode::kZeros:
        submission.entries.emplace(
          s.id(), Trajectory::future(std::vector<Waypoint>(kFutureWaypoints)));
        break;
    }
  }
  return submission;
}

int cmd_gen(const GenRequest & request, std::ostream & out, std::ostream & err)
{
  try {
    const std::vector<Scenario> scenarios =
      synth::generate_scenarios(request.kind, request.count, request.seed, request.speed);
    write_scenarios(request.out_path, scenarios);
    out << fmt::format("wrote {} scenarios to {}\n", scenarios.size(), request.out_path.string());
    if (request.submission_mode != SubmissionMode::kNone) {
      const Submission submission =
        make_reference_submission(scenarios, request.submission_mode, "synthetic", "reference");
      write_file(request.submission_path, serialize_submission(submission));
      out << fmt::format("wrote submission to {}\n", request.submission_path.string());
    }
    return kExitOk;
  } catch (const IoError & e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError & e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace raterscore
