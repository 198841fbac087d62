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
#include "raterscore/ingestion.hpp"
#include "raterscore/service.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <string>

namespace
{

raterscore::ScoringService * g_service = nullptr;

void handle_signal(int) {
  if (g_service != nullptr) {
    g_service->stop();
  }
}

int run_serve(
  const std::string & scenarios_path, const std::string & listen, const std::string & store,
  const raterscore::EvaluationOptions & evaluation, std::size_t max_body_bytes)
{
  using namespace raterscore;
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) {
    std::cerr << "error: --listen expects host:port\n";
    return kExitUsage;
  }
  const std::string host = listen.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(listen.substr(colon + 1));
  } catch (const std::exception &) {
    std::cerr << "error: invalid port in --listen\n";
    return kExitUsage;
  }

  try {
    ScenarioParseResult parsed = parse_scenarios(scenarios_path);
    if (has_errors(parsed.issues)) {
      for (const auto & issue : parsed.issues) {
        std::cerr << format_issue(issue) << '\n';
      }
      std::cerr << "error: scenario file failed validation\n";
      return kExitValidation;
    }
    ServiceConfig config;
    config.store_dir = store;
    config.evaluation = evaluation;
    config.max_body_bytes = max_body_bytes;
    ScoringService service(std::move(parsed.scenarios), config);
    const int bound = service.bind(host, port);
    if (bound < 0) {
      std::cerr << "error: cannot listen on " << listen << '\n';
      return kExitUsage;
    }
    g_service = &service;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    std::cout << "listening on " << host << ':' << bound << std::endl;
    service.run();
    g_service = nullptr;
    return kExitOk;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char ** argv)
{
  using namespace raterscore;

  CLI::App app{"Rater feedback score evaluation toolkit"};
  app.require_subcommand(1);

  RunConfig config;

  auto * validate = app.add_subcommand("validate", "Validate a scenario (and optional submission) file");
  validate->add_option("--scenarios", config.scenarios_path, "Scenario JSONL file")->required();
  validate->add_option("--submission", config.submission_path, "Submission JSONL file");
  validate->add_option("--branch-angle-deg", config.branch_angle_deg, "Routing branch angle")
    ->check(CLI::Range(0.0, 180.0));

  auto * evaluate = app.add_subcommand("evaluate", "Score a submission and write a report");
  evaluate->add_option("--scenarios", config.scenarios_path, "Scenario JSONL file")->required();
  evaluate->add_option("--submission", config.submission_path, "Submission JSONL file")->required();
  evaluate->add_option("--report", config.report_path, "Output report path")->required();
  evaluate->add_flag("--lenient", config.lenient_missing, "Floor missing predictions at 4.0");
  evaluate->add_option("--parallelism", config.parallelism, "Worker threads")
    ->check(CLI::PositiveNumber);
  evaluate->add_option("--branch-angle-deg", config.branch_angle_deg, "Routing branch angle")
    ->check(CLI::Range(0.0, 180.0));

  ReportRequest report_request;
  std::vector<std::string> report_paths;
  std::string store_for_report;
  std::string format = "text";
  auto * report = app.add_subcommand("report", "Render a stored report");
  report->add_option("--report", report_paths, "Report file (repeatable)");
  report->add_option("--store", store_for_report, "Leaderboard store (plotdata)");
  report->add_option("--format", format, "text | csv | plotdata");

  GenRequest gen_request;
  std::string template_name = "mixed";
  std::string gen_out;
  std::string submission_mode = "none";
  std::string submission_out;
  double speed = -1.0;
  auto * gen = app.add_subcommand("gen", "Generate synthetic scenario fixtures");
  gen->add_option("--template", template_name, "Template kind or 'mixed'");
  gen->add_option("--count", gen_request.count, "Number of scenarios");
  gen->add_option("--seed", gen_request.seed, "First seed");
  gen->add_option("--speed", speed, "Fixed speed in m/s (default: drawn per seed)");
  gen->add_option("--out", gen_out, "Output scenario file")->required();
  gen->add_option("--submission-mode", submission_mode, "none | rank1 | log | zeros");
  gen->add_option("--submission-out", submission_out, "Output submission file");

  std::string listen = "127.0.0.1:8080";
  std::string store;
  std::size_t max_body_bytes = 64u * 1024u * 1024u;
  bool serve_lenient = false;
  int serve_parallelism = available_cores();
  auto * serve = app.add_subcommand("serve", "Run the leaderboard scoring service");
  serve->add_option("--scenarios", config.scenarios_path, "Scenario JSONL file")->required();
  serve->add_option("--listen", listen, "host:port");
  serve->add_option("--store", store, "Leaderboard store directory")->required();
  serve->add_option("--max-body-bytes", max_body_bytes, "Request body limit");
  serve->add_flag("--lenient", serve_lenient, "Floor missing predictions at 4.0");
  serve->add_option("--parallelism", serve_parallelism, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*validate) {
    return cmd_validate(config, std::cout, std::cerr);
  }
  if (*evaluate) {
    return cmd_evaluate(config, std::cout, std::cerr);
  }
  if (*report) {
    const auto parsed = parse_report_format(format);
    if (!parsed) {
      std::cerr << "error: unknown format '" << format << "'\n";
      return kExitUsage;
    }
    report_request.format = *parsed;
    report_request.report_paths.assign(report_paths.begin(), report_paths.end());
    if (!store_for_report.empty()) {
      report_request.store_dir = store_for_report;
    }
    return cmd_report(report_request, std::cout, std::cerr);
  }
  if (*gen) {
    if (template_name != "mixed") {
      gen_request.kind = synth::parse_template_kind(template_name);
      if (!gen_request.kind) {
        std::cerr << "error: unknown template '" << template_name << "'\n";
        return kExitUsage;
      }
    }
    if (speed >= 0.0) {
      gen_request.speed = speed;
    }
    const auto mode = parse_submission_mode(submission_mode);
    if (!mode) {
      std::cerr << "error: unknown submission mode '" << submission_mode << "'\n";
      return kExitUsage;
    }
    gen_request.submission_mode = *mode;
    if (*mode != SubmissionMode::kNone && submission_out.empty()) {
      std::cerr << "error: --submission-out is required with --submission-mode\n";
      return kExitUsage;
    }
    gen_request.out_path = gen_out;
    gen_request.submission_path = submission_out;
    return cmd_gen(gen_request, std::cout, std::cerr);
  }
  if (*serve) {
    EvaluationOptions evaluation;
    evaluation.lenient_missing = serve_lenient;
    evaluation.parallelism = serve_parallelism;
    return run_serve(config.scenarios_path.string(), listen, store, evaluation, max_body_bytes);
  }
  return kExitUsage;
}
