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

#include "raterscore/service.hpp"

#include "raterscore/commands.hpp"
#include "raterscore/ingestion.hpp"

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include <utility>

namespace raterscore
{

namespace
{

using json = nlohmann::json;

constexpr const char * kJson = "application/json";
constexpr const char * kNdjson = "application/x-ndjson";

json issues_json(std::span<const ValidationIssue> issues)
{
  json out = json::array();
  for (const auto & i : issues) {
    out.push_back(
      {{"scenario_id", i.scenario_id},
       {"field_path", i.field_path},
       {"severity", std::string(to_string(i.severity))},
       {"message", i.message}});
  }
  return out;
}

void send(httplib::Response & res, const HttpReply & reply)
{
  res.status = reply.status;
  res.set_content(reply.body, reply.content_type);
}

}  // namespace

ScoringService::ScoringService(std::vector<Scenario> scenarios, ServiceConfig config)
: scenarios_(std::move(scenarios)),
  config_(std::move(config)),
  leaderboard_(config_.store_dir),
  server_(std::make_unique<httplib::Server>())
{
  server_->set_payload_max_length(config_.max_body_bytes);

  server_->Post("/submissions", [this](const httplib::Request & req, httplib::Response & res) {
    send(res, post_submission(req.body));
  });
  server_->Get(R"(/reports/([A-Za-z0-9_-]+))", [this](const httplib::Request & req, httplib::Response & res) {
    send(res, get_report(req.matches[1]));
  });
  server_->Get("/leaderboard", [this](const httplib::Request &, httplib::Response & res) {
    send(res, get_leaderboard());
  });
}

ScoringService::~ScoringService() { stop(); }

HttpReply ScoringService::post_submission(const std::string & body)
{
  if (body.size() > config_.max_body_bytes) {
    return {413, kJson, json{{"error", "submission exceeds size limit"}}.dump()};
  }
  ScoringOutcome outcome;
  try {
    outcome = score_submission_text(scenarios_, body, config_.evaluation);
  } catch (const std::exception & e) {
    return {400, kJson, json{{"error", e.what()}, {"issues", json::array()}}.dump()};
  }
  if (!outcome.report) {
    return {400, kJson, json{{"error", outcome.error}, {"issues", issues_json(outcome.issues)}}.dump()};
  }

  ScoreReport & report = *outcome.report;
  report.metadata.submitted_at = utc_timestamp_now();
  const std::string text = serialize_report(report);
  const LeaderboardEntry entry = leaderboard_.record(report, text);

  json reply{
    {"report_id", entry.report_id},
    {"submitter", entry.submitter},
    {"method", entry.method},
    {"mean_rfs", entry.mean_rfs},
    {"mean_ade", entry.mean_ade ? json(*entry.mean_ade) : json(nullptr)},
    {"scenario_count", entry.scenario_count},
    {"issues", issues_json(outcome.issues)}};
  return {201, kJson, reply.dump()};
}

HttpReply ScoringService::get_report(const std::string & report_id) const
{
  if (auto text = leaderboard_.report_text(report_id)) {
    return {200, kNdjson, std::move(*text)};
  }
  return {404, kJson, json{{"error", "unknown report id"}}.dump()};
}

HttpReply ScoringService::get_leaderboard() const
{
  return {200, kJson, leaderboard_to_json(*leaderboard_.snapshot())};
}

int ScoringService::bind(const std::string & host, int port)
{
  if (port == 0) {
    return server_->bind_to_any_port(host);
  }
  return server_->bind_to_port(host, port) ? port : -1;
}

bool ScoringService::run() { return server_->listen_after_bind(); }

void ScoringService::stop()
{
  if (server_ && server_->is_running()) {
    server_->stop();
  }
}

void ScoringService::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace raterscore
