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

#ifndef RATERSCORE__SERVICE_HPP_
#define RATERSCORE__SERVICE_HPP_

#include "raterscore/evaluator.hpp"
#include "raterscore/leaderboard.hpp"
#include "raterscore/scenario.hpp"

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace httplib
{
class Server;
}

namespace raterscore
{

struct ServiceConfig
{
  std::filesystem::path store_dir;
  EvaluationOptions evaluation;
  std::size_t max_body_bytes{64u * 1024u * 1024u};
};

struct HttpReply
{
  int status{200};
  std::string content_type;
  std::string body;
};

/// Leaderboard scoring service.
///
///   POST /submissions      body: submission file; 201 with the report id,
///                          400 with validation issues, 413 if oversized
///   GET  /reports/{id}     stored report file
///   GET  /leaderboard      sorted entries as a JSON array
///
/// The scenario set is loaded once and shared read-only across requests.
class ScoringService
{
public:
  ScoringService(std::vector<Scenario> scenarios, ServiceConfig config);
  ~ScoringService();

  ScoringService(const ScoringService &) = delete;
  ScoringService & operator=(const ScoringService &) = delete;

  // Request handlers, usable without a socket.
  HttpReply post_submission(const std::string & body);
  HttpReply get_report(const std::string & report_id) const;
  HttpReply get_leaderboard() const;

  /// Binds to `host:port`; port 0 picks a free port. Returns the bound port
  /// or -1 on failure.
  int bind(const std::string & host, int port);
  /// Blocks serving requests until stop() is called.
  bool run();
  void stop();
  void wait_until_ready() const;

  const Leaderboard & leaderboard() const { return leaderboard_; }

private:
  std::vector<Scenario> scenarios_;
  ServiceConfig config_;
  Leaderboard leaderboard_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace raterscore

#endif  // RATERSCORE__SERVICE_HPP_
