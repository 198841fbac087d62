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

#ifndef RATERSCORE__LEADERBOARD_HPP_
#define RATERSCORE__LEADERBOARD_HPP_

#include "raterscore/metrics.hpp"

#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace raterscore
{

struct LeaderboardEntry
{
  std::string submitter;
  std::string method;
  double mean_rfs{0.0};
  std::optional<double> mean_ade;
  std::size_t scenario_count{0};
  std::string submitted_at;
  std::string report_id;

  friend bool operator==(const LeaderboardEntry &, const LeaderboardEntry &) = default;
};

/// Total order: mean_rfs descending, mean_ade ascending (absent last),
/// submitted_at ascending, then submitter and method.
bool ranks_before(const LeaderboardEntry & a, const LeaderboardEntry & b);

/// Leaderboard persisted as an append-only event log under a store
/// directory:
///
///   <store>/leaderboard.jsonl     one event per accepted submission
///   <store>/reports/<id>.jsonl    the scored report of each event
///
/// Opening a store replays the log, so a restarted service sees the same
/// board. A resubmission with the same (submitter, method) replaces the
/// earlier entry. Writes are serialized; readers get immutable snapshots.
class Leaderboard
{
public:
  using Snapshot = std::shared_ptr<const std::vector<LeaderboardEntry>>;

  /// Creates the store if needed. Throws IoError / StructuralError when the
  /// existing log cannot be read or replayed.
  explicit Leaderboard(std::filesystem::path store_dir);

  /// Persists the report and its event, then updates the board.
  LeaderboardEntry record(const ScoreReport & report, const std::string & report_text);

  Snapshot snapshot() const;
  std::optional<std::string> report_text(const std::string & report_id) const;
  const std::filesystem::path & store_dir() const { return store_dir_; }

private:
  void apply(LeaderboardEntry entry);
  void publish();

  std::filesystem::path store_dir_;
  std::filesystem::path log_path_;
  std::filesystem::path reports_dir_;
  std::size_t event_count_{0};
  std::vector<LeaderboardEntry> entries_;

  mutable std::mutex write_mutex_;
  mutable std::mutex snapshot_mutex_;
  Snapshot snapshot_;
};

std::string leaderboard_to_json(const std::vector<LeaderboardEntry> & entries);
std::string utc_timestamp_now();

}  // namespace raterscore

#endif  // RATERSCORE__LEADERBOARD_HPP_
