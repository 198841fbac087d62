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

#include "raterscore/leaderboard.hpp"

#include "raterscore/errors.hpp"
#include "raterscore/ingestion.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <tuple>
#include <utility>

namespace raterscore
{

namespace
{

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string fixed4(double v) { return fmt::format("{:.4f}", v); }

std::string event_line(const LeaderboardEntry & e)
{
  return fmt::format(
    "{{\"report_id\":{},\"submitter\":{},\"method\":{},\"mean_rfs\":{},\"mean_ade\":{},"
    "\"scenario_count\":{},\"submitted_at\":{}}}",
    json(e.report_id).dump(), json(e.submitter).dump(), json(e.method).dump(), fixed4(e.mean_rfs),
    e.mean_ade ? fixed4(*e.mean_ade) : "null", e.scenario_count, json(e.submitted_at).dump());
}

LeaderboardEntry parse_event(const std::string & line)
{
  try {
    const json j = json::parse(line);
    LeaderboardEntry e;
    e.report_id = j.at("report_id").get<std::string>();
    e.submitter = j.at("submitter").get<std::string>();
    e.method = j.at("method").get<std::string>();
    e.mean_rfs = j.at("mean_rfs").get<double>();
    if (!j.at("mean_ade").is_null()) {
      e.mean_ade = j.at("mean_ade").get<double>();
    }
    e.scenario_count = j.at("scenario_count").get<std::size_t>();
    e.submitted_at = j.at("submitted_at").get<std::string>();
    return e;
  } catch (const json::exception & err) {
    throw StructuralError(std::string("corrupt leaderboard event: ") + err.what());
  }
}

}  // namespace

bool ranks_before(const LeaderboardEntry & a, const LeaderboardEntry & b)
{
  if (a.mean_rfs != b.mean_rfs) {
    return a.mean_rfs > b.mean_rfs;
  }
  if (a.mean_ade.has_value() != b.mean_ade.has_value()) {
    return a.mean_ade.has_value();
  }
  if (a.mean_ade && *a.mean_ade != *b.mean_ade) {
    return *a.mean_ade < *b.mean_ade;
  }
  return std::tie(a.submitted_at, a.submitter, a.method) <
         std::tie(b.submitted_at, b.submitter, b.method);
}

Leaderboard::Leaderboard(std::filesystem::path store_dir)
: store_dir_(std::move(store_dir)),
  log_path_(store_dir_ / "leaderboard.jsonl"),
  reports_dir_(store_dir_ / "reports")
{
  std::error_code ec;
  std::filesystem::create_directories(reports_dir_, ec);
  if (ec) {
    throw IoError("cannot create store " + store_dir_.string() + ": " + ec.message());
  }
  if (std::filesystem::exists(log_path_)) {
    std::ifstream in(log_path_);
    if (!in) {
      throw IoError("cannot read " + log_path_.string());
    }
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) {
        continue;
      }
      apply(parse_event(line));
      ++event_count_;
    }
  }
  publish();
}

LeaderboardEntry Leaderboard::record(const ScoreReport & report, const std::string & report_text)
{
  const std::lock_guard lock(write_mutex_);

  LeaderboardEntry draft;
  draft.report_id = fmt::format("r{:06d}", event_count_ + 1);
  draft.submitter = report.metadata.submitter;
  draft.method = report.metadata.method;
  draft.mean_rfs = report.aggregates.mean_rfs;
  draft.mean_ade = report.aggregates.mean_ade;
  draft.scenario_count = report.aggregates.count;
  draft.submitted_at = report.metadata.submitted_at.empty() ? utc_timestamp_now()
                                                            : report.metadata.submitted_at;

  write_file(reports_dir_ / (draft.report_id + ".jsonl"), report_text);

  // Live and replayed entries go through the same encode/decode step.
  const std::string line = event_line(draft);
  {
    std::ofstream out(log_path_, std::ios::app | std::ios::binary);
    out << line << '\n';
    out.flush();
    if (!out) {
      throw IoError("cannot append to " + log_path_.string());
    }
  }
  LeaderboardEntry entry = parse_event(line);
  ++event_count_;
  apply(entry);
  publish();
  return entry;
}

void Leaderboard::apply(LeaderboardEntry entry)
{
  const auto same = std::find_if(entries_.begin(), entries_.end(), [&](const LeaderboardEntry & e) {
    return e.submitter == entry.submitter && e.method == entry.method;
  });
  if (same != entries_.end()) {
    *same = std::move(entry);
  } else {
    entries_.push_back(std::move(entry));
  }
}

void Leaderboard::publish()
{
  auto sorted = std::make_shared<std::vector<LeaderboardEntry>>(entries_);
  std::sort(sorted->begin(), sorted->end(), ranks_before);
  const std::lock_guard lock(snapshot_mutex_);
  snapshot_ = std::move(sorted);
}

Leaderboard::Snapshot Leaderboard::snapshot() const
{
  const std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

std::optional<std::string> Leaderboard::report_text(const std::string & report_id) const
{
  // Ids are generated as r + digits; anything else cannot name a stored file.
  if (report_id.size() < 2 || report_id[0] != 'r' ||
      !std::all_of(report_id.begin() + 1, report_id.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  const auto path = reports_dir_ / (report_id + ".jsonl");
  if (!std::filesystem::exists(path)) {
    return std::nullopt;
  }
  return read_file(path);
}

std::string leaderboard_to_json(const std::vector<LeaderboardEntry> & entries)
{
  std::string out = "[";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out += i == 0 ? "" : ",";
    out += event_line(entries[i]);
  }
  out += "]";
  return out;
}

std::string utc_timestamp_now()
{
  const auto now = std::chrono::system_clock::now();
  const auto ms =
    std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t seconds = std::chrono::system_clock::to_time_t(now);
  std::tm utc{};
  gmtime_r(&seconds, &utc);
  return fmt::format(
    "{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}.{:03d}Z", utc.tm_year + 1900, utc.tm_mon + 1,
    utc.tm_mday, utc.tm_hour, utc.tm_min, utc.tm_sec, static_cast<int>(ms));
}

}  // namespace raterscore
