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

#include "raterscore/ingestion.hpp"

#include "raterscore/errors.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

namespace raterscore
{

namespace
{

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Writers such as Python's json module emit bare NaN / Infinity tokens, which
// are not JSON. Quote them so the record parses and the value is reported as
// non-finite instead of the whole line being rejected.
std::string quote_non_finite_tokens(std::string_view line)
{
  static constexpr std::string_view kTokens[] = {"-Infinity", "Infinity", "NaN"};
  std::string out;
  out.reserve(line.size() + 8);
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string) {
      out.push_back(c);
      if (c == '\\' && i + 1 < line.size()) {
        out.push_back(line[++i]);
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      out.push_back(c);
      continue;
    }
    bool replaced = false;
    for (const auto token : kTokens) {
      if (line.substr(i, token.size()) == token) {
        out.append("\"").append(token).append("\"");
        i += token.size() - 1;
        replaced = true;
        break;
      }
    }
    if (!replaced) {
      out.push_back(c);
    }
  }
  return out;
}

std::string line_label(std::size_t line_number) { return fmt::format("@line:{:06d}", line_number); }

template <typename Fn>
void for_each_line(std::string_view text, Fn && fn)
{
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    ++line_number;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (line.find_first_not_of(" \t") != std::string_view::npos) {
      fn(line_number, line);
    }
    if (end == text.size()) {
      break;
    }
    start = end + 1;
  }
}

class IssueSink
{
public:
  IssueSink(std::string scenario_id, std::vector<ValidationIssue> & out)
  : scenario_id_(std::move(scenario_id)), out_(out)
  {
  }

  void error(std::string path, std::string message)
  {
    had_error_ = true;
    out_.push_back({scenario_id_, std::move(path), Severity::kError, std::move(message)});
  }

  void warning(std::string path, std::string message)
  {
    out_.push_back({scenario_id_, std::move(path), Severity::kWarning, std::move(message)});
  }

  bool had_error() const { return had_error_; }

private:
  std::string scenario_id_;
  std::vector<ValidationIssue> & out_;
  bool had_error_{false};
};

// Numbers, or the quoted non-finite spellings / null. Anything else is not a
// real value at all.
std::optional<double> read_real(const json & value)
{
  if (value.is_number()) {
    return value.get<double>();
  }
  if (value.is_null()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (value.is_string()) {
    const auto & s = value.get_ref<const std::string &>();
    if (s == "NaN") {
      return std::numeric_limits<double>::quiet_NaN();
    }
    if (s == "Infinity") {
      return std::numeric_limits<double>::infinity();
    }
    if (s == "-Infinity") {
      return -std::numeric_limits<double>::infinity();
    }
  }
  return std::nullopt;
}

std::optional<double> read_finite(const json & value)
{
  const auto v = read_real(value);
  if (!v || !std::isfinite(*v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<std::vector<Waypoint>> read_points(
  const json & value, const std::string & path, std::size_t expected, IssueSink & sink)
{
  if (!value.is_array()) {
    sink.error(path, "expected an array of [x, y] waypoints");
    return std::nullopt;
  }
  bool ok = true;
  std::vector<Waypoint> points;
  points.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    const json & p = value[i];
    const std::string item_path = fmt::format("{}[{}]", path, i);
    if (!p.is_array() || p.size() != 2) {
      sink.error(item_path, "expected an [x, y] pair");
      ok = false;
      continue;
    }
    const auto x = read_real(p[0]);
    const auto y = read_real(p[1]);
    if (!x || !y) {
      sink.error(item_path, "waypoint coordinates must be numbers");
      ok = false;
      continue;
    }
    if (!std::isfinite(*x) || !std::isfinite(*y)) {
      sink.error(item_path, "non-finite waypoint");
      ok = false;
      continue;
    }
    points.push_back({*x, *y});
  }
  if (value.size() != expected) {
    sink.error(path, fmt::format("expected {} waypoints, got {}", expected, value.size()));
    ok = false;
  }
  if (!ok) {
    return std::nullopt;
  }
  return points;
}

std::optional<std::vector<double>> read_series(
  const json & value, const std::string & path, std::size_t expected, IssueSink & sink)
{
  if (!value.is_array()) {
    sink.error(path, "expected an array of numbers");
    return std::nullopt;
  }
  bool ok = true;
  std::vector<double> series;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const auto v = read_real(value[i]);
    if (!v) {
      sink.error(fmt::format("{}[{}]", path, i), "expected a number");
      ok = false;
    } else if (!std::isfinite(*v)) {
      sink.error(fmt::format("{}[{}]", path, i), "non-finite value");
      ok = false;
    } else {
      series.push_back(*v);
    }
  }
  if (value.size() != expected) {
    sink.error(path, fmt::format("expected {} values, got {}", expected, value.size()));
    ok = false;
  }
  if (!ok) {
    return std::nullopt;
  }
  return series;
}

const json * find_field(const json & object, std::string_view key)
{
  const auto it = object.find(key);
  return it == object.end() ? nullptr : &*it;
}

bool present(const json * field) { return field != nullptr && !field->is_null(); }

std::optional<CameraCalibration> read_camera(
  const json & value, const std::string & path, IssueSink & sink)
{
  if (!value.is_object()) {
    sink.error(path, "expected a camera object");
    return std::nullopt;
  }
  bool ok = true;

  std::optional<CameraName> name;
  if (const json * f = find_field(value, "name"); f && f->is_string()) {
    name = parse_camera_name(f->get_ref<const std::string &>());
  }
  if (!name) {
    sink.error(path + ".name", "unknown camera name");
    ok = false;
  }

  CameraIntrinsics intrinsics;
  const json * k = find_field(value, "intrinsics");
  if (k == nullptr || !k->is_object()) {
    sink.error(path + ".intrinsics", "expected an object");
    ok = false;
  } else {
    const std::pair<const char *, double *> reals[] = {
      {"f_u", &intrinsics.f_u}, {"f_v", &intrinsics.f_v},
      {"c_u", &intrinsics.c_u}, {"c_v", &intrinsics.c_v}};
    for (const auto & [key, target] : reals) {
      const json * f = find_field(*k, key);
      const auto v = f ? read_finite(*f) : std::nullopt;
      if (!v) {
        sink.error(fmt::format("{}.intrinsics.{}", path, key), "expected a finite number");
        ok = false;
      } else {
        *target = *v;
      }
    }
    const std::pair<const char *, int *> sizes[] = {
      {"width", &intrinsics.width}, {"height", &intrinsics.height}};
    for (const auto & [key, target] : sizes) {
      const json * f = find_field(*k, key);
      if (f == nullptr || !f->is_number_integer()) {
        sink.error(fmt::format("{}.intrinsics.{}", path, key), "expected an integer");
        ok = false;
      } else {
        *target = f->get<int>();
      }
    }
    if (const json * d = find_field(*k, "distortion"); present(d)) {
      if (auto series = read_series(*d, path + ".intrinsics.distortion", d->is_array() ? d->size() : 0, sink)) {
        intrinsics.distortion = std::move(*series);
      } else {
        ok = false;
      }
    }
  }

  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  const json * e = find_field(value, "extrinsics");
  if (e == nullptr || !e->is_object()) {
    sink.error(path + ".extrinsics", "expected an object");
    ok = false;
  } else {
    const json * r = find_field(*e, "rotation");
    bool rotation_ok = r != nullptr && r->is_array() && r->size() == 3;
    for (std::size_t row = 0; rotation_ok && row < 3; ++row) {
      const json & rj = (*r)[row];
      rotation_ok = rj.is_array() && rj.size() == 3;
      for (std::size_t col = 0; rotation_ok && col < 3; ++col) {
        const auto v = read_finite(rj[col]);
        rotation_ok = v.has_value();
        if (v) {
          rotation(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = *v;
        }
      }
    }
    if (!rotation_ok) {
      sink.error(path + ".extrinsics.rotation", "expected a finite 3x3 matrix");
      ok = false;
    }
    const json * t = find_field(*e, "translation");
    bool translation_ok = t != nullptr && t->is_array() && t->size() == 3;
    for (std::size_t i = 0; translation_ok && i < 3; ++i) {
      const auto v = read_finite((*t)[i]);
      translation_ok = v.has_value();
      if (v) {
        translation(static_cast<Eigen::Index>(i)) = *v;
      }
    }
    if (!translation_ok) {
      sink.error(path + ".extrinsics.translation", "expected a finite 3-vector");
      ok = false;
    }
  }

  std::string image;
  if (const json * f = find_field(value, "image"); present(f)) {
    if (f->is_string()) {
      image = f->get<std::string>();
    } else {
      sink.error(path + ".image", "expected a path string");
      ok = false;
    }
  }

  if (!ok) {
    return std::nullopt;
  }
  std::optional<RigidTransform> extrinsics;
  try {
    extrinsics.emplace(rotation, translation);
  } catch (const StructuralError & err) {
    sink.error(path + ".extrinsics.rotation", err.what());
    return std::nullopt;
  }
  try {
    return CameraCalibration(*name, std::move(intrinsics), *extrinsics, image);
  } catch (const StructuralError & err) {
    sink.error(path, err.what());
    return std::nullopt;
  }
}

struct RaterFields
{
  std::optional<std::vector<Waypoint>> waypoints;
  std::optional<double> score;
  std::optional<int> rank;
};

const std::set<std::string, std::less<>> kScenarioKeys{
  "id", "category", "routing", "ego", "raters", "log_future", "future_route_10s", "cameras"};

std::optional<Scenario> read_scenario(
  const json & record, const std::string & id, const ParseOptions & options, IssueSink & sink)
{
  for (const auto & [key, unused] : record.items()) {
    if (!kScenarioKeys.contains(key)) {
      sink.warning(key, "unknown field ignored");
    }
  }

  std::optional<ScenarioCategory> category;
  if (const json * f = find_field(record, "category"); f && f->is_string()) {
    category = parse_scenario_category(f->get_ref<const std::string &>());
  }
  if (!category) {
    sink.error("category", "unknown scenario category");
  }

  std::optional<RoutingCommand> routing;
  if (const json * f = find_field(record, "routing"); f && f->is_string()) {
    routing = parse_routing_command(f->get_ref<const std::string &>());
  }
  if (!routing) {
    sink.error("routing", "routing must be GO_STRAIGHT, GO_LEFT or GO_RIGHT");
  }

  std::optional<std::vector<Waypoint>> past;
  std::optional<std::vector<double>> velocity;
  std::optional<std::vector<double>> acceleration;
  const json * ego = find_field(record, "ego");
  if (ego == nullptr || !ego->is_object()) {
    sink.error("ego", "expected an object");
  } else {
    const json * p = find_field(*ego, "past");
    const json * v = find_field(*ego, "velocity");
    const json * a = find_field(*ego, "acceleration");
    past = read_points(p ? *p : json(), "ego.past", kPastWaypoints, sink);
    velocity = read_series(v ? *v : json(), "ego.velocity", kPastWaypoints, sink);
    acceleration = read_series(a ? *a : json(), "ego.acceleration", kPastWaypoints, sink);
  }

  std::vector<RaterFields> raters;
  const json * rj = find_field(record, "raters");
  if (rj == nullptr || !rj->is_array()) {
    sink.error("raters", "expected an array of rater trajectories");
  } else {
    if (rj->size() != kRatersPerScenario) {
      sink.error("raters", fmt::format("expected 3 rater trajectories, got {}", rj->size()));
    }
    for (std::size_t i = 0; i < rj->size(); ++i) {
      const json & r = (*rj)[i];
      const std::string path = fmt::format("raters[{}]", i);
      RaterFields fields;
      if (!r.is_object()) {
        sink.error(path, "expected an object");
        raters.push_back(std::move(fields));
        continue;
      }
      const json * w = find_field(r, "waypoints");
      fields.waypoints = read_points(w ? *w : json(), path + ".waypoints", kFutureWaypoints, sink);
      const json * s = find_field(r, "score");
      fields.score = s ? read_finite(*s) : std::nullopt;
      if (!fields.score || *fields.score < 0.0 || *fields.score > 10.0) {
        sink.error(path + ".score", "score must be a finite number in [0, 10]");
        fields.score.reset();
      }
      const json * k = find_field(r, "rank");
      if (k && k->is_number_integer() && k->get<long long>() >= 1 && k->get<long long>() <= 3) {
        fields.rank = static_cast<int>(k->get<long long>());
      } else {
        sink.error(path + ".rank", "rank must be 1, 2 or 3");
      }
      raters.push_back(std::move(fields));
    }
  }

  const bool raters_complete =
    raters.size() == kRatersPerScenario &&
    std::all_of(raters.begin(), raters.end(), [](const RaterFields & r) {
      return r.waypoints && r.score && r.rank;
    });
  if (raters_complete) {
    std::map<int, double> score_by_rank;
    for (const auto & r : raters) {
      score_by_rank[*r.rank] = *r.score;
    }
    if (score_by_rank.size() != kRatersPerScenario) {
      sink.error("raters", "rater ranks must be distinct");
    } else if (score_by_rank[1] < score_by_rank[2] || score_by_rank[2] < score_by_rank[3]) {
      sink.error("raters", "rater scores must be non-increasing with rank");
    }
    if (std::none_of(raters.begin(), raters.end(), [](const RaterFields & r) {
          return *r.score > 6.0;
        })) {
      sink.error("raters", "no rater score > 6");
    }
  }

  std::optional<std::vector<Waypoint>> log_future;
  if (const json * f = find_field(record, "log_future"); present(f)) {
    log_future = read_points(*f, "log_future", kFutureWaypoints, sink);
  }

  std::optional<std::vector<Waypoint>> route;
  if (const json * f = find_field(record, "future_route_10s"); present(f)) {
    route = read_points(*f, "future_route_10s", kRouteWaypoints, sink);
    if (route && routing) {
      const RoutingCommand derived = derive_command(RouteWindow(*route), options.branch_angle_deg);
      if (derived != *routing) {
        sink.warning(
          "routing", fmt::format(
                       "routing {} disagrees with {} derived from future_route_10s",
                       to_string(*routing), to_string(derived)));
      }
    }
  }

  std::vector<CameraCalibration> cameras;
  if (const json * f = find_field(record, "cameras"); present(f)) {
    if (!f->is_array()) {
      sink.error("cameras", "expected an array");
    } else {
      std::set<CameraName> seen;
      for (std::size_t i = 0; i < f->size(); ++i) {
        const std::string path = fmt::format("cameras[{}]", i);
        if (auto camera = read_camera((*f)[i], path, sink)) {
          if (!seen.insert(camera->name()).second) {
            sink.error(path + ".name", "duplicate camera name");
          }
          cameras.push_back(std::move(*camera));
        }
      }
    }
  }

  if (sink.had_error()) {
    return std::nullopt;
  }

  try {
    std::vector<RaterTrajectory> rater_values;
    for (auto & r : raters) {
      rater_values.emplace_back(Trajectory::future(std::move(*r.waypoints)), *r.score, *r.rank);
    }
    std::optional<Trajectory> log_value;
    if (log_future) {
      log_value = Trajectory::future(std::move(*log_future));
    }
    return Scenario(
      id, *category, *routing,
      EgoStatus(Trajectory::past(std::move(*past)), std::move(*velocity), std::move(*acceleration)),
      std::move(rater_values), std::move(log_value), std::move(route), std::move(cameras));
  } catch (const std::exception & err) {
    sink.error("", err.what());
    return std::nullopt;
  }
}

ordered_json points_json(std::span<const Waypoint> points)
{
  ordered_json out = ordered_json::array();
  for (const auto & p : points) {
    out.push_back({p.x, p.y});
  }
  return out;
}

std::string fixed4(double value) { return fmt::format("{:.4f}", value); }

std::string fixed4(const std::optional<double> & value)
{
  return value ? fixed4(*value) : std::string("null");
}

std::string json_string(std::string_view s) { return json(std::string(s)).dump(); }

double require_number(const json & record, std::string_view key)
{
  const json * f = find_field(record, key);
  if (f == nullptr || !f->is_number()) {
    throw StructuralError(fmt::format("report: field '{}' must be a number", key));
  }
  return f->get<double>();
}

std::optional<double> optional_number(const json & record, std::string_view key)
{
  const json * f = find_field(record, key);
  if (f == nullptr || f->is_null()) {
    return std::nullopt;
  }
  if (!f->is_number()) {
    throw StructuralError(fmt::format("report: field '{}' must be a number or null", key));
  }
  return f->get<double>();
}

std::string require_string(const json & record, std::string_view key)
{
  const json * f = find_field(record, key);
  if (f == nullptr || !f->is_string()) {
    throw StructuralError(fmt::format("report: field '{}' must be a string", key));
  }
  return f->get<std::string>();
}

std::size_t require_count(const json & record, std::string_view key)
{
  const json * f = find_field(record, key);
  if (f == nullptr || !f->is_number_unsigned()) {
    throw StructuralError(fmt::format("report: field '{}' must be a non-negative integer", key));
  }
  return f->get<std::size_t>();
}

ScenarioCategory require_category(const json & record)
{
  const auto category = parse_scenario_category(require_string(record, "category"));
  if (!category) {
    throw StructuralError("report: unknown category");
  }
  return *category;
}

}  // namespace

std::string_view to_string(Severity severity)
{
  return severity == Severity::kError ? "error" : "warning";
}

void sort_issues(std::vector<ValidationIssue> & issues)
{
  std::stable_sort(issues.begin(), issues.end(), [](const auto & a, const auto & b) {
    return std::tie(a.scenario_id, a.field_path) < std::tie(b.scenario_id, b.field_path);
  });
}

bool has_errors(std::span<const ValidationIssue> issues)
{
  return std::any_of(issues.begin(), issues.end(), [](const ValidationIssue & i) {
    return i.severity == Severity::kError;
  });
}

std::string format_issue(const ValidationIssue & issue)
{
  return fmt::format(
    "{}: {} [{}] {}", to_string(issue.severity), issue.scenario_id.empty() ? "-" : issue.scenario_id,
    issue.field_path.empty() ? "-" : issue.field_path, issue.message);
}

std::string read_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string() + " for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("error while reading " + path.string());
  }
  return buffer.str();
}

void write_file(const std::filesystem::path & path, std::string_view contents)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) {
    throw IoError("error while writing " + path.string());
  }
}

ScenarioParseResult parse_scenarios_text(std::string_view text, const ParseOptions & options)
{
  ScenarioParseResult result;
  std::map<std::string, std::size_t> first_line_of;

  for_each_line(text, [&](std::size_t line_number, std::string_view line) {
    json record;
    try {
      record = json::parse(quote_non_finite_tokens(line));
    } catch (const json::parse_error & err) {
      result.issues.push_back(
        {line_label(line_number), "", Severity::kError, fmt::format("malformed record: {}", err.what())});
      return;
    }
    if (!record.is_object()) {
      result.issues.push_back(
        {line_label(line_number), "", Severity::kError, "record is not an object"});
      return;
    }

    const json * id_field = find_field(record, "id");
    const bool has_id = id_field != nullptr && id_field->is_string() &&
                        !id_field->get_ref<const std::string &>().empty();
    const std::string id = has_id ? id_field->get<std::string>() : line_label(line_number);
    IssueSink sink(id, result.issues);
    if (!has_id) {
      sink.error("id", "missing or empty scenario id");
    } else if (const auto [it, inserted] = first_line_of.emplace(id, line_number); !inserted) {
      sink.error("id", fmt::format("duplicate scenario id (first defined on line {})", it->second));
      return;
    }

    if (auto scenario = read_scenario(record, id, options, sink)) {
      result.scenarios.push_back(std::move(*scenario));
    }
  });

  sort_issues(result.issues);
  return result;
}

ScenarioParseResult parse_scenarios(const std::filesystem::path & path, const ParseOptions & options)
{
  return parse_scenarios_text(read_file(path), options);
}

SubmissionParseResult parse_submission_text(
  std::string_view text, std::span<const Scenario> scenarios)
{
  SubmissionParseResult result;
  std::set<std::string, std::less<>> known;
  for (const auto & s : scenarios) {
    known.insert(s.id());
  }
  std::map<std::string, std::size_t> first_line_of;
  bool have_header = false;

  for_each_line(text, [&](std::size_t line_number, std::string_view line) {
    json record;
    try {
      record = json::parse(quote_non_finite_tokens(line));
    } catch (const json::parse_error & err) {
      result.issues.push_back(
        {line_label(line_number), "", Severity::kError, fmt::format("malformed record: {}", err.what())});
      return;
    }
    if (!record.is_object()) {
      result.issues.push_back(
        {line_label(line_number), "", Severity::kError, "record is not an object"});
      return;
    }

    const json * id_field = find_field(record, "scenario_id");
    if (id_field == nullptr) {
      IssueSink sink("", result.issues);
      if (have_header) {
        sink.error("header", fmt::format("second header record on line {}", line_number));
        return;
      }
      have_header = true;
      const json * submitter = find_field(record, "submitter");
      const json * method = find_field(record, "method");
      if (submitter == nullptr || !submitter->is_string() || method == nullptr || !method->is_string()) {
        sink.error("header", "header needs string fields 'submitter' and 'method'");
        return;
      }
      result.submission.metadata.submitter = submitter->get<std::string>();
      result.submission.metadata.method = method->get<std::string>();
      if (const json * at = find_field(record, "submitted_at"); at && at->is_string()) {
        result.submission.metadata.submitted_at = at->get<std::string>();
      }
      return;
    }

    if (!id_field->is_string() || id_field->get_ref<const std::string &>().empty()) {
      result.issues.push_back(
        {line_label(line_number), "scenario_id", Severity::kError, "scenario_id must be a non-empty string"});
      return;
    }
    const std::string id = id_field->get<std::string>();
    IssueSink sink(id, result.issues);
    if (const auto [it, inserted] = first_line_of.emplace(id, line_number); !inserted) {
      sink.error("scenario_id", fmt::format("duplicate entry (first on line {})", it->second));
      return;
    }
    if (!known.contains(id)) {
      sink.warning("scenario_id", "unknown scenario id ignored");
      return;
    }
    const json * w = find_field(record, "waypoints");
    auto points = read_points(w ? *w : json(), "waypoints", kFutureWaypoints, sink);
    if (points) {
      result.submission.entries.emplace(id, Trajectory::future(std::move(*points)));
    }
  });

  if (!have_header) {
    result.issues.push_back({"", "header", Severity::kError, "missing header record"});
  }
  for (const auto & id : known) {
    if (!first_line_of.contains(id)) {
      result.issues.push_back({id, "scenario_id", Severity::kError, "missing submission for scenario"});
    }
  }
  sort_issues(result.issues);
  return result;
}

SubmissionParseResult parse_submission(
  const std::filesystem::path & path, std::span<const Scenario> scenarios)
{
  return parse_submission_text(read_file(path), scenarios);
}

std::string serialize_scenario(const Scenario & scenario)
{
  ordered_json out;
  out["id"] = scenario.id();
  out["category"] = std::string(to_string(scenario.category()));
  out["routing"] = std::string(to_string(scenario.routing()));
  out["ego"] = {
    {"past", points_json(scenario.ego().past().waypoints())},
    {"velocity", scenario.ego().velocity()},
    {"acceleration", scenario.ego().acceleration()}};
  ordered_json raters = ordered_json::array();
  for (const auto & r : scenario.raters()) {
    ordered_json rj;
    rj["rank"] = r.rank();
    rj["score"] = r.score();
    rj["waypoints"] = points_json(r.trajectory().waypoints());
    raters.push_back(std::move(rj));
  }
  out["raters"] = std::move(raters);
  if (scenario.log_future()) {
    out["log_future"] = points_json(scenario.log_future()->waypoints());
  }
  if (scenario.future_route_10s()) {
    out["future_route_10s"] = points_json(*scenario.future_route_10s());
  }
  ordered_json cameras = ordered_json::array();
  for (const auto & c : scenario.cameras()) {
    const auto & k = c.intrinsics();
    ordered_json cj;
    cj["name"] = std::string(to_string(c.name()));
    cj["intrinsics"] = {
      {"f_u", k.f_u}, {"f_v", k.f_v}, {"c_u", k.c_u}, {"c_v", k.c_v},
      {"width", k.width}, {"height", k.height}, {"distortion", k.distortion}};
    ordered_json rotation = ordered_json::array();
    const auto & r = c.extrinsics().rotation();
    for (Eigen::Index row = 0; row < 3; ++row) {
      rotation.push_back({r(row, 0), r(row, 1), r(row, 2)});
    }
    const auto & t = c.extrinsics().translation();
    cj["extrinsics"] = {{"rotation", rotation}, {"translation", {t.x(), t.y(), t.z()}}};
    if (!c.image_path().empty()) {
      cj["image"] = c.image_path();
    }
    cameras.push_back(std::move(cj));
  }
  out["cameras"] = std::move(cameras);
  return out.dump();
}

void write_scenarios(const std::filesystem::path & path, std::span<const Scenario> scenarios)
{
  std::string text;
  for (const auto & s : scenarios) {
    text += serialize_scenario(s);
    text += '\n';
  }
  write_file(path, text);
}

std::string serialize_submission(const Submission & submission)
{
  ordered_json header;
  header["submitter"] = submission.metadata.submitter;
  header["method"] = submission.metadata.method;
  if (!submission.metadata.submitted_at.empty()) {
    header["submitted_at"] = submission.metadata.submitted_at;
  }
  std::string text = header.dump() + '\n';
  for (const auto & [id, trajectory] : submission.entries) {
    ordered_json entry;
    entry["scenario_id"] = id;
    entry["waypoints"] = points_json(trajectory.waypoints());
    text += entry.dump();
    text += '\n';
  }
  return text;
}

std::string serialize_report(const ScoreReport & report)
{
  if (report.per_scenario.empty()) {
    throw DomainError("cannot serialize a report without scenarios");
  }
  const Aggregates & agg = report.aggregates;
  std::string out;
  auto it = std::back_inserter(out);

  fmt::format_to(
    it,
    "{{\"type\":\"aggregate\",\"submitter\":{},\"method\":{},\"submitted_at\":{},\"count\":{},"
    "\"mean_rfs\":{},\"mean_ade\":{},\"floored_count\":{},\"missing_count\":{},\"per_category\":[",
    json_string(report.metadata.submitter), json_string(report.metadata.method),
    json_string(report.metadata.submitted_at), agg.count, fixed4(agg.mean_rfs), fixed4(agg.mean_ade),
    agg.floored_count, agg.missing_count);
  bool first = true;
  for (const auto & [category, c] : agg.per_category) {
    fmt::format_to(
      it, "{}{{\"category\":{},\"count\":{},\"mean_rfs\":{},\"mean_ade\":{}}}", first ? "" : ",",
      json_string(to_string(category)), c.count, fixed4(c.mean_rfs), fixed4(c.mean_ade));
    first = false;
  }
  out += "]}\n";

  for (const auto & [id, s] : report.per_scenario) {
    fmt::format_to(
      it,
      "{{\"type\":\"scenario\",\"id\":{},\"category\":{},\"rfs\":{},\"ade\":{},"
      "\"ade_reference\":{},\"missing\":{},\"per_time\":[",
      json_string(id), json_string(to_string(s.category)), fixed4(s.rfs), fixed4(s.ade),
      json_string(to_string(s.ade_reference)), s.missing ? "true" : "false");
    for (std::size_t k = 0; k < s.per_time.size(); ++k) {
      const TimeBreakdown & tb = s.per_time[k];
      fmt::format_to(it, "{}{{\"t\":{},\"scores\":[", k == 0 ? "" : ",", fixed4(tb.t));
      for (std::size_t r = 0; r < tb.per_rater_scores.size(); ++r) {
        fmt::format_to(it, "{}{}", r == 0 ? "" : ",", fixed4(tb.per_rater_scores[r]));
      }
      fmt::format_to(it, "],\"best\":{}}}", fixed4(tb.best));
    }
    out += "]}\n";
  }
  return out;
}

void write_report(const ScoreReport & report, const std::filesystem::path & path)
{
  write_file(path, serialize_report(report));
}

ScoreReport parse_report_text(std::string_view text)
{
  ScoreReport report;
  bool have_aggregate = false;
  for_each_line(text, [&](std::size_t line_number, std::string_view line) {
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error & err) {
      throw StructuralError(fmt::format("report line {}: {}", line_number, err.what()));
    }
    if (!record.is_object()) {
      throw StructuralError(fmt::format("report line {}: not an object", line_number));
    }
    const std::string type = require_string(record, "type");
    if (type == "aggregate") {
      if (have_aggregate) {
        throw StructuralError("report has more than one aggregate record");
      }
      have_aggregate = true;
      report.metadata.submitter = require_string(record, "submitter");
      report.metadata.method = require_string(record, "method");
      report.metadata.submitted_at = require_string(record, "submitted_at");
      Aggregates & agg = report.aggregates;
      agg.count = require_count(record, "count");
      agg.mean_rfs = require_number(record, "mean_rfs");
      agg.mean_ade = optional_number(record, "mean_ade");
      agg.floored_count = require_count(record, "floored_count");
      agg.missing_count = require_count(record, "missing_count");
      const json * cats = find_field(record, "per_category");
      if (cats == nullptr || !cats->is_array()) {
        throw StructuralError("report: per_category must be an array");
      }
      for (const json & c : *cats) {
        agg.per_category[require_category(c)] = CategoryAggregate{
          require_count(c, "count"), require_number(c, "mean_rfs"), optional_number(c, "mean_ade")};
      }
    } else if (type == "scenario") {
      if (!have_aggregate) {
        throw StructuralError("report must start with the aggregate record");
      }
      ScenarioScore s;
      s.id = require_string(record, "id");
      s.category = require_category(record);
      s.rfs = require_number(record, "rfs");
      s.ade = optional_number(record, "ade");
      const auto reference = parse_ade_reference(require_string(record, "ade_reference"));
      if (!reference) {
        throw StructuralError("report: unknown ade_reference");
      }
      s.ade_reference = *reference;
      const json * missing = find_field(record, "missing");
      if (missing == nullptr || !missing->is_boolean()) {
        throw StructuralError("report: field 'missing' must be a boolean");
      }
      s.missing = missing->get<bool>();
      const json * per_time = find_field(record, "per_time");
      if (per_time == nullptr || !per_time->is_array()) {
        throw StructuralError("report: per_time must be an array");
      }
      for (const json & tj : *per_time) {
        TimeBreakdown tb;
        tb.t = require_number(tj, "t");
        tb.best = require_number(tj, "best");
        const json * scores = find_field(tj, "scores");
        if (scores == nullptr || !scores->is_array()) {
          throw StructuralError("report: scores must be an array");
        }
        for (const json & v : *scores) {
          if (!v.is_number()) {
            throw StructuralError("report: scores must be numbers");
          }
          tb.per_rater_scores.push_back(v.get<double>());
        }
        s.per_time.push_back(std::move(tb));
      }
      const std::string id = s.id;
      if (!report.per_scenario.emplace(id, std::move(s)).second) {
        throw StructuralError("report: duplicate scenario id " + id);
      }
    } else {
      throw StructuralError("report: unknown record type '" + type + "'");
    }
  });
  if (!have_aggregate) {
    throw StructuralError("report has no aggregate record");
  }
  return report;
}

ScoreReport parse_report(const std::filesystem::path & path)
{
  return parse_report_text(read_file(path));
}

}  // namespace raterscore
