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

#include "raterscore/geometry.hpp"

#include "raterscore/errors.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <utility>

namespace raterscore
{

namespace
{

constexpr double kOrthonormalTolerance = 1e-9;
constexpr double kMinHeadingDisplacement = 1e-6;
constexpr double kMinDepth = 1e-6;

constexpr std::array<std::pair<CameraName, std::string_view>, kCameraCount> kCameraNames{{
  {CameraName::kFront, "front"},
  {CameraName::kFrontLeft, "front_left"},
  {CameraName::kFrontRight, "front_right"},
  {CameraName::kSideLeft, "side_left"},
  {CameraName::kSideRight, "side_right"},
  {CameraName::kRear, "rear"},
  {CameraName::kRearLeft, "rear_left"},
  {CameraName::kRearRight, "rear_right"},
}};

}  // namespace

RigidTransform::RigidTransform()
: rotation_(Eigen::Matrix3d::Identity()), translation_(Eigen::Vector3d::Zero())
{
}

RigidTransform::RigidTransform(
  const Eigen::Matrix3d & rotation, const Eigen::Vector3d & translation)
: rotation_(rotation), translation_(translation)
{
  if (!rotation_.allFinite() || !translation_.allFinite()) {
    throw StructuralError("rigid transform contains non-finite values");
  }
  const double orthonormal_error =
    (rotation_.transpose() * rotation_ - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (orthonormal_error > kOrthonormalTolerance) {
    throw StructuralError("rotation is not orthonormal");
  }
  if (std::abs(rotation_.determinant() - 1.0) > kOrthonormalTolerance) {
    throw StructuralError("rotation is not right-handed (det != +1)");
  }
}

Eigen::Vector3d RigidTransform::apply(const Eigen::Vector3d & point) const
{
  return rotation_ * point + translation_;
}

Eigen::Vector3d RigidTransform::apply_inverse(const Eigen::Vector3d & point) const
{
  return rotation_.transpose() * (point - translation_);
}

RigidTransform RigidTransform::inverse() const
{
  return RigidTransform(rotation_.transpose(), -(rotation_.transpose() * translation_));
}

Eigen::Matrix4d RigidTransform::homogeneous() const
{
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation_;
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

std::string_view to_string(CameraName name)
{
  for (const auto & [value, text] : kCameraNames) {
    if (value == name) {
      return text;
    }
  }
  return "unknown";
}

std::optional<CameraName> parse_camera_name(std::string_view text)
{
  for (const auto & [value, name] : kCameraNames) {
    if (name == text) {
      return value;
    }
  }
  return std::nullopt;
}

CameraCalibration::CameraCalibration(
  CameraName name, CameraIntrinsics intrinsics, RigidTransform camera_to_vehicle,
  std::string image_path)
: name_(name),
  intrinsics_(std::move(intrinsics)),
  extrinsics_(std::move(camera_to_vehicle)),
  image_path_(std::move(image_path))
{
  const auto & k = intrinsics_;
  if (!(std::isfinite(k.f_u) && std::isfinite(k.f_v) && std::isfinite(k.c_u) &&
        std::isfinite(k.c_v))) {
    throw StructuralError("camera intrinsics must be finite");
  }
  if (k.f_u <= 0.0 || k.f_v <= 0.0) {
    throw StructuralError("focal lengths must be positive");
  }
  if (k.width <= 0 || k.height <= 0) {
    throw StructuralError("image size must be positive");
  }
  if (k.c_u < 0.0 || k.c_u > k.width || k.c_v < 0.0 || k.c_v > k.height) {
    throw StructuralError("principal point outside the image");
  }
}

Eigen::Vector2d heading_at_time(const Trajectory & traj, double t)
{
  const std::size_t index = index_at_time(traj, t);
  const std::size_t last = traj.size() - 1;
  const std::size_t before = index == 0 ? 0 : index - 1;
  const std::size_t after = index == last ? last : index + 1;

  const Eigen::Vector2d displacement(
    traj[after].x - traj[before].x, traj[after].y - traj[before].y);
  const double norm = displacement.norm();
  if (norm < kMinHeadingDisplacement) {
    return Eigen::Vector2d::UnitX();
  }
  return displacement / norm;
}

ErrorDecomposition decompose_error(
  const Waypoint & predicted, const Trajectory & rater_traj, double t)
{
  const Eigen::Vector2d along = heading_at_time(rater_traj, t);
  const Eigen::Vector2d left(-along.y(), along.x());
  const Waypoint reference = waypoint_at_time(rater_traj, t);
  const Eigen::Vector2d error(predicted.x - reference.x, predicted.y - reference.y);
  return {std::abs(error.dot(along)), std::abs(error.dot(left))};
}

Eigen::Vector3d vehicle_to_camera(
  const Eigen::Vector3d & point_vehicle, const CameraCalibration & calib)
{
  return calib.extrinsics().apply_inverse(point_vehicle);
}

std::optional<PixelCoord> project_camera_point(
  const Eigen::Vector3d & point_camera, const CameraIntrinsics & intrinsics)
{
  const double depth = point_camera.x();
  if (!(depth > kMinDepth)) {
    return std::nullopt;
  }
  const PixelCoord pixel{
    intrinsics.c_u - intrinsics.f_u * (point_camera.y() / depth),
    intrinsics.c_v - intrinsics.f_v * (point_camera.z() / depth)};
  if (!(pixel.u >= 0.0 && pixel.u <= intrinsics.width && pixel.v >= 0.0 &&
        pixel.v <= intrinsics.height)) {
    return std::nullopt;
  }
  return pixel;
}

std::optional<PixelCoord> project_to_image(
  const Eigen::Vector3d & point_vehicle, const CameraCalibration & calib)
{
  return project_camera_point(vehicle_to_camera(point_vehicle, calib), calib.intrinsics());
}

}  // namespace raterscore
