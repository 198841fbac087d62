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

#ifndef RATERSCORE__GEOMETRY_HPP_
#define RATERSCORE__GEOMETRY_HPP_

#include "raterscore/types.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace raterscore
{

/// Proper rigid motion p' = R p + t. Rotation must be orthonormal with
/// determinant +1 within 1e-9, otherwise the constructor throws StructuralError.
class RigidTransform
{
public:
  RigidTransform();
  RigidTransform(const Eigen::Matrix3d & rotation, const Eigen::Vector3d & translation);

  static RigidTransform identity() { return RigidTransform(); }

  const Eigen::Matrix3d & rotation() const { return rotation_; }
  const Eigen::Vector3d & translation() const { return translation_; }

  Eigen::Vector3d apply(const Eigen::Vector3d & point) const;
  Eigen::Vector3d apply_inverse(const Eigen::Vector3d & point) const;
  RigidTransform inverse() const;
  Eigen::Matrix4d homogeneous() const;

private:
  Eigen::Matrix3d rotation_;
  Eigen::Vector3d translation_;
};

enum class CameraName {
  kFront,
  kFrontLeft,
  kFrontRight,
  kSideLeft,
  kSideRight,
  kRear,
  kRearLeft,
  kRearRight,
};

inline constexpr std::size_t kCameraCount = 8;

std::string_view to_string(CameraName name);
std::optional<CameraName> parse_camera_name(std::string_view text);

/// Pinhole intrinsics in pixels. Distortion coefficients are carried through
/// serialization but never applied.
struct CameraIntrinsics
{
  double f_u{0.0};
  double f_v{0.0};
  double c_u{0.0};
  double c_v{0.0};
  int width{0};
  int height{0};
  std::vector<double> distortion;

  friend bool operator==(const CameraIntrinsics &, const CameraIntrinsics &) = default;
};

class CameraCalibration
{
public:
  /// `camera_to_vehicle` maps camera-frame points into the vehicle frame.
  CameraCalibration(
    CameraName name, CameraIntrinsics intrinsics, RigidTransform camera_to_vehicle,
    std::string image_path = {});

  CameraName name() const { return name_; }
  const CameraIntrinsics & intrinsics() const { return intrinsics_; }
  const RigidTransform & extrinsics() const { return extrinsics_; }
  const std::string & image_path() const { return image_path_; }

private:
  CameraName name_;
  CameraIntrinsics intrinsics_;
  RigidTransform extrinsics_;
  std::string image_path_;
};

struct ErrorDecomposition
{
  double delta_lng{0.0};
  double delta_lat{0.0};
};

struct PixelCoord
{
  double u{0.0};
  double v{0.0};
};

/// Unit tangent of `traj` at sample time `t`.
///
/// Uses the central difference of the neighbouring samples (one-sided at the
/// first and last sample). A displacement shorter than 1e-6 m falls back to
/// the vehicle forward axis (1, 0). Throws RangeError for an invalid `t`.
Eigen::Vector2d heading_at_time(const Trajectory & traj, double t);

/// Splits the offset of `predicted` from the rater waypoint at `t` into
/// absolute components along and across the rater's local heading.
ErrorDecomposition decompose_error(
  const Waypoint & predicted, const Trajectory & rater_traj, double t);

Eigen::Vector3d vehicle_to_camera(
  const Eigen::Vector3d & point_vehicle, const CameraCalibration & calib);

/// Camera x is depth; u = c_u - f_u * y / x, v = c_v - f_v * z / x.
/// Empty when the point is at or behind the lens or lands outside the image.
std::optional<PixelCoord> project_camera_point(
  const Eigen::Vector3d & point_camera, const CameraIntrinsics & intrinsics);

std::optional<PixelCoord> project_to_image(
  const Eigen::Vector3d & point_vehicle, const CameraCalibration & calib);

}  // namespace raterscore

#endif  // RATERSCORE__GEOMETRY_HPP_
