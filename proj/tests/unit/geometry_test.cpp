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

#include "raterscore/errors.hpp"
#include "raterscore/geometry.hpp"
#include "test_support.hpp"

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace raterscore
{
namespace
{

using testing::from_fn;
using testing::line;

Eigen::Matrix3d random_rotation(std::mt19937_64 & rng)
{
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q.toRotationMatrix();
}

CameraIntrinsics nominal_intrinsics()
{
  CameraIntrinsics in;
  in.f_u = 2000.0;
  in.f_v = 2000.0;
  in.c_u = 960.0;
  in.c_v = 640.0;
  in.width = 1920;
  in.height = 1280;
  return in;
}

TEST(RigidTransform, RejectsImproperRotations)
{
  Eigen::Matrix3d reflect = Eigen::Matrix3d::Identity();
  reflect(1, 1) = -1.0;
  EXPECT_THROW(RigidTransform(reflect, Eigen::Vector3d::Zero()), StructuralError);
  EXPECT_THROW(RigidTransform(2.0 * Eigen::Matrix3d::Identity(), Eigen::Vector3d::Zero()), StructuralError);
  EXPECT_THROW(
    RigidTransform(Eigen::Matrix3d::Identity(), Eigen::Vector3d(std::nan(""), 0.0, 0.0)), StructuralError);
}

TEST(RigidTransform, InverseComposesToIdentity)
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const RigidTransform tf(random_rotation(rng), Eigen::Vector3d(u(rng), u(rng), u(rng)));
    const Eigen::Vector3d p(u(rng), u(rng), u(rng));
    EXPECT_LT((tf.apply_inverse(tf.apply(p)) - p).norm(), 1e-9);
    EXPECT_LT((tf.inverse().apply(p) - tf.apply_inverse(p)).norm(), 1e-9);
    EXPECT_LT((tf.homogeneous() * tf.inverse().homogeneous() - Eigen::Matrix4d::Identity()).norm(), 1e-9);
  }
}

TEST(VehicleToCamera, IdentityExtrinsics)
{
  const CameraCalibration calib(CameraName::kFront, nominal_intrinsics(), RigidTransform::identity());
  EXPECT_EQ(vehicle_to_camera(Eigen::Vector3d(1, 0, 0), calib), Eigen::Vector3d(1, 0, 0));
}

TEST(VehicleToCamera, PureTranslation)
{
  const Eigen::Vector3d t(1.5, -0.25, 1.8);
  const CameraCalibration calib(
    CameraName::kFront, nominal_intrinsics(), RigidTransform(Eigen::Matrix3d::Identity(), t));
  const Eigen::Vector3d p(4.0, 2.0, 0.5);
  EXPECT_LT((vehicle_to_camera(p, calib) - (p - t)).norm(), 1e-15);
}

TEST(VehicleToCamera, MatchesHomogeneousInverseOracle)
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 500; ++i) {
    const Eigen::Matrix3d r = random_rotation(rng);
    const Eigen::Vector3d t(u(rng), u(rng), u(rng));
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.topLeftCorner<3, 3>() = r;
    m.topRightCorner<3, 1>() = t;
    // General 4x4 inverse, independent of the transpose shortcut.
    const Eigen::Matrix4d inv = m.inverse();
    const Eigen::Vector3d p(u(rng), u(rng), u(rng));
    const Eigen::Vector4d expected = inv * Eigen::Vector4d(p.x(), p.y(), p.z(), 1.0);
    const CameraCalibration calib(CameraName::kRear, nominal_intrinsics(), RigidTransform(r, t));
    EXPECT_LT((vehicle_to_camera(p, calib) - expected.head<3>()).norm(), 1e-9);
  }
}

TEST(ProjectToImage, OpticalAxisHitsPrincipalPoint)
{
  const CameraCalibration calib(CameraName::kFront, nominal_intrinsics(), RigidTransform::identity());
  for (const double depth : {0.5, 3.0, 40.0, 1000.0}) {
    const auto px = project_to_image(Eigen::Vector3d(depth, 0, 0), calib);
    ASSERT_TRUE(px);
    EXPECT_EQ(px->u, 960.0);
    EXPECT_EQ(px->v, 640.0);
  }
}

TEST(ProjectToImage, BehindOrAtLensIsAbsent)
{
  const CameraCalibration calib(CameraName::kFront, nominal_intrinsics(), RigidTransform::identity());
  EXPECT_FALSE(project_to_image(Eigen::Vector3d(-5, 0, 0), calib));
  EXPECT_FALSE(project_to_image(Eigen::Vector3d(0, 0, 0), calib));
  EXPECT_FALSE(project_to_image(Eigen::Vector3d(1e-7, 0, 0), calib));
}

TEST(ProjectToImage, OneMeterLeftAtTenMeters)
{
  const CameraCalibration calib(CameraName::kFront, nominal_intrinsics(), RigidTransform::identity());
  const auto px = project_to_image(Eigen::Vector3d(10, 1, 0), calib);
  ASSERT_TRUE(px);
  // u = 960 - 2000 * 1 / 10
  EXPECT_DOUBLE_EQ(px->u, 760.0);
  EXPECT_DOUBLE_EQ(px->v, 640.0);
}

TEST(ProjectToImage, OutsideImageIsAbsent)
{
  const CameraCalibration calib(CameraName::kFront, nominal_intrinsics(), RigidTransform::identity());
  EXPECT_FALSE(project_to_image(Eigen::Vector3d(1, 5, 0), calib));
  EXPECT_FALSE(project_to_image(Eigen::Vector3d(1, 0, -5), calib));
}

TEST(ProjectToImage, ScaleInvariantAlongRay)
{
  const CameraIntrinsics in = nominal_intrinsics();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> depth(1.0, 50.0);
  std::uniform_real_distribution<double> off(-0.3, 0.3);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = depth(rng);
    const Eigen::Vector3d p(x, off(rng) * x, off(rng) * x);
    const double k = scale(rng);
    const auto a = project_camera_point(p, in);
    const auto b = project_camera_point(k * p, in);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) {
      EXPECT_NEAR(a->u, b->u, 1e-9);
      EXPECT_NEAR(a->v, b->v, 1e-9);
    }
  }
}

TEST(CameraCalibration, RejectsBadIntrinsics)
{
  CameraIntrinsics in = nominal_intrinsics();
  in.f_u = 0.0;
  EXPECT_THROW(CameraCalibration(CameraName::kFront, in, RigidTransform()), StructuralError);
  in = nominal_intrinsics();
  in.width = 0;
  EXPECT_THROW(CameraCalibration(CameraName::kFront, in, RigidTransform()), StructuralError);
  in = nominal_intrinsics();
  in.c_u = 5000.0;
  EXPECT_THROW(CameraCalibration(CameraName::kFront, in, RigidTransform()), StructuralError);
}

TEST(CameraName, StringRoundTrip)
{
  for (std::size_t i = 0; i < kCameraCount; ++i) {
    const auto n = static_cast<CameraName>(i);
    EXPECT_EQ(parse_camera_name(to_string(n)), n);
  }
  EXPECT_FALSE(parse_camera_name("roof"));
}

TEST(HeadingAtTime, StraightLineAlongX)
{
  const Trajectory traj = line(10.0);
  for (const double t : {0.25, 3.0, 5.0}) {
    const Eigen::Vector2d h = heading_at_time(traj, t);
    EXPECT_NEAR(h.x(), 1.0, 1e-15);
    EXPECT_NEAR(h.y(), 0.0, 1e-15);
  }
}

TEST(HeadingAtTime, StationaryFallsBackToForward)
{
  const Trajectory traj = from_fn([](double) { return Waypoint{3.0, 2.0}; });
  const Eigen::Vector2d h = heading_at_time(traj, 3.0);
  EXPECT_EQ(h, Eigen::Vector2d(1.0, 0.0));
}

TEST(HeadingAtTime, CentralDifferenceOnCircle)
{
  // On a circle the chord between symmetric neighbours is parallel to the
  // tangent at the middle sample.
  const Trajectory traj = from_fn([](double t) { return Waypoint{20.0 * std::sin(0.2 * t), 20.0 - 20.0 * std::cos(0.2 * t)}; });
  const Eigen::Vector2d h = heading_at_time(traj, 3.0);
  EXPECT_NEAR(std::atan2(h.y(), h.x()), 0.2 * 3.0, 1e-12);
}

TEST(HeadingAtTime, UnitNormProperty)
{
  std::mt19937_64 rng(21);
  for (int i = 0; i < 2000; ++i) {
    const Trajectory traj = testing::random_future(rng);
    for (const double t : {0.25, 1.0, 3.0, 5.0}) {
      EXPECT_NEAR(heading_at_time(traj, t).norm(), 1.0, 1e-12);
    }
  }
}

TEST(DecomposeError, AxisAlignedCase)
{
  const Trajectory rater = line(10.0);
  // Rater at t=3 is (30, 0) heading +x.
  const ErrorDecomposition e = decompose_error({33.0, -1.5}, rater, 3.0);
  EXPECT_DOUBLE_EQ(e.delta_lng, 3.0);
  EXPECT_DOUBLE_EQ(e.delta_lat, 1.5);
}

TEST(DecomposeError, RotatedRaterSwapsAxes)
{
  const Trajectory rater = line(10.0, std::numbers::pi / 2.0);
  const Waypoint r = waypoint_at_time(rater, 5.0);
  const ErrorDecomposition e = decompose_error({r.x + 2.0, r.y + 0.5}, rater, 5.0);
  EXPECT_NEAR(e.delta_lng, 0.5, 1e-12);
  EXPECT_NEAR(e.delta_lat, 2.0, 1e-12);
}

TEST(DecomposeError, CompletenessAndRotationInvariance)
{
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 2000; ++i) {
    const Trajectory rater = testing::random_future(rng, 20.0, 0.5);
    const double t = (i % 2 == 0) ? 3.0 : 5.0;
    const Waypoint r = waypoint_at_time(rater, t);
    const Waypoint pred{r.x + u(rng), r.y + u(rng)};
    const ErrorDecomposition e = decompose_error(pred, rater, t);
    const double norm2 = (pred.x - r.x) * (pred.x - r.x) + (pred.y - r.y) * (pred.y - r.y);
    EXPECT_NEAR(norm2, e.delta_lng * e.delta_lng + e.delta_lat * e.delta_lat, 1e-9);

    const double a = ang(rng);
    const auto rot = [a](Waypoint p) {
      return Waypoint{std::cos(a) * p.x - std::sin(a) * p.y, std::sin(a) * p.x + std::cos(a) * p.y};
    };
    std::vector<Waypoint> rotated;
    for (const auto & p : rater.waypoints()) {
      rotated.push_back(rot(p));
    }
    const ErrorDecomposition er = decompose_error(rot(pred), Trajectory::future(rotated), t);
    EXPECT_NEAR(e.delta_lng, er.delta_lng, 1e-9);
    EXPECT_NEAR(e.delta_lat, er.delta_lat, 1e-9);
  }
}

TEST(DecomposeError, InvalidTimeIsRangeError)
{
  EXPECT_THROW(decompose_error({0, 0}, line(5.0), 6.0), RangeError);
}

}  // namespace
}  // namespace raterscore
