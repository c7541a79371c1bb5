/* Copyright 2026 The dfusion Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "core/types.hpp"

namespace dfusion {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

// Axis-angle vector -> rotation matrix. Zero vector maps to the identity.
Mat3 Rodrigues(const Vec3& rvec);
// Rotation matrix -> axis-angle vector with norm in [0, pi].
Vec3 RodriguesInverse(const Mat3& rotation);

// Angles in degrees. The rotation is composed as
//   R = Rx(pitch) * Ry(yaw) * Rz(roll)
// (intrinsic x-y-z), so yaw = asin(R(0,2)).
struct EulerAngles {
  double pitch = 0.0;
  double yaw = 0.0;
  double roll = 0.0;
  bool gimbal_lock = false;  // |cos(yaw)| < 1e-8; roll forced to 0
};

Mat3 RotationFromEuler(double pitch_deg, double yaw_deg, double roll_deg);
// Throws InvalidArgument when the input is not orthonormal within 1e-6.
EulerAngles EulerFromRotation(const Mat3& rotation);

struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
};

// focal = image width, principal point at the image center, no distortion.
CameraIntrinsics DefaultCamera(int image_width, int image_height);

// Generic 6-point head in camera-aligned axes (x right, y down, z away from
// the camera), ordered like landmarks::kPoseLandmarks: nose tip, chin,
// left eye outer corner, right eye outer corner, left and right mouth
// corners.
const std::array<Vec3, 6>& CanonicalHeadModel();

Point2 Project(const Mat3& rotation, const Vec3& translation,
               const Vec3& model_point, const CameraIntrinsics& camera);

struct HeadPose {
  EulerAngles euler;
  Mat3 rotation = Mat3::Identity();
  Vec3 rvec = Vec3::Zero();
  Vec3 translation = Vec3::Zero();
  double rms_error = 0.0;  // pixels
  int iterations = 0;
};

struct PnpOptions {
  int max_iterations = 100;
  double step_tolerance = 1e-10;
  // Solutions with a larger RMS reprojection error are rejected.
  double max_rms_px = 25.0;
};

// Minimizes the summed squared reprojection error over rotation and
// translation with Levenberg-damped Gauss-Newton from several starting
// orientations, keeping the best. Throws NumericError on non-convergence or
// when a model point ends up behind the camera.
HeadPose SolvePnp(std::span<const Vec3> model_points,
                  std::span<const Point2> image_points,
                  const CameraIntrinsics& camera,
                  const PnpOptions& options = {});

// Pose of the canonical head for one frame.
HeadPose FramePose(const LandmarkFrame& frame, const PnpOptions& options = {});

struct HeadposeSpread {
  double x = 0.0;  // population std-dev of pitch
  double y = 0.0;  // yaw
  double z = 0.0;  // roll
};

// Throws InvalidArgument with fewer than 2 poses.
HeadposeSpread HeadposeFeatures(std::span<const EulerAngles> poses);

}  // namespace dfusion
