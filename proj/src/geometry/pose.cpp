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

#include "geometry/pose.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "core/error.hpp"
#include "geometry/landmarks.hpp"

namespace dfusion {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

Mat3 Skew(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return s;
}

}  // namespace

Mat3 Rodrigues(const Vec3& rvec) {
  const double theta = rvec.norm();
  if (theta < 1e-300) return Mat3::Identity();
  const Vec3 k = rvec / theta;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return c * Mat3::Identity() + (1.0 - c) * (k * k.transpose()) + s * Skew(k);
}

Vec3 RodriguesInverse(const Mat3& rotation) {
  const Vec3 vee(rotation(2, 1) - rotation(1, 2),
                 rotation(0, 2) - rotation(2, 0),
                 rotation(1, 0) - rotation(0, 1));
  const double cos_theta =
      std::clamp((rotation.trace() - 1.0) / 2.0, -1.0, 1.0);
  const double sin_theta = vee.norm() / 2.0;
  const double theta = std::atan2(sin_theta, cos_theta);
  if (theta < 1e-12) return vee / 2.0;
  if (sin_theta > 1e-6) return vee * (theta / (2.0 * sin_theta));

  // theta close to pi: axis from the symmetric part, sign from vee.
  const Mat3 b = (rotation + Mat3::Identity()) / 2.0;
  Eigen::Index column = 0;
  b.diagonal().maxCoeff(&column);
  Vec3 axis = b.col(column) / std::sqrt(std::max(b(column, column), 1e-300));
  axis.normalize();
  if (axis.dot(vee) < 0.0) axis = -axis;
  return axis * theta;
}

Mat3 RotationFromEuler(double pitch_deg, double yaw_deg, double roll_deg) {
  const Eigen::AngleAxisd rx(pitch_deg * kDegToRad, Vec3::UnitX());
  const Eigen::AngleAxisd ry(yaw_deg * kDegToRad, Vec3::UnitY());
  const Eigen::AngleAxisd rz(roll_deg * kDegToRad, Vec3::UnitZ());
  return (rx * ry * rz).toRotationMatrix();
}

EulerAngles EulerFromRotation(const Mat3& r) {
  if (!r.allFinite() ||
      (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-6 ||
      std::abs(r.determinant() - 1.0) > 1e-6) {
    throw InvalidArgument("matrix is not a rotation");
  }
  EulerAngles e;
  const double sin_yaw = std::clamp(r(0, 2), -1.0, 1.0);
  const double cos_yaw = std::hypot(r(0, 0), r(0, 1));
  e.yaw = std::atan2(sin_yaw, cos_yaw) * kRadToDeg;
  if (cos_yaw < 1e-8) {
    e.gimbal_lock = true;
    e.roll = 0.0;
    e.pitch = std::atan2(r(2, 1), r(1, 1)) * kRadToDeg;
  } else {
    e.pitch = std::atan2(-r(1, 2), r(2, 2)) * kRadToDeg;
    e.roll = std::atan2(-r(0, 1), r(0, 0)) * kRadToDeg;
  }
  return e;
}

CameraIntrinsics DefaultCamera(int image_width, int image_height) {
  return {static_cast<double>(image_width), static_cast<double>(image_width),
          image_width / 2.0, image_height / 2.0};
}

const std::array<Vec3, 6>& CanonicalHeadModel() {
  static const std::array<Vec3, 6> model = {
      Vec3(0.0, 0.0, 0.0),         Vec3(0.0, 330.0, 65.0),
      Vec3(-225.0, -170.0, 135.0), Vec3(225.0, -170.0, 135.0),
      Vec3(-150.0, 150.0, 125.0),  Vec3(150.0, 150.0, 125.0),
  };
  return model;
}

Point2 Project(const Mat3& rotation, const Vec3& translation,
               const Vec3& model_point, const CameraIntrinsics& camera) {
  const Vec3 c = rotation * model_point + translation;
  return {camera.fx * c.x() / c.z() + camera.cx,
          camera.fy * c.y() / c.z() + camera.cy};
}

namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

struct Candidate {
  Mat3 rotation;
  Vec3 translation;
  double cost = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

double Cost(const Mat3& rotation, const Vec3& translation,
            std::span<const Vec3> model, std::span<const Point2> image,
            const CameraIntrinsics& camera) {
  double cost = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const Vec3 c = rotation * model[i] + translation;
    if (c.z() <= 0.0) return std::numeric_limits<double>::infinity();
    const double du = camera.fx * c.x() / c.z() + camera.cx - image[i].x;
    const double dv = camera.fy * c.y() / c.z() + camera.cy - image[i].y;
    cost += du * du + dv * dv;
  }
  return cost;
}

// Rotation updates are applied on the left, R <- Rodrigues(delta) * R, so the
// Jacobian of a camera-frame point with respect to delta is -[R X]_x.
Candidate Refine(Mat3 rotation, Vec3 translation, std::span<const Vec3> model,
                 std::span<const Point2> image, const CameraIntrinsics& camera,
                 const PnpOptions& options) {
  Candidate out{rotation, translation,
                Cost(rotation, translation, model, image, camera), 0};
  if (!std::isfinite(out.cost)) return out;
  double lambda = 1e-3;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    out.iterations = iter + 1;
    Mat6 jtj = Mat6::Zero();
    Vec6 jtr = Vec6::Zero();
    for (std::size_t i = 0; i < model.size(); ++i) {
      const Vec3 rx = rotation * model[i];
      const Vec3 c = rx + translation;
      const double iz = 1.0 / c.z();
      Eigen::Matrix<double, 2, 3> dproj;
      dproj << camera.fx * iz, 0.0, -camera.fx * c.x() * iz * iz, 0.0,
          camera.fy * iz, -camera.fy * c.y() * iz * iz;
      Eigen::Matrix<double, 3, 6> dpoint;
      dpoint.leftCols<3>() = -Skew(rx);
      dpoint.rightCols<3>() = Mat3::Identity();
      const Eigen::Matrix<double, 2, 6> j = dproj * dpoint;
      const Eigen::Vector2d r(camera.fx * c.x() * iz + camera.cx - image[i].x,
                              camera.fy * c.y() * iz + camera.cy - image[i].y);
      jtj += j.transpose() * j;
      jtr += j.transpose() * r;
    }

    bool accepted = false;
    Vec6 step = Vec6::Zero();
    while (!accepted && lambda < 1e16) {
      Mat6 damped = jtj;
      damped.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      step = damped.ldlt().solve(-jtr);
      const Mat3 next_rotation = Rodrigues(step.head<3>()) * rotation;
      const Vec3 next_translation = translation + step.tail<3>();
      const double next_cost =
          Cost(next_rotation, next_translation, model, image, camera);
      if (next_cost <= out.cost) {
        rotation = next_rotation;
        translation = next_translation;
        out.cost = next_cost;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
      } else {
        lambda *= 10.0;
      }
    }
    out.rotation = rotation;
    out.translation = translation;
    if (!accepted || step.norm() < options.step_tolerance) break;
  }
  return out;
}

}  // namespace

HeadPose SolvePnp(std::span<const Vec3> model_points,
                  std::span<const Point2> image_points,
                  const CameraIntrinsics& camera, const PnpOptions& options) {
  if (model_points.size() != image_points.size() || model_points.size() < 6) {
    throw InvalidArgument("PnP needs at least 6 matched correspondences");
  }
  if (!(camera.fx > 0.0) || !(camera.fy > 0.0)) {
    throw InvalidArgument("camera focal lengths must be positive");
  }
  const std::size_t n = model_points.size();

  // Depth from the ratio of model spread to image spread; lateral offset from
  // the image centroid.
  Vec3 model_centroid = Vec3::Zero();
  Eigen::Vector2d image_centroid = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    model_centroid += model_points[i];
    image_centroid += Eigen::Vector2d(image_points[i].x, image_points[i].y);
  }
  model_centroid /= static_cast<double>(n);
  image_centroid /= static_cast<double>(n);
  double model_spread = 0.0;
  double image_spread = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    model_spread += (model_points[i] - model_centroid).head<2>().squaredNorm();
    image_spread +=
        (Eigen::Vector2d(image_points[i].x, image_points[i].y) - image_centroid)
            .squaredNorm();
  }
  if (image_spread <= 0.0 || model_spread <= 0.0) {
    throw NumericError("PnP: degenerate correspondences");
  }
  const double depth = camera.fx * std::sqrt(model_spread / image_spread);

  Candidate best;
  for (double yaw : {0.0, -40.0, 40.0}) {
    for (double pitch : {0.0, -40.0, 40.0}) {
      const Mat3 r0 = RotationFromEuler(pitch, yaw, 0.0);
      const Vec3 ray((image_centroid.x() - camera.cx) / camera.fx,
                     (image_centroid.y() - camera.cy) / camera.fy, 1.0);
      const Vec3 t0 = ray * depth - r0 * model_centroid;
      Candidate c = Refine(r0, t0, model_points, image_points, camera, options);
      if (c.cost < best.cost) best = c;
    }
  }
  if (!std::isfinite(best.cost)) {
    throw NumericError("PnP: no solution with all points in front of camera");
  }
  for (const Vec3& p : model_points) {
    if ((best.rotation * p + best.translation).z() <= 0.0) {
      throw NumericError("PnP: model point behind the camera at solution");
    }
  }
  HeadPose pose;
  pose.rotation = best.rotation;
  pose.translation = best.translation;
  pose.rvec = RodriguesInverse(best.rotation);
  pose.euler = EulerFromRotation(best.rotation);
  pose.rms_error = std::sqrt(best.cost / static_cast<double>(n));
  pose.iterations = best.iterations;
  if (!(pose.rms_error <= options.max_rms_px)) {
    throw NumericError("PnP did not converge: RMS reprojection error " +
                       std::to_string(pose.rms_error) + " px");
  }
  return pose;
}

HeadPose FramePose(const LandmarkFrame& frame, const PnpOptions& options) {
  std::array<Point2, 6> image;
  for (std::size_t i = 0; i < image.size(); ++i) {
    image[i] = frame.Pixel(landmarks::kPoseLandmarks[i]);
  }
  const auto& model = CanonicalHeadModel();
  return SolvePnp(model, image,
                  DefaultCamera(frame.image_width, frame.image_height),
                  options);
}

HeadposeSpread HeadposeFeatures(std::span<const EulerAngles> poses) {
  if (poses.size() < 2) {
    throw InvalidArgument("head-pose spread needs at least 2 solved frames");
  }
  auto spread = [&](auto member) {
    double mean = 0.0;
    for (const EulerAngles& e : poses) mean += e.*member;
    mean /= static_cast<double>(poses.size());
    double var = 0.0;
    for (const EulerAngles& e : poses) {
      const double d = e.*member - mean;
      var += d * d;
    }
    return std::sqrt(var / static_cast<double>(poses.size()));
  };
  return {spread(&EulerAngles::pitch), spread(&EulerAngles::yaw),
          spread(&EulerAngles::roll)};
}

}  // namespace dfusion
