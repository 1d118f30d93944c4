// Copyright 2026 The manip Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file chain.hpp
/// Serial revolute-joint chains: forward kinematics and the translational
/// geometric Jacobian.
///
/// A chain is a list of joints. Joint i sits at `offset` (expressed in the
/// frame of joint i-1, or the base frame for the first joint) and rotates
/// about `axis` (same frame). The end point sits at `end_effector_offset` in
/// the frame of the last joint. Only the translational part of the Jacobian
/// is produced; `task_dim` selects whether all three rows or just (x, y) are
/// kept.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "manip/types.hpp"

namespace manip {

struct JointSpec {
  Vector3 axis = Vector3::UnitZ();
  Vector3 offset = Vector3::Zero();
  double lower_limit = -kPi;
  double upper_limit = kPi;
};

class KinematicChain {
 public:
  static constexpr double kAxisTolerance = 1e-12;

  KinematicChain(std::vector<JointSpec> joints, Vector3 end_effector_offset,
                 int task_dim)
      : joints_(std::move(joints)),
        end_effector_offset_(std::move(end_effector_offset)),
        task_dim_(task_dim) {
    if (joints_.empty()) throw ChainError("chain needs at least one joint");
    if (task_dim_ != 2 && task_dim_ != 3) {
      throw ChainError("task_dim must be 2 or 3");
    }
    if (!end_effector_offset_.allFinite()) {
      throw ChainError("end-effector offset must be finite");
    }
    for (std::size_t i = 0; i < joints_.size(); ++i) {
      const JointSpec& j = joints_[i];
      const std::string where = "joint " + std::to_string(i) + ": ";
      if (!j.axis.allFinite() ||
          std::abs(j.axis.norm() - 1.0) > kAxisTolerance) {
        throw ChainError(where + "rotation axis must be unit length");
      }
      if (!j.offset.allFinite()) throw ChainError(where + "offset not finite");
      if (!(j.lower_limit <= j.upper_limit)) {
        throw ChainError(where + "lower limit exceeds upper limit");
      }
      // Planar chains move in z = 0 only when every axis is along z.
      if (task_dim_ == 2 &&
          std::abs(std::abs(j.axis.z()) - 1.0) > kAxisTolerance) {
        throw ChainError(where + "task_dim 2 requires all axes parallel to z");
      }
    }
  }

  const std::vector<JointSpec>& joints() const { return joints_; }
  const Vector3& end_effector_offset() const { return end_effector_offset_; }
  int task_dim() const { return task_dim_; }
  Eigen::Index num_joints() const {
    return static_cast<Eigen::Index>(joints_.size());
  }

  void check_configuration(const Configuration& q) const {
    if (q.size() != num_joints()) {
      throw ConfigurationSizeError(
          "configuration has " + std::to_string(q.size()) +
          " entries, chain has " + std::to_string(num_joints()) + " joints");
    }
    if (!q.allFinite()) throw ConfigurationSizeError("configuration not finite");
  }

 private:
  std::vector<JointSpec> joints_;
  Vector3 end_effector_offset_;
  int task_dim_;
};

/// World-frame joint origins and axes plus the end point, all in meters.
struct ChainPose {
  std::vector<Vector3> joint_origins;
  std::vector<Vector3> joint_axes;
  Vector3 end_point = Vector3::Zero();
};

inline ChainPose forward_kinematics(const KinematicChain& chain,
                                    const Configuration& q) {
  chain.check_configuration(q);
  ChainPose pose;
  pose.joint_origins.reserve(chain.joints().size());
  pose.joint_axes.reserve(chain.joints().size());

  Matrix3 rotation = Matrix3::Identity();
  Vector3 position = Vector3::Zero();
  for (std::size_t i = 0; i < chain.joints().size(); ++i) {
    const JointSpec& joint = chain.joints()[i];
    position += rotation * joint.offset;
    const Vector3 axis = rotation * joint.axis;
    pose.joint_origins.push_back(position);
    pose.joint_axes.push_back(axis);
    rotation = rotation *
               Eigen::AngleAxisd(q[static_cast<Eigen::Index>(i)], joint.axis)
                   .toRotationMatrix();
  }
  pose.end_point = position + rotation * chain.end_effector_offset();
  return pose;
}

/// Translational Jacobian, task_dim x n.
inline Matrix jacobian(const KinematicChain& chain, const Configuration& q) {
  const ChainPose pose = forward_kinematics(chain, q);
  const Eigen::Index n = chain.num_joints();
  Matrix jac(chain.task_dim(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const Vector3 column =
        pose.joint_axes[k].cross(pose.end_point - pose.joint_origins[k]);
    jac.col(i) = column.head(chain.task_dim());
  }
  return jac;
}

/// Two-link planar arm: both joints about +z, links along the local x axis.
inline KinematicChain planar_two_link(double l1, double l2) {
  if (!(l1 > 0.0) || !(l2 > 0.0)) {
    throw ParameterError("link lengths must be positive");
  }
  std::vector<JointSpec> joints(2);
  joints[1].offset = Vector3(l1, 0.0, 0.0);
  return KinematicChain(std::move(joints), Vector3(l2, 0.0, 0.0), 2);
}

/// Three-joint arm: shoulder abduction/adduction, shoulder flexion/extension
/// and elbow flexion, shoulder at the origin.
///
/// Torso frame: x forward, z up, y toward the side the arm abducts to. At
/// q = 0 the arm hangs along -z. Joint 1 rotates about x; joints 2 and 3
/// rotate about the (rotated) -y axis so that positive flexion swings the
/// segment forward.
inline KinematicChain reduced_arm_model(double upper_arm_len,
                                        double forearm_len) {
  if (!(upper_arm_len > 0.0) || !(forearm_len > 0.0)) {
    throw ParameterError("segment lengths must be positive");
  }
  std::vector<JointSpec> joints(3);
  joints[0].axis = Vector3::UnitX();
  joints[1].axis = -Vector3::UnitY();
  joints[2].axis = -Vector3::UnitY();
  joints[2].offset = Vector3(0.0, 0.0, -upper_arm_len);
  return KinematicChain(std::move(joints), Vector3(0.0, 0.0, -forearm_len), 3);
}

}  // namespace manip
