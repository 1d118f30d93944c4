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

#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace manip {

using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Joint-space configuration q, radians.
using Configuration = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs that violate a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The numbers are valid but the requested quantity does not exist
/// (singular sensitivities, infeasible paths, degenerate directions).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigurationSizeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ChainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class WeightMatrixError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParameterError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EstimationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SingularSensitivityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateDirectionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class PathInfeasibleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Unit task-space direction. Construction rejects vectors that are not
/// unit length within 1e-12; use `normalized` to accept arbitrary input.
class Direction {
 public:
  static constexpr double kUnitTolerance = 1e-12;

  explicit Direction(Vector nu) : nu_(std::move(nu)) {
    if (nu_.size() == 0 || !nu_.allFinite() ||
        std::abs(nu_.norm() - 1.0) > kUnitTolerance) {
      throw ParameterError("direction must be a finite unit vector");
    }
  }

  static Direction normalized(const Vector& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !v.allFinite()) {
      throw ParameterError("direction must be a finite nonzero vector");
    }
    return Direction(v / n);
  }

  const Vector& vector() const { return nu_; }
  Eigen::Index dim() const { return nu_.size(); }

 private:
  Vector nu_;
};

}  // namespace manip
