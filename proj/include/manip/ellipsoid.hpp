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

/// @file ellipsoid.hpp
/// Manipulability core matrix, its eigen-structure, and the two directional
/// metrics built on it:
///
///   r(nu) = [ sum_{i, r_i != 0} cos^2(theta_i) / r_i^2 ]^(-1/2)
///   l(nu) = [ sum_i r_i^2 cos^2(theta_i) ]^(1/2)
///
/// where r_i are the principal radii, nu_i the principal axes and
/// cos(theta_i) = nu_i . nu. The first is the radius of the ellipsoid along
/// nu; the second is the radius of the pseudo-ellipsoid, the norm of the
/// principal radii projected onto nu.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "manip/types.hpp"

namespace manip {

/// Symmetric positive semidefinite joint-space weight (identity for the
/// velocity ellipsoid, an inverse mass matrix for the mobility tensor).
class WeightMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-10;
  static constexpr double kDefinitenessTolerance = 1e-10;

  explicit WeightMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
      throw WeightMatrixError("weight matrix must be square and non-empty");
    }
    if (!entries_.allFinite()) {
      throw WeightMatrixError("weight matrix must be finite");
    }
    const double scale = entries_.cwiseAbs().maxCoeff();
    const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTolerance * scale) {
      throw WeightMatrixError("weight matrix is not symmetric");
    }
    const Matrix sym = 0.5 * (entries_ + entries_.transpose());
    const Eigen::SelfAdjointEigenSolver<Matrix> solver(sym,
                                                       Eigen::EigenvaluesOnly);
    const Vector& ev = solver.eigenvalues();
    if (ev.minCoeff() < -kDefinitenessTolerance * std::max(ev.maxCoeff(), 0.0)) {
      throw WeightMatrixError("weight matrix is indefinite");
    }
  }

  static WeightMatrix identity(Eigen::Index n) {
    return WeightMatrix(Matrix::Identity(n, n));
  }

  const Matrix& matrix() const { return entries_; }
  Eigen::Index size() const { return entries_.rows(); }

 private:
  Matrix entries_;
};

class Ellipsoid {
 public:
  /// A radius counts as zero when r_i <= kRankTolerance * r_max.
  static constexpr double kRankTolerance = 1e-8;
  /// |nu_i . nu| at or below this counts as orthogonal to a lost dimension.
  static constexpr double kOrthogonalityTolerance = 1e-8;

  /// Eigen-decomposes a core matrix. The input is symmetrized first.
  /// Eigenpairs are sorted by descending eigenvalue; each eigenvector has
  /// its first nonzero component positive.
  static Ellipsoid from_core(const Matrix& core) {
    if (core.rows() == 0 || core.rows() != core.cols() || !core.allFinite()) {
      throw ValidationError("core matrix must be square, finite, non-empty");
    }
    Ellipsoid ell;
    ell.core_ = 0.5 * (core + core.transpose());
    const Eigen::SelfAdjointEigenSolver<Matrix> solver(ell.core_);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("eigen-decomposition failed");
    }
    Vector radii = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    ell.set_principal(radii, solver.eigenvectors());
    return ell;
  }

  /// Ellipsoid of core = F F^T with radii and axes from the singular values
  /// of the factor F. Radii of a rank-deficient product come out at roundoff
  /// level relative to r_max instead of its square root.
  static Ellipsoid from_factor(const Matrix& factor, const Matrix& core) {
    if (factor.rows() == 0 || factor.cols() == 0 || !factor.allFinite() ||
        core.rows() != factor.rows() || core.cols() != factor.rows()) {
      throw ValidationError("core factor must be finite and match the core");
    }
    const Eigen::Index m = factor.rows();
    Ellipsoid ell;
    ell.core_ = 0.5 * (core + core.transpose());
    const Eigen::JacobiSVD<Matrix> svd(factor, Eigen::ComputeFullU);
    Vector radii = Vector::Zero(m);
    radii.head(svd.singularValues().size()) = svd.singularValues();
    ell.set_principal(radii, svd.matrixU());
    return ell;
  }

  /// Builds an ellipsoid directly from radii and axes (columns). Used by
  /// tests and by callers that already hold an eigen-decomposition; no
  /// reordering is applied.
  static Ellipsoid from_principal(const Vector& radii, const Matrix& axes) {
    if (radii.size() == 0 || axes.rows() != radii.size() ||
        axes.cols() != radii.size()) {
      throw ValidationError("radii and axes dimensions disagree");
    }
    if ((radii.array() < 0.0).any() || !radii.allFinite()) {
      throw ValidationError("radii must be finite and non-negative");
    }
    Ellipsoid ell;
    ell.radii_ = radii;
    ell.axes_ = axes;
    ell.core_ = axes * radii.array().square().matrix().asDiagonal() *
                axes.transpose();
    ell.classify_zero_radii();
    return ell;
  }

  Eigen::Index dim() const { return radii_.size(); }
  const Matrix& core() const { return core_; }
  const Vector& radii() const { return radii_; }
  /// Principal axes as columns, matching `radii()` order.
  const Matrix& axes() const { return axes_; }
  double rank_tolerance() const { return kRankTolerance; }
  double max_radius() const { return radii_.maxCoeff(); }

  bool is_zero_radius(Eigen::Index i) const {
    return zero_[static_cast<std::size_t>(i)];
  }
  const std::vector<bool>& zero_radii() const { return zero_; }
  bool rank_deficient() const {
    return std::find(zero_.begin(), zero_.end(), true) != zero_.end();
  }

  /// cos(theta_i) = nu_i . nu for every principal axis.
  Vector direction_cosines(const Direction& dir) const {
    if (dir.dim() != dim()) {
      throw ConfigurationSizeError("direction dimension does not match ellipsoid");
    }
    return axes_.transpose() * dir.vector();
  }

 private:
  Ellipsoid() = default;

  template <typename Col>
  static void canonicalize_sign(Col&& v) {
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (std::abs(v[k]) > 1e-12) {
        if (v[k] < 0.0) v = -v;
        return;
      }
    }
  }

  // Canonical signs, descending order (ties broken lexicographically on the
  // axis components), zero classification.
  void set_principal(const Vector& radii, Matrix vectors) {
    const Eigen::Index m = radii.size();
    for (Eigen::Index i = 0; i < m; ++i) canonicalize_sign(vectors.col(i));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      if (radii[a] != radii[b]) return radii[a] > radii[b];
      for (Eigen::Index k = 0; k < m; ++k) {
        if (vectors(k, a) != vectors(k, b)) return vectors(k, a) > vectors(k, b);
      }
      return a < b;
    });
    radii_.resize(m);
    axes_.resize(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Index src = order[static_cast<std::size_t>(i)];
      radii_[i] = radii[src];
      axes_.col(i) = vectors.col(src);
    }
    classify_zero_radii();
  }

  void classify_zero_radii() {
    const double threshold = kRankTolerance * radii_.maxCoeff();
    zero_.assign(static_cast<std::size_t>(radii_.size()), false);
    for (Eigen::Index i = 0; i < radii_.size(); ++i) {
      zero_[static_cast<std::size_t>(i)] = radii_[i] <= threshold;
    }
  }

  Matrix core_;
  Vector radii_;
  Matrix axes_;
  std::vector<bool> zero_;
};

/// Lambda = J Upsilon J^T. Radii and axes come from the singular values of
/// J Upsilon^(1/2).
inline Ellipsoid core_matrix(const Matrix& jac, const WeightMatrix& upsilon) {
  if (jac.cols() != upsilon.size()) {
    throw WeightMatrixError("weight matrix is " + std::to_string(upsilon.size()) +
                            "x" + std::to_string(upsilon.size()) +
                            ", Jacobian has " + std::to_string(jac.cols()) +
                            " columns");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(upsilon.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("weight matrix decomposition failed");
  }
  const Matrix root = solver.eigenvectors() *
                      solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  return Ellipsoid::from_factor(jac * root, jac * upsilon.matrix() * jac.transpose());
}

inline Ellipsoid core_matrix(const Matrix& jac) {
  return core_matrix(jac, WeightMatrix::identity(jac.cols()));
}

/// Classical radius from per-axis radii and direction cosines. A zero
/// radius whose axis is not orthogonal to the direction yields 0.
inline double radius_from_profile(const Vector& radii, const Vector& cosines,
                                  const std::vector<bool>& zero) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    if (zero[static_cast<std::size_t>(i)]) {
      if (std::abs(cosines[i]) > Ellipsoid::kOrthogonalityTolerance) return 0.0;
      continue;
    }
    sum += (cosines[i] * cosines[i]) / (radii[i] * radii[i]);
  }
  if (!(sum > 0.0)) return 0.0;
  return 1.0 / std::sqrt(sum);
}

/// Pseudo-ellipsoid radius from per-axis radii and direction cosines.
inline double pseudo_radius_from_profile(const Vector& radii,
                                         const Vector& cosines) {
  return (radii.array() * cosines.array()).matrix().norm();
}

inline double radius_along(const Ellipsoid& ell, const Direction& dir) {
  return radius_from_profile(ell.radii(), ell.direction_cosines(dir),
                             ell.zero_radii());
}

/// l_i = |r_i nu_i . nu| in the ellipsoid's axis order.
inline Vector projection_lengths(const Ellipsoid& ell, const Direction& dir) {
  return (ell.radii().array() * ell.direction_cosines(dir).array()).abs();
}

inline double pseudo_radius_along(const Ellipsoid& ell, const Direction& dir) {
  return pseudo_radius_from_profile(ell.radii(), ell.direction_cosines(dir));
}

}  // namespace manip
