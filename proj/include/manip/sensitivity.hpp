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

/// @file sensitivity.hpp
/// First-order sensitivity of the directional metrics with respect to the
/// principal radii r_i and the angles theta_i between nu and each axis.
///
/// With U_r = sum cos^2(theta_i) / r_i^2 and U_l = sum r_i^2 cos^2(theta_i),
/// r = U_r^(-1/2) and l = U_l^(1/2), so
///
///   dr/dr_i     =  r^3 cos^2(theta_i) / r_i^3
///   dl/dr_i     =  r_i cos^2(theta_i) / l
///   dr/dtheta_i =  r^3 sin(2 theta_i) / (2 r_i^2)
///   dl/dtheta_i = -r_i^2 sin(2 theta_i) / (2 l)
///
/// The r partials carry r_i in the denominator and blow up as the core loses
/// rank; the l partials stay bounded.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "manip/ellipsoid.hpp"

namespace manip {

struct AxisSensitivity {
  double angle = 0.0;        // theta_i, radians
  double dr_dradius = 0.0;   // dimensionless
  double dl_dradius = 0.0;   // dimensionless
  double dr_dangle = 0.0;    // length / radian
  double dl_dangle = 0.0;    // length / radian
};

struct SensitivityReport {
  std::vector<AxisSensitivity> axes;  // ellipsoid axis order
  double u_r = 0.0;                   // 1 / length^2
  double u_l = 0.0;                   // length^2
  double r = 0.0;
  double l = 0.0;
};

namespace detail {

inline Vector checked_cosines(const Ellipsoid& ell, const Direction& dir) {
  if (ell.rank_deficient()) {
    throw SingularSensitivityError(
        "sensitivities of r are unbounded for a rank-deficient core");
  }
  Vector cosines = ell.direction_cosines(dir);
  return cosines.cwiseMax(-1.0).cwiseMin(1.0);
}

inline void fill_metrics(const Vector& radii, const Vector& cosines,
                         SensitivityReport& report) {
  report.u_r = (cosines.array().square() / radii.array().square()).sum();
  report.u_l = (radii.array().square() * cosines.array().square()).sum();
  report.r = 1.0 / std::sqrt(report.u_r);
  report.l = std::sqrt(report.u_l);
  if (!(report.l > 0.0)) {
    throw DegenerateDirectionError("pseudo-radius is zero along direction");
  }
}

}  // namespace detail

inline SensitivityReport analytic_partials(const Ellipsoid& ell,
                                           const Direction& dir) {
  const Vector cosines = detail::checked_cosines(ell, dir);
  const Vector& radii = ell.radii();
  SensitivityReport report;
  detail::fill_metrics(radii, cosines, report);

  const double r = report.r;
  const double l = report.l;
  const double r3 = r * r * r;
  report.axes.resize(static_cast<std::size_t>(radii.size()));
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    AxisSensitivity& a = report.axes[static_cast<std::size_t>(i)];
    const double ri = radii[i];
    const double c = cosines[i];
    a.angle = std::acos(c);
    const double s2 = std::sin(2.0 * a.angle);
    a.dr_dradius = r3 * c * c / (ri * ri * ri);
    a.dl_dradius = ri * c * c / l;
    a.dr_dangle = r3 * s2 / (2.0 * ri * ri);
    a.dl_dangle = -ri * ri * s2 / (2.0 * l);
  }
  return report;
}

/// Central differences of r and l in the (r_i, theta_i) parameters. A radius
/// perturbation scales one principal radius; an angle perturbation rotates
/// the single axis nu_i within its plane with nu, so cos(theta_i) becomes
/// cos(theta_i +/- step) while every other direction cosine is held.
inline SensitivityReport finite_difference_partials(const Ellipsoid& ell,
                                                    const Direction& dir,
                                                    double step) {
  if (!(step > 0.0) || step > 1e-3) {
    throw ParameterError("finite-difference step must lie in (0, 1e-3]");
  }
  const Vector cosines = detail::checked_cosines(ell, dir);
  const Vector& radii = ell.radii();
  SensitivityReport report;
  detail::fill_metrics(radii, cosines, report);

  const std::vector<bool> none_zero(static_cast<std::size_t>(radii.size()),
                                    false);
  auto r_of = [&](const Vector& rad, const Vector& cos) {
    return radius_from_profile(rad, cos, none_zero);
  };
  auto l_of = [&](const Vector& rad, const Vector& cos) {
    return pseudo_radius_from_profile(rad, cos);
  };

  report.axes.resize(static_cast<std::size_t>(radii.size()));
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    AxisSensitivity& a = report.axes[static_cast<std::size_t>(i)];
    a.angle = std::acos(cosines[i]);

    Vector up = radii;
    Vector down = radii;
    up[i] += step;
    down[i] -= step;
    a.dr_dradius = (r_of(up, cosines) - r_of(down, cosines)) / (2.0 * step);
    a.dl_dradius = (l_of(up, cosines) - l_of(down, cosines)) / (2.0 * step);

    Vector cos_up = cosines;
    Vector cos_down = cosines;
    cos_up[i] = std::cos(a.angle + step);
    cos_down[i] = std::cos(a.angle - step);
    a.dr_dangle = (r_of(radii, cos_up) - r_of(radii, cos_down)) / (2.0 * step);
    a.dl_dangle = (l_of(radii, cos_up) - l_of(radii, cos_down)) / (2.0 * step);
  }
  return report;
}

/// Agreement test used for analytic vs. finite-difference checks:
/// |a - b| <= max(abs_floor, rel * |a|).
inline bool partials_agree(double analytic, double numeric,
                           double rel = 1e-4, double abs_floor = 1e-6) {
  return std::abs(analytic - numeric) <=
         std::max(abs_floor, rel * std::abs(analytic));
}

}  // namespace manip
