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

/// @file experiment.hpp
/// Synthetic noisy-configuration experiment on the three-joint arm.
///
/// Each trial synthesizes shoulder/elbow/wrist keypoints from a true
/// configuration, corrupts them with Gaussian noise, re-estimates the joint
/// angles and predicts the joint motion needed for a short straight hand
/// motion as displacement / r and displacement / l at the estimate. The
/// prediction is compared with the joint motion an inverse-kinematics
/// integrator actually needs at the true configuration.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "manip/chain.hpp"
#include "manip/ellipsoid.hpp"
#include "manip/parallel.hpp"

namespace manip {

struct KeypointFrame {
  Vector3 shoulder = Vector3::Zero();
  Vector3 elbow = Vector3::Zero();
  Vector3 wrist = Vector3::Zero();
};

struct NoiseModel {
  double sigma = 0.010;  // meters, per coordinate
  std::uint64_t seed = 0;
};

inline constexpr double kMinSegmentLength = 1e-6;
inline constexpr double kGimbalTolerance = 1e-9;

/// Throws unless `chain` has the layout produced by reduced_arm_model.
inline void check_reduced_arm(const KinematicChain& chain) {
  const auto fail = [] {
    throw ChainError("chain is not the three-joint shoulder/elbow arm");
  };
  if (chain.num_joints() != 3 || chain.task_dim() != 3) fail();
  const auto& j = chain.joints();
  constexpr double tol = 1e-12;
  if (!j[0].axis.isApprox(Vector3::UnitX(), tol) ||
      !j[1].axis.isApprox(-Vector3::UnitY(), tol) ||
      !j[2].axis.isApprox(-Vector3::UnitY(), tol)) {
    fail();
  }
  if (j[0].offset.norm() > tol || j[1].offset.norm() > tol) fail();
  const Vector3& upper = j[2].offset;
  const Vector3& fore = chain.end_effector_offset();
  if (upper.head<2>().norm() > tol || !(upper.z() < 0.0)) fail();
  if (fore.head<2>().norm() > tol || !(fore.z() < 0.0)) fail();
}

inline KeypointFrame keypoints_from_config(const KinematicChain& chain,
                                           const Configuration& q) {
  check_reduced_arm(chain);
  const ChainPose pose = forward_kinematics(chain, q);
  return {pose.joint_origins[0], pose.joint_origins[2], pose.end_point};
}

/// Joint angles from keypoints. With u the unit upper-arm vector,
/// u = (sin q2, sin q1 cos q2, -cos q1 cos q2); the elbow angle is the angle
/// between the upper-arm and forearm vectors (0 when extended). When u is
/// within kGimbalTolerance of the abduction axis, q1 is set to 0.
inline Configuration estimate_config(const KeypointFrame& frame,
                                     const KinematicChain& chain) {
  check_reduced_arm(chain);
  const Vector3 upper = frame.elbow - frame.shoulder;
  const Vector3 fore = frame.wrist - frame.elbow;
  if (!upper.allFinite() || !fore.allFinite() ||
      upper.norm() <= kMinSegmentLength || fore.norm() <= kMinSegmentLength) {
    throw EstimationError("keypoints give a degenerate arm segment");
  }
  const Vector3 u = upper.normalized();
  Configuration q(3);
  const double lateral = std::hypot(u.y(), u.z());
  q[1] = std::atan2(u.x(), lateral);
  q[0] = std::abs(u.x()) > 1.0 - kGimbalTolerance ? 0.0
                                                  : std::atan2(u.y(), -u.z());
  q[2] = std::atan2(upper.cross(fore).norm(), upper.dot(fore));
  return q;
}

struct IkOptions {
  int steps = 100;
  double damping = 1e-6;
  double max_step_norm = 0.5;     // radians per increment
  double target_tolerance = 1e-9; // meters, end-of-path residual
};

/// Integrates damped least-squares steps along a straight hand path of the
/// given length and returns ||q_end - q_start||. Each increment solves for
/// the residual to the path point, so errors do not accumulate.
inline double ground_truth_joint_motion(const KinematicChain& chain,
                                        const Configuration& q_start,
                                        const Direction& nu,
                                        double displacement,
                                        const IkOptions& options = {}) {
  chain.check_configuration(q_start);
  if (nu.dim() != chain.task_dim()) {
    throw ConfigurationSizeError("direction dimension does not match chain");
  }
  if (options.steps < 10) throw ParameterError("IK integration needs >= 10 steps");
  if (!(displacement >= 0.0) || !std::isfinite(displacement)) {
    throw ParameterError("displacement must be finite and non-negative");
  }
  const int m = chain.task_dim();
  auto end_point = [&](const Configuration& q) -> Vector {
    return forward_kinematics(chain, q).end_point.head(m);
  };
  const Vector start = end_point(q_start);
  const Matrix damping = options.damping * Matrix::Identity(m, m);

  Configuration q = q_start;
  auto solve_step = [&](const Vector& target) {
    const Matrix jac = jacobian(chain, q);
    const Vector residual = target - end_point(q);
    const Vector dq =
        jac.transpose() * (jac * jac.transpose() + damping).ldlt().solve(residual);
    if (!dq.allFinite() || dq.norm() > options.max_step_norm) {
      throw PathInfeasibleError("IK increment diverged along the hand path");
    }
    q += dq;
  };
  for (int k = 1; k <= options.steps; ++k) {
    solve_step(start + nu.vector() * (displacement * k / options.steps));
  }
  const Vector target = start + nu.vector() * displacement;
  for (int it = 0; it < 20 && (end_point(q) - target).norm() > 1e-14; ++it) {
    solve_step(target);
  }
  if ((end_point(q) - target).norm() > options.target_tolerance) {
    throw PathInfeasibleError("hand path end is not reachable");
  }
  return (q - q_start).norm();
}

inline constexpr int kClockDirections = 7;

/// Horizontal unit vectors for clock hours 3..9 (index 0 = hour 3) at 30
/// degree steps; hour 6 points along +x (away from the subject), hour 3
/// along +y.
inline std::array<Direction, kClockDirections> clock_directions() {
  auto make = [](int hour) {
    const double a = deg_to_rad(30.0 * (6 - hour));
    return Direction::normalized(Vector3(std::cos(a), std::sin(a), 0.0));
  };
  return {make(3), make(4), make(5), make(6), make(7), make(8), make(9)};
}

struct StartConfiguration {
  int id = 0;
  Configuration q;
};

/// Elbow nearly extended (q4 = 10 deg) with the arm hanging, so every clock
/// direction is close to orthogonal to the singular (radial) axis.
inline StartConfiguration near_singular_start() {
  return {1, Vector3(0.0, deg_to_rad(-5.0), deg_to_rad(10.0))};
}

/// Upper arm hanging, forearm horizontal (q4 = 90 deg).
inline StartConfiguration well_conditioned_start() {
  return {2, Vector3(0.0, 0.0, deg_to_rad(90.0))};
}

struct ExperimentTrial {
  int config_id = 0;
  int direction_index = 0;  // 1..7, clock hours 3..9
  int draw = 0;
  Vector3 nu = Vector3::Zero();
  Configuration q_true;
  Configuration q_est;
  double delta_r = 0.0;       // radians; +inf when r = 0 at the estimate
  double delta_l = 0.0;       // radians
  double dq_norm_true = 0.0;  // radians
  double displacement = 0.0;  // meters
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct ConfigSummary {
  int config_id = 0;
  int trials = 0;
  int infinite_delta_r = 0;  // excluded from every r statistic
  double mean_dq_true_deg = 0.0;
  double mean_abs_err_r_deg = 0.0;
  double mean_abs_err_l_deg = 0.0;
  Interval ci_err_r_deg;
  Interval ci_err_l_deg;
  /// Paired difference |delta_r - dq| - |delta_l - dq|.
  double mean_err_diff_deg = 0.0;
  Interval ci_err_diff_deg;
};

struct ExperimentOptions {
  NoiseModel noise;
  double displacement = 0.02;  // meters
  int draws = 1000;
  IkOptions ik;
  int bootstrap_resamples = 2000;
  double confidence = 0.99;
  unsigned threads = 0;
};

struct ExperimentResult {
  std::vector<ExperimentTrial> trials;  // config, direction, draw order
  std::vector<ConfigSummary> summaries; // one per start configuration
};

namespace detail {

inline std::mt19937_64 stream_for(std::uint64_t seed, std::uint64_t a,
                                  std::uint64_t b, std::uint64_t c) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(a), hi(a), lo(b), lo(c), hi(c)};
  return std::mt19937_64(seq);
}

inline double quantile(std::vector<double> sorted_values, double p) {
  std::sort(sorted_values.begin(), sorted_values.end());
  const double pos = p * static_cast<double>(sorted_values.size() - 1);
  const auto below = static_cast<std::size_t>(std::floor(pos));
  const auto above = std::min(below + 1, sorted_values.size() - 1);
  const double t = pos - static_cast<double>(below);
  return sorted_values[below] * (1.0 - t) + sorted_values[above] * t;
}

/// Percentile bootstrap intervals for the means of several paired columns
/// (each resample draws the same row indices for every column).
inline std::vector<Interval> bootstrap_means(
    const std::vector<std::vector<double>>& columns, int resamples,
    double confidence, std::mt19937_64& gen) {
  std::vector<Interval> out(columns.size());
  if (columns.empty() || columns[0].empty()) return out;
  const std::size_t n = columns[0].size();
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::vector<double>> means(columns.size(),
                                         std::vector<double>(static_cast<std::size_t>(resamples)));
  std::vector<double> sums(columns.size());
  for (int b = 0; b < resamples; ++b) {
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t row = pick(gen);
      for (std::size_t c = 0; c < columns.size(); ++c) sums[c] += columns[c][row];
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
      means[c][static_cast<std::size_t>(b)] = sums[c] / static_cast<double>(n);
    }
  }
  const double tail = 0.5 * (1.0 - confidence);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out[c] = {quantile(means[c], tail), quantile(means[c], 1.0 - tail)};
  }
  return out;
}

inline double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace detail

inline ConfigSummary summarize_trials(const std::vector<ExperimentTrial>& trials,
                                      int config_id,
                                      const ExperimentOptions& options) {
  ConfigSummary summary;
  summary.config_id = config_id;
  std::vector<double> dq_all;
  std::vector<double> err_r;
  std::vector<double> err_l;
  std::vector<double> diff;
  for (const ExperimentTrial& t : trials) {
    if (t.config_id != config_id) continue;
    ++summary.trials;
    dq_all.push_back(rad_to_deg(t.dq_norm_true));
    if (!std::isfinite(t.delta_r)) {
      ++summary.infinite_delta_r;
      continue;
    }
    const double er = rad_to_deg(std::abs(t.delta_r - t.dq_norm_true));
    const double el = rad_to_deg(std::abs(t.delta_l - t.dq_norm_true));
    err_r.push_back(er);
    err_l.push_back(el);
    diff.push_back(er - el);
  }
  summary.mean_dq_true_deg = detail::mean(dq_all);
  summary.mean_abs_err_r_deg = detail::mean(err_r);
  summary.mean_abs_err_l_deg = detail::mean(err_l);
  summary.mean_err_diff_deg = detail::mean(diff);

  auto gen = detail::stream_for(options.noise.seed,
                                static_cast<std::uint64_t>(config_id),
                                0xB007u, 0u);
  const auto ci = detail::bootstrap_means({err_r, err_l, diff},
                                          options.bootstrap_resamples,
                                          options.confidence, gen);
  summary.ci_err_r_deg = ci[0];
  summary.ci_err_l_deg = ci[1];
  summary.ci_err_diff_deg = ci[2];
  return summary;
}

inline ExperimentResult run_trials(const KinematicChain& chain,
                                   const std::vector<StartConfiguration>& starts,
                                   const ExperimentOptions& options) {
  check_reduced_arm(chain);
  if (options.draws < 1) throw ParameterError("need at least one draw");
  if (!(options.displacement > 0.0) || !std::isfinite(options.displacement)) {
    throw ParameterError("displacement must be positive");
  }
  if (!(options.noise.sigma >= 0.0) || !std::isfinite(options.noise.sigma)) {
    throw ParameterError("noise sigma must be non-negative");
  }
  if (options.bootstrap_resamples < 1 || !(options.confidence > 0.0) ||
      !(options.confidence < 1.0)) {
    throw ParameterError("invalid bootstrap settings");
  }
  if (starts.empty()) throw ParameterError("no start configurations");

  const auto dirs = clock_directions();
  const std::size_t per_config =
      static_cast<std::size_t>(kClockDirections) *
      static_cast<std::size_t>(options.draws);

  // Ground truth depends only on (configuration, direction).
  std::vector<double> truth(starts.size() * kClockDirections);
  parallel_for(truth.size(), options.threads, [&](std::size_t idx) {
    const std::size_t c = idx / kClockDirections;
    const std::size_t d = idx % kClockDirections;
    truth[idx] = ground_truth_joint_motion(chain, starts[c].q, dirs[d],
                                           options.displacement, options.ik);
  });

  ExperimentResult result;
  result.trials.resize(starts.size() * per_config);
  parallel_for(result.trials.size(), options.threads, [&](std::size_t idx) {
    const std::size_t c = idx / per_config;
    const std::size_t rest = idx % per_config;
    const std::size_t d = rest / static_cast<std::size_t>(options.draws);
    const std::size_t k = rest % static_cast<std::size_t>(options.draws);

    ExperimentTrial& t = result.trials[idx];
    t.config_id = starts[c].id;
    t.direction_index = static_cast<int>(d) + 1;
    t.draw = static_cast<int>(k);
    t.nu = dirs[d].vector();
    t.q_true = starts[c].q;
    t.displacement = options.displacement;
    t.dq_norm_true = truth[c * kClockDirections + d];

    KeypointFrame frame = keypoints_from_config(chain, t.q_true);
    if (options.noise.sigma > 0.0) {
      auto gen = detail::stream_for(options.noise.seed, c, d, k);
      std::normal_distribution<double> noise(0.0, options.noise.sigma);
      for (Vector3* p : {&frame.shoulder, &frame.elbow, &frame.wrist}) {
        for (int axis = 0; axis < 3; ++axis) (*p)[axis] += noise(gen);
      }
    }
    t.q_est = estimate_config(frame, chain);
    const Ellipsoid ell = core_matrix(jacobian(chain, t.q_est));
    const double r = radius_along(ell, dirs[d]);
    const double l = pseudo_radius_along(ell, dirs[d]);
    constexpr double inf = std::numeric_limits<double>::infinity();
    t.delta_r = r > 0.0 ? options.displacement / r : inf;
    t.delta_l = l > 0.0 ? options.displacement / l : inf;
  });

  for (const StartConfiguration& s : starts) {
    result.summaries.push_back(summarize_trials(result.trials, s.id, options));
  }
  return result;
}

}  // namespace manip
