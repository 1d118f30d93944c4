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

/// @file sweep.hpp
/// Worst-case metric deviation over a grid of joint-angle estimation errors.
///
/// For every offset (dq1, dq2) applied to the first two joints, the metrics
/// of the perturbed configuration are compared with those of the true one
/// along a fixed set of sampled directions, and the largest |dr| and |dl|
/// over directions is stored.

#pragma once

#include <cmath>
#include <vector>

#include "manip/chain.hpp"
#include "manip/ellipsoid.hpp"
#include "manip/parallel.hpp"

namespace manip {

inline constexpr int kDefaultPlanarDirections = 720;
inline constexpr int kDefaultSpatialDirections = 1024;
inline constexpr int kMinSweepDirections = 64;

/// Uniform angles on the circle (m = 2) or a Fibonacci sphere (m = 3).
inline std::vector<Direction> sample_directions(int dim, int count) {
  if (count < 1) throw ParameterError("direction count must be positive");
  std::vector<Direction> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  if (dim == 2) {
    for (int k = 0; k < count; ++k) {
      const double a = 2.0 * kPi * k / count;
      dirs.emplace_back(Direction::normalized(Eigen::Vector2d(std::cos(a), std::sin(a))));
    }
  } else if (dim == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / count;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * k;
      dirs.emplace_back(Direction::normalized(
          Vector3(rho * std::cos(a), rho * std::sin(a), z)));
    }
  } else {
    throw ParameterError("directions can only be sampled in 2 or 3 dimensions");
  }
  return dirs;
}

inline int default_direction_samples(int dim) {
  return dim == 2 ? kDefaultPlanarDirections : kDefaultSpatialDirections;
}

struct SweepGrid {
  std::vector<double> delta_q1;  // radians
  std::vector<double> delta_q2;  // radians
  Matrix max_abs_dr;             // rows follow delta_q1, columns delta_q2
  Matrix max_abs_dl;
  Configuration base_config;
  int direction_samples = 0;
  /// Directions left out of the r grid because the true r is zero there.
  int skipped_directions = 0;
};

struct SweepOptions {
  double range = deg_to_rad(5.0);  // radians, symmetric about the truth
  int grid_n = 21;
  int direction_samples = 0;       // 0 selects the per-dimension default
  unsigned threads = 0;            // 0 selects default_thread_count()
};

/// Grid offsets step * (k - c), c = (n - 1) / 2. Using integer multiples of
/// one step keeps nested grids with equal step bitwise identical.
inline std::vector<double> sweep_offsets(double range, int grid_n) {
  const int c = (grid_n - 1) / 2;
  const double step = range / c;
  std::vector<double> offsets(static_cast<std::size_t>(grid_n));
  for (int k = 0; k < grid_n; ++k) offsets[static_cast<std::size_t>(k)] = step * (k - c);
  return offsets;
}

inline SweepGrid perturbation_sweep(const KinematicChain& chain,
                                    const Configuration& true_config,
                                    const SweepOptions& options,
                                    const WeightMatrix& upsilon) {
  chain.check_configuration(true_config);
  if (chain.num_joints() < 2) {
    throw ParameterError("sweep perturbs two joints; chain has fewer");
  }
  if (options.grid_n < 3 || options.grid_n % 2 == 0) {
    throw ParameterError("grid size must be odd and at least 3");
  }
  if (!(options.range >= 0.0) || !std::isfinite(options.range)) {
    throw ParameterError("perturbation range must be finite and non-negative");
  }
  const int dim = chain.task_dim();
  const int dir_count = options.direction_samples > 0
                            ? options.direction_samples
                            : default_direction_samples(dim);
  if (dir_count < kMinSweepDirections) {
    throw ParameterError("sweep needs at least " +
                         std::to_string(kMinSweepDirections) + " directions");
  }
  if (upsilon.size() != chain.num_joints()) {
    throw WeightMatrixError("weight matrix size does not match chain");
  }

  const std::vector<Direction> dirs = sample_directions(dim, dir_count);
  const Ellipsoid ideal = core_matrix(jacobian(chain, true_config), upsilon);
  std::vector<double> ideal_r(dirs.size());
  std::vector<double> ideal_l(dirs.size());
  std::vector<char> use_r(dirs.size());
  int skipped = 0;
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    ideal_r[d] = radius_along(ideal, dirs[d]);
    ideal_l[d] = pseudo_radius_along(ideal, dirs[d]);
    use_r[d] = ideal_r[d] > 0.0;
    if (!use_r[d]) ++skipped;
  }

  SweepGrid grid;
  grid.base_config = true_config;
  grid.direction_samples = dir_count;
  grid.skipped_directions = skipped;
  grid.delta_q1 = sweep_offsets(options.range, options.grid_n);
  grid.delta_q2 = grid.delta_q1;
  const auto n = static_cast<Eigen::Index>(options.grid_n);
  grid.max_abs_dr = Matrix::Zero(n, n);
  grid.max_abs_dl = Matrix::Zero(n, n);

  parallel_for(static_cast<std::size_t>(n * n), options.threads,
               [&](std::size_t cell) {
                 const auto i = static_cast<Eigen::Index>(cell) / n;
                 const auto j = static_cast<Eigen::Index>(cell) % n;
                 Configuration q = true_config;
                 q[0] += grid.delta_q1[static_cast<std::size_t>(i)];
                 q[1] += grid.delta_q2[static_cast<std::size_t>(j)];
                 const Ellipsoid est = core_matrix(jacobian(chain, q), upsilon);
                 double worst_r = 0.0;
                 double worst_l = 0.0;
                 for (std::size_t d = 0; d < dirs.size(); ++d) {
                   if (use_r[d]) {
                     worst_r = std::max(
                         worst_r, std::abs(ideal_r[d] - radius_along(est, dirs[d])));
                   }
                   worst_l = std::max(
                       worst_l,
                       std::abs(ideal_l[d] - pseudo_radius_along(est, dirs[d])));
                 }
                 grid.max_abs_dr(i, j) = worst_r;
                 grid.max_abs_dl(i, j) = worst_l;
               });
  return grid;
}

inline SweepGrid perturbation_sweep(const KinematicChain& chain,
                                    const Configuration& true_config,
                                    const SweepOptions& options = {}) {
  return perturbation_sweep(chain, true_config, options,
                            WeightMatrix::identity(chain.num_joints()));
}

}  // namespace manip
