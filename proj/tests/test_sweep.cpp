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

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

namespace manip {
namespace {

const KinematicChain kArm = planar_two_link(0.3, 0.3);

Configuration planar_q(double q1_deg, double q2_deg) {
  return Eigen::Vector2d(deg_to_rad(q1_deg), deg_to_rad(q2_deg));
}

TEST(SampleDirections, CircleAndSphere) {
  const auto circle = sample_directions(2, 720);
  ASSERT_EQ(circle.size(), 720u);
  EXPECT_NEAR(circle[0].vector()[0], 1.0, 1e-15);
  EXPECT_NEAR(circle[180].vector()[1], 1.0, 1e-15);
  const auto sphere = sample_directions(3, 1024);
  ASSERT_EQ(sphere.size(), 1024u);
  Vector3 mean = Vector3::Zero();
  for (const auto& d : sphere) {
    EXPECT_NEAR(d.vector().norm(), 1.0, 1e-12);
    mean += d.vector();
  }
  EXPECT_LT((mean / 1024.0).norm(), 1e-2);
  EXPECT_THROW(sample_directions(4, 10), ParameterError);
  EXPECT_THROW(sample_directions(2, 0), ParameterError);
}

TEST(SweepOffsets, CenteredAndSymmetric) {
  const auto off = sweep_offsets(deg_to_rad(5.0), 21);
  ASSERT_EQ(off.size(), 21u);
  EXPECT_EQ(off[10], 0.0);
  EXPECT_NEAR(off[0], -deg_to_rad(5.0), 1e-15);
  EXPECT_NEAR(off[20], deg_to_rad(5.0), 1e-15);
  for (std::size_t k = 0; k < 21; ++k) EXPECT_EQ(off[k], -off[20 - k]);
}

TEST(PerturbationSweep, ZeroRangeGivesZeroGrid) {
  SweepOptions opt;
  opt.range = 0.0;
  const SweepGrid g = perturbation_sweep(kArm, planar_q(30, 10), opt);
  EXPECT_EQ(g.max_abs_dr.maxCoeff(), 0.0);
  EXPECT_EQ(g.max_abs_dl.maxCoeff(), 0.0);
}

TEST(PerturbationSweep, CenterCellIsZero) {
  const SweepGrid g = perturbation_sweep(kArm, planar_q(30, 10), SweepOptions{});
  EXPECT_EQ(g.max_abs_dr(10, 10), 0.0);
  EXPECT_EQ(g.max_abs_dl(10, 10), 0.0);
  EXPECT_EQ(g.direction_samples, 720);
  EXPECT_EQ(g.skipped_directions, 0);
}

TEST(PerturbationSweep, RejectsBadOptions) {
  SweepOptions even;
  even.grid_n = 20;
  EXPECT_THROW(perturbation_sweep(kArm, planar_q(30, 10), even), ParameterError);
  SweepOptions tiny;
  tiny.grid_n = 1;
  EXPECT_THROW(perturbation_sweep(kArm, planar_q(30, 10), tiny), ParameterError);
  SweepOptions few;
  few.direction_samples = 63;
  EXPECT_THROW(perturbation_sweep(kArm, planar_q(30, 10), few), ParameterError);
  SweepOptions neg;
  neg.range = -0.1;
  EXPECT_THROW(perturbation_sweep(kArm, planar_q(30, 10), neg), ParameterError);
  EXPECT_THROW(perturbation_sweep(kArm, Eigen::Vector3d(0, 0, 0), SweepOptions{}),
               ConfigurationSizeError);
  EXPECT_THROW(perturbation_sweep(kArm, planar_q(30, 10), SweepOptions{},
                                  WeightMatrix::identity(3)),
               WeightMatrixError);
}

TEST(PerturbationSweep, MatchesDirectBruteForce) {
  // Independent recomputation of a few cells with an explicit direction scan.
  const Configuration q = planar_q(30, 10);
  SweepOptions opt;
  opt.grid_n = 5;
  opt.direction_samples = 360;
  const SweepGrid g = perturbation_sweep(kArm, q, opt);
  const Matrix core_true = [&] {
    const Matrix j = testing::fd_jacobian(kArm, q);
    return Matrix(j * j.transpose());
  }();
  for (int i = 0; i < 5; ++i) {
    for (int k = 0; k < 5; ++k) {
      Configuration qe = q;
      qe[0] += g.delta_q1[static_cast<std::size_t>(i)];
      qe[1] += g.delta_q2[static_cast<std::size_t>(k)];
      const Matrix j = testing::fd_jacobian(kArm, qe);
      const Matrix core = j * j.transpose();
      double dr = 0.0, dl = 0.0;
      for (int d = 0; d < 360; ++d) {
        const double a = 2.0 * kPi * d / 360;
        const Vector nu = Eigen::Vector2d(std::cos(a), std::sin(a));
        dr = std::max(dr, std::abs(testing::radius_oracle(core, nu) -
                                   testing::radius_oracle(core_true, nu)));
        dl = std::max(dl, std::abs(testing::pseudo_radius_oracle(core, nu) -
                                   testing::pseudo_radius_oracle(core_true, nu)));
      }
      EXPECT_NEAR(g.max_abs_dr(i, k), dr, 1e-7);
      EXPECT_NEAR(g.max_abs_dl(i, k), dl, 1e-7);
    }
  }
}

TEST(PerturbationSweep, NearSingularMaximaFrozen) {
  // Reference maxima from a 2880-direction scan of the same grid.
  const SweepGrid g = perturbation_sweep(kArm, planar_q(30, 10), SweepOptions{});
  const double dr = g.max_abs_dr.maxCoeff();
  const double dl = g.max_abs_dl.maxCoeff();
  EXPECT_NEAR(dr, 0.58494831703203587, 1e-4);
  EXPECT_NEAR(dl, 0.092694930705653655, 1e-5);
  EXPECT_LE(dr, 0.58494831703203587 + 1e-12);
  EXPECT_LE(dl, 0.092694930705653655 + 1e-12);
  EXPECT_GT(dr / dl, 6.0);
}

TEST(PerturbationSweep, WellConditionedRatioBelowFive) {
  const SweepGrid g = perturbation_sweep(kArm, planar_q(30, 90), SweepOptions{});
  const double ratio = g.max_abs_dr.maxCoeff() / g.max_abs_dl.maxCoeff();
  EXPECT_NEAR(g.max_abs_dr.maxCoeff(), 0.076033286393407451, 1e-5);
  EXPECT_NEAR(g.max_abs_dl.maxCoeff(), 0.055083054993200542, 1e-5);
  EXPECT_LT(ratio, 5.0);
}

TEST(PerturbationSweep, DeltaRGrowsTowardSingularity) {
  const SweepGrid near = perturbation_sweep(kArm, planar_q(30, 10), SweepOptions{});
  const SweepGrid well = perturbation_sweep(kArm, planar_q(30, 90), SweepOptions{});
  EXPECT_GT(near.max_abs_dr.maxCoeff(), 5.0 * well.max_abs_dr.maxCoeff());
  const double near_ratio = near.max_abs_dr.maxCoeff() / near.max_abs_dl.maxCoeff();
  const double well_ratio = well.max_abs_dr.maxCoeff() / well.max_abs_dl.maxCoeff();
  EXPECT_GT(near_ratio, 4.0 * well_ratio);
}

TEST(PerturbationSweep, NestedGridsAgreeAndMaxIsMonotone) {
  const Configuration q = planar_q(30, 40);
  SweepOptions small;
  small.range = deg_to_rad(2.0);
  small.grid_n = 5;
  small.direction_samples = 128;
  SweepOptions large = small;
  large.range = deg_to_rad(4.0);
  large.grid_n = 9;
  const SweepGrid a = perturbation_sweep(kArm, q, small);
  const SweepGrid b = perturbation_sweep(kArm, q, large);
  for (int i = 0; i < 5; ++i) {
    for (int k = 0; k < 5; ++k) {
      EXPECT_EQ(a.max_abs_dr(i, k), b.max_abs_dr(i + 2, k + 2));
      EXPECT_EQ(a.max_abs_dl(i, k), b.max_abs_dl(i + 2, k + 2));
    }
  }
  EXPECT_GE(b.max_abs_dr.maxCoeff(), a.max_abs_dr.maxCoeff());
  EXPECT_GE(b.max_abs_dl.maxCoeff(), a.max_abs_dl.maxCoeff());
}

TEST(PerturbationSweep, ThreadCountDoesNotChangeResult) {
  SweepOptions one;
  one.threads = 1;
  SweepOptions four;
  four.threads = 4;
  const SweepGrid a = perturbation_sweep(kArm, planar_q(30, 10), one);
  const SweepGrid b = perturbation_sweep(kArm, planar_q(30, 10), four);
  EXPECT_TRUE(a.max_abs_dr == b.max_abs_dr);
  EXPECT_TRUE(a.max_abs_dl == b.max_abs_dl);
}

TEST(PerturbationSweep, SingularTruthSkipsZeroRadiusDirections) {
  const SweepGrid g = perturbation_sweep(kArm, planar_q(0, 0), SweepOptions{});
  EXPECT_GT(g.skipped_directions, 0);
  EXPECT_LT(g.skipped_directions, 720);
  EXPECT_TRUE(g.max_abs_dr.allFinite());
}

TEST(PerturbationSweep, WeightedAndSpatial) {
  Matrix w(2, 2);
  w << 2.0, 0.0, 0.0, 0.5;
  SweepOptions opt;
  opt.grid_n = 3;
  const SweepGrid g = perturbation_sweep(kArm, planar_q(30, 60), opt, WeightMatrix(w));
  EXPECT_GT(g.max_abs_dl.maxCoeff(), 0.0);

  const KinematicChain arm3 = reduced_arm_model(0.30, 0.28);
  SweepOptions opt3;
  opt3.grid_n = 3;
  const SweepGrid g3 = perturbation_sweep(arm3, Eigen::Vector3d(0.2, 0.3, 1.0), opt3);
  EXPECT_EQ(g3.direction_samples, 1024);
  EXPECT_GT(g3.max_abs_dr.maxCoeff(), 0.0);
}

}  // namespace
}  // namespace manip
