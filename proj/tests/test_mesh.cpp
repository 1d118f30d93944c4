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

#include <random>
#include <sstream>

#include "test_support.hpp"

namespace manip {
namespace {

Ellipsoid principal3(double a, double b, double c) {
  return Ellipsoid::from_principal(Vector3(a, b, c), Matrix::Identity(3, 3));
}

double distance_along_vertex(const Ellipsoid& ell, const Vector& v, bool pseudo) {
  const Direction nu = Direction::normalized(v);
  return pseudo ? pseudo_radius_along(ell, nu) : radius_along(ell, nu);
}

TEST(EllipsoidMesh, SphereVerticesAtUnitDistance) {
  const Ellipsoid sphere = principal3(1, 1, 1);
  for (bool pseudo : {false, true}) {
    const auto mesh = std::get<SurfaceMesh>(ellipsoid_mesh(sphere, pseudo, 32));
    for (const Vector3& v : mesh.vertices) EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  }
}

TEST(EllipsoidMesh, PrincipalAxisVertex) {
  const Ellipsoid ell = principal3(2, 1, 1);
  const auto mesh = std::get<SurfaceMesh>(ellipsoid_mesh(ell, false, 16));
  bool found = false;
  for (const Vector3& v : mesh.vertices) {
    if ((v - Vector3(2, 0, 0)).norm() < 1e-12) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(EllipsoidMesh, PseudoVertexAtFortyFiveDegrees) {
  const Ellipsoid ell = principal3(2, 1, 1);
  const auto mesh = std::get<SurfaceMesh>(ellipsoid_mesh(ell, true, 16));
  const Vector3 dir = Vector3(1, 1, 0).normalized();
  bool found = false;
  for (const Vector3& v : mesh.vertices) {
    if (v.norm() > 0 && (v.normalized() - dir).norm() < 1e-12) {
      EXPECT_NEAR(v.norm(), std::sqrt(2.0 + 0.5), 1e-12);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(EllipsoidMesh, VerticesSatisfyRadiusFormula) {
  std::mt19937_64 gen(21);
  for (int m : {2, 3}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Ellipsoid ell = Ellipsoid::from_core(testing::random_core(m, gen));
      for (bool pseudo : {false, true}) {
        const EllipsoidMesh mesh = ellipsoid_mesh(ell, pseudo, 24);
        std::vector<Vector> points;
        if (m == 2) {
          for (const auto& p : std::get<Polyline>(mesh).points) points.emplace_back(p);
        } else {
          for (const auto& p : std::get<SurfaceMesh>(mesh).vertices) points.emplace_back(p);
        }
        for (const Vector& p : points) {
          EXPECT_NEAR(p.norm(), distance_along_vertex(ell, p, pseudo), 1e-9);
        }
      }
    }
  }
}

TEST(EllipsoidMesh, PseudoContainsClassical) {
  std::mt19937_64 gen(22);
  for (int trial = 0; trial < 10; ++trial) {
    const Ellipsoid ell = Ellipsoid::from_core(testing::random_core(3, gen));
    const auto classical = std::get<SurfaceMesh>(ellipsoid_mesh(ell, false, 32));
    const auto pseudo = std::get<SurfaceMesh>(ellipsoid_mesh(ell, true, 32));
    ASSERT_EQ(classical.vertices.size(), pseudo.vertices.size());
    for (std::size_t i = 0; i < classical.vertices.size(); ++i) {
      EXPECT_LE(classical.vertices[i].norm(), pseudo.vertices[i].norm() + 1e-9);
      // Same direction.
      EXPECT_LT((classical.vertices[i].normalized() - pseudo.vertices[i].normalized()).norm(),
                1e-12);
    }
  }
}

TEST(EllipsoidMesh, ClosedOutwardSurface) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 6; ++trial) {
    const Ellipsoid ell = Ellipsoid::from_principal(Eigen::Vector3d(1.5, 1.0, 0.6),
                                                    testing::random_rotation(3, gen));
    const int samples = 64;
    const auto mesh = std::get<SurfaceMesh>(ellipsoid_mesh(ell, trial % 2 == 0, samples));
    const int bands = samples / 2;
    EXPECT_EQ(mesh.vertices.size(), static_cast<std::size_t>(2 + (bands - 1) * samples));
    EXPECT_EQ(mesh.faces.size(), static_cast<std::size_t>(2 * samples * (bands - 1)));
    // Signed volume by the divergence theorem is positive for outward faces.
    double volume = 0.0;
    for (const auto& f : mesh.faces) {
      volume += mesh.vertices[static_cast<std::size_t>(f[0])].dot(
                    mesh.vertices[static_cast<std::size_t>(f[1])].cross(
                        mesh.vertices[static_cast<std::size_t>(f[2])])) /
                6.0;
    }
    EXPECT_GT(volume, 0.0);
    if (trial % 2 == 1) {
      const Vector3 r = ell.radii();
      const double exact = 4.0 / 3.0 * kPi * r.prod();
      EXPECT_NEAR(volume, exact, 0.02 * exact);
    }
  }
}

TEST(EllipsoidMesh, PlanarPolyline) {
  const Ellipsoid ell = Ellipsoid::from_principal(Eigen::Vector2d(2, 1), Matrix::Identity(2, 2));
  const auto line = std::get<Polyline>(ellipsoid_mesh(ell, false, 16));
  ASSERT_EQ(line.points.size(), 16u);
  EXPECT_LT((line.points[0] - Eigen::Vector2d(2, 0)).norm(), 1e-12);
  EXPECT_LT((line.points[4] - Eigen::Vector2d(0, 1)).norm(), 1e-12);
}

TEST(EllipsoidMesh, Errors) {
  const Ellipsoid ell = principal3(1, 1, 1);
  EXPECT_THROW(ellipsoid_mesh(ell, false, 8), ParameterError);
  const Ellipsoid four = Ellipsoid::from_core(Matrix::Identity(4, 4));
  EXPECT_THROW(ellipsoid_mesh(four, false, 16), ParameterError);
}

TEST(EllipsoidMesh, ObjWriter) {
  const auto mesh = std::get<SurfaceMesh>(ellipsoid_mesh(principal3(1, 1, 1), false, 16));
  std::ostringstream os;
  write_obj(os, mesh);
  const std::string text = os.str();
  EXPECT_EQ(text.rfind("v 0 0 1\n", 0), 0u);
  EXPECT_NE(text.find("\nf 1 2 3\n"), std::string::npos);
}

}  // namespace
}  // namespace manip
