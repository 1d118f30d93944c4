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

/// @file mesh.hpp
/// Sampled surfaces of the ellipsoid and the pseudo-ellipsoid, centered at
/// the origin. Directions are sampled in the ellipsoid's principal frame so
/// that principal axes always land on vertices.

#pragma once

#include <array>
#include <cmath>
#include <variant>
#include <vector>

#include "manip/ellipsoid.hpp"

namespace manip {

inline constexpr int kMinMeshSamples = 16;

struct Polyline {
  std::vector<Eigen::Vector2d> points;
};

struct SurfaceMesh {
  std::vector<Vector3> vertices;
  std::vector<std::array<int, 3>> faces;  // zero-based, counter-clockwise
};

using EllipsoidMesh = std::variant<Polyline, SurfaceMesh>;

namespace detail {

inline double surface_distance(const Ellipsoid& ell, const Vector& nu,
                               bool pseudo) {
  const Direction dir(nu);
  return pseudo ? pseudo_radius_along(ell, dir) : radius_along(ell, dir);
}

}  // namespace detail

/// m = 2: `samples` points on a closed curve (first point not repeated).
/// m = 3: UV sphere with `samples` longitudes and `samples / 2` latitude
/// bands, single vertices at both poles. The poles lie on the third axis.
inline EllipsoidMesh ellipsoid_mesh(const Ellipsoid& ell, bool pseudo,
                                    int samples) {
  if (ell.dim() != 2 && ell.dim() != 3) {
    throw ParameterError("meshes are only defined for 2-D and 3-D ellipsoids");
  }
  if (samples < kMinMeshSamples) {
    throw ParameterError("mesh needs at least " +
                         std::to_string(kMinMeshSamples) + " samples");
  }
  const Matrix& frame = ell.axes();

  if (ell.dim() == 2) {
    Polyline line;
    line.points.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
      const double psi = 2.0 * kPi * k / samples;
      Vector nu = frame * Eigen::Vector2d(std::cos(psi), std::sin(psi));
      nu.normalize();
      const double rho = detail::surface_distance(ell, nu, pseudo);
      line.points.emplace_back(rho * nu);
    }
    return line;
  }

  SurfaceMesh mesh;
  const int bands = samples / 2;
  auto vertex = [&](const Eigen::Vector3d& principal) {
    Vector nu = frame * principal;
    nu.normalize();
    const double rho = detail::surface_distance(ell, nu, pseudo);
    mesh.vertices.emplace_back(rho * nu);
  };

  vertex(Eigen::Vector3d::UnitZ());
  for (int j = 1; j < bands; ++j) {
    const double phi = kPi * j / bands;
    for (int k = 0; k < samples; ++k) {
      const double psi = 2.0 * kPi * k / samples;
      vertex({std::sin(phi) * std::cos(psi), std::sin(phi) * std::sin(psi),
              std::cos(phi)});
    }
  }
  vertex(-Eigen::Vector3d::UnitZ());

  const int north = 0;
  const int south = static_cast<int>(mesh.vertices.size()) - 1;
  auto ring = [&](int j, int k) { return 1 + (j - 1) * samples + (k % samples); };
  for (int k = 0; k < samples; ++k) {
    mesh.faces.push_back({north, ring(1, k), ring(1, k + 1)});
  }
  for (int j = 1; j + 1 < bands; ++j) {
    for (int k = 0; k < samples; ++k) {
      mesh.faces.push_back({ring(j, k), ring(j + 1, k), ring(j + 1, k + 1)});
      mesh.faces.push_back({ring(j, k), ring(j + 1, k + 1), ring(j, k + 1)});
    }
  }
  for (int k = 0; k < samples; ++k) {
    mesh.faces.push_back({south, ring(bands - 1, k + 1), ring(bands - 1, k)});
  }
  // A left-handed principal frame mirrors the surface; keep outward winding.
  if (frame.determinant() < 0.0) {
    for (auto& f : mesh.faces) std::swap(f[1], f[2]);
  }
  return mesh;
}

}  // namespace manip
