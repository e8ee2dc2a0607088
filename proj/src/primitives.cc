// Copyright 2026 The volkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "volkit/primitives.h"

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Geometry>

#include "volkit/error.h"

namespace volkit {
namespace {

// Appends triangles (a, b, c) and (a, c, d), wound so that the normal points
// along `outward`.
void AddQuad(const std::vector<Vec3>& v, std::vector<Face>& faces,
             std::uint32_t a, std::uint32_t b, std::uint32_t c,
             std::uint32_t d, const Vec3& outward) {
  const Vec3 normal = (v[b] - v[a]).cross(v[c] - v[a]);
  if (normal.dot(outward) >= 0.0) {
    faces.push_back({a, b, c});
    faces.push_back({a, c, d});
  } else {
    faces.push_back({a, c, b});
    faces.push_back({a, d, c});
  }
}

}  // namespace

TriangleMesh MakeBox(const Vec3& min_corner, const Vec3& max_corner) {
  std::vector<Vec3> v;
  v.reserve(8);
  // Bit 0 selects x, bit 1 selects y, bit 2 selects z.
  for (int i = 0; i < 8; ++i) {
    v.emplace_back((i & 1) ? max_corner.x() : min_corner.x(),
                   (i & 2) ? max_corner.y() : min_corner.y(),
                   (i & 4) ? max_corner.z() : min_corner.z());
  }
  std::vector<Face> faces;
  faces.reserve(12);
  AddQuad(v, faces, 0, 4, 6, 2, -Vec3::UnitX());
  AddQuad(v, faces, 1, 3, 7, 5, Vec3::UnitX());
  AddQuad(v, faces, 0, 1, 5, 4, -Vec3::UnitY());
  AddQuad(v, faces, 2, 6, 7, 3, Vec3::UnitY());
  AddQuad(v, faces, 0, 2, 3, 1, -Vec3::UnitZ());
  AddQuad(v, faces, 4, 5, 7, 6, Vec3::UnitZ());
  return TriangleMesh(std::move(v), std::move(faces));
}

TriangleMesh MakeTetrahedron(const Vec3& a, const Vec3& b, const Vec3& c,
                             const Vec3& d) {
  std::vector<Face> faces{{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {0, 3, 2}};
  TriangleMesh mesh({a, b, c, d}, faces);
  if (SignedVolume(mesh) < 0.0) return FlipWinding(mesh);
  return mesh;
}

TriangleMesh MakeIcosphere(double radius, int level, const Vec3& center) {
  if (level < 0) throw Error(ErrorKind::kDomain, "negative subdivision level");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v{{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                      {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                      {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (Vec3& p : v) p.normalize();
  std::vector<Face> faces{{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10},
                          {0, 10, 11}, {1, 5, 9}, {5, 11, 4},  {11, 10, 2},
                          {10, 7, 6}, {7, 1, 8},  {3, 9, 4},   {3, 4, 2},
                          {3, 2, 6},  {3, 6, 8},  {3, 8, 9},   {4, 9, 5},
                          {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoints;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      auto it = midpoints.find(key);
      if (it != midpoints.end()) return it->second;
      v.push_back((v[a] + v[b]).normalized());
      const auto index = static_cast<std::uint32_t>(v.size() - 1);
      midpoints.emplace(key, index);
      return index;
    };
    std::vector<Face> refined;
    refined.reserve(faces.size() * 4);
    for (const Face& f : faces) {
      const std::uint32_t ab = midpoint(f[0], f[1]);
      const std::uint32_t bc = midpoint(f[1], f[2]);
      const std::uint32_t ca = midpoint(f[2], f[0]);
      refined.push_back({f[0], ab, ca});
      refined.push_back({f[1], bc, ab});
      refined.push_back({f[2], ca, bc});
      refined.push_back({ab, bc, ca});
    }
    faces = std::move(refined);
  }

  for (Face& f : faces) {
    const Vec3 normal = (v[f[1]] - v[f[0]]).cross(v[f[2]] - v[f[0]]);
    if (normal.dot(v[f[0]] + v[f[1]] + v[f[2]]) < 0.0) std::swap(f[1], f[2]);
  }
  for (Vec3& p : v) p = center + radius * p;
  return TriangleMesh(std::move(v), std::move(faces));
}

TriangleMesh MakeOpenCylinder(double radius, double height, int segments) {
  if (segments < 3) throw Error(ErrorKind::kDomain, "need >= 3 segments");
  std::vector<Vec3> v;
  for (int ring = 0; ring < 2; ++ring) {
    for (int i = 0; i < segments; ++i) {
      const double angle = 2.0 * std::numbers::pi * i / segments;
      v.emplace_back(radius * std::cos(angle), ring * height,
                     radius * std::sin(angle));
    }
  }
  std::vector<Face> faces;
  const auto n = static_cast<std::uint32_t>(segments);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t j = (i + 1) % n;
    const Vec3 outward = (v[i] + v[j]).normalized();
    AddQuad(v, faces, i, j, n + j, n + i, outward);
  }
  return TriangleMesh(std::move(v), std::move(faces));
}

}  // namespace volkit
