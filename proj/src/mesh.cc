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

#include "volkit/mesh.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include <Eigen/Geometry>
#include <fmt/format.h>

#include "volkit/compensated_sum.h"
#include "volkit/error.h"

namespace volkit {
namespace {

std::uint64_t EdgeKey(std::uint32_t a, std::uint32_t b) {
  const auto lo = std::min(a, b);
  const auto hi = std::max(a, b);
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

struct EdgeUse {
  int count = 0;
  // Number of faces traversing the edge from the lower to the higher index.
  int ascending = 0;
  // Direction of the first face seen on this edge.
  std::uint32_t from = 0;
  std::uint32_t to = 0;
};

bool IsDegenerate(const TriangleMesh& mesh, const Face& f) {
  const Vec3& a = mesh.vertices()[f[0]];
  const Vec3 e1 = mesh.vertices()[f[1]] - a;
  const Vec3 e2 = mesh.vertices()[f[2]] - a;
  const double scale = e1.norm() * e2.norm();
  return scale == 0.0 || e1.cross(e2).norm() <= 1e-12 * scale;
}

}  // namespace

TriangleMesh::TriangleMesh(std::vector<Vec3> vertices, std::vector<Face> faces)
    : vertices_(std::move(vertices)), faces_(std::move(faces)) {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    const Face& f = faces_[i];
    for (std::uint32_t index : f) {
      if (index >= n) {
        throw Error(ErrorKind::kStructure,
                    fmt::format("face {} references vertex {} but the mesh has "
                                "{} vertices",
                                i, index, n));
      }
    }
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
      throw Error(ErrorKind::kStructure,
                  fmt::format("face {} repeats a vertex index ({} {} {})", i,
                              f[0], f[1], f[2]));
    }
  }
}

ManifoldReport ValidateManifold(const TriangleMesh& mesh) {
  ManifoldReport report;
  std::unordered_map<std::uint64_t, EdgeUse> edges;
  edges.reserve(mesh.num_faces() * 2);

  for (const Face& f : mesh.faces()) {
    if (IsDegenerate(mesh, f)) ++report.degenerate_face_count;
    for (int k = 0; k < 3; ++k) {
      const std::uint32_t a = f[k];
      const std::uint32_t b = f[(k + 1) % 3];
      EdgeUse& use = edges[EdgeKey(a, b)];
      if (use.count == 0) {
        use.from = a;
        use.to = b;
      }
      ++use.count;
      if (a < b) ++use.ascending;
    }
  }

  for (const auto& [key, use] : edges) {
    if (use.count > 2) report.is_edge_manifold = false;
    if (use.count != 2) report.is_closed = false;
    const int descending = use.count - use.ascending;
    if (use.ascending > 1 || descending > 1) {
      report.is_consistently_oriented = false;
    }
  }

  // Boundary half-edges in face order, so the loop decomposition does not
  // depend on hash-map iteration order.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> boundary;
  for (const Face& f : mesh.faces()) {
    for (int k = 0; k < 3; ++k) {
      const std::uint32_t a = f[k];
      const std::uint32_t b = f[(k + 1) % 3];
      if (edges[EdgeKey(a, b)].count == 1) boundary.emplace_back(a, b);
    }
  }
  if (boundary.empty()) return report;

  std::unordered_map<std::uint32_t, std::vector<std::size_t>> outgoing;
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    outgoing[boundary[i].first].push_back(i);
  }
  std::vector<bool> used(boundary.size(), false);
  auto take_outgoing = [&](std::uint32_t v) -> std::ptrdiff_t {
    auto it = outgoing.find(v);
    if (it == outgoing.end()) return -1;
    for (std::size_t idx : it->second) {
      if (!used[idx]) return static_cast<std::ptrdiff_t>(idx);
    }
    return -1;
  };

  for (std::size_t start = 0; start < boundary.size(); ++start) {
    if (used[start]) continue;
    used[start] = true;
    std::vector<std::uint32_t> loop{boundary[start].first};
    std::uint32_t current = boundary[start].second;
    while (current != loop.front()) {
      loop.push_back(current);
      const std::ptrdiff_t next = take_outgoing(current);
      if (next < 0) break;  // Open chain: boundary orientation is incoherent.
      used[next] = true;
      current = boundary[next].second;
    }
    report.boundary_loops.push_back(std::move(loop));
  }
  return report;
}

TriangleMesh CloseHoles(const TriangleMesh& mesh) {
  const ManifoldReport report = ValidateManifold(mesh);
  if (!report.is_edge_manifold) {
    throw Error(ErrorKind::kUnsupportedTopology,
                "cannot close holes of a mesh that is not edge-manifold");
  }
  if (report.boundary_loops.empty()) return mesh;

  std::vector<Vec3> vertices = mesh.vertices();
  std::vector<Face> faces = mesh.faces();

  std::unordered_set<std::uint64_t> directed;
  directed.reserve(mesh.num_faces() * 3);
  for (const Face& f : mesh.faces()) {
    for (int k = 0; k < 3; ++k) {
      directed.insert((static_cast<std::uint64_t>(f[k]) << 32) |
                      f[(k + 1) % 3]);
    }
  }

  for (const auto& loop : report.boundary_loops) {
    const std::uint64_t closing =
        (static_cast<std::uint64_t>(loop.back()) << 32) | loop.front();
    if (loop.size() < 3 || !directed.contains(closing)) {
      throw Error(ErrorKind::kUnsupportedTopology,
                  fmt::format("boundary starting at vertex {} is not a closed "
                              "cycle (inconsistent orientation?)",
                              loop.front()));
    }

    Vec3 centroid = Vec3::Zero();
    for (std::uint32_t v : loop) centroid += vertices[v];
    centroid /= static_cast<double>(loop.size());
    const auto center = static_cast<std::uint32_t>(vertices.size());
    vertices.push_back(centroid);

    for (std::size_t i = 0; i < loop.size(); ++i) {
      const std::uint32_t a = loop[i];
      const std::uint32_t b = loop[(i + 1) % loop.size()];
      faces.push_back(Face{b, a, center});
    }
  }
  return TriangleMesh(std::move(vertices), std::move(faces));
}

double SignedVolume(const TriangleMesh& mesh) {
  CompensatedSum sum;
  const auto& v = mesh.vertices();
  for (const Face& f : mesh.faces()) {
    sum.Add(v[f[0]].dot(v[f[1]].cross(v[f[2]])));
  }
  return sum.Result() / 6.0;
}

double MeshVolume(const TriangleMesh& mesh) {
  const ManifoldReport report = ValidateManifold(mesh);
  if (!report.is_closed || !report.is_consistently_oriented) {
    throw Error(ErrorKind::kPrecondition,
                fmt::format("mesh volume requires a closed, consistently "
                            "oriented mesh ({} boundary loops, {})",
                            report.boundary_loops.size(),
                            report.is_consistently_oriented
                                ? "consistent orientation"
                                : "inconsistent orientation"));
  }
  return SignedVolume(mesh);
}

HeightExtremes ComputeHeightExtremes(const TriangleMesh& mesh) {
  if (mesh.empty()) {
    throw Error(ErrorKind::kEmptyInput, "height of an empty mesh");
  }
  const auto& v = mesh.vertices();
  std::size_t hi = 0;
  std::size_t lo = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i].y() > v[hi].y()) hi = i;
    if (v[i].y() < v[lo].y()) lo = i;
  }
  return HeightExtremes{v[hi], v[lo], v[hi].y() - v[lo].y()};
}

TriangleMesh TransformMesh(const TriangleMesh& mesh, const Mat3& rotation,
                           const Vec3& translation) {
  const double det = rotation.determinant();
  const double orthogonality =
      (rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (!std::isfinite(det) || std::abs(det - 1.0) > 1e-6 ||
      orthogonality > 1e-6) {
    throw Error(ErrorKind::kInvalidTransform,
                fmt::format("not a proper rotation (det = {}, max |R^T R - I| "
                            "= {})",
                            det, orthogonality));
  }
  std::vector<Vec3> vertices;
  vertices.reserve(mesh.num_vertices());
  for (const Vec3& p : mesh.vertices()) {
    vertices.push_back(rotation * p + translation);
  }
  return TriangleMesh(std::move(vertices), mesh.faces());
}

TriangleMesh Translate(const TriangleMesh& mesh, const Vec3& offset) {
  std::vector<Vec3> vertices = mesh.vertices();
  for (Vec3& p : vertices) p += offset;
  return TriangleMesh(std::move(vertices), mesh.faces());
}

TriangleMesh Scale(const TriangleMesh& mesh, double factor) {
  std::vector<Vec3> vertices = mesh.vertices();
  for (Vec3& p : vertices) p *= factor;
  return TriangleMesh(std::move(vertices), mesh.faces());
}

TriangleMesh FlipWinding(const TriangleMesh& mesh) {
  std::vector<Face> faces = mesh.faces();
  for (Face& f : faces) std::swap(f[1], f[2]);
  return TriangleMesh(mesh.vertices(), std::move(faces));
}

Vec3 VertexCentroid(const TriangleMesh& mesh) {
  Vec3 sum = Vec3::Zero();
  if (mesh.empty()) return sum;
  for (const Vec3& p : mesh.vertices()) sum += p;
  return sum / static_cast<double>(mesh.num_vertices());
}

TriangleMesh MergeMeshes(const std::vector<TriangleMesh>& meshes) {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  for (const TriangleMesh& m : meshes) {
    const auto offset = static_cast<std::uint32_t>(vertices.size());
    vertices.insert(vertices.end(), m.vertices().begin(), m.vertices().end());
    for (const Face& f : m.faces()) {
      faces.push_back(Face{f[0] + offset, f[1] + offset, f[2] + offset});
    }
  }
  return TriangleMesh(std::move(vertices), std::move(faces));
}

}  // namespace volkit
