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

#ifndef VOLKIT_MESH_H_
#define VOLKIT_MESH_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace volkit {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Vertex indices of one triangle. Counter-clockwise seen from outside.
using Face = std::array<std::uint32_t, 3>;

// Indexed triangle mesh, lengths in meters.
//
// Construction enforces the structural invariants: every face index refers
// to an existing vertex and no face repeats a vertex index. Zero-area faces
// with distinct indices are allowed.
class TriangleMesh {
 public:
  TriangleMesh() = default;
  TriangleMesh(std::vector<Vec3> vertices, std::vector<Face> faces);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_faces() const { return faces_.size(); }
  bool empty() const { return vertices_.empty(); }

 private:
  std::vector<Vec3> vertices_;
  std::vector<Face> faces_;
};

struct ManifoldReport {
  // No undirected edge is used by more than two faces.
  bool is_edge_manifold = true;
  // Every undirected edge is used by exactly two faces.
  bool is_closed = true;
  // No directed edge is used by more than one face.
  bool is_consistently_oriented = true;
  // Each loop lists vertices v0, v1, ... such that v[i] -> v[i+1] (wrapping)
  // is a boundary edge in the direction of its only adjacent face.
  std::vector<std::vector<std::uint32_t>> boundary_loops;
  std::size_t degenerate_face_count = 0;
};

struct HeightExtremes {
  Vec3 highest = Vec3::Zero();
  Vec3 lowest = Vec3::Zero();
  double height_m = 0.0;
};

ManifoldReport ValidateManifold(const TriangleMesh& mesh);

// Fills every boundary loop with a triangle fan around a new vertex placed at
// the loop's vertex centroid. Closed meshes are returned unchanged.
// Throws kUnsupportedTopology for non edge-manifold input or boundaries that
// do not form cycles.
TriangleMesh CloseHoles(const TriangleMesh& mesh);

// Raw divergence-theorem sum: sum over faces of a . (b x c) / 6, with
// compensated accumulation. No topology checks; on an open mesh the result
// depends on the origin.
double SignedVolume(const TriangleMesh& mesh);

// Enclosed volume in m^3. Throws kPrecondition unless the mesh is closed and
// consistently oriented.
double MeshVolume(const TriangleMesh& mesh);

// Throws kEmptyInput for a mesh without vertices.
HeightExtremes ComputeHeightExtremes(const TriangleMesh& mesh);

// Maps every vertex v to rotation * v + translation. Throws
// kInvalidTransform unless rotation is orthonormal with determinant +1
// (both within 1e-6).
TriangleMesh TransformMesh(const TriangleMesh& mesh, const Mat3& rotation,
                           const Vec3& translation);

TriangleMesh Translate(const TriangleMesh& mesh, const Vec3& offset);
TriangleMesh Scale(const TriangleMesh& mesh, double factor);

// Swaps the last two indices of every face, negating SignedVolume exactly.
TriangleMesh FlipWinding(const TriangleMesh& mesh);

// Mean of the vertex positions; zero for an empty mesh.
Vec3 VertexCentroid(const TriangleMesh& mesh);

// Concatenates meshes into one vertex/face list.
TriangleMesh MergeMeshes(const std::vector<TriangleMesh>& meshes);

}  // namespace volkit

#endif  // VOLKIT_MESH_H_
