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

#ifndef VOLKIT_VOXEL_H_
#define VOLKIT_VOXEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "volkit/mesh.h"

namespace volkit {

struct GridDims {
  std::uint32_t nx = 0;
  std::uint32_t ny = 0;
  std::uint32_t nz = 0;

  std::size_t count() const {
    return static_cast<std::size_t>(nx) * ny * nz;
  }
  friend bool operator==(const GridDims&, const GridDims&) = default;
};

enum class VoxelKind : std::uint8_t { kBinary = 0, kProbability = 1 };

// Dense scalar field over a regular grid, x fastest, then y, then z.
// Binary grids hold 0 or 1; probability grids hold values in [0, 1].
// y is the up axis.
class VoxelGrid {
 public:
  VoxelGrid() = default;
  // Zero-filled grid.
  VoxelGrid(GridDims dims, VoxelKind kind);
  // Throws kShape if data.size() != dims.count(), kDomain if a value is out
  // of range for the kind.
  VoxelGrid(GridDims dims, VoxelKind kind, std::vector<float> data);

  const GridDims& dims() const { return dims_; }
  VoxelKind kind() const { return kind_; }
  std::span<const float> data() const { return data_; }

  std::size_t Index(std::uint32_t x, std::uint32_t y, std::uint32_t z) const {
    return (static_cast<std::size_t>(z) * dims_.ny + y) * dims_.nx + x;
  }
  float at(std::uint32_t x, std::uint32_t y, std::uint32_t z) const {
    return data_[Index(x, y, z)];
  }
  bool filled(std::uint32_t x, std::uint32_t y, std::uint32_t z) const {
    return at(x, y, z) != 0.0f;
  }
  // Throws kDomain if value is invalid for the kind.
  void Set(std::uint32_t x, std::uint32_t y, std::uint32_t z, float value);

  // Number of nonzero cells.
  std::size_t FilledCount() const;

 private:
  GridDims dims_;
  VoxelKind kind_ = VoxelKind::kBinary;
  std::vector<float> data_;
};

struct Bounds {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();
};

// Result of scaling a voxel grid by a known body height:
//   voxel_edge_m   = height_m / voxel_height
//   voxel_volume   = voxel_edge_m^3
//   volume_m3      = voxel_volume * filled
struct BaselineEstimate {
  std::uint32_t voxel_height = 0;
  double height_m = 0.0;
  double voxel_edge_m = 0.0;
  double voxel_volume_m3 = 0.0;
  std::size_t filled = 0;
  double volume_m3 = 0.0;

  double volume_dm3() const { return volume_m3 * 1000.0; }
};

// Binary grid with a cell filled iff its probability is >= tau.
// Errors: kKindMismatch for a binary input, kDomain unless 0 < tau < 1.
VoxelGrid Threshold(const VoxelGrid& grid, double tau);

// Inclusive span of filled y indices: max - min + 1.
// Errors: kKindMismatch for probability grids, kEmptyInput if nothing is
// filled.
std::uint32_t VoxelHeight(const VoxelGrid& grid);

// Errors: as VoxelHeight, plus kDomain for a non-positive height.
BaselineEstimate BaselineVolume(const VoxelGrid& grid, double height_m);

// Center-sampled voxelization. A cell is filled iff its center lies inside
// the mesh, decided by crossing parity of a ray along +x. Rays that graze an
// edge or vertex are re-cast from an origin offset by 1e-7 cell sizes (up to
// three times); rows that still graze take the majority of their neighbor
// rows.
//
// Errors: kPrecondition for open or inconsistently oriented meshes, kBounds
// when a vertex lies outside `bounds`, kDomain for empty dims or bounds.
VoxelGrid Voxelize(const TriangleMesh& mesh, const GridDims& dims,
                   const Bounds& bounds);

// Ray-parity inside test for a single point, with the same grazing retries.
bool ContainsPoint(const TriangleMesh& mesh, const Vec3& point);

// Cube centered on the bounding-box center of the mesh with edge length
// (1 + padding) times the largest bounding-box extent.
Bounds CubicBoundsAround(const TriangleMesh& mesh, double padding);

// Cube centered on `center` that contains the mesh under any rotation about
// that center: half edge = (1 + padding) * max vertex distance.
Bounds RotationSafeBounds(const TriangleMesh& mesh, const Vec3& center,
                          double padding);

}  // namespace volkit

#endif  // VOLKIT_VOXEL_H_
