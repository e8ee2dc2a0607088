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

#include "volkit/voxel.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <utility>

#include <fmt/format.h>

#include "volkit/error.h"

namespace volkit {
namespace {

// Offsets (in cell sizes along y and z, scaled by kJitter) for re-casting a
// ray that grazed an edge or vertex.
constexpr double kJitter = 1e-7;
constexpr std::array<std::array<double, 2>, 3> kJitterDirections{{
    {1.0, 0.7548776662466927},
    {-0.6180339887498949, 1.0},
    {0.4142135623730951, -1.0},
}};

// A face seen along the x axis: its (y, z) footprint plus the x coordinates
// of its corners.
struct ProjectedFace {
  std::array<double, 3> x;
  std::array<double, 3> y;
  std::array<double, 3> z;
  std::array<double, 3> inv_edge_length;  // edge k is opposite corner k
  double area2 = 0.0;
};

std::vector<ProjectedFace> ProjectFaces(const TriangleMesh& mesh) {
  std::vector<ProjectedFace> projected;
  projected.reserve(mesh.num_faces());
  const auto& v = mesh.vertices();
  for (const Face& f : mesh.faces()) {
    ProjectedFace p;
    for (int k = 0; k < 3; ++k) {
      p.x[k] = v[f[k]].x();
      p.y[k] = v[f[k]].y();
      p.z[k] = v[f[k]].z();
    }
    double longest = 0.0;
    for (int k = 0; k < 3; ++k) {
      const int a = (k + 1) % 3;
      const int b = (k + 2) % 3;
      const double len = std::hypot(p.y[b] - p.y[a], p.z[b] - p.z[a]);
      longest = std::max(longest, len);
      p.inv_edge_length[k] = len > 0.0 ? 1.0 / len : 0.0;
    }
    p.area2 = (p.y[1] - p.y[0]) * (p.z[2] - p.z[0]) -
              (p.z[1] - p.z[0]) * (p.y[2] - p.y[0]);
    // Faces parallel to the ray have no footprint and never produce a
    // crossing; their edges are shared with faces that do.
    if (std::abs(p.area2) <= 1e-12 * longest * longest) p.area2 = 0.0;
    projected.push_back(p);
  }
  return projected;
}

// Appends the x coordinates where the line {(t, y, z)} crosses the candidate
// faces. Returns false if the line passes within `tolerance` of a footprint
// edge or corner, in which case `hits` is unspecified.
template <typename Candidates>
bool CastLine(const std::vector<ProjectedFace>& faces,
              const Candidates& candidates, double y, double z,
              double tolerance, std::vector<double>& hits) {
  hits.clear();
  for (const auto index : candidates) {
    const ProjectedFace& p = faces[index];
    if (p.area2 == 0.0) continue;
    const double sign = p.area2 > 0.0 ? 1.0 : -1.0;
    std::array<double, 3> w;
    bool outside = false;
    bool near_edge = false;
    for (int k = 0; k < 3; ++k) {
      const int a = (k + 1) % 3;
      const int b = (k + 2) % 3;
      w[k] = (p.y[b] - p.y[a]) * (z - p.z[a]) - (p.z[b] - p.z[a]) * (y - p.y[a]);
      const double distance = sign * w[k] * p.inv_edge_length[k];
      if (distance < -tolerance) {
        outside = true;
        break;
      }
      if (distance <= tolerance) near_edge = true;
    }
    if (outside) continue;
    if (near_edge) return false;
    hits.push_back((w[0] * p.x[0] + w[1] * p.x[1] + w[2] * p.x[2]) / p.area2);
  }
  std::sort(hits.begin(), hits.end());
  return true;
}

// Casts at (y, z), then at jittered origins. Returns false if every attempt
// grazed.
template <typename Candidates>
bool CastWithRetries(const std::vector<ProjectedFace>& faces,
                     const Candidates& candidates, double y, double z,
                     double cell_y, double cell_z, double tolerance,
                     std::vector<double>& hits) {
  if (CastLine(faces, candidates, y, z, tolerance, hits)) return true;
  for (const auto& dir : kJitterDirections) {
    if (CastLine(faces, candidates, y + kJitter * cell_y * dir[0],
                 z + kJitter * cell_z * dir[1], tolerance, hits)) {
      return true;
    }
  }
  return false;
}

void RequireClosed(const TriangleMesh& mesh, const char* what) {
  const ManifoldReport report = ValidateManifold(mesh);
  if (!report.is_closed || !report.is_consistently_oriented) {
    throw Error(ErrorKind::kPrecondition,
                fmt::format("{} requires a closed, consistently oriented mesh",
                            what));
  }
}

}  // namespace

VoxelGrid::VoxelGrid(GridDims dims, VoxelKind kind)
    : dims_(dims), kind_(kind), data_(dims.count(), 0.0f) {}

VoxelGrid::VoxelGrid(GridDims dims, VoxelKind kind, std::vector<float> data)
    : dims_(dims), kind_(kind), data_(std::move(data)) {
  if (data_.size() != dims_.count()) {
    throw Error(ErrorKind::kShape,
                fmt::format("voxel data has {} values, dims {}x{}x{} need {}",
                            data_.size(), dims_.nx, dims_.ny, dims_.nz,
                            dims_.count()));
  }
  for (float value : data_) {
    const bool valid = kind_ == VoxelKind::kBinary
                           ? (value == 0.0f || value == 1.0f)
                           : (value >= 0.0f && value <= 1.0f);
    if (!valid) {
      throw Error(ErrorKind::kDomain,
                  fmt::format("voxel value {} invalid for {} grid", value,
                              kind_ == VoxelKind::kBinary ? "binary"
                                                          : "probability"));
    }
  }
}

void VoxelGrid::Set(std::uint32_t x, std::uint32_t y, std::uint32_t z,
                    float value) {
  const bool valid = kind_ == VoxelKind::kBinary
                         ? (value == 0.0f || value == 1.0f)
                         : (value >= 0.0f && value <= 1.0f);
  if (!valid) {
    throw Error(ErrorKind::kDomain, fmt::format("invalid voxel value {}", value));
  }
  data_[Index(x, y, z)] = value;
}

std::size_t VoxelGrid::FilledCount() const {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](float v) { return v != 0.0f; }));
}

VoxelGrid Threshold(const VoxelGrid& grid, double tau) {
  if (grid.kind() != VoxelKind::kProbability) {
    throw Error(ErrorKind::kKindMismatch, "threshold needs a probability grid");
  }
  if (!(tau > 0.0 && tau < 1.0)) {
    throw Error(ErrorKind::kDomain,
                fmt::format("threshold {} outside (0, 1)", tau));
  }
  std::vector<float> out(grid.data().size());
  std::transform(grid.data().begin(), grid.data().end(), out.begin(),
                 [tau](float p) { return p >= tau ? 1.0f : 0.0f; });
  return VoxelGrid(grid.dims(), VoxelKind::kBinary, std::move(out));
}

std::uint32_t VoxelHeight(const VoxelGrid& grid) {
  if (grid.kind() != VoxelKind::kBinary) {
    throw Error(ErrorKind::kKindMismatch, "voxel height needs a binary grid");
  }
  const GridDims& d = grid.dims();
  std::optional<std::uint32_t> lowest;
  std::uint32_t highest = 0;
  for (std::uint32_t z = 0; z < d.nz; ++z) {
    for (std::uint32_t y = 0; y < d.ny; ++y) {
      for (std::uint32_t x = 0; x < d.nx; ++x) {
        if (!grid.filled(x, y, z)) continue;
        if (!lowest || y < *lowest) lowest = y;
        highest = std::max(highest, y);
        break;  // the rest of this row has the same y
      }
    }
  }
  if (!lowest) throw Error(ErrorKind::kEmptyInput, "voxel grid has no filled cell");
  return highest - *lowest + 1;
}

BaselineEstimate BaselineVolume(const VoxelGrid& grid, double height_m) {
  if (!(height_m > 0.0) || !std::isfinite(height_m)) {
    throw Error(ErrorKind::kDomain,
                fmt::format("body height must be positive, got {}", height_m));
  }
  BaselineEstimate estimate;
  estimate.voxel_height = VoxelHeight(grid);
  estimate.height_m = height_m;
  estimate.voxel_edge_m = height_m / estimate.voxel_height;
  estimate.voxel_volume_m3 =
      estimate.voxel_edge_m * estimate.voxel_edge_m * estimate.voxel_edge_m;
  estimate.filled = grid.FilledCount();
  estimate.volume_m3 =
      estimate.voxel_volume_m3 * static_cast<double>(estimate.filled);
  return estimate;
}

VoxelGrid Voxelize(const TriangleMesh& mesh, const GridDims& dims,
                   const Bounds& bounds) {
  if (dims.count() == 0) throw Error(ErrorKind::kDomain, "empty grid dims");
  const Vec3 extent = bounds.max - bounds.min;
  if (!(extent.minCoeff() > 0.0)) {
    throw Error(ErrorKind::kDomain, "bounds must have positive extent");
  }
  RequireClosed(mesh, "voxelize");
  const double slack = 1e-9 * extent.maxCoeff();
  for (const Vec3& p : mesh.vertices()) {
    if ((p - bounds.min).minCoeff() < -slack ||
        (bounds.max - p).minCoeff() < -slack) {
      throw Error(ErrorKind::kBounds,
                  fmt::format("vertex ({}, {}, {}) lies outside the bounds",
                              p.x(), p.y(), p.z()));
    }
  }

  const double sx = extent.x() / dims.nx;
  const double sy = extent.y() / dims.ny;
  const double sz = extent.z() / dims.nz;
  const double tolerance = 1e-9 * std::min(sy, sz);
  const std::vector<ProjectedFace> faces = ProjectFaces(mesh);

  // Bucket faces by the rows their footprint can reach (widened to cover
  // jittered origins), CSR layout.
  const std::size_t num_rows = static_cast<std::size_t>(dims.ny) * dims.nz;
  auto row_range = [](double lo, double hi, double origin, double cell,
                      std::uint32_t n) -> std::pair<long, long> {
    const double margin = 4.0 * kJitter * cell;
    const long first =
        static_cast<long>(std::ceil((lo - margin - origin) / cell - 0.5));
    const long last =
        static_cast<long>(std::floor((hi + margin - origin) / cell - 0.5));
    return {std::max(first, 0L), std::min(last, static_cast<long>(n) - 1)};
  };
  std::vector<std::array<long, 4>> spans(faces.size());
  std::vector<std::size_t> offsets(num_rows + 1, 0);
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const ProjectedFace& p = faces[i];
    const auto [ylo, yhi] =
        row_range(*std::min_element(p.y.begin(), p.y.end()),
                  *std::max_element(p.y.begin(), p.y.end()), bounds.min.y(),
                  sy, dims.ny);
    const auto [zlo, zhi] =
        row_range(*std::min_element(p.z.begin(), p.z.end()),
                  *std::max_element(p.z.begin(), p.z.end()), bounds.min.z(),
                  sz, dims.nz);
    spans[i] = {ylo, yhi, zlo, zhi};
    if (p.area2 == 0.0) continue;
    for (long k = zlo; k <= zhi; ++k) {
      for (long j = ylo; j <= yhi; ++j) ++offsets[k * dims.ny + j + 1];
    }
  }
  for (std::size_t r = 0; r < num_rows; ++r) offsets[r + 1] += offsets[r];
  std::vector<std::uint32_t> row_faces(offsets.back());
  {
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (faces[i].area2 == 0.0) continue;
      const auto& s = spans[i];
      for (long k = s[2]; k <= s[3]; ++k) {
        for (long j = s[0]; j <= s[1]; ++j) {
          row_faces[cursor[k * dims.ny + j]++] = static_cast<std::uint32_t>(i);
        }
      }
    }
  }

  std::vector<float> data(dims.count(), 0.0f);
  std::vector<bool> unresolved(num_rows, false);
  std::vector<double> hits;
  for (std::uint32_t k = 0; k < dims.nz; ++k) {
    const double z = bounds.min.z() + (k + 0.5) * sz;
    for (std::uint32_t j = 0; j < dims.ny; ++j) {
      const double y = bounds.min.y() + (j + 0.5) * sy;
      const std::size_t row = static_cast<std::size_t>(k) * dims.ny + j;
      const std::span<const std::uint32_t> candidates(
          row_faces.data() + offsets[row], offsets[row + 1] - offsets[row]);
      if (candidates.empty()) continue;
      if (!CastWithRetries(faces, candidates, y, z, sy, sz, tolerance, hits)) {
        unresolved[row] = true;
        continue;
      }
      // Crossings are sorted; a center is inside iff an odd number of them
      // lie strictly beyond it along +x.
      std::size_t passed = 0;  // crossings with x <= center
      float* out = data.data() + row * dims.nx;
      for (std::uint32_t i = 0; i < dims.nx; ++i) {
        const double x = bounds.min.x() + (i + 0.5) * sx;
        while (passed < hits.size() && hits[passed] <= x) ++passed;
        out[i] = ((hits.size() - passed) % 2 == 1) ? 1.0f : 0.0f;
      }
    }
  }

  for (std::uint32_t k = 0; k < dims.nz; ++k) {
    for (std::uint32_t j = 0; j < dims.ny; ++j) {
      const std::size_t row = static_cast<std::size_t>(k) * dims.ny + j;
      if (!unresolved[row]) continue;
      std::vector<std::size_t> neighbors;
      if (j > 0) neighbors.push_back(row - 1);
      if (j + 1 < dims.ny) neighbors.push_back(row + 1);
      if (k > 0) neighbors.push_back(row - dims.ny);
      if (k + 1 < dims.nz) neighbors.push_back(row + dims.ny);
      std::erase_if(neighbors, [&](std::size_t r) { return unresolved[r]; });
      for (std::uint32_t i = 0; i < dims.nx; ++i) {
        std::size_t votes = 0;
        for (std::size_t r : neighbors) {
          if (data[r * dims.nx + i] != 0.0f) ++votes;
        }
        data[row * dims.nx + i] = 2 * votes > neighbors.size() ? 1.0f : 0.0f;
      }
    }
  }
  return VoxelGrid(dims, VoxelKind::kBinary, std::move(data));
}

bool ContainsPoint(const TriangleMesh& mesh, const Vec3& point) {
  RequireClosed(mesh, "point containment");
  if (mesh.empty()) return false;
  const auto [lo, hi] = [&] {
    Vec3 a = mesh.vertices().front();
    Vec3 b = a;
    for (const Vec3& p : mesh.vertices()) {
      a = a.cwiseMin(p);
      b = b.cwiseMax(p);
    }
    return std::pair{a, b};
  }();
  const double scale = std::max((hi - lo).maxCoeff(), 1e-300) * 1e-2;
  const std::vector<ProjectedFace> faces = ProjectFaces(mesh);
  std::vector<std::uint32_t> all(faces.size());
  for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<double> hits;
  CastWithRetries(faces, all, point.y(), point.z(), scale, scale, 1e-9 * scale,
                  hits);
  const auto beyond = hits.end() - std::upper_bound(hits.begin(), hits.end(),
                                                    point.x());
  return beyond % 2 == 1;
}

Bounds CubicBoundsAround(const TriangleMesh& mesh, double padding) {
  if (mesh.empty()) throw Error(ErrorKind::kEmptyInput, "bounds of empty mesh");
  Vec3 lo = mesh.vertices().front();
  Vec3 hi = lo;
  for (const Vec3& p : mesh.vertices()) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Vec3 center = 0.5 * (lo + hi);
  const double half = 0.5 * (1.0 + padding) * (hi - lo).maxCoeff();
  const Vec3 h = Vec3::Constant(half > 0.0 ? half : 0.5);
  return Bounds{center - h, center + h};
}

Bounds RotationSafeBounds(const TriangleMesh& mesh, const Vec3& center,
                          double padding) {
  if (mesh.empty()) throw Error(ErrorKind::kEmptyInput, "bounds of empty mesh");
  double radius = 0.0;
  for (const Vec3& p : mesh.vertices()) {
    radius = std::max(radius, (p - center).norm());
  }
  const Vec3 h = Vec3::Constant((1.0 + padding) * (radius > 0.0 ? radius : 0.5));
  return Bounds{center - h, center + h};
}

}  // namespace volkit
