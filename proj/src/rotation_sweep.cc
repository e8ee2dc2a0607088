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

#include "volkit/rotation_sweep.h"

#include <algorithm>
#include <exception>
#include <numbers>
#include <ostream>
#include <thread>

#include <Eigen/Geometry>
#include <fmt/format.h>

#include "volkit/error.h"
#include "volkit/voxel.h"

namespace volkit {

std::string_view SweepAxisName(SweepAxis axis) {
  return axis == SweepAxis::kY ? "y" : "z";
}

std::optional<SweepAxis> SweepAxisFromName(std::string_view name) {
  if (name == "y" || name == "Y") return SweepAxis::kY;
  if (name == "z" || name == "Z") return SweepAxis::kZ;
  return std::nullopt;
}

Mat3 SweepRotation(SweepAxis axis, double degrees) {
  const double radians = degrees * std::numbers::pi / 180.0;
  const Vec3 about = axis == SweepAxis::kY ? Vec3::UnitX() : Vec3::UnitY();
  return Eigen::AngleAxisd(radians, about).toRotationMatrix();
}

SweepResult RunRotationSweep(const TriangleMesh& mesh,
                             const SweepOptions& options) {
  if (!(options.height_m > 0.0)) {
    throw Error(ErrorKind::kDomain,
                fmt::format("height must be positive, got {}", options.height_m));
  }
  if (options.grid < 2) {
    throw Error(ErrorKind::kDomain,
                fmt::format("grid must be at least 2, got {}", options.grid));
  }
  SweepResult result;
  result.axis = options.axis;
  result.true_volume_m3 = MeshVolume(mesh);

  const Vec3 center = VertexCentroid(mesh);
  const Bounds bounds = RotationSafeBounds(mesh, center, options.padding);
  const auto n = static_cast<std::uint32_t>(options.grid);
  const GridDims dims{n, n, n};

  constexpr int kDegrees = 360;
  result.rows.resize(kDegrees);
  auto run_degree = [&](int deg) {
    const Mat3 r = SweepRotation(options.axis, deg);
    const TriangleMesh rotated = TransformMesh(mesh, r, center - r * center);
    const BaselineEstimate estimate =
        BaselineVolume(Voxelize(rotated, dims, bounds), options.height_m);
    result.rows[deg] = {deg, 100.0 * (estimate.volume_m3 - result.true_volume_m3) /
                                 result.true_volume_m3};
  };

  const int jobs = std::clamp(options.jobs, 1, kDegrees);
  if (jobs == 1) {
    for (int deg = 0; deg < kDegrees; ++deg) run_degree(deg);
    return result;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (int deg = w; deg < kDegrees; deg += jobs) run_degree(deg);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : workers) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return result;
}

void WriteSweepCsv(std::ostream& out, const SweepResult& result) {
  out << "deg,PE\n";
  for (const SweepRow& row : result.rows) {
    out << fmt::format("{},{:.6f}\n", row.degrees, row.percent_error);
  }
}

}  // namespace volkit
