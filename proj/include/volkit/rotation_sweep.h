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

#ifndef VOLKIT_ROTATION_SWEEP_H_
#define VOLKIT_ROTATION_SWEEP_H_

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "volkit/mesh.h"

namespace volkit {

// Meshes are y-up. kY tumbles the body head over heels (rotation about the
// lateral x axis), so at 90 and 270 degrees it is seen from above or below.
// kZ spins it about the vertical y axis.
enum class SweepAxis { kY, kZ };

std::string_view SweepAxisName(SweepAxis axis);
std::optional<SweepAxis> SweepAxisFromName(std::string_view name);

Mat3 SweepRotation(SweepAxis axis, double degrees);

struct SweepOptions {
  SweepAxis axis = SweepAxis::kY;
  double height_m = 0.0;  // fixed reference height for the baseline
  int grid = 128;
  double padding = 0.05;
  int jobs = 1;
};

struct SweepRow {
  int degrees = 0;
  double percent_error = 0.0;  // 100 * (estimate - truth) / truth
};

struct SweepResult {
  SweepAxis axis = SweepAxis::kY;
  double true_volume_m3 = 0.0;
  std::vector<SweepRow> rows;  // 360 rows, one per degree
};

// For every whole degree, rotates the mesh about its vertex centroid,
// voxelizes it into a fixed cube that fits all rotations, and compares the
// voxel baseline at `height_m` with the mesh volume. Degrees are split over
// `jobs` threads; rows always come back in degree order.
// Errors: kPrecondition for an open mesh, kDomain for height_m <= 0 or a
// grid below 2, plus those of Voxelize and BaselineVolume.
SweepResult RunRotationSweep(const TriangleMesh& mesh,
                             const SweepOptions& options);

// `deg,PE` rows.
void WriteSweepCsv(std::ostream& out, const SweepResult& result);

}  // namespace volkit

#endif  // VOLKIT_ROTATION_SWEEP_H_
