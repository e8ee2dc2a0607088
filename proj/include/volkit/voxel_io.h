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

#ifndef VOLKIT_VOXEL_IO_H_
#define VOLKIT_VOXEL_IO_H_

#include <filesystem>
#include <iosfwd>

#include "volkit/voxel.h"

namespace volkit {

// Binary voxel-grid file, all integers little-endian:
//
//   "VOLN"            4 bytes magic
//   version   u16     = 1
//   kind      u8      0 = binary, 1 = f32 probability
//   nx ny nz  u32 x3
//   payload           binary: each x-row bit-packed LSB first (x = 0 is bit 0
//                     of the row's first byte), padded to a whole byte;
//                     probability: f32 per cell.
//                     Rows ordered by y, then z.
void WriteVoxelGrid(std::ostream& out, const VoxelGrid& grid);

// Errors: kFormat for a bad header or truncated payload.
VoxelGrid ReadVoxelGrid(std::istream& in);

VoxelGrid ReadVoxelGridFile(const std::filesystem::path& path);
void WriteVoxelGridFile(const std::filesystem::path& path,
                        const VoxelGrid& grid);

}  // namespace volkit

#endif  // VOLKIT_VOXEL_IO_H_
