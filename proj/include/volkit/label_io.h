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

#ifndef VOLKIT_LABEL_IO_H_
#define VOLKIT_LABEL_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "volkit/label_codec.h"

namespace volkit {

// 8-bit binary PGM (P5) with class ids as gray values.
// Errors: kFormat for anything but a P5 image with maxval <= 255.
SegmentationMask ReadPgm(std::istream& in);
void WritePgm(std::ostream& out, const SegmentationMask& mask);

// Skeletons are JSON arrays of named joints:
//   [{"name": "head", "u": 120.0, "v": 30.5, "visible": true}, ...]
// 3D joints carry "depth" instead of "visible". All 16 names must appear.
// Errors: kFormat.
Skeleton2D ReadSkeleton2D(std::istream& in, int image_size = kImageSize);
void WriteSkeleton2D(std::ostream& out, const Skeleton2D& skeleton);
Skeleton3D ReadSkeleton3D(std::istream& in);
void WriteSkeleton3D(std::ostream& out, const Skeleton3D& skeleton);

// Dense f32 tensor file: "VTEN", u16 version = 1, u8 rank, rank x u32 dims,
// then little-endian f32 values, last dim fastest.
struct Tensor {
  std::vector<std::uint32_t> dims;
  std::vector<float> values;
};
void WriteTensor(std::ostream& out, const Tensor& tensor);
// Errors: kFormat.
Tensor ReadTensor(std::istream& in);

Tensor ToTensor(const HeatmapStack& stack);
Tensor ToTensor(const PoseGrid3D& grid);
Tensor ToTensor(const OneHotStack& stack);
// Errors: kShape if the dims do not describe the requested kind.
HeatmapStack HeatmapStackFromTensor(const Tensor& tensor);
PoseGrid3D PoseGridFromTensor(const Tensor& tensor);
OneHotStack OneHotFromTensor(const Tensor& tensor);

}  // namespace volkit

#endif  // VOLKIT_LABEL_IO_H_
