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

#include "volkit/voxel_io.h"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include <fmt/format.h>

#include "volkit/error.h"

namespace volkit {
namespace {

constexpr std::array<char, 4> kMagic{'V', 'O', 'L', 'N'};
constexpr std::uint16_t kVersion = 1;

template <typename T>
void PutLittleEndian(std::ostream& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<unsigned char>((value >> (8 * i)) & 0xFF);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

template <typename T>
T GetLittleEndian(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw Error(ErrorKind::kFormat, "voxel file truncated");
  }
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(static_cast<T>(bytes[i]) << (8 * i));
  }
  return value;
}

}  // namespace

void WriteVoxelGrid(std::ostream& out, const VoxelGrid& grid) {
  const GridDims& d = grid.dims();
  out.write(kMagic.data(), kMagic.size());
  PutLittleEndian<std::uint16_t>(out, kVersion);
  PutLittleEndian<std::uint8_t>(out, static_cast<std::uint8_t>(grid.kind()));
  PutLittleEndian<std::uint32_t>(out, d.nx);
  PutLittleEndian<std::uint32_t>(out, d.ny);
  PutLittleEndian<std::uint32_t>(out, d.nz);

  const auto data = grid.data();
  if (grid.kind() == VoxelKind::kBinary) {
    const std::size_t row_bytes = (d.nx + 7) / 8;
    std::vector<char> row(row_bytes);
    for (std::size_t r = 0; r < static_cast<std::size_t>(d.ny) * d.nz; ++r) {
      std::fill(row.begin(), row.end(), 0);
      for (std::uint32_t x = 0; x < d.nx; ++x) {
        if (data[r * d.nx + x] != 0.0f) {
          row[x / 8] = static_cast<char>(row[x / 8] | (1u << (x % 8)));
        }
      }
      out.write(row.data(), row.size());
    }
  } else {
    for (float value : data) {
      PutLittleEndian<std::uint32_t>(out, std::bit_cast<std::uint32_t>(value));
    }
  }
  if (!out) throw Error(ErrorKind::kIo, "failed writing voxel grid");
}

VoxelGrid ReadVoxelGrid(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw Error(ErrorKind::kFormat, "not a voxel grid file (bad magic)");
  }
  const auto version = GetLittleEndian<std::uint16_t>(in);
  if (version != kVersion) {
    throw Error(ErrorKind::kFormat,
                fmt::format("unsupported voxel file version {}", version));
  }
  const auto kind_byte = GetLittleEndian<std::uint8_t>(in);
  if (kind_byte > 1) {
    throw Error(ErrorKind::kFormat,
                fmt::format("unknown voxel kind {}", kind_byte));
  }
  GridDims d;
  d.nx = GetLittleEndian<std::uint32_t>(in);
  d.ny = GetLittleEndian<std::uint32_t>(in);
  d.nz = GetLittleEndian<std::uint32_t>(in);
  // Guard against absurd headers before allocating.
  if (d.count() > (std::size_t{1} << 31)) {
    throw Error(ErrorKind::kFormat, "voxel grid dims too large");
  }

  const auto kind = static_cast<VoxelKind>(kind_byte);
  std::vector<float> data(d.count());
  if (kind == VoxelKind::kBinary) {
    const std::size_t row_bytes = (d.nx + 7) / 8;
    std::vector<unsigned char> row(row_bytes);
    for (std::size_t r = 0; r < static_cast<std::size_t>(d.ny) * d.nz; ++r) {
      if (!in.read(reinterpret_cast<char*>(row.data()), row.size())) {
        throw Error(ErrorKind::kFormat, "voxel file truncated");
      }
      for (std::uint32_t x = 0; x < d.nx; ++x) {
        data[r * d.nx + x] = ((row[x / 8] >> (x % 8)) & 1u) ? 1.0f : 0.0f;
      }
    }
  } else {
    for (float& value : data) {
      value = std::bit_cast<float>(GetLittleEndian<std::uint32_t>(in));
    }
  }
  try {
    return VoxelGrid(d, kind, std::move(data));
  } catch (const Error& e) {
    throw Error(ErrorKind::kFormat, e.what());
  }
}

VoxelGrid ReadVoxelGridFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIo, fmt::format("cannot open '{}'", path.string()));
  }
  return ReadVoxelGrid(in);
}

void WriteVoxelGridFile(const std::filesystem::path& path,
                        const VoxelGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::kIo,
                fmt::format("cannot write '{}'", path.string()));
  }
  WriteVoxelGrid(out, grid);
}

}  // namespace volkit
