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

#include "volkit/label_io.h"

#include <array>
#include <bit>
#include <cctype>
#include <istream>
#include <ostream>
#include <string>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "json.hpp"
#include "json_codec.h"
#include "volkit/error.h"

namespace volkit {
namespace {

// Reads the next PGM header token, skipping whitespace and comments.
std::string PgmToken(std::istream& in) {
  std::string token;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  while (c != EOF && !std::isspace(c)) {
    token.push_back(static_cast<char>(c));
    c = in.get();
  }
  return token;
}

int PgmNumber(std::istream& in, const char* what) {
  const std::string token = PgmToken(in);
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size() || value < 0) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw Error(ErrorKind::kFormat,
                fmt::format("PGM: bad {} '{}'", what, token));
  }
}

nlohmann::json ParseJson(std::istream& in, const char* what) {
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kFormat, fmt::format("{}: {}", what, e.what()));
  }
}

template <typename T>
void PutLittleEndian(std::ostream& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.put(static_cast<char>((value >> (8 * i)) & 0xFF));
  }
}

template <typename T>
T GetLittleEndian(std::istream& in) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    const int c = in.get();
    if (c == EOF) throw Error(ErrorKind::kFormat, "tensor file truncated");
    value |= static_cast<T>(static_cast<T>(c & 0xFF) << (8 * i));
  }
  return value;
}

void RequireDims(const Tensor& t, std::span<const std::uint32_t> expected,
                 const char* what) {
  if (!std::equal(t.dims.begin(), t.dims.end(), expected.begin(),
                  expected.end())) {
    throw Error(ErrorKind::kShape,
                fmt::format("tensor dims [{}] are not a {}",
                            fmt::join(t.dims, ", "), what));
  }
}

}  // namespace

SegmentationMask ReadPgm(std::istream& in) {
  if (PgmToken(in) != "P5") throw Error(ErrorKind::kFormat, "not a P5 PGM");
  SegmentationMask mask;
  mask.width = PgmNumber(in, "width");
  mask.height = PgmNumber(in, "height");
  const int maxval = PgmNumber(in, "maxval");
  if (maxval < 1 || maxval > 255 || mask.width == 0 || mask.height == 0) {
    throw Error(ErrorKind::kFormat, "PGM: only 8-bit, non-empty images");
  }
  mask.classes.resize(static_cast<std::size_t>(mask.width) * mask.height);
  if (!in.read(reinterpret_cast<char*>(mask.classes.data()),
               static_cast<std::streamsize>(mask.classes.size()))) {
    throw Error(ErrorKind::kFormat, "PGM: truncated pixel data");
  }
  return mask;
}

void WritePgm(std::ostream& out, const SegmentationMask& mask) {
  out << "P5\n" << mask.width << ' ' << mask.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(mask.classes.data()),
            static_cast<std::streamsize>(mask.classes.size()));
}

Skeleton2D ReadSkeleton2D(std::istream& in, int image_size) {
  return internal::Skeleton2DFromJson(ParseJson(in, "skeleton"), image_size);
}

void WriteSkeleton2D(std::ostream& out, const Skeleton2D& skeleton) {
  out << internal::Skeleton2DToJson(skeleton).dump(1) << '\n';
}

Skeleton3D ReadSkeleton3D(std::istream& in) {
  return internal::Skeleton3DFromJson(ParseJson(in, "skeleton"));
}

void WriteSkeleton3D(std::ostream& out, const Skeleton3D& skeleton) {
  out << internal::Skeleton3DToJson(skeleton).dump(1) << '\n';
}

void WriteTensor(std::ostream& out, const Tensor& tensor) {
  out.write("VTEN", 4);
  PutLittleEndian<std::uint16_t>(out, 1);
  PutLittleEndian<std::uint8_t>(out, static_cast<std::uint8_t>(tensor.dims.size()));
  for (std::uint32_t d : tensor.dims) PutLittleEndian<std::uint32_t>(out, d);
  for (float v : tensor.values) {
    PutLittleEndian<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
  }
  if (!out) throw Error(ErrorKind::kIo, "failed writing tensor");
}

Tensor ReadTensor(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || std::string_view(magic.data(), 4) != "VTEN") {
    throw Error(ErrorKind::kFormat, "not a tensor file (bad magic)");
  }
  if (GetLittleEndian<std::uint16_t>(in) != 1) {
    throw Error(ErrorKind::kFormat, "unsupported tensor file version");
  }
  Tensor tensor;
  const auto rank = GetLittleEndian<std::uint8_t>(in);
  std::size_t count = 1;
  for (int i = 0; i < rank; ++i) {
    tensor.dims.push_back(GetLittleEndian<std::uint32_t>(in));
    count *= tensor.dims.back();
    if (count > (std::size_t{1} << 31)) {
      throw Error(ErrorKind::kFormat, "tensor too large");
    }
  }
  tensor.values.resize(count);
  for (float& v : tensor.values) {
    v = std::bit_cast<float>(GetLittleEndian<std::uint32_t>(in));
  }
  return tensor;
}

Tensor ToTensor(const HeatmapStack& stack) {
  const auto r = static_cast<std::uint32_t>(stack.resolution());
  return Tensor{{kNumJoints, r, r},
                std::vector<float>(stack.data().begin(), stack.data().end())};
}

Tensor ToTensor(const PoseGrid3D& grid) {
  return Tensor{{kNumJoints, kDepthBins, kPoseGridSize, kPoseGridSize},
                std::vector<float>(grid.data().begin(), grid.data().end())};
}

Tensor ToTensor(const OneHotStack& stack) {
  return Tensor{{kNumSegmentClasses, static_cast<std::uint32_t>(stack.height),
                 static_cast<std::uint32_t>(stack.width)},
                stack.data};
}

HeatmapStack HeatmapStackFromTensor(const Tensor& tensor) {
  if (tensor.dims.size() != 3 || tensor.dims[0] != kNumJoints ||
      tensor.dims[1] != tensor.dims[2] || tensor.dims[1] == 0) {
    throw Error(ErrorKind::kShape, "tensor is not a 16-channel heatmap stack");
  }
  HeatmapStack stack(static_cast<int>(tensor.dims[1]));
  std::copy(tensor.values.begin(), tensor.values.end(),
            stack.mutable_data().begin());
  return stack;
}

PoseGrid3D PoseGridFromTensor(const Tensor& tensor) {
  constexpr std::array<std::uint32_t, 4> kDims{kNumJoints, kDepthBins,
                                               kPoseGridSize, kPoseGridSize};
  RequireDims(tensor, kDims, "3D pose grid");
  PoseGrid3D grid;
  std::copy(tensor.values.begin(), tensor.values.end(),
            grid.mutable_data().begin());
  return grid;
}

OneHotStack OneHotFromTensor(const Tensor& tensor) {
  if (tensor.dims.size() != 3 || tensor.dims[0] != kNumSegmentClasses) {
    throw Error(ErrorKind::kShape, "tensor is not a 15-channel one-hot stack");
  }
  return OneHotStack{static_cast<int>(tensor.dims[2]),
                     static_cast<int>(tensor.dims[1]), tensor.values};
}

}  // namespace volkit
