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

#include "volkit/label_codec.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "volkit/error.h"

namespace volkit {
namespace {

constexpr std::array<std::string_view, kNumJoints> kJointNames{
    "head",          "neck",           "left_shoulder", "right_shoulder",
    "left_arm",      "right_arm",      "left_fore_arm", "right_fore_arm",
    "left_hand",     "right_hand",     "left_hip",      "right_hip",
    "left_knee",     "right_knee",     "left_foot",     "right_foot"};

constexpr float kInvisibleBelow = 1e-6f;

std::vector<float> Gaussian1D(int n, double mean, double sigma) {
  std::vector<float> g(n);
  const double denom = 2.0 * sigma * sigma;
  for (int i = 0; i < n; ++i) {
    const double d = i - mean;
    g[i] = static_cast<float>(std::exp(-d * d / denom));
  }
  return g;
}

// Index of the first maximum.
std::size_t ArgMax(std::span<const float> values) {
  return static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
}

}  // namespace

std::string_view JointName(int joint) {
  if (joint < 0 || joint >= kNumJoints) {
    throw Error(ErrorKind::kDomain, fmt::format("no joint {}", joint));
  }
  return kJointNames[joint];
}

std::optional<int> JointIndex(std::string_view name) {
  for (int j = 0; j < kNumJoints; ++j) {
    if (kJointNames[j] == name) return j;
  }
  return std::nullopt;
}

HeatmapStack::HeatmapStack(int resolution) : resolution_(resolution) {
  if (resolution <= 0) {
    throw Error(ErrorKind::kDomain,
                fmt::format("heatmap resolution {} must be positive",
                            resolution));
  }
  data_.assign(static_cast<std::size_t>(kNumJoints) * resolution * resolution,
               0.0f);
}

std::span<float> HeatmapStack::channel(int joint) {
  const std::size_t size = static_cast<std::size_t>(resolution_) * resolution_;
  return std::span<float>(data_).subspan(joint * size, size);
}

std::span<const float> HeatmapStack::channel(int joint) const {
  const std::size_t size = static_cast<std::size_t>(resolution_) * resolution_;
  return std::span<const float>(data_).subspan(joint * size, size);
}

PoseGrid3D::PoseGrid3D() : data_(kNumJoints * kChannelSize, 0.0f) {}

std::span<float> PoseGrid3D::channel(int joint) {
  return std::span<float>(data_).subspan(joint * kChannelSize, kChannelSize);
}

std::span<const float> PoseGrid3D::channel(int joint) const {
  return std::span<const float>(data_).subspan(joint * kChannelSize,
                                               kChannelSize);
}

HeatmapStack EncodeHeatmaps(const Skeleton2D& skeleton, int resolution,
                            double sigma) {
  if (!(sigma > 0.0)) {
    throw Error(ErrorKind::kDomain,
                fmt::format("heatmap sigma must be positive, got {}", sigma));
  }
  if (skeleton.image_size <= 0) {
    throw Error(ErrorKind::kDomain, "skeleton image size must be positive");
  }
  HeatmapStack stack(resolution);
  const double size = skeleton.image_size;
  const double scale = resolution / size;
  for (int j = 0; j < kNumJoints; ++j) {
    const Joint2D& joint = skeleton.joints[j];
    if (!joint.visible) continue;
    if (!(joint.u >= -0.5 && joint.u <= size - 0.5 && joint.v >= -0.5 &&
          joint.v <= size - 0.5)) {
      throw Error(ErrorKind::kDomain,
                  fmt::format("visible joint {} at ({}, {}) is outside the "
                              "{}x{} image",
                              JointName(j), joint.u, joint.v,
                              skeleton.image_size, skeleton.image_size));
    }
    auto nearest = [&](double p) {
      const long cell = std::lround((p + 0.5) * scale - 0.5);
      return static_cast<int>(std::clamp(cell, 0L, long{resolution} - 1));
    };
    const std::vector<float> gu = Gaussian1D(resolution, nearest(joint.u), sigma);
    const std::vector<float> gv = Gaussian1D(resolution, nearest(joint.v), sigma);
    std::span<float> out = stack.channel(j);
    for (int v = 0; v < resolution; ++v) {
      for (int u = 0; u < resolution; ++u) {
        out[static_cast<std::size_t>(v) * resolution + u] = gv[v] * gu[u];
      }
    }
  }
  return stack;
}

Skeleton2D DecodeHeatmaps(const HeatmapStack& stack, int image_size) {
  Skeleton2D skeleton;
  skeleton.image_size = image_size;
  const int res = stack.resolution();
  const double scale = static_cast<double>(image_size) / res;
  for (int j = 0; j < kNumJoints; ++j) {
    const auto channel = stack.channel(j);
    const std::size_t best = ArgMax(channel);
    Joint2D& joint = skeleton.joints[j];
    if (channel[best] < kInvisibleBelow) continue;
    joint.visible = true;
    joint.u = (static_cast<double>(best % res) + 0.5) * scale - 0.5;
    joint.v = (static_cast<double>(best / res) + 0.5) * scale - 0.5;
  }
  return skeleton;
}

int DepthBin(double depth) {
  if (!(depth >= 0.0 && depth <= 1.0)) {
    throw Error(ErrorKind::kDomain,
                fmt::format("relative depth {} outside [0, 1]", depth));
  }
  return std::min(static_cast<int>(std::floor(depth * kDepthBins)),
                  kDepthBins - 1);
}

double DepthBinCenter(int bin) {
  if (bin < 0 || bin >= kDepthBins) {
    throw Error(ErrorKind::kDomain, fmt::format("no depth bin {}", bin));
  }
  return (bin + 0.5) / kDepthBins;
}

PoseGrid3D EncodePose3D(const Skeleton3D& skeleton, double spatial_sigma,
                        double depth_sigma) {
  if (!(spatial_sigma > 0.0) || !(depth_sigma > 0.0)) {
    throw Error(ErrorKind::kDomain, "pose grid sigmas must be positive");
  }
  constexpr double kCellPixels =
      static_cast<double>(kImageSize) / kPoseGridSize;
  PoseGrid3D grid;
  for (int j = 0; j < kNumJoints; ++j) {
    const Joint3D& joint = skeleton.joints[j];
    const int bin = DepthBin(joint.depth);
    if (!(joint.u >= 0.0 && joint.u <= kImageSize && joint.v >= 0.0 &&
          joint.v <= kImageSize)) {
      throw Error(ErrorKind::kDomain,
                  fmt::format("joint {} at ({}, {}) is outside the image",
                              JointName(j), joint.u, joint.v));
    }
    const std::vector<float> gu =
        Gaussian1D(kPoseGridSize, joint.u / kCellPixels, spatial_sigma);
    const std::vector<float> gv =
        Gaussian1D(kPoseGridSize, joint.v / kCellPixels, spatial_sigma);
    const std::vector<float> gd = Gaussian1D(kDepthBins, bin, depth_sigma);
    std::span<float> out = grid.channel(j);
    std::size_t i = 0;
    for (int b = 0; b < kDepthBins; ++b) {
      for (int v = 0; v < kPoseGridSize; ++v) {
        const float row = gd[b] * gv[v];
        for (int u = 0; u < kPoseGridSize; ++u) out[i++] = row * gu[u];
      }
    }
  }
  return grid;
}

Skeleton3D DecodePose3D(const PoseGrid3D& grid) {
  constexpr double kCellPixels =
      static_cast<double>(kImageSize) / kPoseGridSize;
  constexpr std::size_t kPlane =
      static_cast<std::size_t>(kPoseGridSize) * kPoseGridSize;
  Skeleton3D skeleton;
  for (int j = 0; j < kNumJoints; ++j) {
    const std::size_t best = ArgMax(grid.channel(j));
    const auto bin = static_cast<int>(best / kPlane);
    const std::size_t in_plane = best % kPlane;
    skeleton.joints[j].u = kCellPixels * static_cast<double>(in_plane % kPoseGridSize);
    skeleton.joints[j].v = kCellPixels * static_cast<double>(in_plane / kPoseGridSize);
    skeleton.joints[j].depth = DepthBinCenter(bin);
  }
  return skeleton;
}

OneHotStack OneHotSegmentation(const SegmentationMask& mask) {
  if (mask.width <= 0 || mask.height <= 0 ||
      mask.classes.size() !=
          static_cast<std::size_t>(mask.width) * mask.height) {
    throw Error(ErrorKind::kShape,
                fmt::format("mask of {}x{} holds {} pixels", mask.width,
                            mask.height, mask.classes.size()));
  }
  const std::size_t plane = mask.classes.size();
  OneHotStack stack{mask.width, mask.height,
                    std::vector<float>(plane * kNumSegmentClasses, 0.0f)};
  for (std::size_t i = 0; i < plane; ++i) {
    const int c = mask.classes[i];
    if (c >= kNumSegmentClasses) {
      throw Error(ErrorKind::kDomain,
                  fmt::format("pixel ({}, {}) has class {} outside 0..{}",
                              i % mask.width, i / mask.width, c,
                              kNumSegmentClasses - 1));
    }
    stack.data[c * plane + i] = 1.0f;
  }
  return stack;
}

SegmentationMask ArgmaxSegmentation(const OneHotStack& stack) {
  const std::size_t plane =
      static_cast<std::size_t>(std::max(stack.width, 0)) *
      static_cast<std::size_t>(std::max(stack.height, 0));
  if (plane == 0 || stack.data.size() != plane * kNumSegmentClasses) {
    throw Error(ErrorKind::kShape, "malformed one-hot stack");
  }
  SegmentationMask mask{stack.width, stack.height,
                        std::vector<std::uint8_t>(plane, 0)};
  for (std::size_t i = 0; i < plane; ++i) {
    int best = 0;
    for (int c = 1; c < kNumSegmentClasses; ++c) {
      if (stack.data[c * plane + i] > stack.data[best * plane + i]) best = c;
    }
    mask.classes[i] = static_cast<std::uint8_t>(best);
  }
  return mask;
}

}  // namespace volkit
