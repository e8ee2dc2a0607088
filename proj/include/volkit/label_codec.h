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

#ifndef VOLKIT_LABEL_CODEC_H_
#define VOLKIT_LABEL_CODEC_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace volkit {

inline constexpr int kNumJoints = 16;
inline constexpr int kImageSize = 256;
inline constexpr int kPoseGridSize = 64;
inline constexpr int kDepthBins = 12;
inline constexpr int kNumSegmentClasses = 15;  // background + 14 parts

// head, neck, left_shoulder, right_shoulder, left_arm, right_arm,
// left_fore_arm, right_fore_arm, left_hand, right_hand, left_hip, right_hip,
// left_knee, right_knee, left_foot, right_foot.
std::string_view JointName(int joint);
std::optional<int> JointIndex(std::string_view name);

// Pixel coordinates, u to the right and v down. Pixel centers sit at integer
// coordinates, so an image of size N spans [-0.5, N - 0.5).
struct Joint2D {
  double u = 0.0;
  double v = 0.0;
  bool visible = false;

  bool operator==(const Joint2D&) const = default;
};

struct Skeleton2D {
  std::array<Joint2D, kNumJoints> joints{};
  int image_size = kImageSize;

  bool operator==(const Skeleton2D&) const = default;
};

// Relative depth in [0, 1] under orthographic projection, 0 nearest.
struct Joint3D {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;

  bool operator==(const Joint3D&) const = default;
};

struct Skeleton3D {
  std::array<Joint3D, kNumJoints> joints{};

  bool operator==(const Skeleton3D&) const = default;
};

// 16 square channels, channel-major then row-major (v, u).
class HeatmapStack {
 public:
  explicit HeatmapStack(int resolution);

  int resolution() const { return resolution_; }
  std::span<float> channel(int joint);
  std::span<const float> channel(int joint) const;
  float at(int joint, int u, int v) const {
    return data_[(static_cast<std::size_t>(joint) * resolution_ + v) *
                     resolution_ +
                 u];
  }
  std::span<const float> data() const { return data_; }
  std::span<float> mutable_data() { return data_; }

 private:
  int resolution_;
  std::vector<float> data_;
};

// Per-pixel class ids, row-major. Valid ids are 0 (background) to 14.
struct SegmentationMask {
  int width = kImageSize;
  int height = kImageSize;
  std::vector<std::uint8_t> classes;
};

// 15 channels of width x height, channel-major.
struct OneHotStack {
  int width = 0;
  int height = 0;
  std::vector<float> data;
};

// 16 joints x 12 depth bins x 64 x 64, laid out [joint][bin][v][u].
class PoseGrid3D {
 public:
  PoseGrid3D();

  std::span<float> channel(int joint);
  std::span<const float> channel(int joint) const;
  float at(int joint, int u, int v, int bin) const {
    return data_[Offset(joint, u, v, bin)];
  }
  std::span<const float> data() const { return data_; }
  std::span<float> mutable_data() { return data_; }

  static constexpr std::size_t kChannelSize =
      static_cast<std::size_t>(kDepthBins) * kPoseGridSize * kPoseGridSize;

 private:
  static std::size_t Offset(int joint, int u, int v, int bin) {
    return joint * kChannelSize +
           (static_cast<std::size_t>(bin) * kPoseGridSize + v) *
               kPoseGridSize +
           u;
  }
  std::vector<float> data_;
};

// Each visible joint's channel gets exp(-d^2 / (2 sigma^2)) around the
// heatmap cell nearest the joint (peak exactly 1), with sigma in heatmap
// cells. Invisible joints leave their channel zero.
// Errors: kDomain for sigma <= 0, a visible joint outside the image, or a
// non-positive resolution.
HeatmapStack EncodeHeatmaps(const Skeleton2D& skeleton, int resolution,
                            double sigma = 1.0);

// Per-channel argmax (ties to the smallest row-major index) mapped back to
// image pixels. A channel whose values are all below 1e-6 decodes as an
// invisible joint at (0, 0).
Skeleton2D DecodeHeatmaps(const HeatmapStack& stack,
                          int image_size = kImageSize);

// floor(depth * 12) with depth 1 folded into the last bin.
// Errors: kDomain outside [0, 1].
int DepthBin(double depth);
double DepthBinCenter(int bin);

// Gaussian per joint centered at (u / 4, v / 4, DepthBin(depth)); sigmas in
// grid cells and bins.
// Errors: kDomain for depths outside [0, 1], pixels outside the 256 image,
// or non-positive sigmas.
PoseGrid3D EncodePose3D(const Skeleton3D& skeleton, double spatial_sigma = 1.0,
                        double depth_sigma = 1.0);

// Per-channel argmax; u = 4 * cell, v = 4 * cell, depth = bin center. For
// encoded joints with u, v <= 254 the spatial error is at most 2 px.
Skeleton3D DecodePose3D(const PoseGrid3D& grid);

// Errors: kShape if classes.size() != width * height, kDomain for ids > 14.
OneHotStack OneHotSegmentation(const SegmentationMask& mask);

// Per-pixel argmax over the 15 channels, ties to the lowest class.
// Errors: kShape for a malformed stack.
SegmentationMask ArgmaxSegmentation(const OneHotStack& stack);

}  // namespace volkit

#endif  // VOLKIT_LABEL_CODEC_H_
