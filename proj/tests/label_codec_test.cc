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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "volkit/error.h"
#include "volkit/label_codec.h"
#include "volkit/label_io.h"

namespace volkit {
namespace {

using testing::RandomSkeleton2D;
using testing::RandomSkeleton3D;

template <typename Fn>
ErrorKind KindOf(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kIo;
}

SegmentationMask RandomMask(std::mt19937_64& rng, int width, int height) {
  std::uniform_int_distribution<int> cls(0, kNumSegmentClasses - 1);
  SegmentationMask mask{width, height, {}};
  for (int i = 0; i < width * height; ++i) {
    mask.classes.push_back(static_cast<std::uint8_t>(cls(rng)));
  }
  return mask;
}

TEST(JointNamesTest, SixteenUniqueNames) {
  for (int j = 0; j < kNumJoints; ++j) EXPECT_EQ(JointIndex(JointName(j)), j);
  EXPECT_EQ(JointName(0), "head");
  EXPECT_EQ(JointName(15), "right_foot");
  EXPECT_FALSE(JointIndex("tail").has_value());
}

TEST(HeatmapTest, PeakSitsOnJointCell) {
  Skeleton2D s;
  s.image_size = 64;
  s.joints[3] = {10.0, 20.0, true};
  const HeatmapStack stack = EncodeHeatmaps(s, 64, 1.0);
  EXPECT_EQ(stack.at(3, 10, 20), 1.0f);
  const auto channel = stack.channel(3);
  const auto best = std::max_element(channel.begin(), channel.end()) - channel.begin();
  EXPECT_EQ(best, 20 * 64 + 10);
  // Isotropic: one cell off in u or v gives exp(-1/2).
  EXPECT_FLOAT_EQ(stack.at(3, 11, 20), std::exp(-0.5f));
  EXPECT_FLOAT_EQ(stack.at(3, 10, 19), std::exp(-0.5f));
  // Invisible joints leave their channels empty.
  for (float v : stack.channel(0)) ASSERT_EQ(v, 0.0f);
}

TEST(HeatmapTest, EncodingIsDeterministic) {
  std::mt19937_64 rng(1);
  const Skeleton2D s = RandomSkeleton2D(rng, 256, 0.7);
  const HeatmapStack a = EncodeHeatmaps(s, 64);
  const HeatmapStack b = EncodeHeatmaps(s, 64);
  EXPECT_TRUE(std::equal(a.data().begin(), a.data().end(), b.data().begin()));
}

TEST(HeatmapTest, RoundTripWithinHalfPixelAtFullResolution) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Skeleton2D s = RandomSkeleton2D(rng, 256, 0.8);
    const Skeleton2D back = DecodeHeatmaps(EncodeHeatmaps(s, 256), 256);
    for (int j = 0; j < kNumJoints; ++j) {
      ASSERT_EQ(back.joints[j].visible, s.joints[j].visible);
      if (!s.joints[j].visible) continue;
      EXPECT_LE(std::abs(back.joints[j].u - s.joints[j].u), 0.5);
      EXPECT_LE(std::abs(back.joints[j].v - s.joints[j].v), 0.5);
    }
  }
}

TEST(HeatmapTest, CellCentersRoundTripExactly) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> cell(0, 63);
  for (int trial = 0; trial < 100; ++trial) {
    Skeleton2D s;
    for (Joint2D& j : s.joints) {
      // Centers of 4x4 pixel blocks: 4c + 1.5.
      j = {4.0 * cell(rng) + 1.5, 4.0 * cell(rng) + 1.5, true};
    }
    EXPECT_EQ(DecodeHeatmaps(EncodeHeatmaps(s, 64)), s);
  }
}

TEST(HeatmapTest, DownsampledRoundTripWithinHalfCell) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Skeleton2D s = RandomSkeleton2D(rng, 256);
    const Skeleton2D back = DecodeHeatmaps(EncodeHeatmaps(s, 64));
    for (int j = 0; j < kNumJoints; ++j) {
      EXPECT_LE(std::abs(back.joints[j].u - s.joints[j].u), 2.0);
      EXPECT_LE(std::abs(back.joints[j].v - s.joints[j].v), 2.0);
    }
  }
}

TEST(HeatmapTest, DecodeTieAndInvisibleRules) {
  HeatmapStack stack(256);
  std::fill(stack.channel(5).begin(), stack.channel(5).end(), 0.25f);
  std::fill(stack.channel(6).begin(), stack.channel(6).end(), 5e-7f);
  const Skeleton2D s = DecodeHeatmaps(stack);
  EXPECT_TRUE(s.joints[5].visible);
  EXPECT_EQ(s.joints[5].u, 0.0);
  EXPECT_EQ(s.joints[5].v, 0.0);
  EXPECT_FALSE(s.joints[6].visible);
  EXPECT_FALSE(s.joints[0].visible);
}

TEST(HeatmapTest, RejectsBadInput) {
  Skeleton2D s;
  s.joints[0] = {300.0, 10.0, true};
  EXPECT_EQ(KindOf([&] { EncodeHeatmaps(s, 64); }), ErrorKind::kDomain);
  s.joints[0].visible = false;  // invisible joints may lie anywhere
  EXPECT_NO_THROW(EncodeHeatmaps(s, 64));
  EXPECT_EQ(KindOf([&] { EncodeHeatmaps(s, 64, 0.0); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([&] { EncodeHeatmaps(s, 0); }), ErrorKind::kDomain);
}

TEST(DepthBinTest, BinsAndCenters) {
  EXPECT_EQ(DepthBin(0.0), 0);
  EXPECT_EQ(DepthBin(0.5), 6);
  EXPECT_EQ(DepthBin(1.0), 11);
  EXPECT_EQ(DepthBin(1.0 / 12.0 - 1e-12), 0);
  EXPECT_DOUBLE_EQ(DepthBinCenter(6), 6.5 / 12.0);
  EXPECT_DOUBLE_EQ(DepthBinCenter(0), 1.0 / 24.0);
  EXPECT_EQ(KindOf([] { DepthBin(-0.01); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { DepthBin(1.01); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { DepthBin(std::nan("")); }), ErrorKind::kDomain);
}

TEST(DepthBinTest, QuantizationErrorAtMostHalfBin) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int i = 0; i < 100000; ++i) {
    const double depth = d(rng);
    ASSERT_LE(std::abs(DepthBinCenter(DepthBin(depth)) - depth), 1.0 / 24.0 + 1e-15);
  }
  EXPECT_LE(std::abs(DepthBinCenter(DepthBin(1.0)) - 1.0), 1.0 / 24.0 + 1e-15);
}

TEST(PoseGridTest, RoundTripBounds) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Skeleton3D s = RandomSkeleton3D(rng);
    for (Joint3D& j : s.joints) {
      j.u = std::min(j.u, 254.0);
      j.v = std::min(j.v, 254.0);
    }
    const PoseGrid3D grid = EncodePose3D(s);
    const Skeleton3D back = DecodePose3D(grid);
    for (int j = 0; j < kNumJoints; ++j) {
      EXPECT_LE(std::abs(back.joints[j].u - s.joints[j].u), 2.0);
      EXPECT_LE(std::abs(back.joints[j].v - s.joints[j].v), 2.0);
      EXPECT_LE(std::abs(back.joints[j].depth - s.joints[j].depth), 1.0 / 24.0 + 1e-15);
      EXPECT_EQ(DepthBin(back.joints[j].depth), DepthBin(s.joints[j].depth));
    }
  }
}

TEST(PoseGridTest, PeakAtMeanCell) {
  Skeleton3D s;
  for (Joint3D& j : s.joints) j = {128.0, 64.0, 0.5};
  s.joints[2] = {40.0, 200.0, 0.0};
  const PoseGrid3D grid = EncodePose3D(s);
  EXPECT_EQ(grid.at(2, 10, 50, 0), 1.0f);
  EXPECT_EQ(grid.at(0, 32, 16, 6), 1.0f);
  EXPECT_FLOAT_EQ(grid.at(0, 32, 16, 7), std::exp(-0.5f));
  const Skeleton3D back = DecodePose3D(grid);
  EXPECT_EQ(back.joints[2].u, 40.0);
  EXPECT_EQ(back.joints[2].v, 200.0);
  EXPECT_DOUBLE_EQ(back.joints[2].depth, 1.0 / 24.0);
  EXPECT_DOUBLE_EQ(back.joints[0].depth, 6.5 / 12.0);
}

TEST(PoseGridTest, RejectsBadDepth) {
  Skeleton3D s;
  s.joints[4].depth = 1.5;
  EXPECT_EQ(KindOf([&] { EncodePose3D(s); }), ErrorKind::kDomain);
}

TEST(OneHotTest, BackgroundMask) {
  const SegmentationMask mask{4, 3, std::vector<std::uint8_t>(12, 0)};
  const OneHotStack stack = OneHotSegmentation(mask);
  ASSERT_EQ(stack.data.size(), 15u * 12u);
  for (std::size_t i = 0; i < stack.data.size(); ++i) {
    EXPECT_EQ(stack.data[i], i < 12 ? 1.0f : 0.0f);
  }
}

TEST(OneHotTest, RandomRoundTripIsExact) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const SegmentationMask mask = RandomMask(rng, 17, 9);
    const OneHotStack stack = OneHotSegmentation(mask);
    EXPECT_EQ(ArgmaxSegmentation(stack).classes, mask.classes);
    EXPECT_EQ(OneHotSegmentation(ArgmaxSegmentation(stack)).data, stack.data);
  }
}

TEST(OneHotTest, TiesGoToLowestClass) {
  OneHotStack stack{1, 1, std::vector<float>(15, 0.0f)};
  stack.data[4] = 0.5f;
  stack.data[9] = 0.5f;
  EXPECT_EQ(ArgmaxSegmentation(stack).classes[0], 4);
}

TEST(OneHotTest, RejectsBadInput) {
  EXPECT_EQ(KindOf([] { OneHotSegmentation({2, 1, {0, 15}}); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { OneHotSegmentation({2, 2, {0, 1}}); }), ErrorKind::kShape);
  EXPECT_EQ(KindOf([] { ArgmaxSegmentation({2, 2, std::vector<float>(10)}); }),
            ErrorKind::kShape);
}

TEST(PgmTest, RoundTripAndHeader) {
  std::mt19937_64 rng(9);
  const SegmentationMask mask = RandomMask(rng, 5, 3);
  std::stringstream buffer;
  WritePgm(buffer, mask);
  EXPECT_EQ(buffer.str().substr(0, 11), "P5\n5 3\n255\n");
  const SegmentationMask back = ReadPgm(buffer);
  EXPECT_EQ(back.width, 5);
  EXPECT_EQ(back.height, 3);
  EXPECT_EQ(back.classes, mask.classes);
}

TEST(PgmTest, AcceptsCommentsAndRejectsOtherFormats) {
  std::istringstream commented(std::string("P5 # mask\n2 1\n255\n\x01\x02", 20));
  EXPECT_EQ(ReadPgm(commented).classes, (std::vector<std::uint8_t>{1, 2}));
  std::istringstream ascii("P2\n2 1\n255\n1 2\n");
  EXPECT_EQ(KindOf([&] { ReadPgm(ascii); }), ErrorKind::kFormat);
  std::istringstream deep("P5\n2 1\n65535\n");
  EXPECT_EQ(KindOf([&] { ReadPgm(deep); }), ErrorKind::kFormat);
  std::istringstream truncated(std::string("P5\n2 2\n255\n\x01", 12));
  EXPECT_EQ(KindOf([&] { ReadPgm(truncated); }), ErrorKind::kFormat);
}

TEST(SkeletonJsonTest, RoundTrips) {
  std::mt19937_64 rng(10);
  const Skeleton2D s2 = RandomSkeleton2D(rng, 256, 0.5);
  std::stringstream b2;
  WriteSkeleton2D(b2, s2);
  EXPECT_EQ(ReadSkeleton2D(b2), s2);

  const Skeleton3D s3 = RandomSkeleton3D(rng);
  std::stringstream b3;
  WriteSkeleton3D(b3, s3);
  EXPECT_EQ(ReadSkeleton3D(b3), s3);
}

TEST(SkeletonJsonTest, RejectsIncompleteOrUnknownJoints) {
  std::stringstream full;
  WriteSkeleton2D(full, Skeleton2D{});
  std::string text = full.str();

  std::istringstream renamed(
      std::string(text).replace(text.find("\"neck\""), 6, "\"tail\""));
  EXPECT_EQ(KindOf([&] { ReadSkeleton2D(renamed); }), ErrorKind::kFormat);
  std::istringstream missing("[{\"name\": \"head\", \"u\": 1, \"v\": 2}]");
  EXPECT_EQ(KindOf([&] { ReadSkeleton2D(missing); }), ErrorKind::kFormat);
  std::istringstream broken("[{");
  EXPECT_EQ(KindOf([&] { ReadSkeleton2D(broken); }), ErrorKind::kFormat);
  std::istringstream no_depth(text);
  EXPECT_EQ(KindOf([&] { ReadSkeleton3D(no_depth); }), ErrorKind::kFormat);
}

TEST(TensorFileTest, RoundTripsEveryKind) {
  std::mt19937_64 rng(11);
  const HeatmapStack heatmaps = EncodeHeatmaps(RandomSkeleton2D(rng, 256), 64);
  std::stringstream b1;
  WriteTensor(b1, ToTensor(heatmaps));
  const HeatmapStack h = HeatmapStackFromTensor(ReadTensor(b1));
  EXPECT_TRUE(std::equal(h.data().begin(), h.data().end(), heatmaps.data().begin(),
                         heatmaps.data().end()));

  const PoseGrid3D grid = EncodePose3D(RandomSkeleton3D(rng));
  std::stringstream b2;
  WriteTensor(b2, ToTensor(grid));
  const PoseGrid3D g = PoseGridFromTensor(ReadTensor(b2));
  EXPECT_TRUE(std::equal(g.data().begin(), g.data().end(), grid.data().begin(),
                         grid.data().end()));

  const OneHotStack stack = OneHotSegmentation(RandomMask(rng, 6, 4));
  std::stringstream b3;
  WriteTensor(b3, ToTensor(stack));
  const OneHotStack o = OneHotFromTensor(ReadTensor(b3));
  EXPECT_EQ(o.width, 6);
  EXPECT_EQ(o.height, 4);
  EXPECT_EQ(o.data, stack.data);
}

TEST(TensorFileTest, HeaderLayout) {
  std::ostringstream out;
  WriteTensor(out, Tensor{{2, 1}, {1.0f, -2.0f}});
  const std::string expected("VTEN\x01\x00\x02\x02\x00\x00\x00\x01\x00\x00\x00"
                             "\x00\x00\x80\x3f\x00\x00\x00\xc0",
                             23);
  EXPECT_EQ(out.str(), expected);
}

TEST(TensorFileTest, RejectsMalformedInput) {
  std::istringstream magic("XTEN");
  EXPECT_EQ(KindOf([&] { ReadTensor(magic); }), ErrorKind::kFormat);
  std::istringstream truncated(std::string("VTEN\x01\x00\x01\x04\x00\x00\x00\x00", 12));
  EXPECT_EQ(KindOf([&] { ReadTensor(truncated); }), ErrorKind::kFormat);
  EXPECT_EQ(KindOf([] { PoseGridFromTensor(Tensor{{16, 12, 64}, {}}); }),
            ErrorKind::kShape);
  EXPECT_EQ(KindOf([] { HeatmapStackFromTensor(Tensor{{15, 4, 4}, {}}); }),
            ErrorKind::kShape);
}

}  // namespace
}  // namespace volkit
