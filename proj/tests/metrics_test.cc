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
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "json.hpp"
#include "volkit/error.h"
#include "volkit/metrics.h"

namespace volkit {
namespace {

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

PartVolumes Volumes(double per_part) {
  PartVolumes v;
  v.volumes_dm3.assign(kNumParts, per_part);
  v.total_dm3 = per_part * kNumParts;
  return v;
}

// Truth of 100 dm^3 total and a prediction off by `ape` percent.
VolumePrediction WithTotalApe(double ape) {
  VolumePrediction s{Volumes(5.0), Volumes(5.0)};
  s.truth.total_dm3 = 100.0;
  s.predicted.total_dm3 = 100.0 + ape;
  return s;
}

TEST(ApeTest, Definition) {
  EXPECT_DOUBLE_EQ(Ape(110.0, 100.0), 10.0);
  EXPECT_DOUBLE_EQ(Ape(90.0, 100.0), 10.0);
  EXPECT_EQ(Ape(42.0, 42.0), 0.0);
  EXPECT_EQ(KindOf([] { Ape(1.0, 0.0); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { Ape(1.0, -3.0); }), ErrorKind::kDomain);
}

TEST(AggregateTest, ConstantErrorsHaveZeroSpread) {
  const std::vector<VolumePrediction> samples = {WithTotalApe(10.0), WithTotalApe(-10.0)};
  const MetricReport r = Aggregate(samples);
  EXPECT_DOUBLE_EQ(r.total.ape_mean, 10.0);
  EXPECT_EQ(r.total.ape_std, 0.0);
  EXPECT_DOUBLE_EQ(r.total.ae_mean_dm3, 10.0);
  EXPECT_EQ(r.total.ae_std_dm3, 0.0);
  EXPECT_EQ(r.sample_count, 2u);
}

TEST(AggregateTest, SuccessAtCountsSamples) {
  const std::vector<VolumePrediction> samples = {WithTotalApe(5.0), WithTotalApe(15.0)};
  const std::vector<double> tolerances = {10.0};
  const MetricReport r = Aggregate(samples, tolerances);
  EXPECT_EQ(r.success_at.at(10.0), 0.5);
  const std::vector<VolumePrediction> four = {WithTotalApe(5.0), WithTotalApe(15.0),
                                              WithTotalApe(25.0), WithTotalApe(9.0)};
  EXPECT_EQ(Aggregate(four, tolerances).success_at.at(10.0), 0.5);
}

TEST(AggregateTest, PerfectSampleGivesFlatCurve) {
  const std::vector<VolumePrediction> samples = {WithTotalApe(0.0)};
  const MetricReport r = Aggregate(samples);
  ASSERT_EQ(r.curve.size(), static_cast<std::size_t>(kCurveSteps + 1));
  for (const CurvePoint& p : r.curve) EXPECT_EQ(p.ratio, 1.0);
  EXPECT_EQ(r.curve.front().threshold, 0.0);
  EXPECT_EQ(r.curve.back().threshold, 100.0);
  for (const auto& part_curve : r.part_curves) {
    for (const CurvePoint& p : part_curve) EXPECT_EQ(p.ratio, 1.0);
  }
}

TEST(AggregateTest, PopulationStatisticsMatchOracle) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> truth(50.0, 120.0), err(-0.3, 0.3);
  std::vector<VolumePrediction> samples;
  std::vector<double> apes, aes;
  for (int i = 0; i < 500; ++i) {
    VolumePrediction s{Volumes(1.0), Volumes(1.0)};
    s.truth.total_dm3 = truth(rng);
    s.predicted.total_dm3 = s.truth.total_dm3 * (1.0 + err(rng));
    aes.push_back(std::abs(s.predicted.total_dm3 - s.truth.total_dm3));
    apes.push_back(100.0 * aes.back() / s.truth.total_dm3);
    samples.push_back(s);
  }
  auto mean = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0L) / v.size();
  };
  auto stddev = [&](const std::vector<double>& v) {
    const long double m = mean(v);
    long double sq = 0.0L;
    for (double x : v) sq += (x - m) * (x - m);
    return std::sqrt(sq / v.size());
  };
  const MetricReport r = Aggregate(samples);
  EXPECT_NEAR(r.total.ape_mean, static_cast<double>(mean(apes)), 1e-12);
  EXPECT_NEAR(r.total.ape_std, static_cast<double>(stddev(apes)), 1e-12);
  EXPECT_NEAR(r.total.ae_mean_dm3, static_cast<double>(mean(aes)), 1e-12);
  EXPECT_NEAR(r.total.ae_std_dm3, static_cast<double>(stddev(aes)), 1e-12);
}

TEST(AggregateTest, CurveIsMonotoneAndAgreesWithSuccessAt) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ape(0.0, 40.0);
  std::vector<VolumePrediction> samples;
  for (int i = 0; i < 300; ++i) samples.push_back(WithTotalApe(ape(rng)));
  std::vector<double> tolerances;
  for (int i = 0; i <= 1000; i += 7) tolerances.push_back(i / 10.0);
  const MetricReport r = Aggregate(samples, tolerances);
  for (std::size_t i = 1; i < r.curve.size(); ++i) {
    EXPECT_GE(r.curve[i].ratio, r.curve[i - 1].ratio);
    EXPECT_GE(r.curve[i].ratio, 0.0);
    EXPECT_LE(r.curve[i].ratio, 1.0);
  }
  for (const auto& [t, ratio] : r.success_at) {
    EXPECT_EQ(ratio, r.curve[static_cast<std::size_t>(std::lround(t * 10))].ratio);
  }
  EXPECT_EQ(r.curve.back().ratio, 1.0);
}

TEST(AggregateTest, ScaleInvarianceIsExact) {
  // Dyadic volumes keep every product by 7 exact.
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> truth(64 * 40, 64 * 120), delta(-1024 * 15, 1024 * 15);
  std::vector<VolumePrediction> samples, scaled;
  for (int i = 0; i < 200; ++i) {
    VolumePrediction s{Volumes(0.0), Volumes(0.0)};
    for (int p = 0; p < kNumParts; ++p) {
      s.truth.volumes_dm3[p] = truth(rng) / 64.0 / 8.0;
      s.predicted.volumes_dm3[p] = s.truth.volumes_dm3[p] + delta(rng) / 1024.0 / 64.0;
    }
    s.truth.total_dm3 = truth(rng) / 64.0;
    s.predicted.total_dm3 = s.truth.total_dm3 + delta(rng) / 1024.0;
    samples.push_back(s);
    VolumePrediction t = s;
    for (double& v : t.truth.volumes_dm3) v *= 7.0;
    for (double& v : t.predicted.volumes_dm3) v *= 7.0;
    t.truth.total_dm3 *= 7.0;
    t.predicted.total_dm3 *= 7.0;
    scaled.push_back(t);
  }
  const std::vector<double> tolerances = {5.0, 10.0};
  const MetricReport a = Aggregate(samples, tolerances);
  const MetricReport b = Aggregate(scaled, tolerances);
  EXPECT_EQ(a.total.ape_mean, b.total.ape_mean);
  EXPECT_EQ(a.total.ape_std, b.total.ape_std);
  for (int p = 0; p < kNumParts; ++p) EXPECT_EQ(a.parts[p].ape_mean, b.parts[p].ape_mean);
  EXPECT_EQ(a.success_at, b.success_at);
  for (std::size_t i = 0; i < a.curve.size(); ++i) {
    ASSERT_EQ(a.curve[i].ratio, b.curve[i].ratio) << i;
  }
}

TEST(AggregateTest, AbsoluteErrorShiftsByOffset) {
  std::vector<VolumePrediction> samples = {WithTotalApe(4.0), WithTotalApe(-2.0),
                                           WithTotalApe(8.5)};
  const double before = Aggregate(samples).total.ae_mean_dm3;
  samples[0].predicted.total_dm3 += 2.5;  // same sign as the existing error
  const double after = Aggregate(samples).total.ae_mean_dm3;
  EXPECT_DOUBLE_EQ((after - before) * 3.0, 2.5);
}

TEST(AggregateTest, Errors) {
  EXPECT_EQ(KindOf([] { Aggregate({}); }), ErrorKind::kEmptyInput);
  VolumePrediction bad = WithTotalApe(1.0);
  bad.predicted.volumes_dm3.pop_back();
  const std::vector<VolumePrediction> samples = {bad};
  EXPECT_EQ(KindOf([&] { Aggregate(samples); }), ErrorKind::kShape);
}

TEST(ReportOutputTest, JsonAndCsv) {
  const std::vector<VolumePrediction> samples = {WithTotalApe(5.0), WithTotalApe(15.0)};
  const std::vector<double> tolerances = {10.0};
  const MetricReport r = Aggregate(samples, tolerances, "VAL");
  std::stringstream json_text;
  WriteReportJson(json_text, r);
  const auto j = nlohmann::json::parse(json_text.str());
  EXPECT_EQ(j["split"], "VAL");
  EXPECT_EQ(j["samples"], 2);
  EXPECT_DOUBLE_EQ(j["total"]["ape_mean_pct"].get<double>(), 10.0);
  EXPECT_TRUE(j["parts"].contains("left_upper_arm"));
  EXPECT_EQ(j["curve"].size(), 1001u);
  EXPECT_DOUBLE_EQ(j["success_at"][0]["ratio"].get<double>(), 0.5);

  std::stringstream csv;
  WriteCurveCsv(csv, r.curve);
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "error,ratio");
  std::getline(csv, line);
  EXPECT_EQ(line, "0.0,0.000000");
  for (int i = 0; i < 50; ++i) std::getline(csv, line);
  EXPECT_EQ(line, "5.0,0.500000");
}

Skeleton2D Line(double spacing) {
  Skeleton2D s;
  for (int j = 0; j < kNumJoints; ++j) s.joints[j] = {10.0 + spacing * j, 50.0, true};
  return s;
}

TEST(PckTest, ThresholdRule) {
  const Skeleton2D truth = Line(10.0);  // bounding box 150 x 0
  EXPECT_DOUBLE_EQ(DefaultPckNorm(truth), 150.0);
  EXPECT_EQ(Pck(truth, truth).ratio, 1.0);

  Skeleton2D pred = truth;
  pred.joints[0].u += 0.04 * 100.0;
  pred.joints[1].v += 0.06 * 100.0;
  const PckResult r = Pck(pred, truth, 0.05, 100.0);
  EXPECT_TRUE(r.correct[0]);
  EXPECT_FALSE(r.correct[1]);
  EXPECT_EQ(r.visible, 16);
  EXPECT_DOUBLE_EQ(r.ratio, 15.0 / 16.0);
}

TEST(PckTest, CountsOnlyVisibleTruthJoints) {
  Skeleton2D truth = Line(10.0);
  truth.joints[3].visible = false;
  Skeleton2D pred = truth;
  pred.joints[3] = {1000.0, 1000.0, true};
  pred.joints[4].visible = false;
  const PckResult r = Pck(pred, truth, 0.05, 100.0);
  EXPECT_EQ(r.visible, 15);
  EXPECT_EQ(r.correct_count, 14);
}

TEST(PckTest, Errors) {
  const Skeleton2D truth = Line(10.0);
  EXPECT_EQ(KindOf([&] { Pck(truth, truth, 0.05, 0.0); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([&] { Pck(truth, truth, 0.05, -1.0); }), ErrorKind::kDomain);
  EXPECT_EQ(KindOf([] { Pck(Skeleton2D{}, Skeleton2D{}); }), ErrorKind::kEmptyInput);
}

TEST(PckTest, InvariantUnderJointPermutation) {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> noise(0.0, 6.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Skeleton2D truth = testing::RandomSkeleton2D(rng, 256, 0.8);
    Skeleton2D pred = truth;
    for (Joint2D& j : pred.joints) {
      j.u += noise(rng);
      j.v += noise(rng);
    }
    std::array<int, kNumJoints> perm;
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Skeleton2D pt, pp;
    for (int j = 0; j < kNumJoints; ++j) {
      pt.joints[j] = truth.joints[perm[j]];
      pp.joints[j] = pred.joints[perm[j]];
    }
    if (std::none_of(truth.joints.begin(), truth.joints.end(),
                     [](const Joint2D& j) { return j.visible; })) {
      continue;
    }
    EXPECT_EQ(Pck(pred, truth, 0.05, 200.0).ratio, Pck(pp, pt, 0.05, 200.0).ratio);
  }
}

TEST(IouTest, IdentityAndDisjoint) {
  const SegmentationMask a{2, 2, {0, 1, 2, 2}};
  const IouResult same = Iou(a, a);
  EXPECT_EQ(same.per_class[0], 1.0);
  EXPECT_EQ(same.per_class[1], 1.0);
  EXPECT_EQ(same.per_class[2], 1.0);
  EXPECT_FALSE(same.per_class[3].has_value());
  EXPECT_EQ(same.mean_foreground, 1.0);

  const IouResult disjoint = Iou({2, 1, {3, 0}}, {2, 1, {0, 3}});
  EXPECT_EQ(disjoint.per_class[3], 0.0);
  EXPECT_EQ(disjoint.mean_foreground, 0.0);
}

TEST(IouTest, CountedCells) {
  // Class 1 covers cells {0, 1} in pred and {1, 2} in truth: 1 of 3.
  const IouResult r = Iou({2, 2, {1, 1, 0, 0}}, {2, 2, {0, 1, 1, 0}});
  EXPECT_DOUBLE_EQ(*r.per_class[1], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(*r.mean_foreground, 1.0 / 3.0);
}

TEST(IouTest, BackgroundOnlyHasNoForegroundMean) {
  const IouResult r = Iou({2, 1, {0, 0}}, {2, 1, {0, 0}});
  EXPECT_EQ(r.per_class[0], 1.0);
  EXPECT_FALSE(r.mean_foreground.has_value());
}

TEST(IouTest, SymmetricPerClass) {
  std::mt19937_64 rng(16);
  std::uniform_int_distribution<int> cls(0, 14);
  for (int trial = 0; trial < 50; ++trial) {
    SegmentationMask a{8, 8, {}}, b{8, 8, {}};
    for (int i = 0; i < 64; ++i) {
      a.classes.push_back(static_cast<std::uint8_t>(cls(rng)));
      b.classes.push_back(static_cast<std::uint8_t>(cls(rng)));
    }
    const IouResult ab = Iou(a, b), ba = Iou(b, a);
    EXPECT_EQ(ab.per_class, ba.per_class);
    EXPECT_EQ(ab.mean_foreground, ba.mean_foreground);
  }
}

TEST(IouTest, ShapeMismatch) {
  EXPECT_EQ(KindOf([] { Iou({2, 1, {0, 0}}, {1, 2, {0, 0}}); }), ErrorKind::kShape);
  EXPECT_EQ(KindOf([] { Iou({2, 1, {0}}, {2, 1, {0, 0}}); }), ErrorKind::kShape);
}

TEST(Pose3dAccuracyTest, ThresholdRules) {
  Skeleton3D truth;
  for (int j = 0; j < kNumJoints; ++j) truth.joints[j] = {100.0, 100.0, 0.5};
  EXPECT_EQ(Pose3dAccuracy(truth, truth), 1.0);

  Skeleton3D pred = truth;
  pred.joints[0].u += 13.0;                   // spatially off
  pred.joints[1].u += 12.0;                   // on the boundary
  pred.joints[2].depth = 0.5 + 2.0 / 12.0;    // two bins away
  pred.joints[3].depth = 0.5 + 3.0 / 12.0;    // three bins away
  EXPECT_DOUBLE_EQ(Pose3dAccuracy(pred, truth), 14.0 / 16.0);
}

TEST(Pose3dAccuracyTest, InvariantUnderJointPermutation) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Skeleton3D a = testing::RandomSkeleton3D(rng);
    const Skeleton3D b = testing::RandomSkeleton3D(rng);
    std::array<int, kNumJoints> perm;
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Skeleton3D pa, pb;
    for (int j = 0; j < kNumJoints; ++j) {
      pa.joints[j] = a.joints[perm[j]];
      pb.joints[j] = b.joints[perm[j]];
    }
    EXPECT_EQ(Pose3dAccuracy(a, b, 60.0, 3), Pose3dAccuracy(pa, pb, 60.0, 3));
  }
}

}  // namespace
}  // namespace volkit
