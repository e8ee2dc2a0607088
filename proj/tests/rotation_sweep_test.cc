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
#include <sstream>
#include <string>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "volkit/error.h"
#include "volkit/mesh.h"
#include "volkit/primitives.h"
#include "volkit/rotation_sweep.h"

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

std::pair<double, double> Spread(const SweepResult& r) {
  const auto [lo, hi] = std::minmax_element(
      r.rows.begin(), r.rows.end(),
      [](const SweepRow& a, const SweepRow& b) { return a.percent_error < b.percent_error; });
  return {lo->percent_error, hi->percent_error};
}

// Degree of the largest error within [from, to).
int ArgMaxIn(const SweepResult& r, int from, int to) {
  int best = from;
  for (int d = from; d < to; ++d) {
    if (r.rows[d].percent_error > r.rows[best].percent_error) best = d;
  }
  return best;
}

TEST(SweepRotationTest, AxisConventions) {
  const Vec3 up(0.0, 1.0, 0.0);
  // Tumbling turns the vertical axis horizontal; spinning leaves it alone.
  EXPECT_NEAR(std::abs((SweepRotation(SweepAxis::kY, 90.0) * up).y()), 0.0, 1e-15);
  EXPECT_NEAR((SweepRotation(SweepAxis::kZ, 90.0) * up - up).norm(), 0.0, 1e-15);
  for (double deg : {0.0, 33.0, 180.0, 271.0}) {
    for (SweepAxis axis : {SweepAxis::kY, SweepAxis::kZ}) {
      const Mat3 r = SweepRotation(axis, deg);
      EXPECT_NEAR((r.transpose() * r - Mat3::Identity()).norm(), 0.0, 1e-14);
      EXPECT_NEAR(r.determinant(), 1.0, 1e-14);
    }
  }
  EXPECT_EQ(SweepAxisFromName("y"), SweepAxis::kY);
  EXPECT_EQ(SweepAxisName(SweepAxis::kZ), "z");
  EXPECT_FALSE(SweepAxisFromName("x").has_value());
}

TEST(RotationSweepTest, SphereIsRotationInvariant) {
  const TriangleMesh sphere = MakeIcosphere(0.5, 4);
  SweepOptions options;
  options.height_m = 1.0;
  options.grid = 64;
  options.jobs = 4;
  for (SweepAxis axis : {SweepAxis::kY, SweepAxis::kZ}) {
    options.axis = axis;
    const SweepResult r = RunRotationSweep(sphere, options);
    ASSERT_EQ(r.rows.size(), 360u);
    for (int d = 0; d < 360; ++d) EXPECT_EQ(r.rows[d].degrees, d);
    EXPECT_NEAR(r.true_volume_m3, SignedVolume(sphere), 1e-15);
    const auto [lo, hi] = Spread(r);
    EXPECT_LT(hi - lo, 2.0) << SweepAxisName(axis);
  }
}

TEST(RotationSweepTest, BoxSpinIsSymmetric) {
  const TriangleMesh box = MakeBox({-0.2, 0.0, -0.1}, {0.2, 1.0, 0.1});
  SweepOptions options;
  options.axis = SweepAxis::kZ;
  options.height_m = 1.0;
  options.grid = 64;
  options.jobs = 4;
  const SweepResult r = RunRotationSweep(box, options);
  // A half turn about the vertical maps the box onto itself.
  EXPECT_NEAR(std::abs(r.rows[0].percent_error), std::abs(r.rows[180].percent_error), 1e-9);
  EXPECT_NEAR(std::abs(r.rows[90].percent_error), std::abs(r.rows[270].percent_error), 1e-9);
}

TEST(RotationSweepTest, TumblingElongatedBoxPeaksSideways) {
  const TriangleMesh box = MakeBox({-0.15, 0.0, -0.1}, {0.15, 1.0, 0.1});
  SweepOptions options;
  options.axis = SweepAxis::kY;
  options.height_m = 1.0;
  options.grid = 64;
  options.jobs = 4;
  const SweepResult r = RunRotationSweep(box, options);
  EXPECT_NEAR(ArgMaxIn(r, 0, 180), 90, 10);
  EXPECT_NEAR(ArgMaxIn(r, 180, 360), 270, 10);
  // Upright the fixed height matches the voxel height, so the error is small.
  EXPECT_LT(std::abs(r.rows[0].percent_error), 10.0);
  EXPECT_GT(r.rows[90].percent_error, 100.0);
}

TEST(RotationSweepTest, ResultDoesNotDependOnJobs) {
  const TriangleMesh box = MakeBox({-0.15, 0.0, -0.1}, {0.15, 1.0, 0.1});
  SweepOptions options;
  options.height_m = 1.0;
  options.grid = 32;
  options.jobs = 1;
  const SweepResult one = RunRotationSweep(box, options);
  for (int jobs : {3, 7}) {
    options.jobs = jobs;
    const SweepResult many = RunRotationSweep(box, options);
    for (int d = 0; d < 360; ++d) {
      ASSERT_EQ(one.rows[d].percent_error, many.rows[d].percent_error) << d;
    }
  }
}

TEST(RotationSweepTest, Errors) {
  const TriangleMesh box = MakeBox({0, 0, 0}, {1, 1, 1});
  SweepOptions options;
  options.height_m = 0.0;
  EXPECT_EQ(KindOf([&] { RunRotationSweep(box, options); }), ErrorKind::kDomain);
  options.height_m = 1.0;
  options.grid = 1;
  EXPECT_EQ(KindOf([&] { RunRotationSweep(box, options); }), ErrorKind::kDomain);
  options.grid = 16;
  const TriangleMesh open = MakeOpenCylinder(0.5, 1.0, 12);
  EXPECT_EQ(KindOf([&] { RunRotationSweep(open, options); }), ErrorKind::kPrecondition);
}

TEST(RotationSweepTest, CsvFormat) {
  SweepResult r;
  r.rows = {{0, 1.5}, {1, -0.25}};
  std::stringstream out;
  WriteSweepCsv(out, r);
  EXPECT_EQ(out.str(), "deg,PE\n0,1.500000\n1,-0.250000\n");
}

}  // namespace
}  // namespace volkit
