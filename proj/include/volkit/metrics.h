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

#ifndef VOLKIT_METRICS_H_
#define VOLKIT_METRICS_H_

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "volkit/label_codec.h"
#include "volkit/part_volumes.h"

namespace volkit {

// Absolute percentage error 100 * |pred - truth| / truth.
// Errors: kDomain for truth <= 0.
double Ape(double pred, double truth);

struct VolumePrediction {
  PartVolumes predicted;
  PartVolumes truth;
};

struct ErrorStats {
  double ae_mean_dm3 = 0.0;
  double ae_std_dm3 = 0.0;  // population
  double ape_mean = 0.0;    // percent
  double ape_std = 0.0;     // percent, population
};

struct CurvePoint {
  double threshold = 0.0;  // percent
  double ratio = 0.0;      // fraction of samples with APE <= threshold
};

struct MetricReport {
  std::string split;  // label of the evaluated set, e.g. "VAL"
  std::size_t sample_count = 0;
  std::array<ErrorStats, kNumParts> parts{};
  ErrorStats total;
  // Total-volume APE curve at thresholds 0.0, 0.1, ..., 100.0.
  std::vector<CurvePoint> curve;
  std::array<std::vector<CurvePoint>, kNumParts> part_curves;
  std::map<double, double> success_at;
};

inline constexpr int kCurveSteps = 1000;

// Fraction of `sorted_apes` that are <= threshold.
double CumulativeRatio(std::span<const double> sorted_apes, double threshold);

// Errors: kEmptyInput for no samples, kShape when a sample lacks 14 parts,
// kDomain for a non-positive truth volume.
MetricReport Aggregate(std::span<const VolumePrediction> samples,
                       std::span<const double> tolerances = {},
                       std::string split = "");

// Full report as JSON; curve as `error,ratio` CSV rows.
void WriteReportJson(std::ostream& out, const MetricReport& report);
void WriteCurveCsv(std::ostream& out, std::span<const CurvePoint> curve);

struct PckResult {
  std::array<bool, kNumJoints> correct{};  // only set for visible joints
  int visible = 0;
  int correct_count = 0;
  double ratio = 0.0;
};

// Larger side of the bounding box of the visible joints.
// Errors: kEmptyInput with no visible joints.
double DefaultPckNorm(const Skeleton2D& truth);

// A truth-visible joint is correct when the prediction is visible and lies
// within alpha * norm pixels. `norm` defaults to DefaultPckNorm(truth).
// Errors: kDomain for norm <= 0, kEmptyInput with no visible truth joints.
PckResult Pck(const Skeleton2D& pred, const Skeleton2D& truth,
              double alpha = 0.05, std::optional<double> norm = std::nullopt);

struct IouResult {
  // Empty for classes absent from both masks.
  std::array<std::optional<double>, kNumSegmentClasses> per_class{};
  // Mean over defined classes 1..14; empty when none is defined.
  std::optional<double> mean_foreground;
};

// Errors: kShape when the masks differ in size or are malformed.
IouResult Iou(const SegmentationMask& pred, const SegmentationMask& truth);

// Fraction of joints within `spatial_tol` pixels and `depth_tol` depth bins
// (both inclusive).
// Errors: kDomain for depths outside [0, 1].
double Pose3dAccuracy(const Skeleton3D& pred, const Skeleton3D& truth,
                      double spatial_tol = 12.0, int depth_tol = 2);

}  // namespace volkit

#endif  // VOLKIT_METRICS_H_
