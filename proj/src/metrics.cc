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

#include "volkit/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <tuple>

#include <fmt/format.h>

#include "json.hpp"
#include "volkit/compensated_sum.h"
#include "volkit/error.h"

namespace volkit {
namespace {

struct Samples {
  std::vector<double> ae;
  std::vector<double> ape;
};

std::pair<double, double> MeanAndStd(const std::vector<double>& values) {
  CompensatedSum sum;
  for (double v : values) sum.Add(v);
  const double n = static_cast<double>(values.size());
  const double mean = sum.Result() / n;
  CompensatedSum squares;
  for (double v : values) squares.Add((v - mean) * (v - mean));
  return {mean, std::sqrt(squares.Result() / n)};
}

ErrorStats Summarize(const Samples& s) {
  ErrorStats stats;
  std::tie(stats.ae_mean_dm3, stats.ae_std_dm3) = MeanAndStd(s.ae);
  std::tie(stats.ape_mean, stats.ape_std) = MeanAndStd(s.ape);
  return stats;
}

std::vector<CurvePoint> Curve(std::vector<double> apes) {
  std::sort(apes.begin(), apes.end());
  std::vector<CurvePoint> curve;
  curve.reserve(kCurveSteps + 1);
  for (int i = 0; i <= kCurveSteps; ++i) {
    const double t = i / 10.0;
    curve.push_back({t, CumulativeRatio(apes, t)});
  }
  return curve;
}

void RequireParts(const PartVolumes& v, const char* side) {
  if (v.volumes_dm3.size() != static_cast<std::size_t>(kNumParts)) {
    throw Error(ErrorKind::kShape,
                fmt::format("{} volumes have {} parts, expected {}", side,
                            v.volumes_dm3.size(), kNumParts));
  }
}

nlohmann::ordered_json StatsJson(const ErrorStats& s) {
  return {{"ae_mean_dm3", s.ae_mean_dm3},
          {"ae_std_dm3", s.ae_std_dm3},
          {"ape_mean_pct", s.ape_mean},
          {"ape_std_pct", s.ape_std}};
}

nlohmann::ordered_json CurveJson(const std::vector<CurvePoint>& curve) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const CurvePoint& p : curve) j.push_back({p.threshold, p.ratio});
  return j;
}

}  // namespace

double Ape(double pred, double truth) {
  if (!(truth > 0.0)) {
    throw Error(ErrorKind::kDomain,
                fmt::format("APE needs a positive truth value, got {}", truth));
  }
  return 100.0 * std::abs(pred - truth) / truth;
}

double CumulativeRatio(std::span<const double> sorted_apes, double threshold) {
  if (sorted_apes.empty()) return 0.0;
  const auto below =
      std::upper_bound(sorted_apes.begin(), sorted_apes.end(), threshold) -
      sorted_apes.begin();
  return static_cast<double>(below) / static_cast<double>(sorted_apes.size());
}

MetricReport Aggregate(std::span<const VolumePrediction> samples,
                       std::span<const double> tolerances, std::string split) {
  if (samples.empty()) {
    throw Error(ErrorKind::kEmptyInput, "no samples to aggregate");
  }
  std::array<Samples, kNumParts> parts;
  Samples total;
  for (const VolumePrediction& s : samples) {
    RequireParts(s.predicted, "predicted");
    RequireParts(s.truth, "truth");
    for (int p = 0; p < kNumParts; ++p) {
      const double pred = s.predicted.volumes_dm3[p];
      const double truth = s.truth.volumes_dm3[p];
      parts[p].ae.push_back(std::abs(pred - truth));
      parts[p].ape.push_back(Ape(pred, truth));
    }
    total.ae.push_back(std::abs(s.predicted.total_dm3 - s.truth.total_dm3));
    total.ape.push_back(Ape(s.predicted.total_dm3, s.truth.total_dm3));
  }

  MetricReport report;
  report.split = std::move(split);
  report.sample_count = samples.size();
  for (int p = 0; p < kNumParts; ++p) {
    report.parts[p] = Summarize(parts[p]);
    report.part_curves[p] = Curve(parts[p].ape);
  }
  report.total = Summarize(total);
  report.curve = Curve(total.ape);

  std::vector<double> sorted = total.ape;
  std::sort(sorted.begin(), sorted.end());
  for (double t : tolerances) report.success_at[t] = CumulativeRatio(sorted, t);
  return report;
}

void WriteReportJson(std::ostream& out, const MetricReport& report) {
  nlohmann::ordered_json j;
  j["split"] = report.split;
  j["samples"] = report.sample_count;
  j["total"] = StatsJson(report.total);
  nlohmann::ordered_json parts = nlohmann::ordered_json::object();
  for (int p = 0; p < kNumParts; ++p) {
    parts[std::string(PartKey(p + 1))] = StatsJson(report.parts[p]);
  }
  j["parts"] = parts;
  nlohmann::ordered_json success = nlohmann::ordered_json::array();
  for (const auto& [t, ratio] : report.success_at) {
    success.push_back({{"tolerance_pct", t}, {"ratio", ratio}});
  }
  j["success_at"] = success;
  j["curve"] = CurveJson(report.curve);
  nlohmann::ordered_json part_curves = nlohmann::ordered_json::object();
  for (int p = 0; p < kNumParts; ++p) {
    part_curves[std::string(PartKey(p + 1))] = CurveJson(report.part_curves[p]);
  }
  j["part_curves"] = part_curves;
  out << j.dump(2) << '\n';
}

void WriteCurveCsv(std::ostream& out, std::span<const CurvePoint> curve) {
  out << "error,ratio\n";
  for (const CurvePoint& p : curve) {
    out << fmt::format("{:.1f},{:.6f}\n", p.threshold, p.ratio);
  }
}

double DefaultPckNorm(const Skeleton2D& truth) {
  double min_u = 0, max_u = 0, min_v = 0, max_v = 0;
  bool any = false;
  for (const Joint2D& j : truth.joints) {
    if (!j.visible) continue;
    if (!any) {
      min_u = max_u = j.u;
      min_v = max_v = j.v;
      any = true;
    }
    min_u = std::min(min_u, j.u);
    max_u = std::max(max_u, j.u);
    min_v = std::min(min_v, j.v);
    max_v = std::max(max_v, j.v);
  }
  if (!any) throw Error(ErrorKind::kEmptyInput, "no visible joints");
  return std::max(max_u - min_u, max_v - min_v);
}

PckResult Pck(const Skeleton2D& pred, const Skeleton2D& truth, double alpha,
              std::optional<double> norm) {
  const double length = norm ? *norm : DefaultPckNorm(truth);
  if (!(length > 0.0)) {
    throw Error(ErrorKind::kDomain,
                fmt::format("PCK norm must be positive, got {}", length));
  }
  PckResult result;
  for (int i = 0; i < kNumJoints; ++i) {
    const Joint2D& t = truth.joints[i];
    if (!t.visible) continue;
    ++result.visible;
    const Joint2D& p = pred.joints[i];
    const bool ok =
        p.visible && std::hypot(p.u - t.u, p.v - t.v) <= alpha * length;
    result.correct[i] = ok;
    result.correct_count += ok;
  }
  if (result.visible == 0) {
    throw Error(ErrorKind::kEmptyInput, "no visible joints");
  }
  result.ratio = static_cast<double>(result.correct_count) / result.visible;
  return result;
}

IouResult Iou(const SegmentationMask& pred, const SegmentationMask& truth) {
  if (pred.width != truth.width || pred.height != truth.height) {
    throw Error(ErrorKind::kShape,
                fmt::format("mask sizes differ: {}x{} vs {}x{}", pred.width,
                            pred.height, truth.width, truth.height));
  }
  const std::size_t pixels = static_cast<std::size_t>(truth.width) * truth.height;
  if (pred.classes.size() != pixels || truth.classes.size() != pixels) {
    throw Error(ErrorKind::kShape, "mask pixel count does not match its size");
  }
  std::array<std::size_t, kNumSegmentClasses> inter{}, uni{};
  for (std::size_t i = 0; i < pixels; ++i) {
    const int a = pred.classes[i];
    const int b = truth.classes[i];
    if (a >= kNumSegmentClasses || b >= kNumSegmentClasses) {
      throw Error(ErrorKind::kDomain,
                  fmt::format("class id {} out of range", std::max(a, b)));
    }
    if (a == b) {
      ++inter[a];
      ++uni[a];
    } else {
      ++uni[a];
      ++uni[b];
    }
  }
  IouResult result;
  double sum = 0.0;
  int defined = 0;
  for (int c = 0; c < kNumSegmentClasses; ++c) {
    if (uni[c] == 0) continue;
    const double iou = static_cast<double>(inter[c]) / uni[c];
    result.per_class[c] = iou;
    if (c > 0) {
      sum += iou;
      ++defined;
    }
  }
  if (defined > 0) result.mean_foreground = sum / defined;
  return result;
}

double Pose3dAccuracy(const Skeleton3D& pred, const Skeleton3D& truth,
                      double spatial_tol, int depth_tol) {
  int correct = 0;
  for (int i = 0; i < kNumJoints; ++i) {
    const Joint3D& p = pred.joints[i];
    const Joint3D& t = truth.joints[i];
    const bool spatial = std::hypot(p.u - t.u, p.v - t.v) <= spatial_tol;
    const bool depth = std::abs(DepthBin(p.depth) - DepthBin(t.depth)) <= depth_tol;
    correct += spatial && depth;
  }
  return static_cast<double>(correct) / kNumJoints;
}

}  // namespace volkit
