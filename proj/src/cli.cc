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

#include "volkit/cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "json_codec.h"
#include "volkit/annotations.h"
#include "volkit/label_codec.h"
#include "volkit/label_io.h"
#include "volkit/mesh.h"
#include "volkit/metrics.h"
#include "volkit/obj_io.h"
#include "volkit/part_volumes.h"
#include "volkit/rotation_sweep.h"
#include "volkit/voxel.h"
#include "volkit/voxel_io.h"

namespace volkit {
namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string output;
};

std::ifstream OpenIn(const std::string& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw Error(ErrorKind::kIo, fmt::format("cannot open '{}'", path));
  return in;
}

std::ofstream OpenOut(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) {
    throw Error(ErrorKind::kIo, fmt::format("cannot write '{}'", path));
  }
  return out;
}

// Sends `write` to the file at `path`, or to `out` when `path` is empty.
template <typename Fn>
void Emit(const std::string& path, std::ostream& out, bool binary, Fn write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file = OpenOut(path, binary);
  write(file);
  if (!file) throw Error(ErrorKind::kIo, fmt::format("cannot write '{}'", path));
}

std::string ReadAll(const std::string& path) {
  std::ifstream in = OpenIn(path, true);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

const char* YesNo(bool b) { return b ? "yes" : "no"; }

void PrintManifoldReport(std::ostream& os, const ManifoldReport& report) {
  os << fmt::format(
      "edge-manifold: {}\nclosed: {}\nconsistently oriented: {}\n"
      "boundary loops: {}\ndegenerate faces: {}\n",
      YesNo(report.is_edge_manifold), YesNo(report.is_closed),
      YesNo(report.is_consistently_oriented), report.boundary_loops.size(),
      report.degenerate_face_count);
  for (std::size_t i = 0; i < report.boundary_loops.size(); ++i) {
    os << fmt::format("  loop {}: {} edges\n", i,
                      report.boundary_loops[i].size());
  }
}

Annotations LoadAnnotationFiles(const std::string& frames_path,
                                const std::string& clips_path) {
  std::ifstream frames = OpenIn(frames_path);
  if (clips_path.empty()) return ReadAnnotations(frames);
  std::ifstream clips = OpenIn(clips_path);
  return ReadAnnotations(frames, &clips);
}

// --- volume ----------------------------------------------------------------

struct VolumeArgs {
  std::string mesh;
  std::string labels;
  std::string merge_map;
  std::string scheme = "source";
  bool close_holes = false;
};

int CmdVolume(const VolumeArgs& args, std::ostream& out, std::ostream& err) {
  const TriangleMesh original = LoadObjFile(args.mesh).mesh;
  TriangleMesh mesh = original;
  ManifoldReport report = ValidateManifold(mesh);
  if (args.close_holes && report.is_edge_manifold && !report.is_closed) {
    mesh = CloseHoles(mesh);
    report = ValidateManifold(mesh);
  }
  if (!report.is_closed || !report.is_consistently_oriented) {
    err << fmt::format(
        "error: '{}' is not a closed, consistently oriented surface\n",
        args.mesh);
    PrintManifoldReport(err, report);
    if (!args.close_holes && report.is_edge_manifold) {
      err << "rerun with --close-holes to cap boundary loops\n";
    }
    return kExitGeometry;
  }
  out << fmt::format("total: {:.3f} dm3\n", MeshVolume(mesh) * 1000.0);
  if (args.labels.empty()) return kExitOk;

  const LabelScheme scheme =
      args.scheme == "merged" ? LabelScheme::kMerged14 : LabelScheme::kSource25;
  PartLabeling labeling = LoadLabelsFile(args.labels, scheme);
  if (scheme == LabelScheme::kSource25) {
    const MergeMap map = args.merge_map.empty() ? MergeMap::Default()
                                                : LoadMergeMapFile(args.merge_map);
    labeling = MergeLabels(labeling, map);
  }
  // Parts are split from the input mesh; SplitParts caps each part itself.
  const PartVolumes volumes = ComputePartVolumes(SplitParts(original, labeling));
  out << fmt::format("{:<16} {:>12}\n", "part", "volume_dm3");
  for (int p = 1; p <= kNumParts; ++p) {
    out << fmt::format("{:<16} {:>12.3f}\n", PartDisplayName(p), volumes[p]);
  }
  out << fmt::format("{:<16} {:>12.3f}\n", "sum of parts", volumes.total_dm3);
  return kExitOk;
}

// --- baseline / voxelize -----------------------------------------------------

struct BaselineArgs {
  std::string grid;
  double height_m = 0.0;
  double threshold = 0.5;
  bool threshold_given = false;
};

int CmdBaseline(const BaselineArgs& args, std::ostream& out, std::ostream& err) {
  VoxelGrid grid = ReadVoxelGridFile(args.grid);
  if (grid.kind() == VoxelKind::kProbability) {
    grid = Threshold(grid, args.threshold);
  } else if (args.threshold_given) {
    err << "warning: grid is already binary; --threshold ignored\n";
  }
  const BaselineEstimate e = BaselineVolume(grid, args.height_m);
  out << fmt::format("voxel_height: {}\n", e.voxel_height);
  out << fmt::format("voxel_edge_m: {:.9f}\n", e.voxel_edge_m);
  out << fmt::format("voxel_volume_m3: {:.12f}\n", e.voxel_volume_m3);
  out << fmt::format("filled: {}\n", e.filled);
  out << fmt::format("volume_dm3: {:.3f}\n", e.volume_dm3());
  return kExitOk;
}

struct VoxelizeArgs {
  std::string mesh;
  int grid = 128;
  double padding = 0.05;
};

int CmdVoxelize(const VoxelizeArgs& args, const GlobalOptions& global,
                std::ostream& out, std::ostream& err) {
  if (global.output.empty()) {
    err << "error: voxelize needs --output\n";
    return kExitUsage;
  }
  const TriangleMesh mesh = LoadObjFile(args.mesh).mesh;
  const auto n = static_cast<std::uint32_t>(std::max(args.grid, 1));
  const Bounds bounds = CubicBoundsAround(mesh, args.padding);
  const VoxelGrid grid = Voxelize(mesh, GridDims{n, n, n}, bounds);
  WriteVoxelGridFile(global.output, grid);
  out << fmt::format("filled: {} of {}\n", grid.FilledCount(),
                     grid.dims().count());
  out << fmt::format("bounds: [{:.6f}, {:.6f}, {:.6f}] - [{:.6f}, {:.6f}, {:.6f}]\n",
                     bounds.min.x(), bounds.min.y(), bounds.min.z(),
                     bounds.max.x(), bounds.max.y(), bounds.max.z());
  return kExitOk;
}

// --- rotation-sweep ----------------------------------------------------------

struct SweepArgs {
  std::string mesh;
  std::string axis = "y";
  std::optional<double> height_m;
  int grid = 128;
  double padding = 0.05;
};

int CmdSweep(const SweepArgs& args, const GlobalOptions& global,
             std::ostream& out, std::ostream& err) {
  const auto axis = SweepAxisFromName(args.axis);
  if (!axis) {
    err << fmt::format("error: unknown axis '{}' (expected y or z)\n", args.axis);
    return kExitUsage;
  }
  const TriangleMesh mesh = LoadObjFile(args.mesh).mesh;
  SweepOptions options;
  options.axis = *axis;
  options.height_m =
      args.height_m ? *args.height_m : ComputeHeightExtremes(mesh).height_m;
  options.grid = args.grid;
  options.padding = args.padding;
  options.jobs = global.jobs;
  const SweepResult result = RunRotationSweep(mesh, options);
  Emit(global.output, out, false,
       [&](std::ostream& os) { WriteSweepCsv(os, result); });
  return kExitOk;
}

// --- evaluate ------------------------------------------------------------------

struct EvaluateArgs {
  std::string predictions;
  std::string truth;
  std::string clips;
  std::vector<double> tolerances = {5.0, 10.0};
};

using FrameKey = std::pair<std::string, int>;

int CmdEvaluate(const EvaluateArgs& args, const GlobalOptions& global,
                std::ostream& out, std::ostream& err) {
  const Annotations truth = LoadAnnotationFiles(args.truth, args.clips);
  std::map<std::string, const ClipRecord*> clips;
  for (const ClipRecord& clip : truth.clips) clips[clip.clip_id] = &clip;
  std::set<FrameKey> truth_frames;
  for (const FrameRecord& f : truth.frames) {
    truth_frames.emplace(f.clip_id, f.frame_index);
  }

  std::ifstream in = OpenIn(args.predictions);
  std::vector<VolumePrediction> samples;
  std::vector<std::string> unmatched;
  std::set<FrameKey> seen;
  std::set<Split> splits;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    FrameKey key;
    PartVolumes predicted;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      key = {j.at("clip_id").get<std::string>(), j.at("frame_index").get<int>()};
      predicted = internal::VolumesFromJson(j.at("volumes_dm3"));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kFormat,
                  fmt::format("{} line {}: {}", args.predictions, line_number,
                              e.what()));
    }
    if (!seen.insert(key).second) {
      throw Error(ErrorKind::kFormat,
                  fmt::format("{} line {}: duplicate prediction for {}#{}",
                              args.predictions, line_number, key.first,
                              key.second));
    }
    if (!truth_frames.contains(key)) {
      unmatched.push_back(fmt::format("{}#{}", key.first, key.second));
      continue;
    }
    const ClipRecord& clip = *clips.at(key.first);
    splits.insert(clip.split);
    samples.push_back({std::move(predicted), clip.volumes});
  }
  if (!unmatched.empty()) {
    err << fmt::format("error: {} predictions have no matching annotation:\n",
                       unmatched.size());
    for (std::size_t i = 0; i < std::min<std::size_t>(10, unmatched.size()); ++i) {
      err << "  " << unmatched[i] << '\n';
    }
    return kExitIdMismatch;
  }

  std::string split_label = "MIXED";
  if (splits.size() == 1) split_label = std::string(SplitName(*splits.begin()));
  const MetricReport report =
      Aggregate(samples, args.tolerances, split_label);
  const std::string prefix = global.output.empty() ? "evaluation" : global.output;
  Emit(prefix + ".json", out, false,
       [&](std::ostream& os) { WriteReportJson(os, report); });
  Emit(prefix + "_curve.csv", out, false,
       [&](std::ostream& os) { WriteCurveCsv(os, report.curve); });

  out << fmt::format("samples: {} (split {})\n", report.sample_count, report.split);
  out << fmt::format("MAPE total: {:.3f} %\n", report.total.ape_mean);
  for (const auto& [t, ratio] : report.success_at) {
    out << fmt::format("success_at {:g}%: {:.4f}\n", t, ratio);
  }
  out << fmt::format("wrote {}.json and {}_curve.csv\n", prefix, prefix);
  return kExitOk;
}

// --- encode / decode -----------------------------------------------------------

struct CodecArgs {
  std::string input;
  int resolution = 64;
  double sigma = 1.0;
  bool round_trip = false;
};

enum class LabelFormat { kMask, kSkeleton2D, kSkeleton3D, kTensor };

LabelFormat DetectFormat(const std::string& path, const std::string& bytes) {
  if (bytes.starts_with("P5")) return LabelFormat::kMask;
  if (bytes.starts_with("VTEN")) return LabelFormat::kTensor;
  const auto first = bytes.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && bytes[first] == '[') {
    try {
      const nlohmann::json j = nlohmann::json::parse(bytes);
      if (j.is_array() && !j.empty() && j.front().contains("depth")) {
        return LabelFormat::kSkeleton3D;
      }
      return LabelFormat::kSkeleton2D;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kFormat, fmt::format("'{}': {}", path, e.what()));
    }
  }
  throw Error(ErrorKind::kFormat,
              fmt::format("'{}': not a PGM mask, skeleton JSON, or tensor file",
                          path));
}

// Rethrows codec errors with the offending path.
template <typename Fn>
auto WithPath(const std::string& path, Fn fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), fmt::format("'{}': {}", path, e.what()));
  }
}

int CmdEncode(const CodecArgs& args, const GlobalOptions& global,
              std::ostream& out, std::ostream& err) {
  if (global.output.empty() && !args.round_trip) {
    err << "error: encode needs --output or --round-trip\n";
    return kExitUsage;
  }
  const std::string bytes = ReadAll(args.input);
  std::istringstream in(bytes);
  Tensor tensor;
  switch (DetectFormat(args.input, bytes)) {
    case LabelFormat::kMask: {
      const SegmentationMask mask = WithPath(args.input, [&] { return ReadPgm(in); });
      const OneHotStack stack =
          WithPath(args.input, [&] { return OneHotSegmentation(mask); });
      tensor = ToTensor(stack);
      if (args.round_trip) {
        const SegmentationMask back = ArgmaxSegmentation(stack);
        std::size_t differ = 0;
        for (std::size_t i = 0; i < mask.classes.size(); ++i) {
          differ += back.classes[i] != mask.classes[i];
        }
        out << fmt::format("round trip: {} of {} pixels differ\n", differ,
                           mask.classes.size());
      }
      break;
    }
    case LabelFormat::kSkeleton2D: {
      const Skeleton2D skeleton =
          WithPath(args.input, [&] { return ReadSkeleton2D(in); });
      const HeatmapStack stack = WithPath(args.input, [&] {
        return EncodeHeatmaps(skeleton, args.resolution, args.sigma);
      });
      tensor = ToTensor(stack);
      if (args.round_trip) {
        const Skeleton2D back = DecodeHeatmaps(stack, skeleton.image_size);
        double worst = 0.0;
        int lost = 0;
        for (int j = 0; j < kNumJoints; ++j) {
          if (!skeleton.joints[j].visible) continue;
          lost += !back.joints[j].visible;
          worst = std::max({worst, std::abs(back.joints[j].u - skeleton.joints[j].u),
                            std::abs(back.joints[j].v - skeleton.joints[j].v)});
        }
        out << fmt::format("round trip: max deviation {:.4f} px, {} joints lost\n",
                           worst, lost);
      }
      break;
    }
    case LabelFormat::kSkeleton3D: {
      const Skeleton3D skeleton =
          WithPath(args.input, [&] { return ReadSkeleton3D(in); });
      const PoseGrid3D grid = WithPath(args.input, [&] {
        return EncodePose3D(skeleton, args.sigma, args.sigma);
      });
      tensor = ToTensor(grid);
      if (args.round_trip) {
        const Skeleton3D back = DecodePose3D(grid);
        double spatial = 0.0;
        double depth = 0.0;
        for (int j = 0; j < kNumJoints; ++j) {
          spatial = std::max({spatial, std::abs(back.joints[j].u - skeleton.joints[j].u),
                              std::abs(back.joints[j].v - skeleton.joints[j].v)});
          depth = std::max(depth, std::abs(back.joints[j].depth -
                                           skeleton.joints[j].depth));
        }
        out << fmt::format(
            "round trip: max deviation {:.4f} px, depth {:.6f}\n", spatial, depth);
      }
      break;
    }
    case LabelFormat::kTensor:
      throw Error(ErrorKind::kFormat,
                  fmt::format("'{}' is already an encoded tensor", args.input));
  }
  if (!global.output.empty()) {
    Emit(global.output, out, true,
         [&](std::ostream& os) { WriteTensor(os, tensor); });
  }
  return kExitOk;
}

int CmdDecode(const CodecArgs& args, const GlobalOptions& global,
              std::ostream& out) {
  std::ifstream in = OpenIn(args.input, true);
  const Tensor tensor = WithPath(args.input, [&] { return ReadTensor(in); });
  const auto& d = tensor.dims;
  if (d.size() == 4) {
    const PoseGrid3D grid =
        WithPath(args.input, [&] { return PoseGridFromTensor(tensor); });
    const Skeleton3D skeleton = DecodePose3D(grid);
    Emit(global.output, out, false,
         [&](std::ostream& os) { WriteSkeleton3D(os, skeleton); });
  } else if (d.size() == 3 && d[0] == static_cast<std::uint32_t>(kNumJoints)) {
    const HeatmapStack stack =
        WithPath(args.input, [&] { return HeatmapStackFromTensor(tensor); });
    const Skeleton2D skeleton = DecodeHeatmaps(stack);
    Emit(global.output, out, false,
         [&](std::ostream& os) { WriteSkeleton2D(os, skeleton); });
  } else {
    const OneHotStack stack =
        WithPath(args.input, [&] { return OneHotFromTensor(tensor); });
    const SegmentationMask mask = ArgmaxSegmentation(stack);
    Emit(global.output, out, true, [&](std::ostream& os) { WritePgm(os, mask); });
  }
  return kExitOk;
}

// --- stats / split ---------------------------------------------------------------

struct DatasetArgs {
  std::string annotations;
  std::string clips;
  std::vector<double> ratios = {0.8, 0.1, 0.1};
};

int CmdStats(const DatasetArgs& args, std::ostream& out) {
  const DatasetSummary s =
      ComputeDatasetStats(LoadAnnotationFiles(args.annotations, args.clips));
  out << fmt::format("{:<8} {:>8} {:>8} {:>14}\n", "split", "clips", "frames",
                     "fully_visible");
  auto row = [&](std::string_view name, const SplitCounts& c) {
    out << fmt::format("{:<8} {:>8} {:>8} {:>14}\n", name, c.clips, c.frames,
                       c.fully_visible_frames);
  };
  for (int i = 0; i < kNumSplits; ++i) row(SplitName(static_cast<Split>(i)), s.splits[i]);
  row("total", s.total);

  out << fmt::format("\n{:<16} {:>10}", "mean_dm3", "all");
  for (int i = 0; i < kNumSplits; ++i) {
    out << fmt::format(" {:>10}", SplitName(static_cast<Split>(i)));
  }
  out << '\n';
  auto cell = [&](const std::optional<PartVolumes>& v, int part) {
    if (!v) return fmt::format(" {:>10}", "-");
    return fmt::format(" {:>10.3f}", part == 0 ? v->total_dm3 : (*v)[part]);
  };
  for (int p = 1; p <= kNumParts + 1; ++p) {
    const int part = p <= kNumParts ? p : 0;
    out << fmt::format("{:<16}", part == 0 ? std::string_view("Total")
                                           : PartDisplayName(part));
    out << cell(s.mean_volumes, part);
    for (int i = 0; i < kNumSplits; ++i) out << cell(s.split_mean_volumes[i], part);
    out << '\n';
  }
  return kExitOk;
}

int CmdSplit(const DatasetArgs& args, const GlobalOptions& global,
             std::ostream& out, std::ostream& err) {
  if (args.ratios.size() != 3) {
    err << "error: --ratios takes three values (train,val,test)\n";
    return kExitUsage;
  }
  Annotations annotations = LoadAnnotationFiles(args.annotations, args.clips);
  AssignSplits(annotations.clips, {args.ratios[0], args.ratios[1], args.ratios[2]},
               global.seed);
  Emit(global.output, out, false,
       [&](std::ostream& os) { WriteFramesJsonl(os, annotations, true); });
  std::array<std::size_t, kNumSplits> counts{};
  for (const ClipRecord& clip : annotations.clips) ++counts[static_cast<int>(clip.split)];
  std::ostream& summary = global.output.empty() ? err : out;
  summary << fmt::format("clips: TRAIN {} VAL {} TEST {}\n", counts[0], counts[1],
                         counts[2]);
  return kExitOk;
}

}  // namespace

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo:
      return kExitIo;
    case ErrorKind::kPrecondition:
    case ErrorKind::kUnsupportedTopology:
    case ErrorKind::kBounds:
    case ErrorKind::kInvalidTransform:
      return kExitGeometry;
    case ErrorKind::kEmptyInput:
      return kExitEmpty;
    case ErrorKind::kIdMismatch:
      return kExitIdMismatch;
    default:
      return kExitFormat;
  }
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app("Body volume toolkit: mesh volumes, voxel baselines, label "
               "codecs, and evaluation.",
               "volkit");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Seed for randomized commands");
  app.add_option("--jobs", global.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", global.output, "Output file (prefix for evaluate)");

  VolumeArgs volume;
  CLI::App* volume_cmd = app.add_subcommand("volume", "Mesh and per-part volumes");
  volume_cmd->add_option("mesh", volume.mesh, "Triangle mesh (.obj)")->required();
  volume_cmd->add_option("--labels", volume.labels, "Per-vertex part labels");
  volume_cmd->add_option("--merge-map", volume.merge_map,
                         "JSON map from 25 source labels to 14 parts");
  volume_cmd->add_option("--scheme", volume.scheme, "Label scheme of --labels")
      ->check(CLI::IsMember({"source", "merged"}));
  volume_cmd->add_flag("--close-holes", volume.close_holes,
                       "Cap boundary loops before measuring");

  BaselineArgs baseline;
  CLI::App* baseline_cmd =
      app.add_subcommand("baseline", "Height-scaled voxel volume estimate");
  baseline_cmd->add_option("grid", baseline.grid, "Voxel grid file")->required();
  baseline_cmd->add_option("--height-m", baseline.height_m, "True body height (m)")
      ->required();
  CLI::Option* threshold_opt = baseline_cmd->add_option(
      "--threshold", baseline.threshold, "Probability threshold");

  VoxelizeArgs voxelize;
  CLI::App* voxelize_cmd = app.add_subcommand("voxelize", "Voxelize a closed mesh");
  voxelize_cmd->add_option("mesh", voxelize.mesh, "Triangle mesh (.obj)")->required();
  voxelize_cmd->add_option("--grid", voxelize.grid, "Cells per axis");
  voxelize_cmd->add_option("--padding", voxelize.padding, "Relative margin");

  SweepArgs sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("rotation-sweep", "Baseline error over 360 rotations");
  sweep_cmd->add_option("mesh", sweep.mesh, "Closed triangle mesh (.obj)")->required();
  sweep_cmd->add_option("--axis", sweep.axis, "y (head over heels) or z (spin)");
  sweep_cmd->add_option("--height-m", sweep.height_m,
                        "Reference height (default: mesh height)");
  sweep_cmd->add_option("--grid", sweep.grid, "Cells per axis");
  sweep_cmd->add_option("--padding", sweep.padding, "Relative margin");

  EvaluateArgs evaluate;
  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "Score volume predictions");
  evaluate_cmd->add_option("predictions", evaluate.predictions,
                           "Predictions (JSON lines)")->required();
  evaluate_cmd->add_option("truth", evaluate.truth, "Annotations (JSON lines)")
      ->required();
  evaluate_cmd->add_option("--clips", evaluate.clips, "Clip sidecar file");
  evaluate_cmd->add_option("--tolerances", evaluate.tolerances,
                           "APE tolerances in percent")->delimiter(',');

  CodecArgs encode;
  CLI::App* encode_cmd = app.add_subcommand("encode", "Encode labels as tensors");
  encode_cmd->add_option("input", encode.input, "Mask (.pgm) or skeleton (.json)")
      ->required();
  encode_cmd->add_option("--resolution", encode.resolution, "Heatmap resolution");
  encode_cmd->add_option("--sigma", encode.sigma, "Gaussian sigma in cells");
  encode_cmd->add_flag("--round-trip", encode.round_trip,
                       "Decode again and report the deviation");

  CodecArgs decode;
  CLI::App* decode_cmd = app.add_subcommand("decode", "Decode a label tensor");
  decode_cmd->add_option("input", decode.input, "Tensor file")->required();

  DatasetArgs stats;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Dataset statistics");
  stats_cmd->add_option("annotations", stats.annotations, "Annotations (JSON lines)")
      ->required();
  stats_cmd->add_option("--clips", stats.clips, "Clip sidecar file");

  DatasetArgs split;
  CLI::App* split_cmd = app.add_subcommand("split", "Assign clips to splits");
  split_cmd->add_option("annotations", split.annotations, "Annotations (JSON lines)")
      ->required();
  split_cmd->add_option("--clips", split.clips, "Clip sidecar file");
  split_cmd->add_option("--ratios", split.ratios, "train,val,test")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*volume_cmd) return CmdVolume(volume, out, err);
    if (*baseline_cmd) {
      baseline.threshold_given = threshold_opt->count() > 0;
      return CmdBaseline(baseline, out, err);
    }
    if (*voxelize_cmd) return CmdVoxelize(voxelize, global, out, err);
    if (*sweep_cmd) return CmdSweep(sweep, global, out, err);
    if (*evaluate_cmd) return CmdEvaluate(evaluate, global, out, err);
    if (*encode_cmd) return CmdEncode(encode, global, out, err);
    if (*decode_cmd) return CmdDecode(decode, global, out);
    if (*stats_cmd) return CmdStats(stats, out);
    if (*split_cmd) return CmdSplit(split, global, out, err);
  } catch (const Error& e) {
    err << fmt::format("error: {}: {}\n", ErrorKindName(e.kind()), e.what());
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << fmt::format("error: {}\n", e.what());
    return kExitFormat;
  }
  return kExitUsage;
}

}  // namespace volkit
