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

#include "volkit/annotations.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "json.hpp"
#include "json_codec.h"
#include "volkit/error.h"

namespace volkit {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::array<std::string_view, kNumSplits> kSplitNames = {"TRAIN", "VAL",
                                                                  "TEST"};

// Unbiased draw from [0, n).
std::uint64_t BoundedDraw(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t reject_below = (0 - n) % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x < reject_below);
  return x % n;
}

void CheckVolumes(const ClipRecord& clip) {
  if (clip.volumes.volumes_dm3.size() != static_cast<std::size_t>(kNumParts)) {
    throw Error(ErrorKind::kShape,
                fmt::format("clip '{}' has {} part volumes, expected {}",
                            clip.clip_id, clip.volumes.volumes_dm3.size(),
                            kNumParts));
  }
}

void PutClipFields(ordered_json& j, const ClipRecord& clip) {
  j["split"] = SplitName(clip.split);
  j["gender"] = GenderName(clip.gender);
  j["height_cm"] = clip.height_cm;
  j["volumes_dm3"] = internal::VolumesToJson(clip.volumes);
}

ClipRecord ClipFromJson(const json& j) {
  ClipRecord clip;
  clip.clip_id = j.at("clip_id").get<std::string>();
  const std::string split = j.at("split").get<std::string>();
  const auto parsed_split = SplitFromName(split);
  if (!parsed_split) {
    throw Error(ErrorKind::kFormat, fmt::format("unknown split '{}'", split));
  }
  clip.split = *parsed_split;
  const std::string gender = j.at("gender").get<std::string>();
  const auto parsed_gender = GenderFromName(gender);
  if (!parsed_gender) {
    throw Error(ErrorKind::kFormat, fmt::format("unknown gender '{}'", gender));
  }
  clip.gender = *parsed_gender;
  clip.height_cm = j.at("height_cm").get<double>();
  clip.volumes = internal::VolumesFromJson(j.at("volumes_dm3"));
  return clip;
}

FrameRecord FrameFromJson(const json& j) {
  FrameRecord frame;
  frame.clip_id = j.at("clip_id").get<std::string>();
  frame.frame_index = j.at("frame_index").get<int>();
  frame.fully_visible = j.at("fully_visible").get<bool>();
  frame.pose2d = internal::Skeleton2DFromJson(j.at("pose2d"), kImageSize);
  frame.pose3d = internal::Skeleton3DFromJson(j.at("pose3d"));
  frame.mask_path = j.value("mask_path", "");
  frame.image_path = j.value("image_path", "");
  return frame;
}

// Calls `fn(line_number, parsed)` for every non-blank line.
template <typename Fn>
void ForEachJsonLine(std::istream& in, const char* what, Fn fn) {
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kFormat,
                  fmt::format("{} line {}: {}", what, line_number, e.what()));
    } catch (const Error& e) {
      throw Error(e.kind(),
                  fmt::format("{} line {}: {}", what, line_number, e.what()));
    }
  }
}

PartVolumes MeanVolumes(const std::vector<const ClipRecord*>& clips) {
  PartVolumes mean;
  mean.volumes_dm3.assign(kNumParts, 0.0);
  for (const ClipRecord* clip : clips) {
    for (int p = 0; p < kNumParts; ++p) {
      mean.volumes_dm3[p] += clip->volumes.volumes_dm3[p];
    }
    mean.total_dm3 += clip->volumes.total_dm3;
  }
  const double n = static_cast<double>(clips.size());
  for (double& v : mean.volumes_dm3) v /= n;
  mean.total_dm3 /= n;
  return mean;
}

}  // namespace

std::string_view SplitName(Split split) {
  return kSplitNames[static_cast<int>(split)];
}

std::optional<Split> SplitFromName(std::string_view name) {
  for (int i = 0; i < kNumSplits; ++i) {
    if (kSplitNames[i] == name) return static_cast<Split>(i);
  }
  return std::nullopt;
}

std::string_view GenderName(Gender gender) {
  return gender == Gender::kMale ? "male" : "female";
}

std::optional<Gender> GenderFromName(std::string_view name) {
  if (name == "male") return Gender::kMale;
  if (name == "female") return Gender::kFemale;
  return std::nullopt;
}

void ValidateAnnotations(const Annotations& annotations) {
  AnnotationStore store(annotations);
}

void AssignSplits(std::span<ClipRecord> clips, const SplitRatios& ratios,
                  std::uint64_t seed) {
  const std::array<double, kNumSplits> r = {ratios.train, ratios.val,
                                            ratios.test};
  for (double x : r) {
    if (!(x >= 0.0)) {
      throw Error(ErrorKind::kDomain,
                  fmt::format("split ratio {} is negative", x));
    }
  }
  const double sum = r[0] + r[1] + r[2];
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorKind::kDomain,
                fmt::format("split ratios sum to {}, expected 1", sum));
  }

  const std::size_t n = clips.size();
  std::array<std::size_t, kNumSplits> counts{};
  std::array<double, kNumSplits> remainders{};
  std::size_t assigned = 0;
  for (int i = 0; i < kNumSplits; ++i) {
    const double exact = r[i] * static_cast<double>(n);
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    remainders[i] = exact - std::floor(exact);
    assigned += counts[i];
  }
  std::array<int, kNumSplits> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return remainders[a] > remainders[b];
  });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) {
    ++counts[order[k % kNumSplits]];
  }

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return clips[a].clip_id < clips[b].clip_id;
  });
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[BoundedDraw(rng, i)]);
  }
  std::size_t pos = 0;
  for (int s = 0; s < kNumSplits; ++s) {
    for (std::size_t c = 0; c < counts[s]; ++c) {
      clips[perm[pos++]].split = static_cast<Split>(s);
    }
  }
}

HeightConfig HeightConfig::Default() {
  HeightConfig config;
  config.per_gender[Gender::kMale] = {175.0, 7.0};
  config.per_gender[Gender::kFemale] = {162.0, 6.5};
  return config;
}

double SampleHeight(Gender gender, std::mt19937_64& rng,
                    const HeightConfig& config) {
  const auto it = config.per_gender.find(gender);
  if (it == config.per_gender.end()) {
    throw Error(ErrorKind::kConfiguration,
                fmt::format("no height distribution for gender '{}'",
                            GenderName(gender)));
  }
  const HeightGaussian& g = it->second;
  if (!(g.std_cm >= 0.0) || !(config.min_cm <= config.max_cm)) {
    throw Error(ErrorKind::kConfiguration,
                fmt::format("bad height configuration for '{}'",
                            GenderName(gender)));
  }
  double height = g.mean_cm;
  if (g.std_cm > 0.0) {
    height = std::normal_distribution<double>(g.mean_cm, g.std_cm)(rng);
  }
  return std::clamp(height, config.min_cm, config.max_cm);
}

std::vector<FrameRecord> SelectFirstVisibleFrames(
    std::span<const std::string> clip_ids, std::span<const FrameRecord> frames) {
  std::unordered_map<std::string_view, const FrameRecord*> first;
  for (const FrameRecord& f : frames) {
    if (!f.fully_visible) continue;
    auto [it, inserted] = first.try_emplace(f.clip_id, &f);
    if (!inserted && f.frame_index < it->second->frame_index) it->second = &f;
  }
  std::vector<FrameRecord> selected;
  for (const std::string& id : clip_ids) {
    const auto it = first.find(id);
    if (it != first.end()) selected.push_back(*it->second);
  }
  return selected;
}

DatasetSummary ComputeDatasetStats(const Annotations& annotations) {
  if (annotations.clips.empty()) {
    throw Error(ErrorKind::kEmptyInput, "no clips");
  }
  ValidateAnnotations(annotations);
  DatasetSummary summary;
  std::unordered_map<std::string_view, Split> split_of;
  std::vector<const ClipRecord*> all;
  std::array<std::vector<const ClipRecord*>, kNumSplits> by_split;
  for (const ClipRecord& clip : annotations.clips) {
    split_of.emplace(clip.clip_id, clip.split);
    all.push_back(&clip);
    by_split[static_cast<int>(clip.split)].push_back(&clip);
    ++summary.splits[static_cast<int>(clip.split)].clips;
  }
  for (const FrameRecord& frame : annotations.frames) {
    SplitCounts& counts = summary.splits[static_cast<int>(split_of.at(frame.clip_id))];
    ++counts.frames;
    counts.fully_visible_frames += frame.fully_visible;
  }
  for (const SplitCounts& c : summary.splits) {
    summary.total.clips += c.clips;
    summary.total.frames += c.frames;
    summary.total.fully_visible_frames += c.fully_visible_frames;
  }
  summary.mean_volumes = MeanVolumes(all);
  for (int s = 0; s < kNumSplits; ++s) {
    if (!by_split[s].empty()) summary.split_mean_volumes[s] = MeanVolumes(by_split[s]);
  }
  return summary;
}

void WriteFramesJsonl(std::ostream& out, const Annotations& annotations,
                      bool flat) {
  std::unordered_map<std::string_view, const ClipRecord*> clips;
  for (const ClipRecord& clip : annotations.clips) clips.emplace(clip.clip_id, &clip);
  for (const FrameRecord& frame : annotations.frames) {
    ordered_json j;
    j["clip_id"] = frame.clip_id;
    j["frame_index"] = frame.frame_index;
    if (flat) {
      const auto it = clips.find(frame.clip_id);
      if (it == clips.end()) {
        throw Error(ErrorKind::kIdMismatch,
                    fmt::format("frame of unknown clip '{}'", frame.clip_id));
      }
      PutClipFields(j, *it->second);
    }
    j["fully_visible"] = frame.fully_visible;
    j["pose2d"] = internal::Skeleton2DToJson(frame.pose2d);
    j["pose3d"] = internal::Skeleton3DToJson(frame.pose3d);
    j["mask_path"] = frame.mask_path;
    j["image_path"] = frame.image_path;
    out << j.dump() << '\n';
  }
}

void WriteClipsJsonl(std::ostream& out, std::span<const ClipRecord> clips) {
  for (const ClipRecord& clip : clips) {
    ordered_json j;
    j["clip_id"] = clip.clip_id;
    PutClipFields(j, clip);
    out << j.dump() << '\n';
  }
}

Annotations ReadAnnotations(std::istream& frames, std::istream* clips) {
  Annotations result;
  std::unordered_map<std::string, std::size_t> known;
  auto add_clip = [&](ClipRecord clip) {
    const auto it = known.find(clip.clip_id);
    if (it == known.end()) {
      known.emplace(clip.clip_id, result.clips.size());
      result.clips.push_back(std::move(clip));
    } else if (!(result.clips[it->second] == clip)) {
      throw Error(ErrorKind::kStructure,
                  fmt::format("clip '{}' has conflicting constants",
                              clip.clip_id));
    }
  };
  if (clips != nullptr) {
    ForEachJsonLine(*clips, "clips",
                    [&](const json& j) { add_clip(ClipFromJson(j)); });
  }
  ForEachJsonLine(frames, "frames", [&](const json& j) {
    FrameRecord frame = FrameFromJson(j);
    if (j.contains("split")) {
      add_clip(ClipFromJson(j));
    } else if (!known.contains(frame.clip_id)) {
      throw Error(ErrorKind::kIdMismatch,
                  fmt::format("frame of unknown clip '{}'", frame.clip_id));
    }
    result.frames.push_back(std::move(frame));
  });
  ValidateAnnotations(result);
  return result;
}

AnnotationStore::AnnotationStore(const Annotations& annotations) {
  for (const ClipRecord& clip : annotations.clips) AddClip(clip);
  for (const FrameRecord& frame : annotations.frames) AddFrame(frame);
  for (const ClipRecord& clip : data_.clips) {
    if (frame_indices_[clip.clip_id].empty()) {
      throw Error(ErrorKind::kStructure,
                  fmt::format("clip '{}' has no frames", clip.clip_id));
    }
  }
}

void AnnotationStore::AddClip(const ClipRecord& clip) {
  CheckVolumes(clip);
  std::unique_lock lock(mutex_);
  if (clip_index_.contains(clip.clip_id)) {
    throw Error(ErrorKind::kStructure,
                fmt::format("duplicate clip id '{}'", clip.clip_id));
  }
  clip_index_.emplace(clip.clip_id, data_.clips.size());
  frame_indices_[clip.clip_id];
  data_.clips.push_back(clip);
}

void AnnotationStore::AddFrame(const FrameRecord& frame) {
  std::unique_lock lock(mutex_);
  const auto it = frame_indices_.find(frame.clip_id);
  if (it == frame_indices_.end()) {
    throw Error(ErrorKind::kIdMismatch,
                fmt::format("frame of unknown clip '{}'", frame.clip_id));
  }
  if (frame.frame_index < 0 || it->second.contains(frame.frame_index)) {
    throw Error(ErrorKind::kStructure,
                fmt::format("clip '{}': bad or repeated frame index {}",
                            frame.clip_id, frame.frame_index));
  }
  if (it->second.size() >= static_cast<std::size_t>(kMaxFramesPerClip)) {
    throw Error(ErrorKind::kStructure,
                fmt::format("clip '{}' exceeds {} frames", frame.clip_id,
                            kMaxFramesPerClip));
  }
  it->second.insert(frame.frame_index);
  data_.frames.push_back(frame);
}

std::optional<ClipRecord> AnnotationStore::FindClip(
    std::string_view clip_id) const {
  std::shared_lock lock(mutex_);
  const auto it = clip_index_.find(std::string(clip_id));
  if (it == clip_index_.end()) return std::nullopt;
  return data_.clips[it->second];
}

std::size_t AnnotationStore::clip_count() const {
  std::shared_lock lock(mutex_);
  return data_.clips.size();
}

std::size_t AnnotationStore::frame_count() const {
  std::shared_lock lock(mutex_);
  return data_.frames.size();
}

Annotations AnnotationStore::Snapshot() const {
  std::shared_lock lock(mutex_);
  return data_;
}

std::vector<FrameRecord> AnnotationStore::ValidationFrames() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> ids;
  for (const ClipRecord& clip : data_.clips) {
    if (clip.split == Split::kVal) ids.push_back(clip.clip_id);
  }
  return SelectFirstVisibleFrames(ids, data_.frames);
}

}  // namespace volkit
