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

#ifndef VOLKIT_ANNOTATIONS_H_
#define VOLKIT_ANNOTATIONS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "volkit/label_codec.h"
#include "volkit/part_volumes.h"

namespace volkit {

inline constexpr int kMaxFramesPerClip = 100;

enum class Split { kTrain = 0, kVal = 1, kTest = 2 };
inline constexpr int kNumSplits = 3;

// "TRAIN", "VAL", "TEST".
std::string_view SplitName(Split split);
std::optional<Split> SplitFromName(std::string_view name);

enum class Gender { kFemale, kMale };

// "female", "male".
std::string_view GenderName(Gender gender);
std::optional<Gender> GenderFromName(std::string_view name);

// Per-clip constants. Every frame of a clip shares these values.
struct ClipRecord {
  std::string clip_id;
  Split split = Split::kTrain;
  Gender gender = Gender::kFemale;
  double height_cm = 0.0;
  PartVolumes volumes;

  bool operator==(const ClipRecord&) const = default;
};

struct FrameRecord {
  std::string clip_id;
  int frame_index = 0;
  bool fully_visible = false;
  Skeleton2D pose2d;
  Skeleton3D pose3d;
  std::string mask_path;
  std::string image_path;

  bool operator==(const FrameRecord&) const = default;
};

struct Annotations {
  std::vector<ClipRecord> clips;
  std::vector<FrameRecord> frames;
};

// Checks: unique clip ids, 14 part volumes per clip, frames referencing known
// clips, unique frame indices per clip, and 1..100 frames per clip.
// Errors: kStructure, kShape, or kIdMismatch for frames of unknown clips.
void ValidateAnnotations(const Annotations& annotations);

struct SplitRatios {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;
};

// Shuffles clips (ordered by id, so the result does not depend on input
// order) with a seeded Fisher-Yates pass and gives the first round(train * n)
// clips TRAIN, the next VAL, the rest TEST. Counts use largest remainders.
// Errors: kDomain for negative ratios or ratios not summing to 1.
void AssignSplits(std::span<ClipRecord> clips, const SplitRatios& ratios,
                  std::uint64_t seed);

struct HeightGaussian {
  double mean_cm = 0.0;
  double std_cm = 0.0;
};

// Defaults are male 175 / 7 cm and female 162 / 6.5 cm, clamped to
// [140, 210] cm.
struct HeightConfig {
  std::map<Gender, HeightGaussian> per_gender;
  double min_cm = 140.0;
  double max_cm = 210.0;

  static HeightConfig Default();
};

// Errors: kConfiguration for a gender without parameters, a negative sigma,
// or an empty clamp range.
double SampleHeight(Gender gender, std::mt19937_64& rng,
                    const HeightConfig& config = HeightConfig::Default());

// First fully visible frame (lowest index) of each clip in `clip_ids` order.
// Clips without such a frame are skipped.
std::vector<FrameRecord> SelectFirstVisibleFrames(
    std::span<const std::string> clip_ids, std::span<const FrameRecord> frames);

struct SplitCounts {
  std::size_t clips = 0;
  std::size_t frames = 0;
  std::size_t fully_visible_frames = 0;
};

struct DatasetSummary {
  std::array<SplitCounts, kNumSplits> splits{};
  SplitCounts total;
  // Means over clips, overall and per split (empty for a split with no clips).
  PartVolumes mean_volumes;
  std::array<std::optional<PartVolumes>, kNumSplits> split_mean_volumes;
};

// Errors: kEmptyInput without clips; see ValidateAnnotations.
DatasetSummary ComputeDatasetStats(const Annotations& annotations);

// JSON lines, one frame per line. With `flat`, each line repeats its clip's
// constants (split, gender, height_cm, volumes_dm3); otherwise the clip
// constants go to a sidecar written by WriteClipsJsonl.
void WriteFramesJsonl(std::ostream& out, const Annotations& annotations,
                      bool flat = true);
void WriteClipsJsonl(std::ostream& out, std::span<const ClipRecord> clips);

// Reads frames in flat form, or in short form when a clips sidecar is given.
// Clip constants repeated on frame lines must match exactly.
// Errors: kFormat for malformed lines, kStructure for conflicting constants,
// plus those of ValidateAnnotations.
Annotations ReadAnnotations(std::istream& frames, std::istream* clips = nullptr);

// Thread-safe, append-only view of a validated annotation set. Any number of
// readers may run concurrently with a single writer.
class AnnotationStore {
 public:
  AnnotationStore() = default;
  explicit AnnotationStore(const Annotations& annotations);

  AnnotationStore(const AnnotationStore&) = delete;
  AnnotationStore& operator=(const AnnotationStore&) = delete;

  // Errors: kStructure for a duplicate id or bad volumes.
  void AddClip(const ClipRecord& clip);
  // Errors: kIdMismatch for an unknown clip; kStructure for a repeated frame
  // index or more than 100 frames in the clip.
  void AddFrame(const FrameRecord& frame);

  std::optional<ClipRecord> FindClip(std::string_view clip_id) const;
  std::size_t clip_count() const;
  std::size_t frame_count() const;
  Annotations Snapshot() const;

  // First visible frame of every VAL clip.
  std::vector<FrameRecord> ValidationFrames() const;

 private:
  mutable std::shared_mutex mutex_;
  Annotations data_;
  std::unordered_map<std::string, std::size_t> clip_index_;
  std::unordered_map<std::string, std::unordered_set<int>> frame_indices_;
};

}  // namespace volkit

#endif  // VOLKIT_ANNOTATIONS_H_
