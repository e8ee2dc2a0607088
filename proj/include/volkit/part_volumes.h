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

#ifndef VOLKIT_PART_VOLUMES_H_
#define VOLKIT_PART_VOLUMES_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "volkit/mesh.h"

namespace volkit {

inline constexpr int kNumParts = 14;
inline constexpr int kNumSourceSegments = 25;

// Merged body parts, numbered 1..14 in the conventional reporting order.
enum class BodyPart : int {
  kHead = 1,
  kTorso,
  kLeftUpperArm,
  kLeftForeArm,
  kLeftHand,
  kRightUpperArm,
  kRightForeArm,
  kRightHand,
  kLeftUpLeg,
  kLeftLowerLeg,
  kLeftFoot,
  kRightUpLeg,
  kRightLowerLeg,
  kRightFoot,
};

// "Head", "Left Upper Arm", ... for ids 1..14.
std::string_view PartDisplayName(int part_id);
// "head", "left_upper_arm", ... for ids 1..14; used as JSON keys.
std::string_view PartKey(int part_id);
std::optional<int> PartIdFromKey(std::string_view key);

enum class LabelScheme {
  // Raw segment ids 0..24 where 0 is background.
  kSource25,
  // Body part ids 1..kNumParts (or 1..N for reduced test schemes).
  kMerged14,
};

struct PartLabeling {
  std::vector<int> labels;  // one per mesh vertex
  LabelScheme scheme = LabelScheme::kMerged14;
};

// Table from raw segment id (0..24) to merged part id. Segment 0 is the
// background and maps to 0; every other segment maps into 1..14 and every
// part has at least one preimage.
class MergeMap {
 public:
  // Throws kConfiguration if the table violates the invariants above or the
  // names differ from the canonical part names.
  MergeMap(const std::array<int, kNumSourceSegments>& targets,
           const std::array<std::string, kNumParts>& names);

  // The shipped default: SURREAL-style segment order (hips, leftUpLeg,
  // rightUpLeg, spine, ...), with fingers merged into hands, toes into feet
  // and the seven trunk segments into the torso.
  static MergeMap Default();

  // Throws kUnknownSegment for ids outside 0..24.
  int operator()(int source_id) const;

  const std::array<int, kNumSourceSegments>& targets() const {
    return targets_;
  }
  const std::array<std::string, kNumParts>& names() const { return names_; }

 private:
  std::array<int, kNumSourceSegments> targets_;
  std::array<std::string, kNumParts> names_;
};

// JSON object {"0": 0, "1": 2, ..., "24": 8, "names": {"1": "Head", ...}}.
// Errors: kFormat for malformed JSON, kConfiguration for invalid tables.
MergeMap LoadMergeMap(std::istream& in);
MergeMap LoadMergeMapFile(const std::filesystem::path& path);
void WriteMergeMap(std::ostream& out, const MergeMap& map);

// One integer per line, line i labels vertex i.
// Errors: kParse with line number.
PartLabeling LoadLabels(std::istream& in, LabelScheme scheme);
PartLabeling LoadLabelsFile(const std::filesystem::path& path,
                            LabelScheme scheme);

// Source labels to merged part ids.
// Errors: kPrecondition unless scheme is kSource25; kUnknownSegment for ids
// outside the map, or for background (0) on a vertex.
PartLabeling MergeLabels(const PartLabeling& labeling, const MergeMap& map);

// Majority label of a face's corners; with three distinct labels the
// smallest wins.
int AssignFacePart(int a, int b, int c);

struct PartMeshSet {
  // parts[id - 1] is the closed mesh of part `id`.
  std::vector<TriangleMesh> parts;
  // Part id assigned to each input face.
  std::vector<int> face_parts;
};

// Splits a closed, labeled mesh into per-part meshes, closing the cut
// boundaries with centroid fans. `num_parts` is 14 in production; smaller
// values exist for test fixtures.
//
// Errors: kPrecondition for a non-merged labeling or open mesh, kShape for a
// label count that differs from the vertex count, kDomain for labels outside
// 1..num_parts, kMissingPart (naming the part) when a part gets no faces.
PartMeshSet SplitParts(const TriangleMesh& mesh, const PartLabeling& labeling,
                       int num_parts = kNumParts);

struct PartVolumes {
  // volumes_dm3[id - 1]
  std::vector<double> volumes_dm3;
  double total_dm3 = 0.0;

  double operator[](int part_id) const { return volumes_dm3.at(part_id - 1); }
  bool operator==(const PartVolumes&) const = default;
};

// Per-part mesh volume converted to dm^3 and their sum.
// Errors: kPrecondition for an open part or a part with non-positive volume.
PartVolumes ComputePartVolumes(const PartMeshSet& parts);

// Body height in cm from the y extremes of a neutral-pose mesh.
double NeutralHeightCm(const TriangleMesh& neutral_mesh);

}  // namespace volkit

#endif  // VOLKIT_PART_VOLUMES_H_
