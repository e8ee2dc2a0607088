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

#include "volkit/part_volumes.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <utility>

#include <fmt/format.h>

#include "json.hpp"
#include "volkit/compensated_sum.h"
#include "volkit/error.h"

namespace volkit {
namespace {

constexpr std::array<std::string_view, kNumParts> kDisplayNames{
    "Head",           "Torso",          "Left Upper Arm", "Left Fore Arm",
    "Left Hand",      "Right Upper Arm", "Right Fore Arm", "Right Hand",
    "Left Up Leg",    "Left Lower Leg", "Left Foot",      "Right Up Leg",
    "Right Lower Leg", "Right Foot"};

constexpr std::array<std::string_view, kNumParts> kKeys{
    "head",           "torso",          "left_upper_arm", "left_fore_arm",
    "left_hand",      "right_upper_arm", "right_fore_arm", "right_hand",
    "left_up_leg",    "left_lower_leg", "left_foot",      "right_up_leg",
    "right_lower_leg", "right_foot"};

std::string PartLabel(int part_id, int num_parts) {
  if (num_parts == kNumParts) return std::string(PartDisplayName(part_id));
  return fmt::format("part {}", part_id);
}

}  // namespace

std::string_view PartDisplayName(int part_id) {
  if (part_id < 1 || part_id > kNumParts) {
    throw Error(ErrorKind::kDomain, fmt::format("no body part {}", part_id));
  }
  return kDisplayNames[part_id - 1];
}

std::string_view PartKey(int part_id) {
  if (part_id < 1 || part_id > kNumParts) {
    throw Error(ErrorKind::kDomain, fmt::format("no body part {}", part_id));
  }
  return kKeys[part_id - 1];
}

std::optional<int> PartIdFromKey(std::string_view key) {
  for (int i = 0; i < kNumParts; ++i) {
    if (kKeys[i] == key) return i + 1;
  }
  return std::nullopt;
}

MergeMap::MergeMap(const std::array<int, kNumSourceSegments>& targets,
                   const std::array<std::string, kNumParts>& names)
    : targets_(targets), names_(names) {
  if (targets_[0] != 0) {
    throw Error(ErrorKind::kConfiguration,
                "segment 0 is the background and must map to 0");
  }
  std::array<bool, kNumParts> hit{};
  for (int s = 1; s < kNumSourceSegments; ++s) {
    const int t = targets_[s];
    if (t < 1 || t > kNumParts) {
      throw Error(ErrorKind::kConfiguration,
                  fmt::format("segment {} maps to {}, outside 1..{}", s, t,
                              kNumParts));
    }
    hit[t - 1] = true;
  }
  for (int p = 0; p < kNumParts; ++p) {
    if (!hit[p]) {
      throw Error(ErrorKind::kConfiguration,
                  fmt::format("no segment maps to part {} ({})", p + 1,
                              kDisplayNames[p]));
    }
    if (names_[p] != kDisplayNames[p]) {
      throw Error(ErrorKind::kConfiguration,
                  fmt::format("part {} is named '{}', expected '{}'", p + 1,
                              names_[p], kDisplayNames[p]));
    }
  }
}

MergeMap MergeMap::Default() {
  using P = BodyPart;
  auto id = [](P p) { return static_cast<int>(p); };
  const std::array<int, kNumSourceSegments> targets{
      0,                        // background
      id(P::kTorso),            // hips
      id(P::kLeftUpLeg),        // leftUpLeg
      id(P::kRightUpLeg),       // rightUpLeg
      id(P::kTorso),            // spine
      id(P::kLeftLowerLeg),     // leftLeg
      id(P::kRightLowerLeg),    // rightLeg
      id(P::kTorso),            // spine1
      id(P::kLeftFoot),         // leftFoot
      id(P::kRightFoot),        // rightFoot
      id(P::kTorso),            // spine2
      id(P::kLeftFoot),         // leftToeBase
      id(P::kRightFoot),        // rightToeBase
      id(P::kTorso),            // neck
      id(P::kTorso),            // leftShoulder
      id(P::kTorso),            // rightShoulder
      id(P::kHead),             // head
      id(P::kLeftUpperArm),     // leftArm
      id(P::kRightUpperArm),    // rightArm
      id(P::kLeftForeArm),      // leftForeArm
      id(P::kRightForeArm),     // rightForeArm
      id(P::kLeftHand),         // leftHand
      id(P::kRightHand),        // rightHand
      id(P::kLeftHand),         // leftHandIndex1
      id(P::kRightHand),        // rightHandIndex1
  };
  std::array<std::string, kNumParts> names;
  for (int p = 0; p < kNumParts; ++p) names[p] = std::string(kDisplayNames[p]);
  return MergeMap(targets, names);
}

int MergeMap::operator()(int source_id) const {
  if (source_id < 0 || source_id >= kNumSourceSegments) {
    throw Error(ErrorKind::kUnknownSegment,
                fmt::format("unknown segment id {}", source_id));
  }
  return targets_[source_id];
}

MergeMap LoadMergeMap(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kFormat, fmt::format("merge map: {}", e.what()));
  }
  if (!j.is_object()) throw Error(ErrorKind::kFormat, "merge map: not an object");

  std::array<int, kNumSourceSegments> targets;
  targets.fill(-1);
  std::array<std::string, kNumParts> names;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "names") continue;
      int source = -1;
      const auto [ptr, ec] =
          std::from_chars(key.data(), key.data() + key.size(), source);
      if (ec != std::errc() || ptr != key.data() + key.size() || source < 0 ||
          source >= kNumSourceSegments) {
        throw Error(ErrorKind::kConfiguration,
                    fmt::format("merge map: bad source id '{}'", key));
      }
      targets[source] = value.get<int>();
    }
    if (!j.contains("names") || !j["names"].is_object()) {
      throw Error(ErrorKind::kConfiguration, "merge map: missing names table");
    }
    for (int p = 1; p <= kNumParts; ++p) {
      const auto it = j["names"].find(std::to_string(p));
      if (it == j["names"].end()) {
        throw Error(ErrorKind::kConfiguration,
                    fmt::format("merge map: no name for part {}", p));
      }
      names[p - 1] = it->get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kFormat, fmt::format("merge map: {}", e.what()));
  }
  for (int s = 0; s < kNumSourceSegments; ++s) {
    if (targets[s] < 0) {
      throw Error(ErrorKind::kConfiguration,
                  fmt::format("merge map: segment {} has no target", s));
    }
  }
  return MergeMap(targets, names);
}

MergeMap LoadMergeMapFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kIo, fmt::format("cannot open '{}'", path.string()));
  }
  return LoadMergeMap(in);
}

void WriteMergeMap(std::ostream& out, const MergeMap& map) {
  nlohmann::ordered_json j;
  for (int s = 0; s < kNumSourceSegments; ++s) {
    j[std::to_string(s)] = map.targets()[s];
  }
  nlohmann::ordered_json names;
  for (int p = 1; p <= kNumParts; ++p) {
    names[std::to_string(p)] = map.names()[p - 1];
  }
  j["names"] = names;
  out << j.dump(2) << '\n';
}

PartLabeling LoadLabels(std::istream& in, LabelScheme scheme) {
  PartLabeling labeling;
  labeling.scheme = scheme;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string_view token(line.data() + first, last - first + 1);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw Error(ErrorKind::kParse,
                  fmt::format("line {}: bad label '{}'", line_number, token));
    }
    labeling.labels.push_back(value);
  }
  return labeling;
}

PartLabeling LoadLabelsFile(const std::filesystem::path& path,
                            LabelScheme scheme) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kIo, fmt::format("cannot open '{}'", path.string()));
  }
  return LoadLabels(in, scheme);
}

PartLabeling MergeLabels(const PartLabeling& labeling, const MergeMap& map) {
  if (labeling.scheme != LabelScheme::kSource25) {
    throw Error(ErrorKind::kPrecondition,
                "merge expects source (25-segment) labels");
  }
  PartLabeling merged;
  merged.scheme = LabelScheme::kMerged14;
  merged.labels.reserve(labeling.labels.size());
  for (std::size_t i = 0; i < labeling.labels.size(); ++i) {
    const int target = map(labeling.labels[i]);
    if (target == 0) {
      throw Error(ErrorKind::kUnknownSegment,
                  fmt::format("vertex {} is labeled background", i));
    }
    merged.labels.push_back(target);
  }
  return merged;
}

int AssignFacePart(int a, int b, int c) {
  if (a == b || a == c) return a;
  if (b == c) return b;
  return std::min({a, b, c});
}

PartMeshSet SplitParts(const TriangleMesh& mesh, const PartLabeling& labeling,
                       int num_parts) {
  if (labeling.scheme != LabelScheme::kMerged14) {
    throw Error(ErrorKind::kPrecondition, "split expects merged part labels");
  }
  if (num_parts < 1 || num_parts > kNumParts) {
    throw Error(ErrorKind::kDomain,
                fmt::format("part count {} outside 1..{}", num_parts,
                            kNumParts));
  }
  if (labeling.labels.size() != mesh.num_vertices()) {
    throw Error(ErrorKind::kShape,
                fmt::format("{} labels for {} vertices",
                            labeling.labels.size(), mesh.num_vertices()));
  }
  for (std::size_t i = 0; i < labeling.labels.size(); ++i) {
    const int label = labeling.labels[i];
    if (label < 1 || label > num_parts) {
      throw Error(ErrorKind::kDomain,
                  fmt::format("vertex {} has part label {} outside 1..{}", i,
                              label, num_parts));
    }
  }
  const ManifoldReport report = ValidateManifold(mesh);
  if (!report.is_closed || !report.is_consistently_oriented) {
    throw Error(ErrorKind::kPrecondition,
                "split expects a closed, consistently oriented mesh");
  }

  PartMeshSet set;
  set.face_parts.reserve(mesh.num_faces());
  std::vector<std::vector<Face>> part_faces(num_parts);
  for (const Face& f : mesh.faces()) {
    const int part = AssignFacePart(labeling.labels[f[0]],
                                    labeling.labels[f[1]],
                                    labeling.labels[f[2]]);
    set.face_parts.push_back(part);
    part_faces[part - 1].push_back(f);
  }

  set.parts.reserve(num_parts);
  for (int p = 1; p <= num_parts; ++p) {
    const auto& faces = part_faces[p - 1];
    if (faces.empty()) {
      throw Error(ErrorKind::kMissingPart,
                  fmt::format("part {} has no faces",
                              PartLabel(p, num_parts)));
    }
    // Re-index in order of first use.
    std::unordered_map<std::uint32_t, std::uint32_t> remap;
    std::vector<Vec3> vertices;
    std::vector<Face> local;
    local.reserve(faces.size());
    for (const Face& f : faces) {
      Face g{};
      for (int k = 0; k < 3; ++k) {
        auto [it, inserted] = remap.try_emplace(
            f[k], static_cast<std::uint32_t>(vertices.size()));
        if (inserted) vertices.push_back(mesh.vertices()[f[k]]);
        g[k] = it->second;
      }
      local.push_back(g);
    }
    set.parts.push_back(
        CloseHoles(TriangleMesh(std::move(vertices), std::move(local))));
  }
  return set;
}

PartVolumes ComputePartVolumes(const PartMeshSet& parts) {
  PartVolumes volumes;
  CompensatedSum total;
  for (std::size_t i = 0; i < parts.parts.size(); ++i) {
    const double dm3 = MeshVolume(parts.parts[i]) * 1000.0;
    if (!(dm3 > 0.0)) {
      throw Error(ErrorKind::kPrecondition,
                  fmt::format("part {} has non-positive volume {} dm3 "
                              "(inverted orientation?)",
                              i + 1, dm3));
    }
    volumes.volumes_dm3.push_back(dm3);
    total.Add(dm3);
  }
  volumes.total_dm3 = total.Result();
  return volumes;
}

double NeutralHeightCm(const TriangleMesh& neutral_mesh) {
  return ComputeHeightExtremes(neutral_mesh).height_m * 100.0;
}

}  // namespace volkit
