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

#include "json_codec.h"

#include <array>
#include <string>

#include <fmt/format.h>

#include "volkit/error.h"

namespace volkit {
namespace internal {
namespace {

template <typename Fill>
void ForEachNamedJoint(const nlohmann::json& j, Fill fill) {
  if (!j.is_array()) throw Error(ErrorKind::kFormat, "skeleton: expected array");
  std::array<bool, kNumJoints> seen{};
  try {
    for (const auto& entry : j) {
      const std::string name = entry.at("name").get<std::string>();
      const auto index = JointIndex(name);
      if (!index) {
        throw Error(ErrorKind::kFormat,
                    fmt::format("skeleton: unknown joint '{}'", name));
      }
      if (seen[*index]) {
        throw Error(ErrorKind::kFormat,
                    fmt::format("skeleton: joint '{}' listed twice", name));
      }
      seen[*index] = true;
      fill(*index, entry);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kFormat, fmt::format("skeleton: {}", e.what()));
  }
  for (int i = 0; i < kNumJoints; ++i) {
    if (!seen[i]) {
      throw Error(ErrorKind::kFormat,
                  fmt::format("skeleton: missing joint '{}'", JointName(i)));
    }
  }
}

}  // namespace

nlohmann::ordered_json Skeleton2DToJson(const Skeleton2D& skeleton) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (int i = 0; i < kNumJoints; ++i) {
    const Joint2D& joint = skeleton.joints[i];
    j.push_back({{"name", JointName(i)},
                 {"u", joint.u},
                 {"v", joint.v},
                 {"visible", joint.visible}});
  }
  return j;
}

Skeleton2D Skeleton2DFromJson(const nlohmann::json& j, int image_size) {
  Skeleton2D skeleton;
  skeleton.image_size = image_size;
  ForEachNamedJoint(j, [&](int index, const nlohmann::json& entry) {
    Joint2D& joint = skeleton.joints[index];
    joint.u = entry.at("u").get<double>();
    joint.v = entry.at("v").get<double>();
    joint.visible = entry.value("visible", true);
  });
  return skeleton;
}

nlohmann::ordered_json Skeleton3DToJson(const Skeleton3D& skeleton) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (int i = 0; i < kNumJoints; ++i) {
    const Joint3D& joint = skeleton.joints[i];
    j.push_back({{"name", JointName(i)},
                 {"u", joint.u},
                 {"v", joint.v},
                 {"depth", joint.depth}});
  }
  return j;
}

Skeleton3D Skeleton3DFromJson(const nlohmann::json& j) {
  Skeleton3D skeleton;
  ForEachNamedJoint(j, [&](int index, const nlohmann::json& entry) {
    Joint3D& joint = skeleton.joints[index];
    joint.u = entry.at("u").get<double>();
    joint.v = entry.at("v").get<double>();
    joint.depth = entry.at("depth").get<double>();
  });
  return skeleton;
}

nlohmann::ordered_json VolumesToJson(const PartVolumes& volumes) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (int p = 1; p <= kNumParts; ++p) {
    j[std::string(PartKey(p))] = volumes[p];
  }
  j["total"] = volumes.total_dm3;
  return j;
}

PartVolumes VolumesFromJson(const nlohmann::json& j) {
  PartVolumes volumes;
  volumes.volumes_dm3.resize(kNumParts);
  for (int p = 1; p <= kNumParts; ++p) {
    volumes.volumes_dm3[p - 1] = j.at(std::string(PartKey(p))).get<double>();
  }
  volumes.total_dm3 = j.at("total").get<double>();
  return volumes;
}

}  // namespace internal

}  // namespace volkit
