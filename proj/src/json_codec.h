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

#ifndef VOLKIT_SRC_JSON_CODEC_H_
#define VOLKIT_SRC_JSON_CODEC_H_

#include "json.hpp"
#include "volkit/label_codec.h"
#include "volkit/part_volumes.h"

namespace volkit::internal {

// Arrays of {"name", "u", "v", "visible"} or {"name", "u", "v", "depth"}.
// Parsing throws kFormat for unknown, repeated, or missing joints.
nlohmann::ordered_json Skeleton2DToJson(const Skeleton2D& skeleton);
Skeleton2D Skeleton2DFromJson(const nlohmann::json& j, int image_size);
nlohmann::ordered_json Skeleton3DToJson(const Skeleton3D& skeleton);
Skeleton3D Skeleton3DFromJson(const nlohmann::json& j);

// {"head": ..., ..., "right_foot": ..., "total": ...} in dm^3.
nlohmann::ordered_json VolumesToJson(const PartVolumes& volumes);
// Throws nlohmann::json exceptions for missing or mistyped entries.
PartVolumes VolumesFromJson(const nlohmann::json& j);

}  // namespace volkit::internal

#endif  // VOLKIT_SRC_JSON_CODEC_H_
