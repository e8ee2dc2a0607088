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

#include "volkit/error.h"

namespace volkit {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kStructure: return "structural error";
    case ErrorKind::kUnsupportedFace: return "unsupported face";
    case ErrorKind::kUnsupportedTopology: return "unsupported topology";
    case ErrorKind::kPrecondition: return "precondition violated";
    case ErrorKind::kEmptyInput: return "empty input";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kInvalidTransform: return "invalid transform";
    case ErrorKind::kBounds: return "bounds error";
    case ErrorKind::kKindMismatch: return "kind mismatch";
    case ErrorKind::kUnknownSegment: return "unknown segment";
    case ErrorKind::kMissingPart: return "missing part";
    case ErrorKind::kShape: return "shape mismatch";
    case ErrorKind::kConfiguration: return "configuration error";
    case ErrorKind::kIo: return "I/O error";
    case ErrorKind::kIdMismatch: return "id mismatch";
    case ErrorKind::kFormat: return "format error";
  }
  return "error";
}

}  // namespace volkit
