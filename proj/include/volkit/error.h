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

#ifndef VOLKIT_ERROR_H_
#define VOLKIT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace volkit {

enum class ErrorKind {
  kParse,
  kStructure,
  kUnsupportedFace,
  kUnsupportedTopology,
  kPrecondition,
  kEmptyInput,
  kDomain,
  kInvalidTransform,
  kBounds,
  kKindMismatch,
  kUnknownSegment,
  kMissingPart,
  kShape,
  kConfiguration,
  kIo,
  kIdMismatch,
  kFormat,
};

std::string_view ErrorKindName(ErrorKind kind);

// Every failure raised by the library carries a kind so that callers (the
// CLI in particular) can dispatch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace volkit

#endif  // VOLKIT_ERROR_H_
