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

#ifndef VOLKIT_OBJ_IO_H_
#define VOLKIT_OBJ_IO_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>

#include "volkit/mesh.h"

namespace volkit {

struct ObjLoadResult {
  TriangleMesh mesh;
  // Directives other than `v` and `f` (vn, vt, o, g, usemtl, ...).
  std::size_t ignored_directives = 0;
};

// Reads the triangle subset of Wavefront OBJ: `v x y z` and `f i j k` with
// 1-based (or negative, relative) indices; `i/j/k` forms use the first
// index. Comments and blank lines are skipped.
//
// Errors: kParse (with line number) for malformed lines and index 0,
// kUnsupportedFace for polygons with more than three corners, kStructure for
// out-of-range indices.
ObjLoadResult LoadObj(std::istream& in);

// As LoadObj; kIo if the file cannot be opened.
ObjLoadResult LoadObjFile(const std::filesystem::path& path);

void WriteObj(std::ostream& out, const TriangleMesh& mesh);

}  // namespace volkit

#endif  // VOLKIT_OBJ_IO_H_
