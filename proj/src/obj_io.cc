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

#include "volkit/obj_io.h"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "volkit/error.h"

namespace volkit {
namespace {

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

[[noreturn]] void ParseFailure(std::size_t line_number, std::string_view what) {
  throw Error(ErrorKind::kParse,
              fmt::format("line {}: {}", line_number, what));
}

double ParseCoordinate(std::string_view token, std::size_t line_number) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    ParseFailure(line_number, fmt::format("bad coordinate '{}'", token));
  }
  return value;
}

// Returns the 1-based (or negative) vertex reference of a face corner.
long ParseCorner(std::string_view token, std::size_t line_number) {
  const std::string_view head = token.substr(0, token.find('/'));
  long value = 0;
  const auto [ptr, ec] =
      std::from_chars(head.data(), head.data() + head.size(), value);
  if (ec != std::errc() || ptr != head.data() + head.size() || value == 0) {
    ParseFailure(line_number, fmt::format("bad face index '{}'", token));
  }
  return value;
}

}  // namespace

ObjLoadResult LoadObj(std::istream& in) {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::vector<std::size_t> face_lines;
  std::size_t ignored = 0;

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    const auto tokens = SplitWhitespace(view);
    if (tokens.empty()) continue;

    if (tokens[0] == "v") {
      if (tokens.size() != 4 && tokens.size() != 5) {
        ParseFailure(line_number, "vertex needs 3 coordinates");
      }
      vertices.emplace_back(ParseCoordinate(tokens[1], line_number),
                            ParseCoordinate(tokens[2], line_number),
                            ParseCoordinate(tokens[3], line_number));
    } else if (tokens[0] == "f") {
      if (tokens.size() > 4) {
        throw Error(ErrorKind::kUnsupportedFace,
                    fmt::format("line {}: face with {} corners; only "
                                "triangles are supported",
                                line_number, tokens.size() - 1));
      }
      if (tokens.size() < 4) ParseFailure(line_number, "face needs 3 corners");
      Face face{};
      for (int k = 0; k < 3; ++k) {
        const long ref = ParseCorner(tokens[k + 1], line_number);
        const long index =
            ref > 0 ? ref - 1 : static_cast<long>(vertices.size()) + ref;
        if (index < 0) {
          throw Error(ErrorKind::kStructure,
                      fmt::format("line {}: vertex index {} out of range",
                                  line_number, ref));
        }
        face[k] = static_cast<std::uint32_t>(index);
      }
      if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
        throw Error(ErrorKind::kStructure,
                    fmt::format("line {}: face repeats a vertex", line_number));
      }
      faces.push_back(face);
      face_lines.push_back(line_number);
    } else {
      ++ignored;
    }
  }

  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (std::uint32_t index : faces[i]) {
      if (index >= vertices.size()) {
        throw Error(ErrorKind::kStructure,
                    fmt::format("line {}: vertex index {} out of range (mesh "
                                "has {} vertices)",
                                face_lines[i], index + 1, vertices.size()));
      }
    }
  }
  return ObjLoadResult{TriangleMesh(std::move(vertices), std::move(faces)),
                       ignored};
}

ObjLoadResult LoadObjFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kIo,
                fmt::format("cannot open '{}'", path.string()));
  }
  return LoadObj(in);
}

void WriteObj(std::ostream& out, const TriangleMesh& mesh) {
  for (const Vec3& v : mesh.vertices()) {
    out << fmt::format("v {} {} {}\n", v.x(), v.y(), v.z());
  }
  for (const Face& f : mesh.faces()) {
    out << fmt::format("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1);
  }
}

}  // namespace volkit
