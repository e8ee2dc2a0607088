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

#ifndef VOLKIT_TESTS_FIXTURES_H_
#define VOLKIT_TESTS_FIXTURES_H_

#include <filesystem>
#include <random>
#include <string>

#include "volkit/label_codec.h"
#include "volkit/mesh.h"
#include "volkit/part_volumes.h"

namespace volkit::testing {

// Two unit cubes stacked along y, sharing the square at y = 1. Side faces
// are fanned around their centers so that the ring at y = 1 carries edge
// midpoints. With two labels, splitting yields each cube as a closed part.
struct TwoCubeFixture {
  TriangleMesh mesh;
  PartLabeling labeling;  // labels 1 (lower) and 2 (upper)
};
TwoCubeFixture MakeTwoCubes();

// Icosphere split into three latitude bands (labels 1, 2, 3 bottom to top).
struct BandedSphereFixture {
  TriangleMesh mesh;
  PartLabeling labeling;
};
BandedSphereFixture MakeBandedSphere(int level);

// A blocky, 1.74 m tall person made of disjoint boxes, feet at y = 0.
// The neutral pose holds the arms out to the sides; the raised-arm variant
// lifts the right arm straight up so the hand tops out at 2.07 m.
TriangleMesh MakeBodyProxy(bool raised_arm);
inline constexpr double kBodyProxyHeightM = 1.74;

// Regular tetrahedron with the given edge length.
TriangleMesh MakeRegularTetrahedron(double edge);

// Uniformly random rotation.
Mat3 RandomRotation(std::mt19937_64& rng);

// Random skeleton with every joint inside an image of `image_size` pixels.
Skeleton2D RandomSkeleton2D(std::mt19937_64& rng, int image_size,
                            double visible_probability = 1.0);
Skeleton3D RandomSkeleton3D(std::mt19937_64& rng);

// Fresh directory under the system temp dir, removed by the destructor.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path path() const { return path_; }
  std::string File(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

void WriteTextFile(const std::string& path, const std::string& contents);
std::string ReadTextFile(const std::string& path);

}  // namespace volkit::testing

#endif  // VOLKIT_TESTS_FIXTURES_H_
