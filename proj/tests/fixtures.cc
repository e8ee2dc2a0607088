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

#include "fixtures.h"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <tuple>
#include <unistd.h>

#include <Eigen/Geometry>

#include "volkit/primitives.h"

namespace volkit::testing {
namespace {

// Builder that deduplicates vertices by exact position.
class MeshBuilder {
 public:
  std::uint32_t Vertex(const Vec3& p, int label) {
    const auto key = std::make_tuple(p.x(), p.y(), p.z());
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(vertices_.size());
    vertices_.push_back(p);
    labels_.push_back(label);
    index_.emplace(key, id);
    return id;
  }
  void AddFace(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    faces_.push_back({a, b, c});
  }
  // Fans a planar polygon (listed counter-clockwise seen from outside)
  // around `center`.
  void Fan(std::uint32_t center, const std::vector<std::uint32_t>& ring) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      AddFace(center, ring[i], ring[(i + 1) % ring.size()]);
    }
  }
  TriangleMesh Mesh() const { return TriangleMesh(vertices_, faces_); }
  const std::vector<int>& labels() const { return labels_; }

 private:
  std::vector<Vec3> vertices_;
  std::vector<Face> faces_;
  std::vector<int> labels_;
  std::map<std::tuple<double, double, double>, std::uint32_t> index_;
};

}  // namespace

TwoCubeFixture MakeTwoCubes() {
  MeshBuilder b;
  // Corner labels: ring corners belong to the lower cube, ring midpoints to
  // the upper one, so every fan triangle votes for its own cube.
  auto corner = [&](double x, double y, double z) {
    return b.Vertex(Vec3(x, y, z), y < 1.5 ? 1 : 2);
  };
  auto mid = [&](double x, double z) { return b.Vertex(Vec3(x, 1.0, z), 2); };

  // Bottom (y = 0, normal -y) and top (y = 2, normal +y).
  const auto b00 = corner(0, 0, 0), b10 = corner(1, 0, 0), b11 = corner(1, 0, 1),
             b01 = corner(0, 0, 1);
  b.AddFace(b00, b10, b11);
  b.AddFace(b00, b11, b01);
  const auto t00 = corner(0, 2, 0), t10 = corner(1, 2, 0), t11 = corner(1, 2, 1),
             t01 = corner(0, 2, 1);
  b.AddFace(t00, t11, t10);
  b.AddFace(t00, t01, t11);

  const auto r00 = corner(0, 1, 0), r10 = corner(1, 1, 0), r11 = corner(1, 1, 1),
             r01 = corner(0, 1, 1);
  const auto m_z0 = mid(0.5, 0), m_x1 = mid(1, 0.5), m_z1 = mid(0.5, 1),
             m_x0 = mid(0, 0.5);

  // Each side: lower square y in [0, 1], upper square y in [1, 2]. Rings are
  // listed counter-clockwise as seen from outside.
  struct Side {
    Vec3 lower_center, upper_center;
    std::vector<std::uint32_t> lower, upper;
  };
  const std::vector<Side> sides = {
      // z = 0, outward -z.
      {{0.5, 0.5, 0}, {0.5, 1.5, 0}, {b00, r00, m_z0, r10, b10},
       {r00, t00, t10, r10, m_z0}},
      // x = 1, outward +x.
      {{1, 0.5, 0.5}, {1, 1.5, 0.5}, {b10, r10, m_x1, r11, b11},
       {r10, t10, t11, r11, m_x1}},
      // z = 1, outward +z.
      {{0.5, 0.5, 1}, {0.5, 1.5, 1}, {b11, r11, m_z1, r01, b01},
       {r11, t11, t01, r01, m_z1}},
      // x = 0, outward -x.
      {{0, 0.5, 0.5}, {0, 1.5, 0.5}, {b01, r01, m_x0, r00, b00},
       {r01, t01, t00, r00, m_x0}},
  };
  for (const Side& side : sides) {
    b.Fan(b.Vertex(side.lower_center, 1), side.lower);
    b.Fan(b.Vertex(side.upper_center, 2), side.upper);
  }
  return {b.Mesh(), PartLabeling{b.labels(), LabelScheme::kMerged14}};
}

BandedSphereFixture MakeBandedSphere(int level) {
  BandedSphereFixture f;
  f.mesh = MakeIcosphere(1.0, level);
  f.labeling.scheme = LabelScheme::kMerged14;
  for (const Vec3& p : f.mesh.vertices()) {
    f.labeling.labels.push_back(p.y() < -0.3 ? 1 : (p.y() < 0.35 ? 2 : 3));
  }
  return f;
}

TriangleMesh MakeBodyProxy(bool raised_arm) {
  std::vector<TriangleMesh> boxes = {
      MakeBox({-0.17, 0.0, -0.07}, {-0.03, 0.85, 0.07}),  // left leg
      MakeBox({0.03, 0.0, -0.07}, {0.17, 0.85, 0.07}),    // right leg
      MakeBox({-0.18, 0.87, -0.11}, {0.18, 1.47, 0.11}),  // torso
      MakeBox({-0.10, 1.49, -0.10}, {0.10, 1.74, 0.10}),  // head
      MakeBox({-0.80, 1.35, -0.05}, {-0.20, 1.45, 0.05}), // left arm
  };
  if (raised_arm) {
    boxes.push_back(MakeBox({0.20, 1.47, -0.05}, {0.30, 2.07, 0.05}));
  } else {
    boxes.push_back(MakeBox({0.20, 1.35, -0.05}, {0.80, 1.45, 0.05}));
  }
  return MergeMeshes(boxes);
}

TriangleMesh MakeRegularTetrahedron(double edge) {
  const double s = edge / (2.0 * std::sqrt(2.0));
  return MakeTetrahedron(Vec3(s, s, s), Vec3(s, -s, -s), Vec3(-s, s, -s),
                         Vec3(-s, -s, s));
}

Mat3 RandomRotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q.toRotationMatrix();
}

Skeleton2D RandomSkeleton2D(std::mt19937_64& rng, int image_size,
                            double visible_probability) {
  std::uniform_real_distribution<double> coord(-0.5, image_size - 0.5);
  std::bernoulli_distribution visible(visible_probability);
  Skeleton2D s;
  s.image_size = image_size;
  for (Joint2D& j : s.joints) {
    j.u = coord(rng);
    j.v = coord(rng);
    j.visible = visible(rng);
  }
  return s;
}

Skeleton3D RandomSkeleton3D(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(0.0, kImageSize);
  std::uniform_real_distribution<double> depth(0.0, 1.0);
  Skeleton3D s;
  for (Joint3D& j : s.joints) {
    j.u = coord(rng);
    j.v = coord(rng);
    j.depth = depth(rng);
  }
  return s;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("volkit_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

void WriteTextFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace volkit::testing
