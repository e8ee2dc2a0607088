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

#ifndef VOLKIT_PRIMITIVES_H_
#define VOLKIT_PRIMITIVES_H_

#include "volkit/mesh.h"

namespace volkit {

// Closed, outward-oriented meshes for fixtures and experiments.

// Axis-aligned box, 8 vertices and 12 faces.
TriangleMesh MakeBox(const Vec3& min_corner, const Vec3& max_corner);

// Tetrahedron with the winding fixed so the signed volume is positive.
TriangleMesh MakeTetrahedron(const Vec3& a, const Vec3& b, const Vec3& c,
                             const Vec3& d);

// Subdivided icosahedron projected onto a sphere; 20 * 4^level faces.
TriangleMesh MakeIcosphere(double radius, int level,
                           const Vec3& center = Vec3::Zero());

// Lateral surface of a y-aligned cylinder on [0, height]; open at both ends,
// so it has two boundary loops.
TriangleMesh MakeOpenCylinder(double radius, double height, int segments);

}  // namespace volkit

#endif  // VOLKIT_PRIMITIVES_H_
