#pragma once

// Named fixture fans used across the tests and the CLI `gen` command.

#include <string>
#include <vector>

#include "fansheaf/fan.hpp"

namespace fansheaf {

// Complete fan of the projective line: two rays in Q^1.
inline Fan fixture_p1() { return Fan::from_data(1, {{1}, {-1}}, {{0}, {1}}); }

// Complete fan of the projective plane.
inline Fan fixture_p2_complete() {
  return Fan::from_data(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}});
}

// Affine fan of the 3-dimensional cone over a convex m-gon at height 1.
// m = 4 uses the square (+-1, +-1, 1); other m place the vertices on a
// parabola, which keeps them integral and in convex position.
inline Fan fixture_polygon_cone(long m) {
  if (m < 3) throw InputError("polygon_cone: need m >= 3");
  std::vector<std::vector<RayCoord>> gens;
  if (m == 4) {
    gens = {{1, 1, 1}, {-1, 1, 1}, {-1, -1, 1}, {1, -1, 1}};
  } else {
    for (long j = 0; j < m; ++j) gens.push_back({j, j * j, 1});
  }
  std::vector<int> all;
  for (long j = 0; j < m; ++j) all.push_back(static_cast<int>(j));
  return Fan::from_data(3, std::move(gens), {all});
}

// Complete fan over the six facets of the cube; rays are the eight
// vertices (+-1, +-1, +-1). Non-simplicial: the maximal cones are cones
// over squares.
inline Fan fixture_cube_face_fan() {
  std::vector<std::vector<RayCoord>> gens;
  for (int v = 0; v < 8; ++v)
    gens.push_back({(v & 1) ? 1 : -1, (v & 2) ? 1 : -1, (v & 4) ? 1 : -1});
  std::vector<std::vector<int>> cones;
  for (int axis = 0; axis < 3; ++axis)
    for (int sign = 0; sign < 2; ++sign) {
      std::vector<int> c;
      for (int v = 0; v < 8; ++v)
        if (((v >> axis) & 1) == sign) c.push_back(v);
      cones.push_back(std::move(c));
    }
  return Fan::from_data(3, std::move(gens), std::move(cones));
}

// The eight orthants: complete simplicial fan with rays +-e_i.
inline Fan fixture_octahedron_fan() {
  std::vector<std::vector<RayCoord>> gens;
  for (int i = 0; i < 3; ++i) {
    std::vector<RayCoord> p(3, 0), n(3, 0);
    p[i] = 1;
    n[i] = -1;
    gens.push_back(p);
    gens.push_back(n);
  }
  std::vector<std::vector<int>> cones;
  for (int s = 0; s < 8; ++s) {
    std::vector<int> c;
    for (int i = 0; i < 3; ++i) c.push_back(2 * i + ((s >> i) & 1));
    cones.push_back(std::move(c));
  }
  return Fan::from_data(3, std::move(gens), std::move(cones));
}

// The four "vertical" facet cones of the cube (the facets parallel to the
// z-axis). Purely 3-dimensional but not complete.
inline Fan fixture_ex15() {
  std::vector<std::vector<RayCoord>> gens;
  for (int v = 0; v < 8; ++v)
    gens.push_back({(v & 1) ? 1 : -1, (v & 2) ? 1 : -1, (v & 4) ? 1 : -1});
  std::vector<std::vector<int>> cones;
  for (int axis = 0; axis < 2; ++axis)  // x and y facets only
    for (int sign = 0; sign < 2; ++sign) {
      std::vector<int> c;
      for (int v = 0; v < 8; ++v)
        if (((v >> axis) & 1) == sign) c.push_back(v);
      cones.push_back(std::move(c));
    }
  return Fan::from_data(3, std::move(gens), std::move(cones));
}

// Two 2-dimensional cones in Q^2 meeting only at the origin.
inline Fan fixture_ex62() {
  return Fan::from_data(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {2, 3}});
}

// Affine fan generated by a single cone on the given rays.
inline Fan fixture_affine_cone(const std::vector<std::vector<RayCoord>>& gens) {
  if (gens.empty()) throw InputError("affine_cone: need at least one ray");
  int n = static_cast<int>(gens[0].size());
  std::vector<int> all;
  for (size_t i = 0; i < gens.size(); ++i) all.push_back(static_cast<int>(i));
  return Fan::from_data(n, gens, {all});
}

inline Fan fixture(const std::string& name, long m = 0) {
  if (name == "P1") return fixture_p1();
  if (name == "P2_complete") return fixture_p2_complete();
  if (name == "polygon_cone") return fixture_polygon_cone(m);
  if (name == "cube_face_fan") return fixture_cube_face_fan();
  if (name == "octahedron_fan") return fixture_octahedron_fan();
  if (name == "ex15") return fixture_ex15();
  if (name == "ex62") return fixture_ex62();
  throw InputError("unknown fixture '" + name + "'");
}

}  // namespace fansheaf
