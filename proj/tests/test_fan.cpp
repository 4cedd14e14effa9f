#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fansheaf/fan.hpp"
#include "fansheaf/fixtures.hpp"

using namespace fansheaf;

namespace {

std::vector<int> ray_set(const Fan& f, int cone_id) { return f.cone(cone_id).ray_ids; }

// Independent face oracle for small integer cones: scan all integer
// functionals with entries in [-3, 3]; every supporting one cuts out a
// face as its zero set. Complete for the fixture cones tested here.
std::set<std::vector<int>> grid_face_oracle(const std::vector<std::vector<long long>>& gens) {
  int n = static_cast<int>(gens[0].size());
  int m = static_cast<int>(gens.size());
  std::set<std::vector<int>> out;
  std::vector<long long> u(n, -3);
  while (true) {
    bool supporting = true;
    std::vector<int> zero;
    for (int i = 0; i < m && supporting; ++i) {
      long long dot = 0;
      for (int j = 0; j < n; ++j) dot += u[j] * gens[i][j];
      if (dot < 0) supporting = false;
      else if (dot == 0) zero.push_back(i);
    }
    if (supporting && static_cast<int>(zero.size()) < m) out.insert(zero);
    int p = 0;
    while (p < n && u[p] == 3) u[p++] = -3;
    if (p == n) break;
    ++u[p];
  }
  return out;
}

}  // namespace

TEST_CASE("parsing computes the face closure") {
  Fan f = Fan::parse("dim 2\nray 0 1 0\nray 1 0 1\nray 2 -1 -1\ncone 0 0 1\ncone 1 1 2\ncone 2 0 2\n");
  CHECK(f.num_cones() == 7);
  CHECK(f.num_rays() == 3);
  CHECK(f.maximal_cones().size() == 3);
  CHECK(f == fixture_p2_complete());
}

TEST_CASE("parsing a one-dimensional complete fan") {
  Fan f = Fan::parse("# the fan of the line\ndim 1\nray 0 1\nray 1 -1\ncone 0 0\ncone 1 1\n");
  CHECK(f.num_cones() == 3);
  CHECK(f.is_complete());
}

TEST_CASE("duplicate rays after normalization are rejected") {
  CHECK_THROWS_AS(Fan::parse("dim 2\nray 0 1 0\nray 1 2 0\ncone 0 0\ncone 1 1\n"), InputError);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(Fan::parse("ray 0 1 0\n"), InputError);            // ray before dim
  CHECK_THROWS_AS(Fan::parse("dim 2\nray 0 1\n"), InputError);       // short ray
  CHECK_THROWS_AS(Fan::parse("dim 2\ncone 0 3\n"), InputError);      // unknown ray
  CHECK_THROWS_AS(Fan::parse("dim 2\nbogus\n"), InputError);         // unknown directive
  CHECK_THROWS_AS(Fan::parse("dim 2\nray 0 0 0\ncone 0 0\n"), InputError);  // zero ray
}

TEST_CASE("non-pointed cones are rejected") {
  CHECK_THROWS_AS(Fan::from_data(2, {{1, 0}, {-1, 0}}, {{0, 1}}), InputError);
  CHECK_THROWS_AS(Fan::from_data(2, {{1, 0}, {-1, 1}, {-1, -1}}, {{0, 1, 2}}), InputError);
}

TEST_CASE("non-extremal generators are rejected") {
  CHECK_THROWS_AS(Fan::from_data(2, {{1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}}), InputError);
}

TEST_CASE("overlapping cones are rejected") {
  CHECK_THROWS_AS(Fan::from_data(2, {{1, 0}, {0, 1}, {1, 1}, {-1, 1}}, {{0, 1}, {2, 3}}), InputError);
}

TEST_CASE("faces of a two-dimensional cone") {
  Fan f = fixture_affine_cone({{1, 0}, {0, 1}});
  int top = f.maximal_cones().at(0);
  auto faces = f.faces_of(top);
  REQUIRE(faces.size() == 3);  // o and the two rays
  CHECK(f.cone(faces[0]).dim == 0);
  CHECK(f.cone(faces[1]).dim == 1);
  CHECK(f.cone(faces[2]).dim == 1);
}

TEST_CASE("faces of a ray") {
  Fan f = fixture_affine_cone({{1, 0}});
  int top = f.maximal_cones().at(0);
  auto faces = f.faces_of(top);
  REQUIRE(faces.size() == 1);
  CHECK(f.cone(faces[0]).dim == 0);
}

TEST_CASE("faces of the cone over the unit square") {
  Fan f = fixture_polygon_cone(4);
  int top = f.maximal_cones().at(0);
  auto faces = f.faces_of(top);
  CHECK(faces.size() == 9);  // o + 4 rays + 4 walls

  // compare against the independent grid oracle
  std::vector<std::vector<long long>> gens;
  for (int r : ray_set(f, top)) gens.push_back(f.ray(r).coords);
  auto expected = grid_face_oracle(gens);
  std::set<std::vector<int>> got;
  got.insert(std::vector<int>{});  // oracle reports o as the empty zero set
  const std::vector<int> top_rays = ray_set(f, top);
  for (int fc : faces) {
    if (f.cone(fc).dim == 0) continue;
    std::vector<int> local;
    for (int r : ray_set(f, fc)) {
      auto it = std::find(top_rays.begin(), top_rays.end(), r);
      local.push_back(static_cast<int>(it - top_rays.begin()));
    }
    got.insert(local);
  }
  CHECK(got == expected);
}

TEST_CASE("boundary subfans") {
  Fan f = fixture_polygon_cone(4);
  CHECK(f.boundary_fan(0).cone_ids.empty());  // boundary of o
  int top = f.maximal_cones().at(0);
  CHECK(f.boundary_fan(top).cone_ids.size() == 9);

  Fan p2 = fixture_p2_complete();
  int two_cone = p2.maximal_cones().at(0);
  CHECK(p2.boundary_fan(two_cone).cone_ids.size() == 3);
}

TEST_CASE("skeleton subfans") {
  Fan p2 = fixture_p2_complete();
  CHECK(p2.skeleton(0).cone_ids == std::vector<int>{0});
  CHECK(p2.skeleton(1).cone_ids.size() == 4);  // o plus three rays
  CHECK(p2.skeleton(2).cone_ids.size() == 7);
  CHECK_THROWS_AS(p2.skeleton(3), InputError);
  CHECK_THROWS_AS(p2.skeleton(-1), InputError);
}

TEST_CASE("predicates on the fixtures") {
  Fan square = fixture_polygon_cone(4);
  CHECK_FALSE(square.is_simplicial());
  CHECK(square.is_purely_top());
  CHECK_FALSE(square.is_complete());

  Fan p2 = fixture_p2_complete();
  CHECK(p2.is_simplicial());
  CHECK(p2.is_purely_top());
  CHECK(p2.is_complete());

  Fan ray_fan = fixture_affine_cone({{1, 0}});
  CHECK_FALSE(ray_fan.is_purely_top());
  CHECK_FALSE(ray_fan.is_complete());
  CHECK(ray_fan.is_simplicial());

  Fan cube = fixture_cube_face_fan();
  CHECK(cube.num_rays() == 8);
  CHECK(cube.maximal_cones().size() == 6);
  CHECK_FALSE(cube.is_simplicial());
  CHECK(cube.is_complete());
  CHECK(cube.f_vector() == std::vector<long long>{1, 8, 12, 6});

  Fan ex15 = fixture_ex15();
  CHECK(ex15.is_purely_top());
  CHECK_FALSE(ex15.is_complete());

  Fan ex62 = fixture_ex62();
  CHECK(ex62.is_purely_top());
  CHECK_FALSE(ex62.is_complete());
  CHECK(ex62.maximal_cones().size() == 2);
  CHECK(ex62.common_face(ex62.maximal_cones()[0], ex62.maximal_cones()[1]) == 0);

  Fan oct = fixture_octahedron_fan();
  CHECK(oct.is_simplicial());
  CHECK(oct.is_complete());
  CHECK(oct.f_vector() == std::vector<long long>{1, 6, 12, 8});

  CHECK(fixture_polygon_cone(3).is_simplicial());
}

TEST_CASE("star complements") {
  Fan p1 = fixture_p1();
  // remove the star of the ray (1): only o and the ray (-1) remain
  int pos_ray = -1;
  for (int r = 0; r < p1.num_rays(); ++r)
    if (p1.ray(r).coords == std::vector<RayCoord>{1}) pos_ray = r;
  Subfan s = p1.star_complement(pos_ray);
  REQUIRE(s.cone_ids.size() == 2);
  CHECK(p1.cone(s.cone_ids[1]).dim == 1);

  Fan oct = fixture_octahedron_fan();
  int e1 = -1;
  for (int r = 0; r < oct.num_rays(); ++r)
    if (oct.ray(r).coords == std::vector<RayCoord>{1, 0, 0}) e1 = r;
  Subfan sc = oct.star_complement(e1);
  // the four orthants with first coordinate <= 0 survive, plus faces
  int top_count = 0;
  for (int c : sc.cone_ids)
    if (oct.cone(c).dim == 3) ++top_count;
  CHECK(top_count == 4);
  CHECK(sc.cone_ids.size() == 18);
  CHECK(oct.subfan_is_face_closed(sc));

  CHECK_THROWS_AS(fixture_ex62().star_complement(0), InputError);

  // removing any ray's star from the three-ray complete plane fan leaves
  // the affine subfan of the opposite two-dimensional cone
  Fan p2 = fixture_p2_complete();
  for (int r = 0; r < p2.num_rays(); ++r) {
    Subfan sc = p2.star_complement(r);
    REQUIRE(sc.cone_ids.size() == 4);
    auto max = p2.subfan_maximal(sc);
    REQUIRE(max.size() == 1);
    CHECK(p2.cone(max[0]).dim == 2);
    CHECK_FALSE(std::binary_search(p2.cone(max[0]).ray_ids.begin(), p2.cone(max[0]).ray_ids.end(), r));
  }
}

TEST_CASE("unused rays are rejected") {
  CHECK_THROWS_AS(Fan::parse("dim 2\nray 0 1 0\nray 1 0 1\ncone 0 0\n"), InputError);
}

TEST_CASE("a listed cone nested in another is absorbed") {
  Fan f = Fan::from_data(2, {{1, 0}, {0, 1}}, {{0, 1}, {0}});
  CHECK(f.maximal_cones().size() == 1);
  CHECK(f.num_cones() == 4);
  CHECK(Fan::parse(f.serialize()) == f);
}

TEST_CASE("pairwise intersections land in the fan") {
  for (const Fan& f : {fixture_p2_complete(), fixture_cube_face_fan(), fixture_ex15(), fixture_ex62(),
                       fixture_octahedron_fan(), fixture_polygon_cone(5)}) {
    for (int a = 0; a < f.num_cones(); ++a)
      for (int b = 0; b < f.num_cones(); ++b) {
        int c = f.common_face(a, b);
        std::vector<int> expect;
        std::set_intersection(f.cone(a).ray_ids.begin(), f.cone(a).ray_ids.end(),
                              f.cone(b).ray_ids.begin(), f.cone(b).ray_ids.end(),
                              std::back_inserter(expect));
        CHECK(f.cone(c).ray_ids == expect);
      }
  }
}

TEST_CASE("face relation is transitively consistent") {
  Fan cube = fixture_cube_face_fan();
  for (int c = 0; c < cube.num_cones(); ++c)
    for (int f1 : cube.faces_of(c))
      for (int f2 : cube.faces_of(f1)) {
        const auto& fs = cube.faces_of(c);
        CHECK(std::binary_search(fs.begin(), fs.end(), f2));
      }
  for (auto [tau, sigma] : cube.facet_edges()) CHECK(cube.cone(tau).dim == cube.cone(sigma).dim - 1);
}

TEST_CASE("serialization round-trips canonically") {
  for (const Fan& f : {fixture_p1(), fixture_p2_complete(), fixture_polygon_cone(4), fixture_polygon_cone(5),
                       fixture_cube_face_fan(), fixture_octahedron_fan(), fixture_ex15(), fixture_ex62()}) {
    Fan g = Fan::parse(f.serialize());
    CHECK(g == f);
    CHECK(g.serialize() == f.serialize());
  }
}

TEST_CASE("a fan file with no cones describes the trivial fan") {
  Fan f = Fan::parse("dim 2\n");
  CHECK(f.num_cones() == 1);
  CHECK(f.cone(0).dim == 0);
  CHECK_FALSE(f.is_purely_top());
}

TEST_CASE("subfan as standalone fan") {
  Fan oct = fixture_octahedron_fan();
  int e1 = -1;
  for (int r = 0; r < oct.num_rays(); ++r)
    if (oct.ray(r).coords == std::vector<RayCoord>{1, 0, 0}) e1 = r;
  Fan sub = oct.subfan_as_fan(oct.star_complement(e1));
  CHECK(sub.ambient_dim() == 3);
  CHECK(sub.num_rays() == 5);
  CHECK(sub.maximal_cones().size() == 4);
  CHECK(sub.is_purely_top());
  CHECK_FALSE(sub.is_complete());
}
