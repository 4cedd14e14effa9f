// Acceptance suite: one line per criterion, exact checks, wall-clock
// limits enforced. Exits nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fansheaf/fixtures.hpp"
#include "fansheaf/mes.hpp"
#include "fansheaf/oracles.hpp"
#include "fansheaf/sections.hpp"

using namespace fansheaf;

namespace {

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<bool(std::string&)> check;
};

int default_cutoff(const Fan& f) { return 2 * f.ambient_dim() + 2; }

std::pair<Subfan, Subfan> adjacent_split(const Fan& f) {
  auto max = f.maximal_cones();
  int first = max[0], neighbour = -1;
  std::vector<int> rest;
  for (size_t i = 1; i < max.size(); ++i) {
    if (neighbour < 0 && f.cone(f.common_face(first, max[i])).dim == 2) neighbour = max[i];
    else rest.push_back(max[i]);
  }
  return {f.subfan_from_generators({first, neighbour}), f.subfan_from_generators(rest)};
}

std::string vec_str(const std::vector<long>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

bool expect_eq(std::string& msg, const std::string& what, const std::vector<long>& got,
               const std::vector<long>& want) {
  if (trim_trailing_zeros(got) == trim_trailing_zeros(want)) return true;
  msg += what + ": got (" + vec_str(got) + ") want (" + vec_str(want) + "); ";
  return false;
}

std::vector<Fan> fixture_suite() {
  return {fixture_p1(),           fixture_p2_complete(),   fixture_polygon_cone(3), fixture_polygon_cone(4),
          fixture_polygon_cone(5), fixture_cube_face_fan(), fixture_octahedron_fan(), fixture_ex15(),
          fixture_ex62()};
}

}  // namespace

int main() {
  std::vector<Criterion> criteria;

  criteria.push_back({"01 mayer-vietoris cokernel of the vertical-facets fan split", 1.0, [](std::string& msg) {
    Fan f = fixture_ex15();
    auto [l1, l2] = adjacent_split(f);
    long coker = mayer_vietoris_coker(f, l1, l2, 2);
    if (coker != 1) { msg = "cokernel dimension " + std::to_string(coker) + " != 1"; return false; }
    return true;
  }});

  criteria.push_back({"02 simplicial collapse: sheaf equals piecewise polynomials", 5.0, [](std::string& msg) {
    bool ok = true;
    for (const Fan& f : {fixture_p2_complete(), fixture_octahedron_fan(), fixture_polygon_cone(3)}) {
      int cut = default_cutoff(f);
      MesAtlas atlas = build_mes(f, cut);
      for (int c = 0; c < f.num_cones(); ++c)
        if (local_poincare(atlas, c) != std::vector<long>{1}) {
          msg += "cone " + std::to_string(c) + " is not rank one; ";
          ok = false;
        }
      ok = expect_eq(msg, "global dims", global_E_dims(atlas, f, f.full_subfan(), cut),
                     a_dims(f, f.full_subfan(), cut)) && ok;
      for (int c = 0; c < f.num_cones(); ++c) {
        Subfan aff = f.affine_subfan(c);
        ok = expect_eq(msg, "affine piece " + std::to_string(c), global_E_dims(atlas, f, aff, cut),
                       a_dims(f, aff, cut)) && ok;
      }
    }
    return ok;
  }});

  criteria.push_back({"03 complete simplicial quotients match the classical h-vector", 10.0, [](std::string& msg) {
    bool ok = true;
    for (const Fan& f : {fixture_p2_complete(), fixture_octahedron_fan()}) {
      int n = f.ambient_dim();
      int cut = default_cutoff(f);
      MesAtlas atlas = build_mes(f, cut);
      std::vector<long long> fv = f.f_vector();
      std::vector<long long> counts(fv.begin() + 1, fv.end());
      auto hv = h_vector(counts);
      std::vector<long> want(hv.begin(), hv.end());
      ok = expect_eq(msg, "sheaf quotient", global_ih_dims(atlas, f, cut), want) && ok;
      ok = expect_eq(msg, "ring quotient", sr_quotient_hilbert(f, cut), want) && ok;
      std::vector<long> known = n == 2 ? std::vector<long>{1, 1, 1} : std::vector<long>{1, 3, 3, 1};
      ok = expect_eq(msg, "expected values", want, known) && ok;
    }
    return ok;
  }});

  criteria.push_back({"04 local ranks over polygon cones match the toric g-oracle", 10.0, [](std::string& msg) {
    bool ok = true;
    for (long m = 4; m <= 6; ++m) {
      Fan f = fixture_polygon_cone(m);
      MesAtlas atlas = build_mes(f, default_cutoff(f));
      auto hist = local_poincare(atlas, f.maximal_cones()[0]);
      std::vector<long> want{1, m - 3};
      ZPoly g = toric_gh(polygon_lattice(static_cast<int>(m))).g;
      std::vector<long> oracle(g.begin(), g.end());
      ok = expect_eq(msg, "m=" + std::to_string(m), hist, want) && ok;
      ok = expect_eq(msg, "m=" + std::to_string(m) + " oracle", hist, oracle) && ok;
    }
    return ok;
  }});

  criteria.push_back({"05 cube face fan global quotients match the toric h of the cube", 60.0, [](std::string& msg) {
    Fan f = fixture_cube_face_fan();
    MesAtlas atlas = build_mes(f, 8);
    auto ih = global_ih_dims(atlas, f, 8);
    ZPoly h = toric_gh(cube_lattice()).h;
    std::vector<long> oracle(h.begin(), h.end());
    bool ok = expect_eq(msg, "cube", ih, std::vector<long>{1, 5, 5, 1});
    ok = expect_eq(msg, "cube oracle", ih, oracle) && ok;
    auto t = trim_trailing_zeros(ih);
    for (size_t k = 0; k < t.size(); ++k)
      if (t[k] != t[t.size() - 1 - k]) { msg += "not palindromic; "; ok = false; }
    return ok;
  }});

  criteria.push_back({"06 formality verdicts across the fixture families", 60.0, [](std::string& msg) {
    bool ok = true;
    auto verdict = [&](const Fan& f, bool want, const std::string& label) {
      MesAtlas atlas = build_mes(f, default_cutoff(f));
      bool got = is_equivariantly_formal(atlas, f, default_cutoff(f)).formal;
      if (got != want) {
        msg += label + ": formal=" + (got ? "yes" : "no") + " want " + (want ? "yes" : "no") + "; ";
        ok = false;
      }
    };
    verdict(fixture_p1(), true, "P1");
    verdict(fixture_p2_complete(), true, "P2");
    verdict(fixture_cube_face_fan(), true, "cube");
    verdict(fixture_octahedron_fan(), true, "octahedron");
    verdict(fixture_polygon_cone(4), true, "polygon_cone(4)");
    verdict(fixture_polygon_cone(5), true, "polygon_cone(5)");
    verdict(fixture_affine_cone({{1, 0}, {0, 1}}), true, "quadrant");
    verdict(fixture_affine_cone({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), true, "orthant");
    for (const Fan& f : {fixture_p2_complete(), fixture_octahedron_fan()})
      for (int r = 0; r < f.num_rays(); ++r)
        verdict(f.subfan_as_fan(f.star_complement(r)), true, "star complement ray " + std::to_string(r));
    verdict(fixture_ex62(), false, "two cones at the origin");
    return ok;
  }});

  criteria.push_back({"07 torsion dichotomy with verified witnesses", 10.0, [](std::string& msg) {
    bool ok = true;
    std::vector<std::pair<Fan, bool>> suite;
    suite.push_back({fixture_p2_complete(), false});
    suite.push_back({fixture_ex62(), false});
    suite.push_back({fixture_polygon_cone(4), false});
    suite.push_back({fixture_cube_face_fan(), false});
    suite.push_back({fixture_affine_cone({{1, 0}}), true});
    suite.push_back({fixture_affine_cone({{1, 0, 0}, {0, 1, 0}}), true});
    suite.push_back({Fan::from_data(2, {{1, 0}, {0, 1}, {-1, 0}}, {{0, 1}, {2}}), true});
    suite.push_back({Fan::parse("dim 2\n"), true});
    for (size_t i = 0; i < suite.size(); ++i) {
      const Fan& f = suite[i].first;
      MesAtlas atlas = build_mes(f, default_cutoff(f));
      auto w = torsion_witness(atlas, f);
      bool expect = suite[i].second;
      if (w.has_value() != expect) {
        msg += "fan " + std::to_string(i) + ": witness " + (w ? "found" : "missing") + "; ";
        ok = false;
      } else if (w && !verify_torsion_witness(atlas, f, *w)) {
        msg += "fan " + std::to_string(i) + ": witness failed verification; ";
        ok = false;
      }
    }
    return ok;
  }});

  criteria.push_back({"08 axiom suite on every fixture plus a corrupted-atlas control", 60.0, [](std::string& msg) {
    bool ok = true;
    for (const Fan& f : fixture_suite()) {
      int cut = default_cutoff(f);
      MesAtlas atlas = build_mes(f, cut);
      AxiomReport rep = verify_axioms(atlas, f, cut);
      if (!rep.ok) {
        msg += "axioms failed: " + rep.failures.front() + "; ";
        ok = false;
      }
      if (!restriction_consistency(atlas, f)) {
        msg += "path independence failed; ";
        ok = false;
      }
    }
    Fan p2 = fixture_p2_complete();
    MesAtlas atlas = build_mes(p2, 6);
    auto key = atlas.facet_restriction.begin()->first;
    atlas.facet_restriction[key].entries[0][0] = Poly::zero(p2.cone(key.second).dim);
    AxiomReport rep = verify_axioms(atlas, p2, 6);
    std::string offender;
    bool paths = restriction_consistency(atlas, p2, &offender);
    if (rep.ok && paths) {
      msg += "corrupted atlas was not detected; ";
      ok = false;
    }
    bool located = false;
    for (const auto& fmsg : rep.failures) located = located || fmsg.find("cone") != std::string::npos;
    located = located || offender.find("cone") != std::string::npos;
    if (!located) {
      msg += "corruption report does not locate the cone; ";
      ok = false;
    }
    return ok;
  }});

  criteria.push_back({"09 generator degrees are independent of pivot choices", 60.0, [](std::string& msg) {
    bool ok = true;
    for (const Fan& f : fixture_suite()) {
      int cut = default_cutoff(f);
      MesAtlas base = build_mes(f, cut);
      auto dims = global_E_dims(base, f, f.full_subfan(), cut);
      for (unsigned long seed : {1ul, 2ul}) {
        MesAtlas other = build_mes(f, cut, seed);
        for (int c = 0; c < f.num_cones(); ++c)
          if (other.gen_degrees[c] != base.gen_degrees[c]) {
            msg += "seed " + std::to_string(seed) + " cone " + std::to_string(c) + " differs; ";
            ok = false;
          }
        if (global_E_dims(other, f, f.full_subfan(), cut) != dims) {
          msg += "seed " + std::to_string(seed) + " global dims differ; ";
          ok = false;
        }
      }
    }
    return ok;
  }});

  criteria.push_back({"10 fan lifts along piecewise linear functions", 1.0, [](std::string& msg) {
    Fan p1 = fixture_p1();
    Fan zero_lift = lift_fan_by_plf(p1, plf_from_values(p1, {0, 0}));
    Fan product = Fan::from_data(2, {{1, 0}, {-1, 0}, {0, 1}}, {{0, 2}, {1, 2}});
    bool ok = true;
    if (!(zero_lift == product)) {
      msg += "zero lift is not the product fan; ";
      ok = false;
    }
    if (!lift_projects_bijectively(p1, zero_lift)) {
      msg += "zero lift projection is not bijective; ";
      ok = false;
    }
    int pos = -1;
    for (int r = 0; r < p1.num_rays(); ++r)
      if (p1.ray(r).coords == std::vector<RayCoord>{1}) pos = r;
    std::vector<long long> vals(p1.num_rays(), 0);
    vals[pos] = 1;
    Fan courant_lift = lift_fan_by_plf(p1, plf_from_values(p1, vals));
    Fan sheared = Fan::from_data(2, {{1, 1}, {-1, 0}, {0, 1}}, {{0, 2}, {1, 2}});
    if (!(courant_lift == sheared)) {
      msg += "courant lift has the wrong cones; ";
      ok = false;
    }
    if (!lift_projects_bijectively(p1, courant_lift)) {
      msg += "courant lift projection is not bijective; ";
      ok = false;
    }
    return ok;
  }});

  int passed = 0;
  for (auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string msg;
    bool ok = false;
    try {
      ok = c.check(msg);
    } catch (const std::exception& e) {
      msg = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      ok = false;
      msg += "exceeded time limit (" + std::to_string(secs) + "s > " + std::to_string(c.limit_seconds) + "s); ";
    }
    std::ostringstream line;
    line << (ok ? "[PASS] " : "[FAIL] ") << c.name << " (" << static_cast<long>(secs * 1000) << " ms)";
    if (!ok && !msg.empty()) line << " -- " << msg;
    std::cout << line.str() << "\n";
    if (ok) ++passed;
  }
  std::cout << "RESULT: " << passed << "/" << criteria.size() << " criteria passed\n";
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
