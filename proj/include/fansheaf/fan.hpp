#pragma once

// Exact representation of rational polyhedral fans.
//
// A Fan is built from primitive ray generators and a list of maximal cones
// given by ray indices. Construction computes the full face closure and
// validates the fan axioms: every cone is pointed, every listed generator
// is an extremal ray of its cone, and any two cones intersect in a common
// face. All geometric questions are answered by brute-force enumeration
// over generator subsets, which is exact and entirely adequate at the
// intended scale (ambient dimension <= 6, at most a few dozen rays).
//
// Cone ids are assigned deterministically: rays are normalized to
// primitive integer vectors and sorted lexicographically, cones are sorted
// by (dimension, ray id list). The zero cone o always has id 0.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fansheaf/matrix.hpp"
#include "fansheaf/polynomial.hpp"
#include "fansheaf/rational.hpp"

namespace fansheaf {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using RayCoord = long long;

struct RayVector {
  std::vector<RayCoord> coords;
  bool operator==(const RayVector& o) const { return coords == o.coords; }
  bool operator<(const RayVector& o) const { return coords < o.coords; }
};

inline RayVector normalize_primitive(std::vector<RayCoord> v) {
  long long g = 0;
  for (RayCoord x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g == 0) throw InputError("ray generator is the zero vector");
  for (RayCoord& x : v) x /= g;
  return RayVector{std::move(v)};
}

struct Cone {
  std::vector<int> ray_ids;  // sorted
  int dim = 0;
  QMat span_basis;  // ambient_dim x dim; columns are the lex-first independent generators
};

struct Subfan {
  std::vector<int> cone_ids;  // sorted, face-closed

  bool contains(int cone_id) const {
    return std::binary_search(cone_ids.begin(), cone_ids.end(), cone_id);
  }
  bool operator==(const Subfan& o) const { return cone_ids == o.cone_ids; }
};

namespace detail {

// Visits every k-subset of {0, ..., m-1} in lexicographic order.
template <typename F>
inline void for_each_subset(int m, int k, F&& visit) {
  if (k < 0 || k > m) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(static_cast<const std::vector<int>&>(idx));
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

class Fan {
 public:
  // --- construction -------------------------------------------------------

  static Fan from_data(int ambient_dim, std::vector<std::vector<RayCoord>> ray_gens,
                       std::vector<std::vector<int>> max_cone_rays) {
    Fan f;
    f.build(ambient_dim, std::move(ray_gens), std::move(max_cone_rays));
    return f;
  }

  static Fan parse(const std::string& text);
  std::string serialize() const;

  // --- basic access -------------------------------------------------------

  int ambient_dim() const { return n_; }
  int num_rays() const { return static_cast<int>(rays_.size()); }
  const RayVector& ray(int i) const { return rays_.at(i); }
  int num_cones() const { return static_cast<int>(cones_.size()); }
  const Cone& cone(int id) const { return cones_.at(id); }

  int cone_id(const std::vector<int>& sorted_ray_ids) const {
    auto it = cone_index_.find(sorted_ray_ids);
    return it == cone_index_.end() ? -1 : it->second;
  }

  const std::vector<int>& maximal_cones() const { return maximal_; }
  const std::vector<int>& faces_of(int cone) const { return faces_.at(cone); }
  const std::vector<int>& facets_of(int cone) const { return facets_.at(cone); }

  // Facet relation edges (tau, sigma) with tau a facet of sigma.
  std::vector<std::pair<int, int>> facet_edges() const {
    std::vector<std::pair<int, int>> e;
    for (int s = 0; s < num_cones(); ++s)
      for (int t : facets_[s]) e.push_back({t, s});
    return e;
  }

  // Cone id of the intersection of two cones (a common face of both).
  int common_face(int c1, int c2) const {
    std::vector<int> r;
    std::set_intersection(cones_[c1].ray_ids.begin(), cones_[c1].ray_ids.end(),
                          cones_[c2].ray_ids.begin(), cones_[c2].ray_ids.end(), std::back_inserter(r));
    int id = cone_id(r);
    if (id < 0) throw std::logic_error("common_face: ray intersection is not a cone");
    return id;
  }

  // Supporting functional of a facet tau inside sigma, in sigma's span
  // coordinates: vanishes on tau, nonnegative on sigma.
  const std::vector<Rat>& facet_normal(int sigma, int tau) const {
    auto it = facet_normals_.find({sigma, tau});
    if (it == facet_normals_.end()) throw std::invalid_argument("facet_normal: not a facet pair");
    return it->second;
  }

  // Coordinate change for restricting polynomials from sigma to a face:
  // returns Y with span_basis(sigma) * Y = span_basis(face), i.e. the
  // matrix substituted into sigma-polynomials to express them on the face.
  const QMat& coord_map(int sigma, int face) const {
    auto it = coord_maps_.find({sigma, face});
    if (it == coord_maps_.end()) throw std::invalid_argument("coord_map: face is not contained in cone");
    return it->second;
  }

  // --- subfans --------------------------------------------------------------

  Subfan full_subfan() const {
    Subfan s;
    for (int i = 0; i < num_cones(); ++i) s.cone_ids.push_back(i);
    return s;
  }

  Subfan affine_subfan(int cone) const {  // <sigma> = sigma plus all its faces
    Subfan s;
    s.cone_ids = faces_[cone];
    s.cone_ids.push_back(cone);
    std::sort(s.cone_ids.begin(), s.cone_ids.end());
    return s;
  }

  Subfan boundary_fan(int cone) const {
    if (cone < 0 || cone >= num_cones()) throw InputError("boundary_fan: no such cone");
    Subfan s;
    s.cone_ids = faces_[cone];
    return s;
  }

  Subfan skeleton(int k) const {
    if (k < 0 || k > n_) throw InputError("skeleton: k out of range");
    Subfan s;
    for (int i = 0; i < num_cones(); ++i)
      if (cones_[i].dim <= k) s.cone_ids.push_back(i);
    return s;
  }

  Subfan subfan_from_generators(std::vector<int> cone_ids) const {
    std::set<int> acc;
    for (int c : cone_ids) {
      if (c < 0 || c >= num_cones()) throw InputError("subfan: no such cone id");
      acc.insert(c);
      for (int fct : faces_[c]) acc.insert(fct);
    }
    Subfan s;
    s.cone_ids.assign(acc.begin(), acc.end());
    return s;
  }

  Subfan subfan_union(const Subfan& a, const Subfan& b) const {
    Subfan s;
    std::set_union(a.cone_ids.begin(), a.cone_ids.end(), b.cone_ids.begin(), b.cone_ids.end(),
                   std::back_inserter(s.cone_ids));
    return s;
  }

  Subfan subfan_intersection(const Subfan& a, const Subfan& b) const {
    Subfan s;
    std::set_intersection(a.cone_ids.begin(), a.cone_ids.end(), b.cone_ids.begin(), b.cone_ids.end(),
                          std::back_inserter(s.cone_ids));
    return s;
  }

  // Maximal cones of a subfan: members that are faces of no other member.
  std::vector<int> subfan_maximal(const Subfan& s) const {
    std::set<int> non_max;
    for (int c : s.cone_ids)
      for (int fct : faces_[c]) non_max.insert(fct);
    std::vector<int> out;
    for (int c : s.cone_ids)
      if (!non_max.count(c)) out.push_back(c);
    return out;
  }

  bool subfan_is_face_closed(const Subfan& s) const {
    for (int c : s.cone_ids)
      for (int fct : faces_[c])
        if (!s.contains(fct)) return false;
    return true;
  }

  // The subfan of all cones not containing the given ray; requires a
  // complete fan. Automatically face-closed.
  Subfan star_complement(int ray_id) const {
    if (ray_id < 0 || ray_id >= num_rays()) throw InputError("star_complement: no such ray");
    if (!is_complete()) throw InputError("star_complement: fan is not complete");
    Subfan s;
    for (int c = 0; c < num_cones(); ++c) {
      const auto& rs = cones_[c].ray_ids;
      if (!std::binary_search(rs.begin(), rs.end(), ray_id)) s.cone_ids.push_back(c);
    }
    return s;
  }

  // A subfan re-packaged as a standalone fan in the same ambient space
  // (rays renumbered canonically).
  Fan subfan_as_fan(const Subfan& s) const {
    std::set<int> used;
    std::vector<int> max = subfan_maximal(s);
    for (int c : max)
      for (int r : cones_[c].ray_ids) used.insert(r);
    std::vector<std::vector<RayCoord>> gens;
    std::map<int, int> remap;
    for (int r : used) {
      remap[r] = static_cast<int>(gens.size());
      gens.push_back(rays_[r].coords);
    }
    std::vector<std::vector<int>> mc;
    for (int c : max) {
      std::vector<int> rs;
      for (int r : cones_[c].ray_ids) rs.push_back(remap[r]);
      mc.push_back(std::move(rs));
    }
    return from_data(n_, std::move(gens), std::move(mc));
  }

  // --- predicates -----------------------------------------------------------

  bool is_simplicial() const {
    for (const Cone& c : cones_)
      if (c.dim != static_cast<int>(c.ray_ids.size())) return false;
    return true;
  }

  bool is_purely_top() const {
    for (int c : maximal_)
      if (cones_[c].dim != n_) return false;
    return !maximal_.empty() && cones_[maximal_.front()].dim == n_;
  }

  // Completeness is decided combinatorially: the fan must be purely
  // top-dimensional, every (n-1)-cone must be a facet of exactly two
  // n-cones, and the wall-adjacency graph of the n-cones must be
  // connected. For pointed fans this characterizes support = Q^n; the
  // n = 1 instance reduces to "both rays present" (the wall is o).
  bool is_complete() const {
    if (!is_purely_top()) return false;
    std::vector<int> top;
    for (int c = 0; c < num_cones(); ++c)
      if (cones_[c].dim == n_) top.push_back(c);
    std::map<int, std::vector<int>> wall_to_top;
    for (int c : top)
      for (int t : facets_[c]) wall_to_top[t].push_back(c);
    for (int c = 0; c < num_cones(); ++c) {
      if (cones_[c].dim != n_ - 1) continue;
      auto it = wall_to_top.find(c);
      if (it == wall_to_top.end() || it->second.size() != 2) return false;
    }
    // connectivity of the wall-adjacency graph
    std::map<int, std::vector<int>> adj;
    for (const auto& [wall, cs] : wall_to_top)
      if (cones_[wall].dim == n_ - 1 && cs.size() == 2) {
        adj[cs[0]].push_back(cs[1]);
        adj[cs[1]].push_back(cs[0]);
      }
    std::set<int> seen;
    std::vector<int> stack{top.front()};
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      if (!seen.insert(c).second) continue;
      for (int d : adj[c]) stack.push_back(d);
    }
    return seen.size() == top.size();
  }

  // Counts of cones by dimension 0..n (entry 0 counts the zero cone).
  std::vector<long long> f_vector() const {
    std::vector<long long> f(n_ + 1, 0);
    for (const Cone& c : cones_) f[c.dim]++;
    return f;
  }

  bool operator==(const Fan& o) const {
    if (n_ != o.n_ || rays_.size() != o.rays_.size() || cones_.size() != o.cones_.size()) return false;
    for (size_t i = 0; i < rays_.size(); ++i)
      if (!(rays_[i] == o.rays_[i])) return false;
    for (size_t i = 0; i < cones_.size(); ++i)
      if (cones_[i].ray_ids != o.cones_[i].ray_ids) return false;
    return true;
  }

 private:
  // Everything the face enumeration learns about one ray set.
  struct FaceInfo {
    int dim = 0;
    std::vector<int> span_rays;  // lex-first independent subset (ray ids)
    QMat span_basis;
    std::vector<std::vector<int>> facet_sets;
    std::vector<std::vector<Rat>> facet_normals;  // in span coordinates
  };

  void build(int ambient_dim, std::vector<std::vector<RayCoord>> ray_gens,
             std::vector<std::vector<int>> max_cone_rays);

  std::vector<Rat> ray_as_rat(int id) const {
    std::vector<Rat> v(n_);
    for (int i = 0; i < n_; ++i) v[i] = rat(rays_[id].coords[i]);
    return v;
  }

  // span coordinates of each generator of the set, plus the span data
  FaceInfo analyze_face(const std::vector<int>& ray_set) const;
  void enumerate_closure(const std::vector<int>& ray_set, std::map<std::vector<int>, FaceInfo>& cache) const;
  bool cone_is_pointed(const std::vector<int>& ray_set) const;
  void check_pairwise_intersection(const std::vector<int>& s1, const std::vector<int>& s2,
                                   const std::map<std::vector<int>, FaceInfo>& cache) const;

  int n_ = 0;
  std::vector<RayVector> rays_;
  std::vector<Cone> cones_;
  std::map<std::vector<int>, int> cone_index_;
  std::vector<std::vector<int>> faces_;   // per cone: all proper faces, sorted
  std::vector<std::vector<int>> facets_;  // per cone: codimension-1 faces
  std::vector<int> maximal_;
  std::map<std::pair<int, int>, std::vector<Rat>> facet_normals_;
  std::map<std::pair<int, int>, QMat> coord_maps_;
};

// --- implementation ---------------------------------------------------------

inline Fan::FaceInfo Fan::analyze_face(const std::vector<int>& ray_set) const {
  FaceInfo info;
  // lex-first maximal independent subset of the generators, in ray-id order
  RowSpace span(n_);
  for (int r : ray_set) {
    if (span.add(ray_as_rat(r))) info.span_rays.push_back(r);
  }
  info.dim = static_cast<int>(info.span_rays.size());
  info.span_basis = QMat(n_, info.dim);
  for (int j = 0; j < info.dim; ++j) {
    auto v = ray_as_rat(info.span_rays[j]);
    for (int i = 0; i < n_; ++i) info.span_basis.at(i, j) = v[i];
  }
  int m = static_cast<int>(ray_set.size());
  int d = info.dim;
  if (d == 0) return info;

  // generators in span coordinates
  std::vector<std::vector<Rat>> w(m);
  for (int i = 0; i < m; ++i) {
    auto sol = solve(info.span_basis, ray_as_rat(ray_set[i]));
    if (!sol) throw std::logic_error("analyze_face: generator outside its own span");
    w[i] = *sol;
  }

  if (d == 1) {
    if (m != 1) throw InputError("cone contains two generators on one line (not pointed or duplicate ray)");
    info.facet_sets.push_back({});
    info.facet_normals.push_back({w[0][0] > 0 ? rat(1) : rat(-1)});
    return info;
  }

  // Supporting-hyperplane search: each facet is cut out by the kernel of a
  // rank d-1 subset of generators whose functional has one sign on all of
  // them. Dedup facets by their zero set.
  std::set<std::vector<int>> seen;
  detail::for_each_subset(m, d - 1, [&](const std::vector<int>& sub) {
    QMat rows(d - 1, d);
    for (int i = 0; i < d - 1; ++i)
      for (int j = 0; j < d; ++j) rows.at(i, j) = w[sub[i]][j];
    auto ker = kernel_basis(rows);
    if (ker.size() != 1) return;  // rank < d-1
    std::vector<Rat> u = ker[0];
    bool pos = false, neg = false;
    std::vector<Rat> dots(m);
    for (int i = 0; i < m; ++i) {
      dots[i] = rational_dot(u, w[i]);
      if (dots[i] > 0) pos = true;
      if (dots[i] < 0) neg = true;
    }
    if (pos && neg) return;  // not supporting
    if (neg)
      for (Rat& x : u) x = -x;
    std::vector<int> zero_set;
    for (int i = 0; i < m; ++i)
      if (dots[i] == 0) zero_set.push_back(ray_set[i]);
    std::sort(zero_set.begin(), zero_set.end());
    if (seen.insert(zero_set).second) {
      info.facet_sets.push_back(std::move(zero_set));
      info.facet_normals.push_back(std::move(u));
    }
  });
  return info;
}

inline bool Fan::cone_is_pointed(const std::vector<int>& ray_set) const {
  // Not pointed iff {lambda >= 0 : sum lambda_i v_i = 0, sum lambda_i = 1}
  // is nonempty; if so it has a basic solution supported on at most
  // rank+1 generators with independent lifted columns.
  int m = static_cast<int>(ray_set.size());
  if (m == 0) return true;
  std::vector<std::vector<Rat>> cols(m);
  for (int i = 0; i < m; ++i) {
    cols[i] = ray_as_rat(ray_set[i]);
    cols[i].push_back(rat(1));  // lifted row
  }
  int d = span_dim(cols, n_ + 1);
  std::vector<Rat> target(n_ + 1);
  target[n_] = 1;
  bool found = false;
  for (int k = 1; k <= std::min(m, d) && !found; ++k) {
    detail::for_each_subset(m, k, [&](const std::vector<int>& sub) {
      if (found) return;
      QMat a(n_ + 1, k);
      for (int j = 0; j < k; ++j)
        for (int i = 0; i <= n_; ++i) a.at(i, j) = cols[sub[j]][i];
      if (rank_of(a) != k) return;  // basic solutions need independent support
      auto sol = solve(a, target);
      if (!sol) return;
      for (const Rat& x : *sol)
        if (x < 0) return;
      found = true;
    });
  }
  return !found;
}

inline void Fan::enumerate_closure(const std::vector<int>& ray_set,
                                   std::map<std::vector<int>, FaceInfo>& cache) const {
  if (cache.count(ray_set)) return;
  FaceInfo info = analyze_face(ray_set);
  std::vector<std::vector<int>> facets = info.facet_sets;
  cache.emplace(ray_set, std::move(info));
  for (const auto& f : facets) enumerate_closure(f, cache);
}

inline void Fan::check_pairwise_intersection(const std::vector<int>& s1, const std::vector<int>& s2,
                                             const std::map<std::vector<int>, FaceInfo>& cache) const {
  std::vector<int> common;
  std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(common));

  // combinatorial part: the common ray set must be a known face of both
  auto is_face_of = [&](const std::vector<int>& face, const std::vector<int>& cone_set) {
    if (face == cone_set) return true;
    std::vector<std::vector<int>> stack{cone_set};
    std::set<std::vector<int>> seen;
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      if (!seen.insert(cur).second) continue;
      for (const auto& f : cache.at(cur).facet_sets) {
        if (f == face) return true;
        stack.push_back(f);
      }
    }
    return false;
  };
  if (!is_face_of(common, s1) || !is_face_of(common, s2))
    throw InputError("fan invalid: two cones intersect in a set that is not a common face");

  // geometric part: recover the extreme rays of the actual intersection
  // and compare with the common rays.
  auto h_rep = [&](const std::vector<int>& s, std::vector<std::vector<Rat>>& eqs,
                   std::vector<std::vector<Rat>>& ineqs) {
    const FaceInfo& info = cache.at(s);
    for (auto& row : kernel_basis(info.span_basis.transposed())) eqs.push_back(row);
    for (const auto& u : info.facet_normals) {
      // extend the span-coordinate functional to an ambient one
      auto ext = solve(info.span_basis.transposed(), u);
      if (!ext) throw std::logic_error("check_pairwise_intersection: functional extension failed");
      ineqs.push_back(*ext);
    }
  };
  std::vector<std::vector<Rat>> eqs, ineqs;
  h_rep(s1, eqs, ineqs);
  h_rep(s2, eqs, ineqs);

  std::set<std::vector<long long>> extreme;
  int ni = static_cast<int>(ineqs.size());
  auto feasible = [&](const std::vector<Rat>& x) {
    for (const auto& u : ineqs)
      if (rational_dot(u, x) < 0) return false;
    return true;
  };
  for (int k = 0; k <= std::min(ni, n_ - 1); ++k) {
    detail::for_each_subset(ni, k, [&](const std::vector<int>& sub) {
      std::vector<std::vector<Rat>> rows = eqs;
      for (int i : sub) rows.push_back(ineqs[i]);
      if (rows.empty()) return;
      auto ker = kernel_basis(QMat::from_rows(rows));
      if (ker.size() != 1) return;
      const auto& x = ker[0];
      std::vector<Rat> neg(x.size());
      for (size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];
      bool fp = feasible(x), fn = feasible(neg);
      if (fp && fn) throw InputError("fan invalid: intersection of two cones contains a line");
      if (fp) extreme.insert(primitive_integer_vector(x));
      if (fn) extreme.insert(primitive_integer_vector(neg));
    });
  }
  std::set<std::vector<long long>> expected;
  for (int r : common) expected.insert(rays_[r].coords);
  if (extreme != expected)
    throw InputError("fan invalid: two cones intersect in a set that is not a common face");
}

inline void Fan::build(int ambient_dim, std::vector<std::vector<RayCoord>> ray_gens,
                       std::vector<std::vector<int>> max_cone_rays) {
  if (ambient_dim < 1 || ambient_dim > 6)
    throw InputError("ambient dimension must be between 1 and 6 for the brute-force kernels");
  n_ = ambient_dim;
  if (ray_gens.size() > 64) throw InputError("too many rays (limit 64)");

  // normalize, sort, reject duplicates
  std::vector<RayVector> prim;
  for (auto& g : ray_gens) {
    if (static_cast<int>(g.size()) != n_) throw InputError("ray has wrong number of coordinates");
    prim.push_back(normalize_primitive(std::move(g)));
  }
  std::vector<int> order(prim.size());
  for (size_t i = 0; i < prim.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return prim[a] < prim[b]; });
  std::vector<int> new_id(prim.size());
  for (size_t pos = 0; pos < order.size(); ++pos) {
    new_id[order[pos]] = static_cast<int>(pos);
    rays_.push_back(prim[order[pos]]);
    if (pos > 0 && rays_[pos] == rays_[pos - 1])
      throw InputError("duplicate ray after primitive normalization");
  }

  // remap and dedup the listed cones
  std::set<std::vector<int>> listed;
  for (auto& c : max_cone_rays) {
    std::vector<int> rs;
    for (int r : c) {
      if (r < 0 || r >= static_cast<int>(prim.size())) throw InputError("cone refers to unknown ray index");
      rs.push_back(new_id[r]);
    }
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    if (rs.size() > 32) throw InputError("cone has too many generators (limit 32)");
    if (!rs.empty()) listed.insert(std::move(rs));
  }

  // every listed ray must occur in some cone
  {
    std::vector<bool> used(rays_.size(), false);
    for (const auto& c : listed)
      for (int r : c) used[r] = true;
    for (size_t r = 0; r < rays_.size(); ++r)
      if (!used[r])
        throw InputError("ray " + std::to_string(r) + " is not used by any cone");
  }

  // pointedness, face closure, extremality
  std::map<std::vector<int>, FaceInfo> cache;
  cache.emplace(std::vector<int>{}, analyze_face({}));
  for (const auto& s : listed) {
    if (!cone_is_pointed(s)) throw InputError("fan invalid: cone is not pointed");
    enumerate_closure(s, cache);
    // every listed generator must be an extremal ray: reachable 1-dim faces
    std::set<int> extremal;
    std::vector<std::vector<int>> stack{s};
    std::set<std::vector<int>> seen;
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      if (!seen.insert(cur).second) continue;
      if (cur.size() == 1 && cache.at(cur).dim == 1) extremal.insert(cur[0]);
      for (const auto& f : cache.at(cur).facet_sets) stack.push_back(f);
    }
    if (extremal != std::set<int>(s.begin(), s.end()))
      throw InputError("fan invalid: cone lists a generator that is not an extremal ray");
  }

  // pairwise intersection validation on the listed cones
  std::vector<std::vector<int>> listed_v(listed.begin(), listed.end());
  for (size_t i = 0; i < listed_v.size(); ++i)
    for (size_t j = i + 1; j < listed_v.size(); ++j)
      check_pairwise_intersection(listed_v[i], listed_v[j], cache);

  // assemble cones: all ray sets reachable in the cache from the listed ones
  std::set<std::vector<int>> all_sets;
  all_sets.insert(std::vector<int>{});
  {
    std::vector<std::vector<int>> stack(listed.begin(), listed.end());
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      if (!all_sets.insert(cur).second) continue;
      for (const auto& f : cache.at(cur).facet_sets) stack.push_back(f);
    }
  }
  std::vector<std::vector<int>> ordered(all_sets.begin(), all_sets.end());
  std::sort(ordered.begin(), ordered.end(), [&](const std::vector<int>& a, const std::vector<int>& b) {
    int da = cache.at(a).dim, db = cache.at(b).dim;
    if (da != db) return da < db;
    return a < b;
  });
  for (const auto& s : ordered) {
    const FaceInfo& info = cache.at(s);
    Cone c;
    c.ray_ids = s;
    c.dim = info.dim;
    c.span_basis = info.span_basis;
    cone_index_[s] = static_cast<int>(cones_.size());
    cones_.push_back(std::move(c));
  }

  // facet edges, face lists, facet normals
  facets_.resize(cones_.size());
  faces_.resize(cones_.size());
  for (int id = 0; id < num_cones(); ++id) {
    const FaceInfo& info = cache.at(cones_[id].ray_ids);
    for (size_t k = 0; k < info.facet_sets.size(); ++k) {
      int fid = cone_index_.at(info.facet_sets[k]);
      facets_[id].push_back(fid);
      facet_normals_[{id, fid}] = info.facet_normals[k];
    }
    std::sort(facets_[id].begin(), facets_[id].end());
    if (cones_[id].dim > 0 && cones_[id].dim - 1 >= 0) {
      for (int fid : facets_[id])
        if (cones_[fid].dim != cones_[id].dim - 1)
          throw std::logic_error("facet dimension mismatch");
    }
  }
  // transitive faces by increasing dimension (cones_ sorted by dim)
  for (int id = 0; id < num_cones(); ++id) {
    std::set<int> acc;
    for (int fid : facets_[id]) {
      acc.insert(fid);
      for (int g : faces_[fid]) acc.insert(g);
    }
    faces_[id].assign(acc.begin(), acc.end());
  }

  // maximal cones: not a proper face of anything
  {
    std::vector<bool> is_face(cones_.size(), false);
    for (int id = 0; id < num_cones(); ++id)
      for (int f : faces_[id]) is_face[f] = true;
    for (int id = 0; id < num_cones(); ++id)
      if (!is_face[id]) maximal_.push_back(id);
  }

  // coordinate maps for every (cone, face) pair, including the cone itself
  for (int id = 0; id < num_cones(); ++id) {
    std::vector<int> targets = faces_[id];
    targets.push_back(id);
    for (int f : targets) {
      const QMat& bs = cones_[id].span_basis;
      const QMat& bf = cones_[f].span_basis;
      QMat y(cones_[id].dim, cones_[f].dim);
      for (int j = 0; j < bf.cols(); ++j) {
        auto col = solve(bs, bf.column(j));
        if (!col) throw std::logic_error("coord_map: face span not inside cone span");
        for (int i = 0; i < y.rows(); ++i) y.at(i, j) = (*col)[i];
      }
      coord_maps_[{id, f}] = std::move(y);
    }
  }
}

// --- text format -------------------------------------------------------------
//
//   # comment
//   dim n
//   ray i a1 ... an
//   cone j i1 ... ik
//
// Ray indices in the file are arbitrary labels; the parsed fan renumbers
// rays canonically (primitive, sorted lexicographically).

inline Fan Fan::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int dim = -1;
  std::map<long, std::vector<RayCoord>> rays;
  std::vector<std::vector<long>> cones;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    auto fail = [&](const std::string& what) -> InputError {
      return InputError("fan file line " + std::to_string(lineno) + ": " + what);
    };
    if (head == "dim") {
      if (dim >= 0) throw fail("duplicate dim line");
      if (!(ls >> dim) || dim < 1) throw fail("bad dimension");
    } else if (head == "ray") {
      if (dim < 0) throw fail("ray before dim");
      long idx;
      if (!(ls >> idx)) throw fail("missing ray index");
      std::vector<RayCoord> v(dim);
      for (int i = 0; i < dim; ++i)
        if (!(ls >> v[i])) throw fail("ray needs " + std::to_string(dim) + " integer coordinates");
      long long extra;
      if (ls >> extra) throw fail("trailing data after ray coordinates");
      if (!rays.emplace(idx, std::move(v)).second) throw fail("duplicate ray index");
    } else if (head == "cone") {
      if (dim < 0) throw fail("cone before dim");
      long idx;
      if (!(ls >> idx)) throw fail("missing cone index");
      std::vector<long> rs;
      long r;
      while (ls >> r) rs.push_back(r);
      cones.push_back(std::move(rs));
    } else {
      throw fail("unknown directive '" + head + "'");
    }
  }
  if (dim < 0) throw InputError("fan file: missing dim line");
  std::map<long, int> idx_map;
  std::vector<std::vector<RayCoord>> gens;
  for (auto& [idx, v] : rays) {
    idx_map[idx] = static_cast<int>(gens.size());
    gens.push_back(std::move(v));
  }
  std::vector<std::vector<int>> mc;
  for (auto& c : cones) {
    std::vector<int> rs;
    for (long r : c) {
      auto it = idx_map.find(r);
      if (it == idx_map.end()) throw InputError("fan file: cone refers to undefined ray " + std::to_string(r));
      rs.push_back(it->second);
    }
    mc.push_back(std::move(rs));
  }
  return from_data(dim, std::move(gens), std::move(mc));
}

inline std::string Fan::serialize() const {
  std::ostringstream os;
  os << "dim " << n_ << "\n";
  for (int i = 0; i < num_rays(); ++i) {
    os << "ray " << i;
    for (RayCoord x : rays_[i].coords) os << " " << x;
    os << "\n";
  }
  std::vector<std::vector<int>> mc;
  for (int c : maximal_)
    if (cones_[c].dim > 0) mc.push_back(cones_[c].ray_ids);
  std::sort(mc.begin(), mc.end());
  for (size_t j = 0; j < mc.size(); ++j) {
    os << "cone " << j;
    for (int r : mc[j]) os << " " << r;
    os << "\n";
  }
  return os.str();
}

}  // namespace fansheaf
