#pragma once

// Independent combinatorial oracles used to validate the sheaf engine:
// classical h-vectors of complete simplicial fans from face counts, and
// the toric g/h recursion on small polytope face lattices. Deliberately
// tiny and limited to dimension <= 3; these exist to check answers, not
// to generalize.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fansheaf {

using ZPoly = std::vector<long long>;  // coefficients, ascending degree

inline ZPoly zp_trim(ZPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  return zp_trim(c);
}

inline ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return zp_trim(c);
}

inline ZPoly zp_scale(const ZPoly& a, long long s) {
  ZPoly c(a);
  for (auto& x : c) x *= s;
  return zp_trim(c);
}

inline ZPoly x_minus_1_pow(int k) {
  ZPoly p{1};
  for (int i = 0; i < k; ++i) p = zp_mul(p, ZPoly{-1, 1});
  return p;
}

// Classical simplicial h-vector: coefficients of sum_i f_{i-1} (x-1)^{n-i}
// with f_{-1} = 1, from the f-vector (f_0, ..., f_{n-1}) of a complete
// simplicial fan.
inline std::vector<long long> h_vector(const std::vector<long long>& f_vector) {
  for (long long f : f_vector)
    if (f < 0) throw std::invalid_argument("h_vector: negative face count");
  int n = static_cast<int>(f_vector.size());
  ZPoly h = x_minus_1_pow(n);  // f_{-1} = 1 term
  for (int i = 1; i <= n; ++i) h = zp_add(h, zp_scale(x_minus_1_pow(n - i), f_vector[i - 1]));
  h.resize(n + 1, 0);
  return h;
}

// Graded face poset of a polytope, faces recorded by vertex sets.
// Contains the empty face (dim -1) and the polytope itself (dim d).
struct FaceLattice {
  int dim = -1;
  std::vector<std::pair<int, std::vector<int>>> faces;  // (dim, sorted vertex ids)

  FaceLattice(int d, std::vector<std::pair<int, std::vector<int>>> fs) : dim(d), faces(std::move(fs)) {
    for (auto& [fd, vs] : faces) std::sort(vs.begin(), vs.end());
    std::sort(faces.begin(), faces.end());
    validate();
  }

  bool leq(int a, int b) const {  // face a contained in face b
    const auto& va = faces[a].second;
    const auto& vb = faces[b].second;
    return std::includes(vb.begin(), vb.end(), va.begin(), va.end());
  }

 private:
  void validate() const {
    int n_bottom = 0, n_top = 0;
    for (const auto& [fd, vs] : faces) {
      if (fd == -1) {
        ++n_bottom;
        if (!vs.empty()) throw std::invalid_argument("FaceLattice: nonempty face of dim -1");
      }
      if (fd == dim) ++n_top;
      if (fd < -1 || fd > dim) throw std::invalid_argument("FaceLattice: face dimension out of range");
    }
    if (n_bottom != 1 || n_top != 1) throw std::invalid_argument("FaceLattice: need unique bottom and top");
    // Diamond property: every rank-2 interval has exactly two middle elements.
    int nf = static_cast<int>(faces.size());
    for (int a = 0; a < nf; ++a)
      for (int c = 0; c < nf; ++c) {
        if (faces[c].first - faces[a].first != 2 || !leq(a, c)) continue;
        int mid = 0;
        for (int b = 0; b < nf; ++b)
          if (faces[b].first == faces[a].first + 1 && leq(a, b) && leq(b, c)) ++mid;
        if (mid != 2) throw std::invalid_argument("FaceLattice: non-Eulerian (diamond property fails)");
      }
  }
};

// Stanley's toric g/h recursion:
//   h(P, x) = sum over proper faces F (including the empty face) of
//             g(F, x) * (x - 1)^{dim P - 1 - dim F},
//   g truncates h at degree floor(dim P / 2) via g_i = h_i - h_{i-1}.
struct ToricGH {
  ZPoly h;
  ZPoly g;
};

namespace detail {
inline ZPoly toric_g_of(const FaceLattice& lat, int face_idx, std::map<int, ZPoly>& memo);

inline ZPoly toric_h_of(const FaceLattice& lat, int face_idx, std::map<int, ZPoly>& memo) {
  int d = lat.faces[face_idx].first;
  if (d == -1) return {1};
  ZPoly h;
  for (int f = 0; f < static_cast<int>(lat.faces.size()); ++f) {
    if (f == face_idx || !lat.leq(f, face_idx)) continue;
    int df = lat.faces[f].first;
    h = zp_add(h, zp_mul(toric_g_of(lat, f, memo), x_minus_1_pow(d - 1 - df)));
  }
  return h;
}

inline ZPoly toric_g_of(const FaceLattice& lat, int face_idx, std::map<int, ZPoly>& memo) {
  auto it = memo.find(face_idx);
  if (it != memo.end()) return it->second;
  int d = lat.faces[face_idx].first;
  ZPoly g;
  if (d == -1) {
    g = {1};
  } else {
    ZPoly h = toric_h_of(lat, face_idx, memo);
    h.resize(std::max<size_t>(h.size(), 1), 0);
    int top = d / 2;
    g.assign(top + 1, 0);
    for (int i = 0; i <= top; ++i) {
      long long hi = i < static_cast<int>(h.size()) ? h[i] : 0;
      long long hprev = (i - 1 >= 0 && i - 1 < static_cast<int>(h.size())) ? h[i - 1] : 0;
      g[i] = i == 0 ? hi : hi - hprev;
    }
    g = zp_trim(g);
  }
  memo[face_idx] = g;
  return g;
}
}  // namespace detail

inline ToricGH toric_gh(const FaceLattice& lat) {
  if (lat.dim > 3) throw std::invalid_argument("toric_gh: oracle limited to dimension <= 3");
  int top = -1;
  for (int f = 0; f < static_cast<int>(lat.faces.size()); ++f)
    if (lat.faces[f].first == lat.dim) top = f;
  std::map<int, ZPoly> memo;
  ToricGH out;
  out.h = detail::toric_h_of(lat, top, memo);
  out.h.resize(lat.dim + 1, 0);
  out.g = detail::toric_g_of(lat, top, memo);
  if (out.g.empty()) out.g = {1};
  return out;
}

// --- lattice builders for the fixtures -----------------------------------

inline FaceLattice point_lattice() {
  return FaceLattice(0, {{-1, {}}, {0, {0}}});
}

inline FaceLattice segment_lattice() {
  return FaceLattice(1, {{-1, {}}, {0, {0}}, {0, {1}}, {1, {0, 1}}});
}

inline FaceLattice polygon_lattice(int m) {
  if (m < 3) throw std::invalid_argument("polygon_lattice: need m >= 3");
  std::vector<std::pair<int, std::vector<int>>> fs;
  fs.push_back({-1, {}});
  std::vector<int> all;
  for (int i = 0; i < m; ++i) {
    fs.push_back({0, {i}});
    fs.push_back({1, {i, (i + 1) % m}});
    all.push_back(i);
  }
  fs.push_back({2, all});
  return FaceLattice(2, std::move(fs));
}

inline FaceLattice simplex_lattice(int d) {
  if (d < 0 || d > 3) throw std::invalid_argument("simplex_lattice: dimension out of range");
  std::vector<std::pair<int, std::vector<int>>> fs;
  int n = d + 1;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> vs;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) vs.push_back(i);
    fs.push_back({static_cast<int>(vs.size()) - 1, vs});
  }
  return FaceLattice(d, std::move(fs));
}

// 3-cube with vertices indexed by sign patterns (bit i = coordinate i positive).
inline FaceLattice cube_lattice() {
  std::vector<std::pair<int, std::vector<int>>> fs;
  fs.push_back({-1, {}});
  std::vector<int> all;
  for (int v = 0; v < 8; ++v) {
    fs.push_back({0, {v}});
    all.push_back(v);
  }
  for (int v = 0; v < 8; ++v)
    for (int i = 0; i < 3; ++i) {
      int w = v ^ (1 << i);
      if (w > v) fs.push_back({1, {v, w}});
    }
  for (int i = 0; i < 3; ++i)
    for (int s = 0; s < 2; ++s) {
      std::vector<int> face;
      for (int v = 0; v < 8; ++v)
        if (((v >> i) & 1) == s) face.push_back(v);
      fs.push_back({2, face});
    }
  fs.push_back({3, all});
  return FaceLattice(3, std::move(fs));
}

// Octahedron with vertices 0..5 = +e1,-e1,+e2,-e2,+e3,-e3; faces avoid
// antipodal pairs (2i, 2i+1).
inline FaceLattice octahedron_lattice() {
  std::vector<std::pair<int, std::vector<int>>> fs;
  fs.push_back({-1, {}});
  std::vector<int> all{0, 1, 2, 3, 4, 5};
  for (int v = 0; v < 6; ++v) fs.push_back({0, {v}});
  auto antipodal = [](int a, int b) { return a / 2 == b / 2; };
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (!antipodal(a, b)) fs.push_back({1, {a, b}});
  for (int a = 0; a < 2; ++a)
    for (int b = 2; b < 4; ++b)
      for (int c = 4; c < 6; ++c) fs.push_back({2, {a, b, c}});
  fs.push_back({3, all});
  return FaceLattice(3, std::move(fs));
}

}  // namespace fansheaf
