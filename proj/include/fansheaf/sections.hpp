#pragma once

// The graded algebra of piecewise polynomial functions on a subfan.
//
// A piecewise polynomial section assigns to each maximal cone of a subfan
// a polynomial on that cone's span, subject to compatibility: restrictions
// to pairwise intersections agree. In a fan any two cones meet in a common
// face, so pairwise compatibility over the maximal cones already makes a
// tuple compatible on every face; the section space in a fixed even degree
// is therefore the kernel of one exact linear system.
//
// This module also houses what the section algebra supports directly:
// Courant functions of simplicial fans, Stanley-Reisner presentations and
// Hilbert functions, Mayer-Vietoris cokernels, quotients modulo the ideal
// of global polynomials of positive degree, and the fan lift along a
// piecewise linear function.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fansheaf/fan.hpp"
#include "fansheaf/matrix.hpp"
#include "fansheaf/polynomial.hpp"

namespace fansheaf {

struct PiecewiseSection {
  Subfan domain;
  std::vector<int> max_cones;  // sorted cone ids
  std::vector<Poly> pieces;    // per maximal cone, in its span coordinates
  int graded_degree = 0;
};

// Global coordinate u_i restricted to a cone's span, as a linear form in
// the cone's coordinates.
inline Poly ambient_coordinate_on(const Fan& f, int cone_id, int i) {
  return Poly::linear_form(f.cone(cone_id).span_basis.row(i));
}

inline Poly restrict_ambient_poly(const Fan& f, int cone_id, const Poly& g) {
  return g.substitute(f.cone(cone_id).span_basis);
}

// The piece of a section on an arbitrary cone of its domain.
inline Poly section_piece_on(const Fan& f, const PiecewiseSection& s, int cone_id) {
  for (size_t i = 0; i < s.max_cones.size(); ++i) {
    int sigma = s.max_cones[i];
    if (f.common_face(sigma, cone_id) == cone_id)  // cone_id is a face of sigma
      return s.pieces[i].substitute(f.coord_map(sigma, cone_id));
  }
  throw std::invalid_argument("section_piece_on: cone not in the section's domain");
}

inline bool is_compatible(const Fan& f, const PiecewiseSection& s) {
  for (size_t i = 0; i < s.max_cones.size(); ++i)
    for (size_t j = i + 1; j < s.max_cones.size(); ++j) {
      int fc = f.common_face(s.max_cones[i], s.max_cones[j]);
      Poly a = s.pieces[i].substitute(f.coord_map(s.max_cones[i], fc));
      Poly b = s.pieces[j].substitute(f.coord_map(s.max_cones[j], fc));
      if (!(a == b)) return false;
    }
  return true;
}

// Multiplication by a global polynomial (the module structure over the
// ambient polynomial algebra). Degrees add; compatibility is preserved.
inline PiecewiseSection multiply(const Fan& f, const PiecewiseSection& s, const Poly& g_ambient) {
  PiecewiseSection out = s;
  for (size_t i = 0; i < s.max_cones.size(); ++i)
    out.pieces[i] = s.pieces[i] * restrict_ambient_poly(f, s.max_cones[i], g_ambient);
  out.graded_degree = s.graded_degree + g_ambient.graded_degree();
  return out;
}

inline PiecewiseSection multiply_sections(const Fan& f, const PiecewiseSection& a, const PiecewiseSection& b) {
  if (a.max_cones != b.max_cones) throw std::invalid_argument("multiply_sections: domains differ");
  PiecewiseSection out = a;
  for (size_t i = 0; i < a.pieces.size(); ++i) out.pieces[i] = a.pieces[i] * b.pieces[i];
  out.graded_degree = a.graded_degree + b.graded_degree;
  return out;
}

// --- section spaces ----------------------------------------------------------

struct SectionSpace {
  int graded_degree = 0;
  std::vector<int> max_cones;
  std::vector<std::vector<std::vector<int>>> monos;  // per maximal cone
  std::vector<int> offsets;
  int total_cols = 0;
  std::vector<std::vector<Rat>> basis;

  long dim() const { return static_cast<long>(basis.size()); }

  PiecewiseSection make_section(const Fan& f, const Subfan& domain, const std::vector<Rat>& coeffs) const {
    PiecewiseSection s;
    s.domain = domain;
    s.max_cones = max_cones;
    s.graded_degree = graded_degree;
    for (size_t i = 0; i < max_cones.size(); ++i) {
      Poly p(f.cone(max_cones[i]).dim);
      for (size_t t = 0; t < monos[i].size(); ++t)
        p += Poly::monomial(p.nvars(), monos[i][t], coeffs[offsets[i] + t]);
      s.pieces.push_back(std::move(p));
    }
    return s;
  }

  std::vector<Rat> coeffs_of(const Fan& f, const PiecewiseSection& s) const {
    if (s.max_cones != max_cones) throw std::invalid_argument("coeffs_of: wrong domain");
    std::vector<Rat> v(total_cols);
    for (size_t i = 0; i < max_cones.size(); ++i) {
      auto cv = coeff_vector(s.pieces[i], monos[i]);
      for (size_t t = 0; t < cv.size(); ++t) v[offsets[i] + t] = cv[t];
    }
    return v;
  }
};

// Basis of the degree-2k piece of the piecewise polynomial algebra on a
// subfan, solved from the pairwise compatibility system over the maximal
// cones.
inline SectionSpace sections_A(const Fan& f, const Subfan& lambda, int graded_degree) {
  if (graded_degree < 0 || graded_degree % 2 != 0)
    throw InputError("sections_A: graded degree must be even and nonnegative");
  int k = graded_degree / 2;
  SectionSpace sp;
  sp.graded_degree = graded_degree;
  sp.max_cones = f.subfan_maximal(lambda);
  sp.total_cols = 0;
  for (int c : sp.max_cones) {
    sp.offsets.push_back(sp.total_cols);
    sp.monos.push_back(monomials(f.cone(c).dim, k));
    sp.total_cols += static_cast<int>(sp.monos.back().size());
  }
  std::vector<std::vector<Rat>> rows;
  for (size_t i = 0; i < sp.max_cones.size(); ++i)
    for (size_t j = i + 1; j < sp.max_cones.size(); ++j) {
      int fc = f.common_face(sp.max_cones[i], sp.max_cones[j]);
      auto fmonos = monomials(f.cone(fc).dim, k);
      if (fmonos.empty()) continue;
      const QMat& mi = f.coord_map(sp.max_cones[i], fc);
      const QMat& mj = f.coord_map(sp.max_cones[j], fc);
      std::vector<std::vector<Rat>> block(fmonos.size(), std::vector<Rat>(sp.total_cols));
      for (size_t t = 0; t < sp.monos[i].size(); ++t) {
        Poly img = Poly::monomial(static_cast<int>(sp.monos[i][t].size()), sp.monos[i][t], 1).substitute(mi);
        auto cv = coeff_vector(img, fmonos);
        for (size_t r = 0; r < fmonos.size(); ++r) block[r][sp.offsets[i] + t] = cv[r];
      }
      for (size_t t = 0; t < sp.monos[j].size(); ++t) {
        Poly img = Poly::monomial(static_cast<int>(sp.monos[j][t].size()), sp.monos[j][t], 1).substitute(mj);
        auto cv = coeff_vector(img, fmonos);
        for (size_t r = 0; r < fmonos.size(); ++r) block[r][sp.offsets[j] + t] -= cv[r];
      }
      for (auto& r : block) rows.push_back(std::move(r));
    }
  if (rows.empty()) {
    QMat none(0, sp.total_cols);
    sp.basis = kernel_basis(none);
  } else {
    sp.basis = kernel_basis(QMat::from_rows(rows));
  }
  return sp;
}

// Restriction of a section, given by coefficients over `big`, to the
// coefficient space of a smaller subfan.
inline std::vector<Rat> restrict_section(const Fan& f, const SectionSpace& big, const Subfan& big_domain,
                                         const std::vector<Rat>& coeffs, const SectionSpace& small) {
  PiecewiseSection s = big.make_section(f, big_domain, coeffs);
  std::vector<Rat> out(small.total_cols);
  for (size_t i = 0; i < small.max_cones.size(); ++i) {
    Poly piece = section_piece_on(f, s, small.max_cones[i]);
    auto cv = coeff_vector(piece, small.monos[i]);
    for (size_t t = 0; t < cv.size(); ++t) out[small.offsets[i] + t] = cv[t];
  }
  return out;
}

// Graded dimensions of the section algebra through the cutoff (even
// degrees 0, 2, ..., cutoff; entry k is the dimension in degree 2k).
inline std::vector<long> a_dims(const Fan& f, const Subfan& lambda, int cutoff) {
  if (cutoff < 0 || cutoff % 2 != 0) throw InputError("a_dims: cutoff must be even");
  std::vector<long> out;
  for (int d = 0; d <= cutoff; d += 2) out.push_back(sections_A(f, lambda, d).dim());
  return out;
}

// Dimensions of the quotient modulo the ideal generated by the globally
// polynomial functions of positive degree. Because the ambient algebra is
// generated in degree 2, the degree-d piece of that ideal's multiples is
// exactly (global linear forms) * (sections of degree d-2); higher pieces
// of the ideal contribute nothing new degreewise.
inline std::vector<long> mod_m_dims(const Fan& f, const Subfan& lambda, int cutoff) {
  if (cutoff < 0 || cutoff % 2 != 0) throw InputError("mod_m_dims: cutoff must be even");
  std::vector<long> out;
  SectionSpace prev;
  for (int d = 0; d <= cutoff; d += 2) {
    SectionSpace cur = sections_A(f, lambda, d);
    long rank = 0;
    if (d > 0 && cur.total_cols > 0) {
      RowSpace rs(cur.total_cols);
      for (const auto& b : prev.basis) {
        PiecewiseSection s = prev.make_section(f, lambda, b);
        for (int i = 0; i < f.ambient_dim(); ++i) {
          PiecewiseSection prod = multiply(f, s, Poly::variable(f.ambient_dim(), i));
          rs.add(cur.coeffs_of(f, prod));
        }
      }
      rank = rs.rank();
    }
    out.push_back(cur.dim() - rank);
    prev = std::move(cur);
  }
  return out;
}

// --- piecewise linear functions ----------------------------------------------

struct PLF {
  std::vector<long long> ray_values;  // integer value on each primitive ray generator
  PiecewiseSection section;           // graded degree 2
};

// Builds the piecewise linear function with the given integer values at
// the ray generators. Fails if the values are not linear on some cone.
inline PLF plf_from_values(const Fan& f, const std::vector<long long>& values) {
  if (static_cast<int>(values.size()) != f.num_rays()) throw InputError("plf_from_values: need one value per ray");
  PLF plf;
  plf.ray_values = values;
  plf.section.domain = f.full_subfan();
  plf.section.max_cones = f.maximal_cones();
  plf.section.graded_degree = 2;
  for (int c : plf.section.max_cones) {
    const Cone& cone = f.cone(c);
    QMat a(static_cast<int>(cone.ray_ids.size()), cone.dim);
    std::vector<Rat> rhs;
    for (size_t r = 0; r < cone.ray_ids.size(); ++r) {
      std::vector<Rat> gen(f.ambient_dim());
      for (int i = 0; i < f.ambient_dim(); ++i) gen[i] = rat(f.ray(cone.ray_ids[r]).coords[i]);
      auto w = solve(cone.span_basis, gen);
      if (!w) throw std::logic_error("plf_from_values: ray outside cone span");
      for (int j = 0; j < cone.dim; ++j) a.at(static_cast<int>(r), j) = (*w)[j];
      rhs.push_back(rat(values[cone.ray_ids[r]]));
    }
    auto coeff = solve(a, rhs);
    if (!coeff) throw InputError("plf incompatible with fan: values are not linear on a cone");
    plf.section.pieces.push_back(Poly::linear_form(*coeff));
  }
  return plf;
}

// PLF file format: a line "plf", then lines "value <ray index> <integer>".
inline std::vector<long long> parse_plf(const Fan& f, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool header = false;
  std::map<int, long long> vals;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "plf") {
      header = true;
    } else if (head == "value") {
      long idx;
      long long v;
      if (!(ls >> idx >> v)) throw InputError("plf file line " + std::to_string(lineno) + ": bad value line");
      if (idx < 0 || idx >= f.num_rays())
        throw InputError("plf file line " + std::to_string(lineno) + ": no such ray");
      if (!vals.emplace(static_cast<int>(idx), v).second)
        throw InputError("plf file line " + std::to_string(lineno) + ": duplicate ray");
    } else {
      throw InputError("plf file line " + std::to_string(lineno) + ": unknown directive");
    }
  }
  if (!header) throw InputError("plf file: missing 'plf' header");
  std::vector<long long> out(f.num_rays());
  for (int r = 0; r < f.num_rays(); ++r) {
    auto it = vals.find(r);
    if (it == vals.end()) throw InputError("plf file: missing value for ray " + std::to_string(r));
    out[r] = it->second;
  }
  return out;
}

// Courant functions of a simplicial fan: for each ray, the piecewise
// linear function with value 1 on that ray's generator and 0 on all
// others. Undefined for non-simplicial fans.
inline std::vector<PLF> courant_basis(const Fan& f) {
  if (!f.is_simplicial()) throw InputError("courant_basis: fan is not simplicial");
  std::vector<PLF> out;
  for (int r = 0; r < f.num_rays(); ++r) {
    std::vector<long long> vals(f.num_rays(), 0);
    vals[r] = 1;
    out.push_back(plf_from_values(f, vals));
  }
  return out;
}

// --- Stanley-Reisner presentation ---------------------------------------------

struct SRPresentation {
  int num_rays = 0;
  std::vector<std::vector<int>> i_generators;  // minimal non-faces, sorted ray id sets
  std::vector<std::vector<Rat>> j_generators;  // one linear form per ambient coordinate
};

inline SRPresentation sr_presentation(const Fan& f) {
  SRPresentation pres;
  pres.num_rays = f.num_rays();
  std::set<std::vector<int>> face_sets;
  for (int c = 0; c < f.num_cones(); ++c) face_sets.insert(f.cone(c).ray_ids);
  // Minimal non-faces: S not a cone's ray set while S minus any element is.
  // Every such S is a face ray set plus one extra ray.
  std::set<std::vector<int>> minimal;
  for (const auto& base : face_sets)
    for (int r = 0; r < f.num_rays(); ++r) {
      if (std::binary_search(base.begin(), base.end(), r)) continue;
      std::vector<int> s = base;
      s.insert(std::lower_bound(s.begin(), s.end(), r), r);
      if (face_sets.count(s)) continue;
      bool all_faces = true;
      for (size_t drop = 0; drop < s.size() && all_faces; ++drop) {
        std::vector<int> sub;
        for (size_t i = 0; i < s.size(); ++i)
          if (i != drop) sub.push_back(s[i]);
        if (!face_sets.count(sub)) all_faces = false;
      }
      if (all_faces) minimal.insert(std::move(s));
    }
  pres.i_generators.assign(minimal.begin(), minimal.end());
  for (int i = 0; i < f.ambient_dim(); ++i) {
    std::vector<Rat> form(f.num_rays());
    for (int r = 0; r < f.num_rays(); ++r) form[r] = rat(f.ray(r).coords[i]);
    pres.j_generators.push_back(std::move(form));
  }
  return pres;
}

// Hilbert function of the quotient by the squarefree monomial ideal, in
// doubled degrees: entry k counts degree-k monomials in the ray variables
// divisible by no minimal non-face monomial.
inline std::vector<long> sr_hilbert(const Fan& f, int cutoff) {
  if (cutoff < 0 || cutoff % 2 != 0) throw InputError("sr_hilbert: cutoff must be even");
  SRPresentation pres = sr_presentation(f);
  std::vector<long> out;
  for (int k = 0; k <= cutoff / 2; ++k) {
    long count = 0;
    for (const auto& e : monomials(pres.num_rays, k)) {
      bool in_ideal = false;
      for (const auto& g : pres.i_generators) {
        bool divides = true;
        for (int r : g)
          if (e[r] == 0) { divides = false; break; }
        if (divides) { in_ideal = true; break; }
      }
      if (!in_ideal) ++count;
    }
    out.push_back(count);
  }
  return out;
}

// Hilbert function of the quotient by both ideals (monomial non-face ideal
// plus the linear forms of the ray coordinates), computed degreewise by
// exact rank over the monomial basis.
inline std::vector<long> sr_quotient_hilbert(const Fan& f, int cutoff) {
  if (cutoff < 0 || cutoff % 2 != 0) throw InputError("sr_quotient_hilbert: cutoff must be even");
  SRPresentation pres = sr_presentation(f);
  int m = pres.num_rays;
  std::vector<long> out;
  for (int k = 0; k <= cutoff / 2; ++k) {
    auto monos = monomials(m, k);
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = static_cast<int>(i);
    RowSpace rs(static_cast<int>(monos.size()));
    for (const auto& g : pres.i_generators) {
      int gdeg = static_cast<int>(g.size());
      if (gdeg > k) continue;
      for (const auto& e : monomials(m, k - gdeg)) {
        std::vector<int> prod = e;
        for (int r : g) prod[r] += 1;
        std::vector<Rat> row(monos.size());
        row[index.at(prod)] = 1;
        rs.add(std::move(row));
      }
    }
    if (k >= 1)
      for (const auto& form : pres.j_generators)
        for (const auto& e : monomials(m, k - 1)) {
          std::vector<Rat> row(monos.size());
          for (int r = 0; r < m; ++r) {
            if (form[r] == 0) continue;
            std::vector<int> prod = e;
            prod[r] += 1;
            row[index.at(prod)] += form[r];
          }
          rs.add(std::move(row));
        }
    out.push_back(static_cast<long>(monos.size()) - rs.rank());
  }
  return out;
}

// --- Mayer-Vietoris -----------------------------------------------------------

// Dimension of the cokernel of the difference-of-restrictions map
//   A^d(L1) + A^d(L2) -> A^d(L1 intersect L2).
inline long mayer_vietoris_coker(const Fan& f, const Subfan& l1, const Subfan& l2, int graded_degree) {
  Subfan inter = f.subfan_intersection(l1, l2);
  SectionSpace target = sections_A(f, inter, graded_degree);
  if (target.dim() == 0) return 0;
  RowSpace rs(target.total_cols);
  for (const Subfan* lam : {&l1, &l2}) {
    SectionSpace src = sections_A(f, *lam, graded_degree);
    for (const auto& b : src.basis) rs.add(restrict_section(f, src, *lam, b, target));
  }
  return target.dim() - rs.rank();
}

// --- fan lift along a piecewise linear function --------------------------------

// Builds the fan in one higher dimension whose cones are the graphs of the
// function over the cones of the base fan, together with those graphs
// extended by the vertical ray.
inline Fan lift_fan_by_plf(const Fan& f, const PLF& plf) {
  int n = f.ambient_dim();
  std::vector<std::vector<RayCoord>> gens;
  for (int r = 0; r < f.num_rays(); ++r) {
    std::vector<RayCoord> v = f.ray(r).coords;
    v.push_back(plf.ray_values[r]);
    gens.push_back(std::move(v));
  }
  std::vector<RayCoord> vertical(n + 1, 0);
  vertical[n] = 1;
  int vert_id = static_cast<int>(gens.size());
  gens.push_back(std::move(vertical));
  std::vector<std::vector<int>> max_cones;
  for (int c : f.maximal_cones()) {
    std::vector<int> rs = f.cone(c).ray_ids;
    rs.push_back(vert_id);
    max_cones.push_back(std::move(rs));
  }
  return Fan::from_data(n + 1, std::move(gens), std::move(max_cones));
}

// Checks that the graph part of a lifted fan projects bijectively onto the
// base fan: dropping the vertical ray gives a dimension-preserving
// bijection between the non-vertical cones and the base cones.
inline bool lift_projects_bijectively(const Fan& base, const Fan& lifted) {
  int n = base.ambient_dim();
  if (lifted.ambient_dim() != n + 1) return false;
  int vert = -1;
  for (int r = 0; r < lifted.num_rays(); ++r) {
    bool is_vert = lifted.ray(r).coords[n] == 1;
    for (int i = 0; i < n; ++i) is_vert = is_vert && lifted.ray(r).coords[i] == 0;
    if (is_vert) vert = r;
  }
  if (vert < 0) return false;
  std::set<std::vector<int>> base_sets, projected;
  for (int c = 0; c < base.num_cones(); ++c) base_sets.insert(base.cone(c).ray_ids);
  for (int c = 0; c < lifted.num_cones(); ++c) {
    const auto& rs = lifted.cone(c).ray_ids;
    if (std::binary_search(rs.begin(), rs.end(), vert)) continue;
    std::vector<int> proj;
    for (int r : rs) {
      std::vector<RayCoord> v(lifted.ray(r).coords.begin(), lifted.ray(r).coords.end() - 1);
      bool zero = true;
      for (RayCoord x : v) zero = zero && x == 0;
      if (zero) return false;  // a second vertical-ish ray cannot project
      RayVector p = normalize_primitive(std::move(v));
      bool found = false;
      for (int br = 0; br < base.num_rays(); ++br)
        if (base.ray(br).coords == p.coords) { proj.push_back(br); found = true; }
      if (!found) return false;
    }
    std::sort(proj.begin(), proj.end());
    if (proj.size() != rs.size()) return false;  // projection must not merge rays
    int base_id = base.cone_id(proj);
    if (base_id < 0 || base.cone(base_id).dim != lifted.cone(c).dim) return false;
    if (!projected.insert(proj).second) return false;
  }
  return projected == base_sets;
}

}  // namespace fansheaf
