#pragma once

// Minimal extension sheaves on fans.
//
// The sheaf is built by recursion over the skeletons. The zero cone
// carries Q in degree zero. For a cone sigma whose boundary is already
// equipped, the sections over the boundary subfan are solved degree by
// degree; the quotient modulo (positive-degree global polynomials acting
// on lower-degree sections) dictates how many free generators sigma
// acquires in each degree, and deterministically chosen lifts of a
// quotient basis become the facet restriction data of those generators.
// The result is a per-cone list of generator degrees together with one
// polynomial matrix per facet pair; restrictions to deeper faces are
// compositions along facet chains (path independence is checked, not
// assumed).
//
// Everything downstream - global section dimensions, the quotient
// dimensions that play the role of intersection cohomology Betti numbers,
// freeness/formality certificates, torsion witnesses, and the axiom
// verifier - reduces to exact linear algebra over these data.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fansheaf/fan.hpp"
#include "fansheaf/matrix.hpp"
#include "fansheaf/polynomial.hpp"
#include "fansheaf/sections.hpp"

namespace fansheaf {

struct PolyMatrix {
  // entries[i][j]: component of source generator i on target generator j,
  // a polynomial in the target cone's span coordinates, homogeneous of
  // graded degree deg(gen_i) - deg(gen_j) (or zero)
  std::vector<std::vector<Poly>> entries;
};

struct MesAtlas {
  int cutoff = 0;
  std::vector<std::vector<int>> gen_degrees;  // per cone id, ascending even degrees
  std::map<std::pair<int, int>, PolyMatrix> facet_restriction;
  std::vector<std::string> warnings;
};

// Composes facet restriction matrices to arbitrary faces along the
// lexicographically smallest facet chain, with memoization.
class MesContext {
 public:
  MesContext(const Fan& f, const MesAtlas& atlas) : fan_(f), atlas_(atlas) {}

  const PolyMatrix& restriction(int sigma, int face) {
    auto key = std::make_pair(sigma, face);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    PolyMatrix m;
    if (sigma == face) {
      int r = static_cast<int>(atlas_.gen_degrees[sigma].size());
      int d = fan_.cone(sigma).dim;
      m.entries.assign(r, std::vector<Poly>(r, Poly::zero(d)));
      for (int i = 0; i < r; ++i) m.entries[i][i] = Poly::constant(d, rat(1));
    } else {
      auto fit = atlas_.facet_restriction.find(key);
      if (fit != atlas_.facet_restriction.end()) {
        m = fit->second;
      } else {
        // smallest facet of sigma containing the face
        int via = -1;
        for (int t : fan_.facets_of(sigma))
          if (fan_.common_face(t, face) == face) { via = t; break; }
        if (via < 0) throw std::invalid_argument("restriction: face not contained in cone");
        m = compose(atlas_.facet_restriction.at({sigma, via}), via, restriction(via, face), face);
      }
    }
    return cache_.emplace(key, std::move(m)).first->second;
  }

  // first ∘ second as maps: source -> via -> face
  PolyMatrix compose(const PolyMatrix& src_to_via, int via, const PolyMatrix& via_to_face, int face) {
    const QMat& coord = fan_.coord_map(via, face);
    int rows = static_cast<int>(src_to_via.entries.size());
    int mid = rows == 0 ? 0 : static_cast<int>(src_to_via.entries[0].size());
    int cols = mid == 0 ? 0 : static_cast<int>(via_to_face.entries.empty() ? 0 : via_to_face.entries[0].size());
    PolyMatrix out;
    out.entries.assign(rows, std::vector<Poly>(cols, Poly::zero(fan_.cone(face).dim)));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < mid; ++j) {
        if (src_to_via.entries[i][j].is_zero()) continue;
        Poly moved = src_to_via.entries[i][j].substitute(coord);
        if (moved.is_zero()) continue;
        for (int k = 0; k < cols; ++k) {
          if (via_to_face.entries[j][k].is_zero()) continue;
          out.entries[i][k] += moved * via_to_face.entries[j][k];
        }
      }
    return out;
  }

  const Fan& fan() const { return fan_; }
  const MesAtlas& atlas() const { return atlas_; }

 private:
  const Fan& fan_;
  const MesAtlas& atlas_;
  std::map<std::pair<int, int>, PolyMatrix> cache_;
};

// --- twisted section spaces ---------------------------------------------------

// Coefficient layout of the free module on one cone in one degree: a block
// of monomial coefficients per generator.
struct ConeBlocks {
  int cone = -1;
  std::vector<int> gen_degrees;
  std::vector<std::vector<std::vector<int>>> monos;  // per generator
  std::vector<int> offsets;
  int total = 0;
};

inline ConeBlocks cone_blocks(const Fan& f, const MesAtlas& atlas, int cone, int degree) {
  ConeBlocks b;
  b.cone = cone;
  b.gen_degrees = atlas.gen_degrees.at(cone);
  int dim = f.cone(cone).dim;
  for (int g : b.gen_degrees) {
    b.offsets.push_back(b.total);
    if (degree >= g && (degree - g) % 2 == 0)
      b.monos.push_back(monomials(dim, (degree - g) / 2));
    else
      b.monos.push_back({});
    b.total += static_cast<int>(b.monos.back().size());
  }
  return b;
}

// Matrix of the value-on-a-face map: takes the coefficient block vector of
// a module element on `sigma` to its value coordinates on `face`.
inline QMat value_on_face(MesContext& ctx, int degree, int sigma, int face) {
  const Fan& f = ctx.fan();
  ConeBlocks src = cone_blocks(f, ctx.atlas(), sigma, degree);
  ConeBlocks dst = cone_blocks(f, ctx.atlas(), face, degree);
  QMat out(dst.total, src.total);
  if (dst.total == 0 || src.total == 0) return out;
  const PolyMatrix& restr = ctx.restriction(sigma, face);
  const QMat& coord = f.coord_map(sigma, face);
  for (size_t j = 0; j < src.gen_degrees.size(); ++j)
    for (size_t t = 0; t < src.monos[j].size(); ++t) {
      Poly moved = Poly::monomial(f.cone(sigma).dim, src.monos[j][t], 1).substitute(coord);
      int col = src.offsets[j] + static_cast<int>(t);
      if (moved.is_zero()) continue;
      for (size_t k = 0; k < dst.gen_degrees.size(); ++k) {
        const Poly& link = restr.entries[j][k];
        if (link.is_zero() || dst.monos[k].empty()) continue;
        auto cv = coeff_vector(moved * link, dst.monos[k]);
        for (size_t r = 0; r < cv.size(); ++r)
          if (cv[r] != 0) out.at(dst.offsets[k] + static_cast<int>(r), col) += cv[r];
      }
    }
  return out;
}

struct ESpace {
  int graded_degree = 0;
  std::vector<int> max_cones;
  std::vector<ConeBlocks> blocks;  // per maximal cone
  std::vector<int> cone_offsets;
  int total_cols = 0;
  std::vector<std::vector<Rat>> basis;

  long dim() const { return static_cast<long>(basis.size()); }
};

// Sections of the sheaf over a subfan in one degree: compatible tuples
// over the maximal cones, solved from pairwise agreement on intersections.
inline ESpace e_sections(MesContext& ctx, const Subfan& lambda, int degree) {
  const Fan& f = ctx.fan();
  ESpace sp;
  sp.graded_degree = degree;
  sp.max_cones = f.subfan_maximal(lambda);
  for (int c : sp.max_cones) {
    sp.cone_offsets.push_back(sp.total_cols);
    sp.blocks.push_back(cone_blocks(f, ctx.atlas(), c, degree));
    sp.total_cols += sp.blocks.back().total;
  }
  std::vector<std::vector<Rat>> rows;
  for (size_t i = 0; i < sp.max_cones.size(); ++i)
    for (size_t j = i + 1; j < sp.max_cones.size(); ++j) {
      int fc = f.common_face(sp.max_cones[i], sp.max_cones[j]);
      QMat vi = value_on_face(ctx, degree, sp.max_cones[i], fc);
      QMat vj = value_on_face(ctx, degree, sp.max_cones[j], fc);
      if (vi.rows() == 0) continue;
      for (int r = 0; r < vi.rows(); ++r) {
        std::vector<Rat> row(sp.total_cols);
        for (int c = 0; c < vi.cols(); ++c) row[sp.cone_offsets[i] + c] = vi.at(r, c);
        for (int c = 0; c < vj.cols(); ++c) row[sp.cone_offsets[j] + c] -= vj.at(r, c);
        rows.push_back(std::move(row));
      }
    }
  if (rows.empty()) {
    QMat none(0, sp.total_cols);
    sp.basis = kernel_basis(none);
  } else {
    sp.basis = kernel_basis(QMat::from_rows(rows));
  }
  return sp;
}

// Multiplication of a section by a global linear form, block by block.
inline std::vector<Rat> e_multiply_linear(MesContext& ctx, const ESpace& src, const std::vector<Rat>& coeffs,
                                          const std::vector<Rat>& linear_ambient, const ESpace& dst) {
  const Fan& f = ctx.fan();
  if (src.max_cones != dst.max_cones) throw std::invalid_argument("e_multiply_linear: domains differ");
  std::vector<Rat> out(dst.total_cols);
  for (size_t i = 0; i < src.max_cones.size(); ++i) {
    int cone = src.max_cones[i];
    std::vector<Rat> local(f.cone(cone).dim);
    for (int v = 0; v < f.cone(cone).dim; ++v)
      for (int a = 0; a < f.ambient_dim(); ++a) local[v] += linear_ambient[a] * f.cone(cone).span_basis.at(a, v);
    Poly lin = Poly::linear_form(local);
    const ConeBlocks& sb = src.blocks[i];
    const ConeBlocks& db = dst.blocks[i];
    for (size_t g = 0; g < sb.gen_degrees.size(); ++g) {
      if (sb.monos[g].empty() || db.monos[g].empty()) continue;
      Poly p(f.cone(cone).dim);
      for (size_t t = 0; t < sb.monos[g].size(); ++t)
        p += Poly::monomial(p.nvars(), sb.monos[g][t], coeffs[src.cone_offsets[i] + sb.offsets[g] + t]);
      auto cv = coeff_vector(p * lin, db.monos[g]);
      for (size_t r = 0; r < cv.size(); ++r) out[dst.cone_offsets[i] + db.offsets[g] + r] = cv[r];
    }
  }
  return out;
}

// Restriction of a section over `big_dom` to the coefficient space of a
// smaller subfan's section space.
inline std::vector<Rat> e_restrict(MesContext& ctx, const ESpace& big, const std::vector<Rat>& coeffs,
                                   const ESpace& small) {
  const Fan& f = ctx.fan();
  std::vector<Rat> out(small.total_cols);
  for (size_t i = 0; i < small.max_cones.size(); ++i) {
    int tau = small.max_cones[i];
    int host = -1;
    for (int sigma : big.max_cones)
      if (f.common_face(sigma, tau) == tau) { host = sigma; break; }
    if (host < 0) throw std::invalid_argument("e_restrict: target cone not in the source domain");
    size_t hi = std::lower_bound(big.max_cones.begin(), big.max_cones.end(), host) - big.max_cones.begin();
    QMat v = value_on_face(ctx, big.graded_degree, host, tau);
    for (int r = 0; r < v.rows(); ++r) {
      Rat acc = 0;
      for (int c = 0; c < v.cols(); ++c)
        if (v.at(r, c) != 0) acc += v.at(r, c) * coeffs[big.cone_offsets[hi] + c];
      out[small.cone_offsets[i] + r] = acc;
    }
  }
  return out;
}

// --- construction --------------------------------------------------------------

// Builds the sheaf atlas through the given even degree cutoff. The
// pivot_seed permutes the candidate order when lifting a quotient basis;
// any seed must produce the same generator degrees (uniqueness up to
// isomorphism), which the tests exercise.
inline MesAtlas build_mes(const Fan& f, int cutoff, unsigned long pivot_seed = 0) {
  if (cutoff < 0 || cutoff % 2 != 0) throw InputError("build_mes: cutoff must be even and nonnegative");
  MesAtlas atlas;
  atlas.cutoff = cutoff;
  atlas.gen_degrees.assign(f.num_cones(), {});
  MesContext ctx(f, atlas);

  for (int sigma = 0; sigma < f.num_cones(); ++sigma) {  // cone ids ascend with dimension
    if (f.cone(sigma).dim == 0) {
      atlas.gen_degrees[sigma] = {0};
      continue;
    }
    Subfan boundary = f.boundary_fan(sigma);
    const std::vector<int> facets = f.facets_of(sigma);
    for (int t : facets) atlas.facet_restriction[{sigma, t}] = PolyMatrix{};

    ESpace prev;
    for (int d = 0; d <= cutoff; d += 2) {
      ESpace cur = e_sections(ctx, boundary, d);
      RowSpace covered(cur.total_cols);
      if (d > 0 && cur.total_cols > 0) {
        for (const auto& b : prev.basis)
          for (int i = 0; i < f.ambient_dim(); ++i) {
            std::vector<Rat> lin(f.ambient_dim());
            lin[i] = 1;
            covered.add(e_multiply_linear(ctx, prev, b, lin, cur));
          }
      }
      std::vector<int> order(cur.basis.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
      if (pivot_seed != 0) {
        std::mt19937_64 rng(pivot_seed);
        std::shuffle(order.begin(), order.end(), rng);
      }
      int added = 0;
      for (int idx : order) {
        if (!covered.add(cur.basis[idx])) continue;
        ++added;
        atlas.gen_degrees[sigma].push_back(d);
        // the lift's facet components become a new row of each facet matrix
        for (size_t fi = 0; fi < cur.max_cones.size(); ++fi) {
          int tau = cur.max_cones[fi];
          const ConeBlocks& tb = cur.blocks[fi];
          std::vector<Poly> row;
          for (size_t k = 0; k < tb.gen_degrees.size(); ++k) {
            Poly p(f.cone(tau).dim);
            for (size_t t = 0; t < tb.monos[k].size(); ++t)
              p += Poly::monomial(p.nvars(), tb.monos[k][t],
                                  cur.basis[idx][cur.cone_offsets[fi] + tb.offsets[k] + t]);
            row.push_back(std::move(p));
          }
          atlas.facet_restriction[{sigma, tau}].entries.push_back(std::move(row));
        }
      }
      if (d == cutoff && added > 0)
        atlas.warnings.push_back("cone " + std::to_string(sigma) +
                                 ": new generators appear at the cutoff degree " + std::to_string(d) +
                                 "; the generator list may be truncated");
      prev = std::move(cur);
    }
  }
  return atlas;
}

// --- derived quantities ---------------------------------------------------------

inline std::vector<long> trim_trailing_zeros(std::vector<long> v) {
  while (v.size() > 1 && v.back() == 0) v.pop_back();
  return v;
}

// Histogram of the generator degrees of one cone: entry k counts
// generators in graded degree 2k.
inline std::vector<long> local_poincare(const MesAtlas& atlas, int cone) {
  const auto& gens = atlas.gen_degrees.at(cone);
  std::vector<long> h(1, 0);
  for (int g : gens) {
    if (static_cast<size_t>(g / 2) >= h.size()) h.resize(g / 2 + 1, 0);
    h[g / 2]++;
  }
  return h;
}

inline std::vector<long> global_E_dims(const MesAtlas& atlas, const Fan& f, const Subfan& lambda, int cutoff) {
  if (cutoff < 0 || cutoff % 2 != 0) throw InputError("global_E_dims: cutoff must be even");
  MesContext ctx(f, atlas);
  std::vector<long> out;
  for (int d = 0; d <= cutoff; d += 2) out.push_back(e_sections(ctx, lambda, d).dim());
  return out;
}

// Degreewise dimension of sections modulo the submodule generated in lower
// degrees by global linear forms. On an equivariantly formal fan these are
// the intersection cohomology Betti numbers; otherwise they are the
// dimensions of the edge image only.
inline std::vector<long> global_ih_dims(const MesAtlas& atlas, const Fan& f, int cutoff) {
  if (cutoff < 0 || cutoff % 2 != 0) throw InputError("global_ih_dims: cutoff must be even");
  MesContext ctx(f, atlas);
  Subfan all = f.full_subfan();
  std::vector<long> out;
  ESpace prev;
  for (int d = 0; d <= cutoff; d += 2) {
    ESpace cur = e_sections(ctx, all, d);
    long rank = 0;
    if (d > 0 && cur.total_cols > 0) {
      RowSpace rs(cur.total_cols);
      for (const auto& b : prev.basis)
        for (int i = 0; i < f.ambient_dim(); ++i) {
          std::vector<Rat> lin(f.ambient_dim());
          lin[i] = 1;
          rs.add(e_multiply_linear(ctx, prev, b, lin, cur));
        }
      rank = rs.rank();
    }
    out.push_back(cur.dim() - rank);
    prev = std::move(cur);
  }
  return out;
}

struct FormalityReport {
  bool formal = false;
  int through_degree = 0;       // the certificate is only valid up to here
  int first_failure_degree = -1;
  std::vector<long> generator_degrees;  // histogram, entry k for degree 2k
  std::vector<long> section_dims;
};

// Freeness certificate through the cutoff: the global section module is
// free over the ambient polynomial algebra iff its degreewise dimensions
// match those of the free module on the minimal generators. The verdict is
// cutoff-conditional and reported as such.
inline FormalityReport is_equivariantly_formal(const MesAtlas& atlas, const Fan& f, int cutoff) {
  FormalityReport rep;
  rep.through_degree = cutoff;
  rep.generator_degrees = global_ih_dims(atlas, f, cutoff);
  rep.section_dims = global_E_dims(atlas, f, f.full_subfan(), cutoff);
  rep.formal = true;
  int n = f.ambient_dim();
  for (int d = 0; d <= cutoff; d += 2) {
    long expect = 0;
    for (size_t k = 0; 2 * k <= static_cast<size_t>(d); ++k)
      expect += rep.generator_degrees[k] * monomial_count(n, (d - 2 * static_cast<int>(k)) / 2);
    if (rep.section_dims[d / 2] != expect) {
      rep.formal = false;
      rep.first_failure_degree = d;
      break;
    }
  }
  return rep;
}

// --- torsion -------------------------------------------------------------------

struct TorsionWitness {
  int cone = -1;
  Poly section_poly;         // coefficient of the degree-0 generator, in cone coordinates
  std::vector<Rat> killer;   // ambient linear form vanishing on the cone's span
};

// If some maximal cone has dimension < n, the product of its facet
// supporting forms times the degree-0 generator extends by zero to a
// global section that any linear form vanishing on the cone's span kills.
inline std::optional<TorsionWitness> torsion_witness(const MesAtlas& atlas, const Fan& f) {
  for (int sigma : f.maximal_cones()) {
    if (f.cone(sigma).dim == f.ambient_dim()) continue;
    TorsionWitness w;
    w.cone = sigma;
    Poly h = Poly::constant(f.cone(sigma).dim, rat(1));
    for (int tau : f.facets_of(sigma)) h = h * Poly::linear_form(f.facet_normal(sigma, tau));
    w.section_poly = h;
    auto left = kernel_basis(f.cone(sigma).span_basis.transposed());
    if (left.empty()) throw std::logic_error("torsion_witness: no vanishing form for a low cone");
    w.killer = left.front();
    return w;
  }
  return std::nullopt;
}

// Checks a witness mechanically: the extended-by-zero element is a nonzero
// global section and the killer form maps it to zero.
inline bool verify_torsion_witness(const MesAtlas& atlas, const Fan& f, const TorsionWitness& w) {
  MesContext ctx(f, atlas);
  Subfan all = f.full_subfan();
  int d = w.section_poly.graded_degree();
  if (d < 0 || atlas.gen_degrees[w.cone].empty() || atlas.gen_degrees[w.cone][0] != 0) return false;
  ESpace space = e_sections(ctx, all, d);
  std::vector<Rat> vec(space.total_cols);
  size_t pos = std::lower_bound(space.max_cones.begin(), space.max_cones.end(), w.cone) - space.max_cones.begin();
  if (pos == space.max_cones.size() || space.max_cones[pos] != w.cone) return false;
  auto cv = coeff_vector(w.section_poly, space.blocks[pos].monos[0]);
  bool nonzero = false;
  for (size_t t = 0; t < cv.size(); ++t) {
    vec[space.cone_offsets[pos] + space.blocks[pos].offsets[0] + t] = cv[t];
    nonzero = nonzero || cv[t] != 0;
  }
  if (!nonzero) return false;
  // must be a section
  RowSpace span(space.total_cols);
  for (const auto& b : space.basis) span.add(b);
  if (!span.contains(vec)) return false;
  // the killer must be a nonzero form vanishing on the cone's span
  bool killer_nonzero = false;
  for (const Rat& c : w.killer) killer_nonzero = killer_nonzero || c != 0;
  if (!killer_nonzero) return false;
  for (int j = 0; j < f.cone(w.cone).span_basis.cols(); ++j) {
    Rat dot = 0;
    for (int i = 0; i < f.ambient_dim(); ++i) dot += w.killer[i] * f.cone(w.cone).span_basis.at(i, j);
    if (dot != 0) return false;
  }
  ESpace up = e_sections(ctx, all, d + 2);
  auto product = e_multiply_linear(ctx, space, vec, w.killer, up);
  for (const Rat& x : product)
    if (x != 0) return false;
  return true;
}

// --- verification ---------------------------------------------------------------

inline bool restriction_consistency(const MesAtlas& atlas, const Fan& f, std::string* first_offender = nullptr) {
  MesContext ctx(f, atlas);
  for (int sigma = 0; sigma < f.num_cones(); ++sigma) {
    for (int tau : f.faces_of(sigma)) {
      if (f.cone(tau).dim != f.cone(sigma).dim - 2) continue;
      std::vector<int> chains;
      for (int mid : f.facets_of(sigma))
        if (f.common_face(mid, tau) == tau) chains.push_back(mid);
      if (chains.size() != 2) {
        if (first_offender)
          *first_offender = "cone " + std::to_string(sigma) + " / face " + std::to_string(tau) +
                            ": expected exactly two facet chains";
        return false;
      }
      PolyMatrix a = ctx.compose(atlas.facet_restriction.at({sigma, chains[0]}), chains[0],
                                 ctx.restriction(chains[0], tau), tau);
      PolyMatrix b = ctx.compose(atlas.facet_restriction.at({sigma, chains[1]}), chains[1],
                                 ctx.restriction(chains[1], tau), tau);
      bool equal = a.entries.size() == b.entries.size();
      for (size_t i = 0; equal && i < a.entries.size(); ++i) {
        equal = a.entries[i].size() == b.entries[i].size();
        for (size_t j = 0; equal && j < a.entries[i].size(); ++j) equal = a.entries[i][j] == b.entries[i][j];
      }
      if (!equal) {
        if (first_offender)
          *first_offender = "cone " + std::to_string(sigma) + " via facets " + std::to_string(chains[0]) +
                            "," + std::to_string(chains[1]) + " to face " + std::to_string(tau) +
                            ": compositions disagree";
        return false;
      }
    }
  }
  return true;
}

struct AxiomReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<std::string> checks;

  void fail(const std::string& msg) {
    ok = false;
    failures.push_back(msg);
  }
};

// Verifies, per cone: normalization at the zero cone, pointwise freeness
// (free-module dimensions match the solved section dimensions over the
// affine subfan, and restriction entries have the right homogeneous
// degrees), the local minimal-extension condition (boundary quotient
// matches the generator histogram and the restriction covers it), global
// flabbiness on affine subfans and skeletons, vanishing in odd degrees,
// and path independence of composed restrictions.
inline AxiomReport verify_axioms(const MesAtlas& atlas, const Fan& f, int cutoff) {
  AxiomReport rep;
  MesContext ctx(f, atlas);

  // (N)
  if (atlas.gen_degrees.at(0) != std::vector<int>{0})
    rep.fail("normalization: the zero cone does not carry exactly Q in degree 0");
  rep.checks.push_back("normalization");

  // (PF): dimension bookkeeping and homogeneity of the restriction data
  for (int sigma = 0; sigma < f.num_cones(); ++sigma) {
    Subfan aff = f.affine_subfan(sigma);
    for (int d = 0; d <= cutoff; d += 2) {
      long expect = 0;
      for (int g : atlas.gen_degrees[sigma])
        if (d >= g) expect += monomial_count(f.cone(sigma).dim, (d - g) / 2);
      long got = e_sections(ctx, aff, d).dim();
      if (got != expect)
        rep.fail("pointwise freeness: cone " + std::to_string(sigma) + " degree " + std::to_string(d) +
                 ": solved dimension " + std::to_string(got) + " != free module dimension " +
                 std::to_string(expect));
    }
  }
  for (const auto& [key, mat] : atlas.facet_restriction) {
    const auto& [sigma, tau] = key;
    for (size_t i = 0; i < mat.entries.size(); ++i)
      for (size_t j = 0; j < mat.entries[i].size(); ++j) {
        const Poly& p = mat.entries[i][j];
        if (p.is_zero()) continue;
        int want = atlas.gen_degrees[sigma][i] - atlas.gen_degrees[tau][j];
        if (!p.is_homogeneous() || p.graded_degree() != want)
          rep.fail("restriction entry (" + std::to_string(sigma) + "->" + std::to_string(tau) + ")[" +
                   std::to_string(i) + "][" + std::to_string(j) + "] is not homogeneous of degree " +
                   std::to_string(want));
      }
  }
  rep.checks.push_back("pointwise freeness");

  // (LME)
  for (int sigma = 0; sigma < f.num_cones(); ++sigma) {
    if (f.cone(sigma).dim == 0) continue;
    Subfan aff = f.affine_subfan(sigma);
    Subfan bd = f.boundary_fan(sigma);
    auto hist = local_poincare(atlas, sigma);
    ESpace prev_bd, prev_aff;
    for (int d = 0; d <= cutoff; d += 2) {
      ESpace cur_bd = e_sections(ctx, bd, d);
      ESpace cur_aff = e_sections(ctx, aff, d);
      RowSpace ideal_bd(cur_bd.total_cols);
      RowSpace ideal_aff(std::max(cur_aff.total_cols, 1));
      if (d > 0) {
        for (const auto& b : prev_bd.basis)
          for (int i = 0; i < f.ambient_dim(); ++i) {
            std::vector<Rat> lin(f.ambient_dim());
            lin[i] = 1;
            if (cur_bd.total_cols > 0) ideal_bd.add(e_multiply_linear(ctx, prev_bd, b, lin, cur_bd));
          }
        for (const auto& b : prev_aff.basis)
          for (int i = 0; i < f.ambient_dim(); ++i) {
            std::vector<Rat> lin(f.ambient_dim());
            lin[i] = 1;
            if (cur_aff.total_cols > 0) ideal_aff.add(e_multiply_linear(ctx, prev_aff, b, lin, cur_aff));
          }
      }
      long quot_bd = cur_bd.dim() - ideal_bd.rank();
      long quot_aff = cur_aff.dim() - ideal_aff.rank();
      long expect = (d / 2 < static_cast<int>(hist.size())) ? hist[d / 2] : 0;
      if (quot_aff != expect)
        rep.fail("local minimal extension: cone " + std::to_string(sigma) + " degree " + std::to_string(d) +
                 ": module quotient " + std::to_string(quot_aff) + " != generator count " +
                 std::to_string(expect));
      if (quot_bd != expect)
        rep.fail("local minimal extension: cone " + std::to_string(sigma) + " degree " + std::to_string(d) +
                 ": boundary quotient " + std::to_string(quot_bd) + " != generator count " +
                 std::to_string(expect));
      // surjectivity of the induced quotient map: restrictions of sections
      // over the affine subfan, plus the ideal part, must span the
      // boundary sections
      if (cur_bd.total_cols > 0) {
        RowSpace span(cur_bd.total_cols);
        for (const auto& b : cur_bd.basis) span.add(b);
        RowSpace image(cur_bd.total_cols);
        if (d > 0)
          for (const auto& b : prev_bd.basis)
            for (int i = 0; i < f.ambient_dim(); ++i) {
              std::vector<Rat> lin(f.ambient_dim());
              lin[i] = 1;
              image.add(e_multiply_linear(ctx, prev_bd, b, lin, cur_bd));
            }
        bool escaped = false;
        for (const auto& b : cur_aff.basis) {
          auto img = e_restrict(ctx, cur_aff, b, cur_bd);
          if (!span.contains(img)) escaped = true;
          image.add(img);
        }
        if (escaped)
          rep.fail("local minimal extension: cone " + std::to_string(sigma) + " degree " + std::to_string(d) +
                   ": a restriction image is not a boundary section");
        if (image.rank() != cur_bd.dim())
          rep.fail("local minimal extension: cone " + std::to_string(sigma) + " degree " + std::to_string(d) +
                   ": restriction plus ideal does not cover the boundary sections");
      }
      prev_bd = std::move(cur_bd);
      prev_aff = std::move(cur_aff);
    }
  }
  rep.checks.push_back("local minimal extension");

  // flabbiness on affine subfans and skeletons
  {
    Subfan all = f.full_subfan();
    std::vector<Subfan> samples;
    for (int c = 0; c < f.num_cones(); ++c) samples.push_back(f.affine_subfan(c));
    for (int k = 0; k <= f.ambient_dim(); ++k) samples.push_back(f.skeleton(k));
    for (int d = 0; d <= cutoff; d += 2) {
      ESpace big = e_sections(ctx, all, d);
      for (size_t si = 0; si < samples.size(); ++si) {
        ESpace small = e_sections(ctx, samples[si], d);
        if (small.total_cols == 0) continue;
        RowSpace span(small.total_cols);
        for (const auto& b : small.basis) span.add(b);
        RowSpace image(small.total_cols);
        bool escaped = false;
        for (const auto& b : big.basis) {
          auto img = e_restrict(ctx, big, b, small);
          if (!span.contains(img)) escaped = true;
          image.add(img);
        }
        if (escaped)
          rep.fail("flabbiness: degree " + std::to_string(d) + ", sample subfan " + std::to_string(si) +
                   ": a restriction image is not a section");
        if (image.rank() != small.dim())
          rep.fail("flabbiness: degree " + std::to_string(d) + ", sample subfan " + std::to_string(si) +
                   ": restriction is not surjective (" + std::to_string(image.rank()) + " of " +
                   std::to_string(small.dim()) + ")");
      }
    }
    rep.checks.push_back("flabbiness");
  }

  // odd degrees vanish
  {
    bool odd_ok = true;
    for (const auto& gens : atlas.gen_degrees)
      for (int g : gens) odd_ok = odd_ok && g % 2 == 0;
    Subfan all = f.full_subfan();
    for (int d = 1; d <= cutoff; d += 2) odd_ok = odd_ok && e_sections(ctx, all, d).dim() == 0;
    if (!odd_ok) rep.fail("odd-degree sections do not vanish");
    rep.checks.push_back("odd vanishing");
  }

  // path independence
  {
    std::string offender;
    if (!restriction_consistency(atlas, f, &offender)) rep.fail("path independence: " + offender);
    rep.checks.push_back("path independence");
  }

  return rep;
}

// --- atlas dump -----------------------------------------------------------------

// Stable text dump: per cone a generator-degree line, per facet pair the
// restriction matrix, rows in source-generator order, entries separated
// by " ; ".
inline std::string dump_atlas(const MesAtlas& atlas, const Fan& f) {
  std::ostringstream os;
  for (int c = 0; c < f.num_cones(); ++c) {
    os << "cone " << c << " degrees";
    for (int g : atlas.gen_degrees[c]) os << " " << g;
    os << "\n";
  }
  for (const auto& [key, mat] : atlas.facet_restriction) {
    os << "restr " << key.first << " " << key.second << "\n";
    for (const auto& row : mat.entries) {
      for (size_t j = 0; j < row.size(); ++j) os << (j ? " ; " : "") << row[j].str();
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace fansheaf
