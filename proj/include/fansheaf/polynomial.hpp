#pragma once

// Multivariate polynomials with exact rational coefficients.
//
// The grading doubles the usual degree: a polynomial of ordinary degree k
// is graded-homogeneous of degree 2k, so linear forms sit in degree 2.
// Monomial order is graded-lex (degree first, then lexicographic with the
// first variable largest); every basis this library emits lists monomials
// in that order, which keeps section matrices reproducible across runs.

#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fansheaf/matrix.hpp"
#include "fansheaf/rational.hpp"

namespace fansheaf {

inline int exp_degree(const std::vector<int>& e) { return std::accumulate(e.begin(), e.end(), 0); }

struct GrlexLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    int da = exp_degree(a), db = exp_degree(b);
    if (da != db) return da < db;
    return a > b;  // within a degree: descending lex, so x1^k comes first
  }
};

// All exponent vectors of ordinary degree k in d variables, graded-lex order.
inline std::vector<std::vector<int>> monomials(int d, int k) {
  if (d < 0 || k < 0) throw std::invalid_argument("monomials: negative arguments");
  std::vector<std::vector<int>> out;
  if (d == 0) {
    if (k == 0) out.push_back({});
    return out;
  }
  std::vector<int> cur(d, 0);
  // Recursive descent, first variable exponent from k down to 0.
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == d - 1) {
      cur[pos] = rem;
      out.push_back(cur);
      return;
    }
    for (int e = rem; e >= 0; --e) {
      cur[pos] = e;
      self(self, pos + 1, rem - e);
    }
  };
  rec(rec, 0, k);
  return out;
}

inline long long monomial_count(int d, int k) {
  // C(k + d - 1, d - 1)
  if (k < 0) return 0;
  if (d == 0) return k == 0 ? 1 : 0;
  long long num = 1, den = 1;
  for (int i = 1; i <= d - 1; ++i) {
    num *= k + i;
    den *= i;
  }
  return num / den;
}

class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly zero(int nvars) { return Poly(nvars); }

  static Poly constant(int nvars, const Rat& c) {
    Poly p(nvars);
    if (c != 0) p.terms_[std::vector<int>(nvars, 0)] = c;
    return p;
  }

  static Poly monomial(int nvars, std::vector<int> exps, const Rat& c) {
    if (static_cast<int>(exps.size()) != nvars) throw std::invalid_argument("Poly::monomial: bad exponent length");
    Poly p(nvars);
    if (c != 0) p.terms_[std::move(exps)] = c;
    return p;
  }

  static Poly variable(int nvars, int i) {
    std::vector<int> e(nvars, 0);
    e.at(i) = 1;
    return monomial(nvars, std::move(e), 1);
  }

  static Poly linear_form(const std::vector<Rat>& coeffs) {
    Poly p(static_cast<int>(coeffs.size()));
    for (size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      std::vector<int> e(coeffs.size(), 0);
      e[i] = 1;
      p.terms_[std::move(e)] = coeffs[i];
    }
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<int>, Rat, GrlexLess>& terms() const { return terms_; }

  Rat coeff(const std::vector<int>& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  int poly_degree() const {  // -1 for the zero polynomial
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, exp_degree(e));
    return d;
  }

  int graded_degree() const { return poly_degree() < 0 ? -1 : 2 * poly_degree(); }

  bool is_homogeneous() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int k = exp_degree(e);
      if (d < 0) d = k;
      else if (d != k) return false;
    }
    return true;
  }

  Poly& operator+=(const Poly& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) {
      Rat& t = terms_[e];
      t += c;
      if (t == 0) terms_.erase(e);
    }
    return *this;
  }

  Poly operator+(const Poly& o) const { Poly p = *this; p += o; return p; }

  Poly operator-() const {
    Poly p(nvars_);
    for (const auto& [e, c] : terms_) p.terms_[e] = -c;
    return p;
  }

  Poly operator-(const Poly& o) const { return *this + (-o); }

  Poly operator*(const Rat& s) const {
    Poly p(nvars_);
    if (s == 0) return p;
    for (const auto& [e, c] : terms_) p.terms_[e] = c * s;
    return p;
  }

  Poly operator*(const Poly& o) const {
    check_vars(o);
    Poly p(nvars_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        std::vector<int> e(nvars_);
        for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
        Rat& t = p.terms_[e];
        t += c1 * c2;
        if (t == 0) p.terms_.erase(e);
      }
    return p;
  }

  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  // Composition with the linear map x_i = sum_j S(i,j) z_j. S has nvars()
  // rows; the result lives in S.cols() variables. Homogeneous degree is
  // preserved or the image collapses to zero.
  Poly substitute(const QMat& s) const {
    if (s.rows() != nvars_) throw std::invalid_argument("Poly::substitute: matrix rows != nvars");
    int m = s.cols();
    std::vector<Poly> images;
    images.reserve(nvars_);
    for (int i = 0; i < nvars_; ++i) images.push_back(Poly::linear_form(s.row(i)));
    // powers[i][k] = images[i]^k, grown on demand
    std::vector<std::vector<Poly>> powers(nvars_);
    for (int i = 0; i < nvars_; ++i) powers[i].push_back(Poly::constant(m, 1));
    Poly out(m);
    for (const auto& [e, c] : terms_) {
      Poly t = Poly::constant(m, c);
      for (int i = 0; i < nvars_; ++i) {
        while (static_cast<int>(powers[i].size()) <= e[i]) powers[i].push_back(powers[i].back() * images[i]);
        if (e[i] > 0) t = t * powers[i][e[i]];
      }
      out += t;
    }
    return out;
  }

  Rat eval(const std::vector<Rat>& pt) const {
    if (static_cast<int>(pt.size()) != nvars_) throw std::invalid_argument("Poly::eval: point length mismatch");
    Rat s = 0;
    for (const auto& [e, c] : terms_) {
      Rat t = c;
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= pt[i];
      s += t;
    }
    return s;
  }

  std::string str(const std::string& var = "y") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print leading (highest) terms first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rat a = c;
      if (first) {
        if (a < 0) { os << "-"; a = -a; }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      bool has_var = exp_degree(e) > 0;
      if (a != 1 || !has_var) os << rat_str(a) << (has_var ? "*" : "");
      bool started = false;
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (started) os << "*";
        started = true;
        os << var << (i + 1);
        if (e[i] > 1) os << "^" << e[i];
      }
    }
    return os.str();
  }

 private:
  void check_vars(const Poly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("Poly: variable count mismatch");
  }

  int nvars_ = 0;
  std::map<std::vector<int>, Rat, GrlexLess> terms_;
};

// Coefficients of a homogeneous polynomial over monomials(d, k) in order.
inline std::vector<Rat> coeff_vector(const Poly& p, const std::vector<std::vector<int>>& monos) {
  std::vector<Rat> v(monos.size());
  size_t found = 0;
  for (size_t i = 0; i < monos.size(); ++i) {
    v[i] = p.coeff(monos[i]);
    if (v[i] != 0) ++found;
  }
  if (found < p.terms().size()) throw std::logic_error("coeff_vector: polynomial has terms outside the basis");
  return v;
}

}  // namespace fansheaf
