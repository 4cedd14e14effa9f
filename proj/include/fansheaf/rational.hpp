#pragma once

// Exact rational scalars. Everything in this library computes over Q;
// no floating point anywhere. GMP's mpq_class keeps fractions canonical
// (positive denominator, coprime numerator/denominator), which is
// exactly the invariant the rest of the code relies on.

#include <gmpxx.h>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fansheaf {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "n" or "n/d".
inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
  if (r.get_den() == 0) throw std::invalid_argument("parse_rat: zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline int sign(const Rat& r) { return sgn(r); }

inline Rat rational_dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("rational_dot: length mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Scales a rational vector to the primitive integer vector on the same ray
// (positive multiple, entries coprime). Used when recovering extreme rays.
inline std::vector<long long> primitive_integer_vector(const std::vector<Rat>& v) {
  Int lcm_den = 1;
  for (const Rat& x : v) {
    Int den = x.get_den();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<Int> w(v.size());
  Int g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    w[i] = v[i].get_num() * (lcm_den / v[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[i].get_mpz_t());
  }
  if (g == 0) throw std::invalid_argument("primitive_integer_vector: zero vector");
  std::vector<long long> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Int q = w[i] / g;
    if (!q.fits_slong_p()) throw std::overflow_error("primitive_integer_vector: entry too large");
    out[i] = q.get_si();
  }
  return out;
}

}  // namespace fansheaf
