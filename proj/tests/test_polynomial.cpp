#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fansheaf/polynomial.hpp"

using namespace fansheaf;

namespace {
Poly random_poly(std::mt19937_64& rng, int nvars, int maxdeg) {
  std::uniform_int_distribution<long> coef(-3, 3);
  std::uniform_int_distribution<int> deg(0, maxdeg);
  Poly p(nvars);
  for (int t = 0; t < 4; ++t) {
    std::vector<int> e(nvars, 0);
    int d = deg(rng);
    for (int i = 0; i < d; ++i) e[std::uniform_int_distribution<int>(0, nvars - 1)(rng)]++;
    p += Poly::monomial(nvars, e, rat(coef(rng)));
  }
  return p;
}
}  // namespace

TEST_CASE("monomial enumeration in graded-lex order") {
  auto m21 = monomials(2, 1);
  REQUIRE(m21.size() == 2);
  CHECK(m21[0] == std::vector<int>{1, 0});  // u1 before u2
  CHECK(m21[1] == std::vector<int>{0, 1});

  CHECK(monomials(3, 2).size() == 6);
  CHECK(monomial_count(3, 2) == 6);

  auto m00 = monomials(0, 0);
  REQUIRE(m00.size() == 1);
  CHECK(m00[0].empty());
  CHECK(monomials(0, 3).empty());

  // counts agree with the closed form on a small sweep
  for (int d = 0; d <= 4; ++d)
    for (int k = 0; k <= 5; ++k)
      CHECK(static_cast<long long>(monomials(d, k).size()) == monomial_count(d, k));
}

TEST_CASE("substitution restricts polynomials along linear maps") {
  // f = u1*u2 restricted to the u1-axis (u1 = t, u2 = 0) vanishes
  Poly f = Poly::variable(2, 0) * Poly::variable(2, 1);
  QMat axis(2, 1);
  axis.at(0, 0) = 1;  // u1 -> t, u2 -> 0
  CHECK(f.substitute(axis).is_zero());

  // identity substitution is the identity
  Poly g = Poly::variable(2, 0) * Poly::variable(2, 0);
  CHECK(g.substitute(QMat::identity(2)) == g);

  // (u1+u2)^2 on the diagonal t -> (t, t) gives 4 t^2
  Poly s = Poly::variable(2, 0) + Poly::variable(2, 1);
  QMat diag(2, 1);
  diag.at(0, 0) = 1;
  diag.at(1, 0) = 1;
  Poly restricted = (s * s).substitute(diag);
  Poly expected = Poly::monomial(1, {2}, rat(4));
  CHECK(restricted == expected);
}

TEST_CASE("substitution is a ring homomorphism") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 40; ++trial) {
    Poly f = random_poly(rng, 3, 2);
    Poly g = random_poly(rng, 3, 2);
    QMat s(3, 2);
    std::uniform_int_distribution<long> coef(-2, 2);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) s.at(i, j) = rat(coef(rng));
    CHECK((f * g).substitute(s) == f.substitute(s) * g.substitute(s));
    CHECK((f + g).substitute(s) == f.substitute(s) + g.substitute(s));
  }
}

TEST_CASE("degrees and homogeneity bookkeeping") {
  Poly f = Poly::variable(2, 0) * Poly::variable(2, 1);  // u1 u2
  CHECK(f.poly_degree() == 2);
  CHECK(f.graded_degree() == 4);
  CHECK(f.is_homogeneous());
  Poly g = f + Poly::constant(2, rat(1));
  CHECK_FALSE(g.is_homogeneous());
  CHECK(Poly::zero(2).poly_degree() == -1);

  // substitution never raises the degree
  QMat s(2, 2);
  s.at(0, 0) = 1; s.at(0, 1) = 2; s.at(1, 0) = 3;
  CHECK(f.substitute(s).poly_degree() <= f.poly_degree());
}

TEST_CASE("evaluation and printing") {
  Poly f = Poly::variable(2, 0) * Poly::variable(2, 0) - Poly::variable(2, 1) * rat(3, 2);
  CHECK(f.eval({rat(2), rat(2)}) == rat(1));
  CHECK(f.str() == "y1^2 - 3/2*y2");
  CHECK(Poly::zero(1).str() == "0");
  CHECK(Poly::constant(0, rat(5)).str() == "5");
}
