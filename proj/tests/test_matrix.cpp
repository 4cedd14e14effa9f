#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fansheaf/matrix.hpp"

using namespace fansheaf;

namespace {
QMat random_matrix(std::mt19937_64& rng, int r, int c) {
  std::uniform_int_distribution<long> coef(-4, 4);
  QMat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = rat(coef(rng));
  return m;
}
}  // namespace

TEST_CASE("rref on the book examples") {
  CHECK(rref(QMat::identity(3)).rank == 3);

  QMat m(2, 2);
  m.at(0, 0) = 1; m.at(0, 1) = 2;
  m.at(1, 0) = 2; m.at(1, 1) = 4;
  RrefResult r = rref(m);
  CHECK(r.rank == 1);
  CHECK(r.pivot_cols == std::vector<int>{0});

  CHECK(rref(QMat(3, 4)).rank == 0);
}

TEST_CASE("rref is involutive on its output") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    QMat m = random_matrix(rng, 4, 6);
    RrefResult once = rref(m);
    RrefResult twice = rref(once.mat);
    CHECK(once.mat == twice.mat);
    CHECK(once.pivot_cols == twice.pivot_cols);
  }
}

TEST_CASE("kernel and image dimensions add up to the column count") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    QMat m = random_matrix(rng, 3, 5);
    auto ker = kernel_basis(m);
    CHECK(static_cast<int>(ker.size()) + image_dim(m) == m.cols());
    for (const auto& v : ker) {
      auto mv = m.apply(v);
      for (const Rat& x : mv) CHECK(x == 0);
    }
  }
}

TEST_CASE("kernel of a single relation is pivot-normalized") {
  QMat m(1, 2);
  m.at(0, 0) = 1; m.at(0, 1) = 1;
  auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 1);
  CHECK(ker[0] == std::vector<Rat>{rat(-1), rat(1)});
}

TEST_CASE("image dimension example") {
  QMat m(3, 2);
  m.at(0, 0) = 1; m.at(1, 1) = 1; m.at(2, 0) = 1; m.at(2, 1) = 1;
  CHECK(image_dim(m) == 2);
}

TEST_CASE("quotient dimensions") {
  std::vector<std::vector<Rat>> w{{rat(1), rat(0)}, {rat(0), rat(1)}};
  std::vector<std::vector<Rat>> u{{rat(1), rat(0)}};
  CHECK(quotient_dim(w, u, 2) == 1);
  CHECK(quotient_dim(w, {}, 2) == 2);

  std::vector<std::vector<Rat>> w2{{rat(1), rat(0), rat(0)}};
  std::vector<std::vector<Rat>> u2{{rat(0), rat(1), rat(0)}};
  CHECK_THROWS_AS(quotient_dim(w2, u2, 3), std::invalid_argument);
}

TEST_CASE("solve returns a particular solution or reports inconsistency") {
  QMat a(2, 3);
  a.at(0, 0) = 1; a.at(0, 2) = 1;
  a.at(1, 1) = 2;
  auto x = solve(a, {rat(3), rat(4)});
  REQUIRE(x.has_value());
  CHECK(a.apply(*x) == std::vector<Rat>{rat(3), rat(4)});

  QMat bad(2, 1);
  bad.at(0, 0) = 1; bad.at(1, 0) = 1;
  CHECK_FALSE(solve(bad, {rat(0), rat(1)}).has_value());
}

TEST_CASE("row space accumulator matches batch rank") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    QMat m = random_matrix(rng, 6, 4);
    RowSpace rs(4);
    for (int i = 0; i < m.rows(); ++i) rs.add(m.row(i));
    CHECK(rs.rank() == rank_of(m));
    // every row of m is contained in the accumulated span
    for (int i = 0; i < m.rows(); ++i) CHECK(rs.contains(m.row(i)));
  }
}
