#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fansheaf/rational.hpp"

using namespace fansheaf;

TEST_CASE("rationals stay canonical") {
  Rat a = rat(2, 4);
  CHECK(a.get_num() == 1);
  CHECK(a.get_den() == 2);
  Rat b = rat(-3, -6);
  CHECK(b.get_num() == 1);
  CHECK(b.get_den() == 2);
  Rat c = rat(3, -4);
  CHECK(c.get_num() == -3);
  CHECK(c.get_den() == 4);
  CHECK_THROWS_AS(rat(1, 0), std::invalid_argument);
}

TEST_CASE("rational parsing and printing round-trip") {
  CHECK(parse_rat("3/4") == rat(3, 4));
  CHECK(parse_rat("-7") == rat(-7));
  CHECK(rat_str(rat(-6, 8)) == "-3/4");
  CHECK(rat_str(rat(5, 1)) == "5");
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
}

TEST_CASE("sums computed two ways agree") {
  // a/b + c/d via cross-multiplication must equal the library sum.
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  for (int trial = 0; trial < 200; ++trial) {
    long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    Rat lhs = rat(a, b) + rat(c, d);
    Rat rhs = rat(a * d + c * b, b * d);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("primitive integer vector extraction") {
  std::vector<Rat> v{rat(1, 2), rat(-3, 4), rat(0)};
  auto p = primitive_integer_vector(v);
  CHECK(p == std::vector<long long>{2, -3, 0});
  std::vector<Rat> z{rat(0), rat(0)};
  CHECK_THROWS_AS(primitive_integer_vector(z), std::invalid_argument);
}
