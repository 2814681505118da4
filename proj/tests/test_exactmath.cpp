#include <doctest.h>

#include <cmath>

#include "extremal/exactmath.hpp"
#include "oracles.hpp"

using namespace extremal;

namespace {

std::vector<BigInt> big(const std::vector<oracle::u64>& v) {
  std::vector<BigInt> out;
  for (auto x : v) out.push_back(from_u64(x));
  return out;
}

}  // namespace

TEST_CASE("sylvester: first terms") {
  const long expected[] = {2, 3, 7, 43, 1807, 3263443};
  for (int m = 0; m < 6; ++m) CHECK(sylvester(m) == expected[m]);
  CHECK(sylvester(6) == BigInt("10650056950807"));
}

TEST_CASE("sylvester: recurrence and product identity") {
  BigInt product = 1;
  for (int m = 0; m <= 12; ++m) {
    CHECK(sylvester(m) - 1 == product);
    product *= sylvester(m);
  }
  for (int m = 1; m <= 24; m += 1) {
    const BigInt& p = sylvester(m - 1);
    CHECK(sylvester(m) == p * p - p + 1);
  }
}

TEST_CASE("sylvester: index range") {
  CHECK_THROWS_AS(sylvester(-1), std::out_of_range);
  CHECK_THROWS_AS(sylvester(kSylvesterMaxIndex + 1), std::out_of_range);
}

TEST_CASE("semigroup membership agrees with brute force") {
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<oracle::u64> gens;
    const int k = static_cast<int>(oracle::uniform(1, 4));
    for (int i = 0; i < k; ++i) gens.push_back(oracle::uniform(1, 60));
    const auto g = big(gens);
    NumericalSemigroup sg(g);
    for (int q = 0; q < 20; ++q) {
      oracle::u64 t = oracle::uniform(0, 600);
      const bool want = oracle::member(t, gens);
      CHECK(sg.contains(from_u64(t)) == want);
      CHECK(sg.contains(from_u64(t), MembershipStrategy::DynamicProgramming) == want);
      CHECK(sg.contains(from_u64(t), MembershipStrategy::Apery) == want);
    }
  }
}

TEST_CASE("semigroup: two generators, closed form region") {
  // Frobenius number of <a,b> is ab - a - b
  for (oracle::u64 a = 2; a < 20; ++a) {
    for (oracle::u64 b = a + 1; b < 25; ++b) {
      if (std::gcd(a, b) != 1) continue;
      NumericalSemigroup sg(big({a, b}));
      CHECK_FALSE(sg.contains(from_u64(a * b - a - b)));
      for (oracle::u64 t = a * b - a - b + 1; t < a * b; ++t) CHECK(sg.contains(from_u64(t)));
    }
  }
}

TEST_CASE("semigroup: budget exceeded when no strategy fits") {
  SemigroupLimits tiny{10, 10};
  NumericalSemigroup sg(big({100, 101, 103}), tiny);
  CHECK_THROWS_AS(sg.contains(1001), BudgetExceeded);
  CHECK_THROWS_AS(sg.contains(1001, MembershipStrategy::Apery), BudgetExceeded);
  CHECK_THROWS_AS(sg.contains(1001, MembershipStrategy::DynamicProgramming), BudgetExceeded);
  // cheap tests still answer
  CHECK(sg.contains(0));
  CHECK_FALSE(sg.contains(50));
  CHECK(sg.contains(200));
}

TEST_CASE("semigroup: minimal generators and gcd") {
  NumericalSemigroup sg(big({12, 6, 9, 6, 18}));
  CHECK(sg.minimal_generators() == big({6, 9}));
  CHECK(sg.gcd() == 3);
  CHECK_FALSE(sg.contains(10));
  CHECK(sg.contains(15));
  CHECK_THROWS(NumericalSemigroup(std::vector<BigInt>{}));
}

TEST_CASE("parse and convert") {
  CHECK(parse_bigint("-123") == -123);
  CHECK(parse_bigint("+7") == 7);
  CHECK_THROWS_AS(parse_bigint(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_bigint("12a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bigint("-"), std::invalid_argument);
  CHECK(fits_u64(BigInt("18446744073709551615")));
  CHECK_FALSE(fits_u64(BigInt("18446744073709551616")));
  CHECK_FALSE(fits_u64(-1));
  CHECK(to_u64(from_u64(UINT64_MAX)) == UINT64_MAX);
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
  CHECK(make_rational(6, -4) == BigRat(-3, 2));
}

TEST_CASE("floor_log2 and scientific notation") {
  CHECK(floor_log2(BigRat(1)) == 0);
  CHECK(floor_log2(BigRat(1023)) == 9);
  CHECK(floor_log2(BigRat(1024)) == 10);
  CHECK(floor_log2(BigRat(1, 3)) == -2);
  CHECK(floor_log2(BigRat(1, 4)) == -2);
  CHECK(to_scientific(BigRat(1, 330), 2) == "3.0e-03");
  CHECK(to_scientific(BigRat(1), 2) == "1.0e+00");
  CHECK(to_scientific(BigRat(995, 10000), 2) == "1.0e-01");
  CHECK(to_scientific(BigRat(994, 10000), 2) == "9.9e-02");
  CHECK(to_scientific(BigRat(12345), 3) == "1.23e+04");
}

TEST_CASE("double exponential bound: exact for even n") {
  // n = 4: 2^{2^2} = 16
  CHECK_FALSE(double_exponential_check(BigRat(16), 4).holds);
  CHECK(double_exponential_check(BigRat(16), 4, true).holds);
  CHECK(double_exponential_check(BigRat(17), 4).holds);
  CHECK(double_exponential_check(BigRat(17), 4).method == BoundMethod::Exact);
  CHECK(double_exponential_check(BigRat(33, 2), 4).holds);
  CHECK(exceeds_double_exponential(BigRat(17), 4));
  CHECK_THROWS(exceeds_double_exponential(BigRat(1), 4));
}

TEST_CASE("double exponential bound: sufficient test for odd n") {
  // 2^{2^{5/2}} ~ 50.8
  auto c = double_exponential_check(BigRat(256), 5);
  CHECK(c.holds);
  CHECK(c.method == BoundMethod::BitLengthBound);
  CHECK_FALSE(double_exponential_check(BigRat(51), 5).holds);
  CHECK_FALSE(double_exponential_check(BigRat(40), 5).holds);
}

TEST_CASE("double exponential bound agrees with floating point away from the edge") {
  for (int n = 1; n <= 9; ++n) {
    const double bound = std::pow(2.0, std::pow(2.0, n / 2.0));
    for (long q = 2; q < 5000; q += 7) {
      auto c = double_exponential_check(BigRat(q), n);
      if (c.holds) CHECK(static_cast<double>(q) > bound);
      if (n % 2 == 0 && q > bound * 1.000001) CHECK(c.holds);
    }
  }
}
