#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "retset/errors.hpp"
#include "retset/recurrence.hpp"

#include <random>

using namespace retset;

TEST_CASE("basis sequences") {
  const RecurrenceBasis b({2, -3, 1});  // x^2 - 3x + 2
  for (std::uint64_t n = 0; n < 12; ++n) {
    const auto c = b.at(n);
    CHECK(c[0] == 2 - big_pow(2, n));
    CHECK(c[1] == big_pow(2, n) - 1);
  }
  CHECK(b.term(0, 2) == -2);
  CHECK(RecurrenceBasis({-5, 1}).term(0, 7) == 78125);
  CHECK(RecurrenceBasis({0, -5, 1}).term(1, 3) == 25);
  CHECK(RecurrenceBasis({0, -5, 1}).term(0, 3) == 0);
  CHECK_THROWS_AS(RecurrenceBasis({1, 2}), DomainError);
  CHECK_THROWS_AS(RecurrenceBasis({1}), DomainError);
}

TEST_CASE("basis satisfies its recurrence and matches unrolling") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-6, 6), deg(1, 4);
  for (int k = 0; k < 40; ++k) {
    std::vector<BigInt> P;
    const int s = deg(rng);
    for (int i = 0; i < s; ++i) P.push_back(coef(rng));
    P.push_back(1);
    const RecurrenceBasis basis(P);
    for (int j = 0; j < s; ++j) {
      std::vector<BigInt> init(s, 0);
      init[j] = 1;
      const auto seq = LinearRecurrence{P, init}.prefix(25);
      for (std::uint64_t n = 0; n < 25; ++n) CHECK(basis.term(j, n) == seq[n]);
    }
  }
}

TEST_CASE("eventual periods") {
  const LinearRecurrence five{{-5, 1}, {1}};
  CHECK(eventual_period_mod(five, 4) == Period{0, 1});
  CHECK(eventual_period_mod(five, 8) == Period{0, 2});
  CHECK(eventual_period_mod(five, 5) == Period{1, 1});
  CHECK(eventual_period_mod(five, 1) == Period{0, 1});
  // Fibonacci mod 10 has Pisano period 60.
  CHECK(eventual_period_mod(LinearRecurrence{{-1, -1, 1}, {0, 1}}, 10) == Period{0, 60});
  // 2^n mod 12: 1,2,4,8,4,8,...
  CHECK(eventual_period_mod(LinearRecurrence{{-2, 1}, {1}}, 12) == Period{2, 2});
  CHECK(eventual_period_mod(RecurrenceBasis({-2, 1}), 12) == Period{2, 2});
  CHECK_THROWS_AS(eventual_period_mod(five, 0), DomainError);
  CHECK_THROWS_AS(eventual_period_mod(LinearRecurrence{{-1, -1, 1}, {0, 1}}, 1000003, 1000), ResourceError);
}

TEST_CASE("period agrees with direct search") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> coef(-9, 9), mod(1, 60);
  for (int k = 0; k < 60; ++k) {
    const LinearRecurrence u{{coef(rng), coef(rng), 1}, {coef(rng), coef(rng)}};
    const BigInt N = mod(rng);
    const Period per = eventual_period_mod(u, N);
    const auto seq = u.prefix(per.preperiod + 3 * per.period + 10);
    for (std::size_t n = per.preperiod; n + per.period < seq.size(); ++n)
      CHECK(mod_floor(seq[n], N) == mod_floor(seq[n + per.period], N));
    if (per.preperiod > 0) {
      const std::size_t m = per.preperiod - 1;
      // Minimality of the preperiod: the element before the cycle differs from its period-shift.
      bool differs = false;
      for (std::size_t i = m; i < m + 2 && i + per.period < seq.size(); ++i)
        differs = differs || mod_floor(seq[i], N) != mod_floor(seq[i + per.period], N);
      CHECK(differs);
    }
  }
}

TEST_CASE("quadratic integers") {
  // w^2 = -5: w = sqrt(-5).
  const QuadInt w = QuadInt::omega(0, 5);
  CHECK((w * w == QuadInt{-5, 0, 0, 5}));
  CHECK(w.norm() == 5);
  // Powers of w follow the basis of x^2 - u x + v.
  for (const auto& [u, v] : std::vector<std::pair<int, int>>{{0, 5}, {1, 5}, {3, 25}, {-4, 25}}) {
    const RecurrenceBasis b({v, -u, 1});
    const QuadInt om = QuadInt::omega(u, v);
    for (std::uint64_t n = 0; n < 15; ++n) {
      const QuadInt p = om.pow(n);
      const auto c = b.at(n);
      CHECK(p.a == c[0]);
      CHECK(p.b == c[1]);
      CHECK(p.norm() == big_pow(v, n));
    }
  }
  CHECK_THROWS_AS(QuadInt::omega(0, 5) * QuadInt::omega(1, 5), DomainError);
}
