#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "retset/errors.hpp"
#include "retset/finite_field.hpp"

#include <random>
#include <set>

using namespace retset;

TEST_CASE("prime field inverse") {
  FieldCtx f5(5, 1);
  CHECK(f5.inv(f5.from_int(2)) == f5.from_int(3));
  CHECK(f5.inv(f5.one()) == f5.one());
  CHECK_THROWS_AS(f5.inv(f5.zero()), DivisionByZero);
}

TEST_CASE("inverse of u modulo u^2 - 2") {
  FieldCtx f25(5, std::vector<std::int64_t>{-2, 0, 1});
  const FqElem u = f25.gen_u();
  const FqElem inv = f25.inv(u);
  CHECK(inv == f25.from_coeffs({0, 3}));
  CHECK(f25.is_one(f25.mul(u, inv)));
  CHECK(f25.format_with_modulus(inv) == "[0,3] mod u^2 + 3");
}

TEST_CASE("deterministic modulus") {
  FieldCtx f25(5, 2);
  CHECK(f25.modulus() == std::vector<std::uint32_t>{2, 0, 1});
  FieldCtx f125(5, 3);
  CHECK(f125.modulus().size() == 4);
  CHECK_THROWS_AS(FieldCtx(5, std::vector<std::int64_t>{1, 0, 1, 0, 1}), DomainError);  // (u^2+u+1)(u^2-u+1) mod 5
  CHECK_THROWS_AS(FieldCtx(6, 1), DomainError);
}

TEST_CASE("square roots") {
  FieldCtx f5(5, 1);
  auto r = f5.sqrt(f5.from_int(4));
  REQUIRE(r);
  CHECK(*r == f5.from_int(2));
  CHECK_FALSE(f5.sqrt(f5.from_int(3)).has_value());
  FieldCtx f25(5, 2);
  auto r3 = f25.sqrt(f25.from_int(3));
  REQUIRE(r3);
  CHECK(f25.sqr(*r3) == f25.from_int(3));
  CHECK_FALSE(f25.in_prime_field(*r3));
}

TEST_CASE("square roots agree with exhaustive squaring up to 5^4") {
  for (unsigned k = 1; k <= 4; ++k) {
    FieldCtx f(5, k);
    const auto q = f.size().convert_to<std::uint64_t>();
    std::set<BigInt> squares;
    for (std::uint64_t v = 0; v < q; ++v) squares.insert(f.encode(f.sqr(f.decode(v))));
    for (std::uint64_t v = 0; v < q; ++v) {
      const FqElem x = f.decode(v);
      auto r = f.sqrt(x);
      CHECK(r.has_value() == (squares.count(v) == 1));
      if (r) {
        CHECK(f.sqr(*r) == x);
        CHECK_FALSE(f.less(f.neg(*r), *r));
      }
    }
  }
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(7);
  for (unsigned k : {1U, 2U, 3U, 7U, 18U, 36U}) {
    FieldCtx f(5, k);
    for (int i = 0; i < 60; ++i) {
      const FqElem a = f.random(rng), b = f.random(rng), c = f.random(rng);
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.add(a, f.neg(a)) == f.zero());
      if (!f.is_zero(a)) CHECK(f.is_one(f.mul(a, f.inv(a))));
      CHECK(f.frob(a) == f.pow(a, std::uint64_t{5}));
      CHECK(f.frob(f.mul(a, b), 3) == f.mul(f.frob(a, 3), f.frob(b, 3)));
      CHECK(f.pow(a, f.size()) == a);
      CHECK(f.decode(f.encode(a)) == a);
      CHECK(f.parse(f.format(a)) == a);
    }
  }
}

TEST_CASE("trace lands in the subfield") {
  std::mt19937_64 rng(3);
  FieldCtx f(5, 6);
  for (int i = 0; i < 40; ++i) {
    const FqElem t = f.trace_to_subfield(f.random(rng), 2);
    CHECK(f.frob(t, 2) == t);
  }
}
