#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "generators.hpp"
#include "retset/errors.hpp"
#include "retset/set_algebra.hpp"

#include <algorithm>
#include <set>

using namespace retset;

namespace {

std::vector<BigInt> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

PSetTerm term(const std::string& text) { return std::get<PSetTerm>(parse_set_expr(text).terms.at(0)); }

/// Every value of T over [0, B]^d inside [lo, hi].
std::vector<BigInt> brute(const PSetTerm& T, long B, const BigInt& lo, const BigInt& hi) {
  std::set<BigInt> out;
  std::vector<std::uint64_t> n(T.d(), 0);
  while (true) {
    Rational v = T.c0;
    for (unsigned i = 0; i < T.d(); ++i)
      for (unsigned j = 0; j <= T.r(); ++j) v += T.c[i][j] * big_pow(T.q, (1ULL << j) * n[i]);
    REQUIRE(is_integer(v));
    const BigInt x = boost::multiprecision::numerator(v);
    if (x >= lo && x <= hi) out.insert(x);
    unsigned i = T.d();
    while (i > 0 && n[i - 1] == static_cast<std::uint64_t>(B)) n[--i] = 0;
    if (i == 0) break;
    ++n[i - 1];
  }
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("membership verdicts") {
  const PSetTerm T = term("PS(5;-1;[1])");
  auto v = pset_member(24, T);
  CHECK(v.answer == Answer::Yes);
  CHECK(v.witness == std::vector<std::uint64_t>{2});
  CHECK(pset_member(30, T).answer == Answer::No);
  CHECK(pset_member(-5, T).answer == Answer::No);

  const PSetTerm W = term("PS(25;0;[1,1])");
  v = pset_member(650, W);
  CHECK(v.answer == Answer::Yes);
  CHECK(v.witness == std::vector<std::uint64_t>{1});
  CHECK(pset_member(651, W).answer == Answer::No);

  // Leading coefficients of both signs: only search is possible.
  const PSetTerm M = term("PS(5;0;[1|-1])");
  CHECK_FALSE(certifiable(M));
  v = pset_member(20, M, 5);
  CHECK(v.answer == Answer::Yes);
  CHECK(v.witness == std::vector<std::uint64_t>{2, 1});
  v = pset_member(3, M, 6);
  CHECK(v.answer == Answer::Unknown);
  CHECK(v.searched == 6);

  // Decreasing terms are certified by symmetry.
  const PSetTerm D = term("PS(25;1;[-1])");
  CHECK(pset_member(-624, D).answer == Answer::Yes);
  CHECK(pset_member(-623, D).answer == Answer::No);
}

TEST_CASE("windows") {
  CHECK(window(parse_set_expr("PS(25;0;[1,1])"), 1000) == ints({2, 650}));
  CHECK(window(parse_set_expr("AP(1,6)"), 20) == ints({1, 7, 13, 19}));
  CHECK(window(parse_set_expr("PS(5;-1;[1])"), 130) == ints({0, 4, 24, 124}));
  CHECK(window(parse_set_expr("AP(-3,0) + AP(4,0)"), 10) == ints({4}));
  CHECK(window(parse_set_expr("PS(25;1;[-1])"), -700, 10) == ints({-624, -24, 0}));
  CHECK(window(parse_set_expr("PS(5;-1;[1]) add{17} del{4}"), 30) == ints({0, 17, 24}));
  CHECK(window(parse_set_expr("AP(-7,3) in N"), -10, 10) == ints({2, 5, 8}));
  CHECK_THROWS_AS(window(parse_set_expr("PS(5;0;[1|-1])"), 10), UndecidedError);
  // The mixed term's values in the window are all found by search up to the first gap.
  try {
    window(parse_set_expr("PS(5;0;[1|-1])"), 10);
  } catch (const UndecidedError& e) {
    CHECK(std::string(e.what()).find("undecided element 1") != std::string::npos);
  }
}

TEST_CASE("closure operations") {
  const SetExpr ap = parse_set_expr("AP(0,3)");
  CHECK(to_string(affine(2, 1, ap)) == "AP(1,6)");
  const SetExpr T = parse_set_expr("PS(5;-1;[1])");
  CHECK(window(affine(0, 7, T), 100) == ints({7}));
  CHECK(window(affine(3, 2, T), 74) == ints({2, 14, 74}));
  CHECK(window(affine(0, 7, parse_set_expr("AP(3,0) del{3}")), 100).empty());

  const SetExpr n = intersect_nat(parse_set_expr("AP(-1,0) + PS(5;-1;[1])"));
  CHECK(expr_member(-1, n).answer == Answer::No);
  CHECK_THROWS_AS(affine(-1, 0, n), DomainError);
  // -1 is excluded before the map and must stay excluded after it.
  CHECK(window(affine(1, 1, n), 30) == ints({1, 5, 25}));

  const SetExpr u = set_union(parse_set_expr("PS(5;-1;[1]) del{4}"), parse_set_expr("AP(0,2)"));
  CHECK(window(u, 30) == ints({0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30}));
  const SetExpr u2 = set_union(parse_set_expr("PS(5;-1;[1]) del{4}"), parse_set_expr("AP(1,2)"));
  CHECK(window(u2, 6) == ints({0, 1, 3, 5}));
  CHECK_THROWS_AS(set_union(n, ap), DomainError);
}

TEST_CASE("classification") {
  CHECK(classify(parse_set_expr("AP(3,5)"), 5) == Classification::PNormal);
  CHECK(classify(parse_set_expr("PS(5;-1;[1])"), 5) == Classification::PNormal);
  CHECK(classify(parse_set_expr("PS(25;0;[1,1])"), 5) == Classification::WidelyOnly);
  CHECK(classify(parse_set_expr("A(25;1,1) + B(625;3,2)"), 5) == Classification::PNormal);
  // A vanishing top column does not make a term wide.
  CHECK(classify(parse_set_expr("PS(5;0;[2,0])"), 5) == Classification::PNormal);
  CHECK(classify(parse_set_expr("PS(5;1/2;[1/2])"), 5) == Classification::PNormal);
  PSetTerm bad;
  bad.q = 5;
  bad.c0 = 0;
  bad.c = {{Rational(1, 3)}};
  SetExpr e;
  e.terms.emplace_back(bad);
  CHECK(classify(e, 5) == Classification::Invalid);
  CHECK(to_string(Classification::WidelyOnly) == "widely-p-normal-only");
}

TEST_CASE("finite differences") {
  const SetExpr a = parse_set_expr("PS(5;-1;[1])");
  const SetExpr b = set_union(a, parse_set_expr("add{17}"));
  auto rep = equal_up_to_finite(a, a, 0, 100, 50);
  CHECK(rep.differences.empty());
  CHECK(rep.consistent);
  rep = equal_up_to_finite(a, b, 0, 100, 50);
  CHECK(rep.differences == ints({17}));
  CHECK(rep.consistent);
  rep = equal_up_to_finite(parse_set_expr("AP(0,2)"), parse_set_expr("AP(1,2)"), 0, 100, 50);
  CHECK(rep.differences.size() == 101);
  CHECK_FALSE(rep.consistent);
  CHECK_THROWS_AS(equal_up_to_finite(a, b, 5, 5, 1), DomainError);
}

TEST_CASE("grammar") {
  for (const std::string text : {"AP(1,6)", "PS(25;0;[1,1])", "PS(5;-1;[1/4|3/4])", "AP(2,0) + PS(5;-1;[1]) add{17} del{4}",
                                 "AP(0,3) in N", "add{}"}) {
    CHECK(to_string(parse_set_expr(text)) == text);
  }
  CHECK(to_string(parse_set_expr(" A( 25 ; 1 , 625 ) ")) == "PS(25;0;[1|625])");
  CHECK(to_string(parse_set_expr("B(25;3,2)")) == "PS(25;3;[2])");
  CHECK_THROWS_AS(parse_set_expr("AP(1,-2)"), ParseError);
  CHECK_THROWS_AS(parse_set_expr("AP(1,2) +"), ParseError);
  CHECK_THROWS_AS(parse_set_expr("PS(5;0;[1,2|3])"), InvalidTerm);
  CHECK_THROWS_AS(parse_set_expr("PS(6;0;[1])"), InvalidTerm);
  CHECK_THROWS_AS(parse_set_expr("A(5;1,1)"), InvalidTerm);
  CHECK_THROWS_AS(parse_set_expr("A(25;5,1)"), InvalidTerm);
  CHECK_THROWS_AS(parse_set_expr("B(25;-1,1)"), InvalidTerm);
  CHECK_THROWS_AS(parse_set_expr("B(25;0,0)"), InvalidTerm);
  CHECK_THROWS_AS(parse_set_expr("AP(1,2) add{3} del{3}"), ParseError);
  CHECK_THROWS_AS(parse_set_expr("AP(x,2)"), ParseError);
}

TEST_CASE("validation") {
  // Denominators (q-1) and (q^2-1)(q^2-q) are allowed for r = 1; a value check then rules out 1/4 alone.
  CHECK_NOTHROW(validate(term("PS(5;-1/4;[1/4])"), 5));
  PSetTerm T = term("PS(5;-1/4;[1/4])");
  T.c0 = 0;
  CHECK_THROWS_AS(validate(T, 5), InvalidTerm);
  // 1/20 would need a denominator 20 which exceeds q - 1 = 4 for r = 0.
  T.c0 = Rational(-1, 20);
  T.c = {{Rational(1, 20)}};
  CHECK_THROWS_AS(validate(T, 5), InvalidTerm);
  // (q^2 - q) divides the allowed denominator of c_11 for r = 1: 25 m^2 - 5 m stays integral after /20.
  T.q = 5;
  T.c0 = 0;
  T.c = {{Rational(-1, 20), Rational(1, 20)}};
  CHECK_NOTHROW(validate(T, 5));
  T.c = {{Rational(-1, 20), Rational(1, 20)}, {Rational(1, 3), Rational(0)}};
  CHECK_THROWS_AS(validate(T, 5), InvalidTerm);
  // Ragged rows.
  T.c = {{Rational(1)}, {Rational(1), Rational(2)}};
  CHECK_THROWS_AS(validate(T, 5), InvalidTerm);
}

TEST_CASE("property: corrupted denominators are rejected") {
  std::mt19937_64 rng(11);
  int corrupted = 0;
  for (int k = 0; k < 100; ++k) {
    PSetTerm T = testgen::pset_term(rng);
    REQUIRE_NOTHROW(validate(T, 5));
    const unsigned i = static_cast<unsigned>(testgen::uniform(rng, 0, T.d() - 1));
    const unsigned j = static_cast<unsigned>(testgen::uniform(rng, 0, T.r()));
    BigInt bound = big_pow(T.q, 1ULL << j) - 1;
    for (unsigned s = 0; s <= T.r(); ++s)
      if (s != j) bound *= big_pow(T.q, 1ULL << j) - big_pow(T.q, 1ULL << s);
    // A prime above the allowed denominator cannot cancel.
    T.c[i][j] += Rational(1, 1000003);
    CHECK_THROWS_AS(validate(T, 5), InvalidTerm);
    ++corrupted;
  }
  CHECK(corrupted == 100);
}

TEST_CASE("property: windows match brute-force enumeration") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 60; ++k) {
    const PSetTerm T = testgen::pset_term(rng);
    const BigInt N = 1000000;
    const auto w = window(SetExpr::of(T), 0, N);
    CHECK(w == brute(T, 10, 0, N));
  }
}

TEST_CASE("property: affine maps commute with windows") {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 40; ++k) {
    const PSetTerm T = testgen::pset_term(rng);
    SetExpr E = SetExpr::of(T);
    E.terms.emplace_back(APTerm{testgen::uniform(rng, -5, 5), testgen::uniform(rng, 0, 9)});
    // Over Z, negative elements t with a t + b >= 0 would enter the image window.
    E = intersect_nat(E);
    const long a = testgen::uniform(rng, 1, 5), b = testgen::uniform(rng, 0, 20);
    const std::uint64_t N = 5000;
    auto expect = window(E, N);
    for (auto& x : expect) x = a * x + b;
    CHECK(window(affine(a, b, E), 0, BigInt(a) * N + b) == expect);
  }
}

TEST_CASE("property: p-normal terms lie in the matching normal-form set") {
  std::mt19937_64 rng(7);
  int normal = 0;
  for (int k = 0; k < 80; ++k) {
    const PSetTerm T = testgen::pset_term(rng);
    SetExpr E = SetExpr::of(T);
    if (classify(E, 5) != Classification::PNormal) continue;
    ++normal;
    // {(c0' + sum c_i q^n_i) / (q - 1)} with c0' = (q-1) c0 and c_i = (q-1) c_i0.
    const BigInt m = T.q - 1;
    std::set<BigInt> ref;
    std::vector<std::uint64_t> n(T.d(), 0);
    while (true) {
      Rational v = T.c0 * m;
      for (unsigned i = 0; i < T.d(); ++i) v += T.c[i][0] * m * big_pow(T.q, n[i]);
      REQUIRE(is_integer(v / m));
      ref.insert(boost::multiprecision::numerator(Rational(v / m)));
      unsigned i = T.d();
      while (i > 0 && n[i - 1] == 12) n[--i] = 0;
      if (i == 0) break;
      ++n[i - 1];
    }
    for (const auto& x : window(E, 100000)) CHECK(ref.count(x) == 1);
  }
  CHECK(normal > 10);
}

TEST_CASE("two-exponential equations") {
  auto d = two_exponential_decompose(1, 1, 0, {2}, 5, 10);
  REQUIRE(d.components.size() == 1);
  CHECK(d.components[0] == ExpComponent{ExpComponent::Form::Diagonal, 0, 0});
  CHECK(d.components[0].str() == "{(n+0,n+0)}");

  d = two_exponential_decompose(1, -1, 0, {}, 5, 10);
  REQUIRE(d.components.size() == 1);
  CHECK(d.components[0].form == ExpComponent::Form::Diagonal);

  d = two_exponential_decompose(2, 3, 1, {4}, 5, 10);
  REQUIRE(d.components.size() == 1);
  CHECK(d.components[0] == ExpComponent{ExpComponent::Form::Singleton, 0, 0});

  // Always solvable: m = (n1, n2).
  d = two_exponential_decompose(3, -2, 0, {3, -2}, 5, 8);
  REQUIRE(d.components.size() == 1);
  CHECK(d.components[0].form == ExpComponent::Form::Quadrant);

  // 5^n1 + 5^n2 = 1 + 5^m forces n1 = 0 or n2 = 0.
  d = two_exponential_decompose(1, 1, 1, {1}, 5, 8);
  REQUIRE(d.components.size() == 2);
  CHECK(d.components[0] == ExpComponent{ExpComponent::Form::FirstRay, 0, 0});
  CHECK(d.components[1] == ExpComponent{ExpComponent::Form::SecondRay, 0, 0});
  CHECK(d.certified_window == 16);

  CHECK(two_exponential_solvable(1, 1, 0, {1, 1}, 5, 3, 7));
  CHECK_FALSE(two_exponential_solvable(1, 1, 0, {2}, 5, 3, 7));
  CHECK(two_exponential_solvable(Rational(1, 2), Rational(1, 2), 0, {1}, 5, 4, 4));
  // Cancelling pairs far above the rest: 5^n1 = 5^m1 + 7 * 5^m2 - 7 * 5^m3 needs m2 = m3.
  CHECK(two_exponential_solvable(1, 0, 0, {1, 7, -7}, 5, 9, 0));
  CHECK_THROWS_AS(two_exponential_decompose(1, 1, 0, {}, 1, 5), DomainError);
}
