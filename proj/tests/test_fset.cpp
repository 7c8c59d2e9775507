#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "generators.hpp"
#include "retset/errors.hpp"
#include "retset/fset.hpp"
#include "retset/recurrence.hpp"

#include <set>

using namespace retset;

namespace {

std::vector<BigInt> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

ModElem elem(std::initializer_list<long> f, std::initializer_list<long> t = {}) { return {ints(f), ints(t)}; }

/// Z + Z/3 with Phi(a, s) = (5a, 2s).
FrobeniusSpec mixed_spec() {
  FrobeniusSpec s;
  s.M = {1, ints({3})};
  s.free_map = {ints({5})};
  s.tor_map = {ints({2})};
  s.mixed_map = {ints({0})};
  s.P = ints({10, -7, 1});
  s.q = 5;
  return s;
}

FrobeniusSpec scalar_spec(unsigned rank, long k) {
  FrobeniusSpec s;
  s.M = {rank, {}};
  s.free_map.assign(rank, std::vector<BigInt>(rank, 0));
  for (unsigned i = 0; i < rank; ++i) s.free_map[i][i] = k;
  s.P = ints({-k, 1});
  s.q = k;
  return s;
}

/// Z^2 with Phi = [[0, -5], [1, 0]], so Phi^2 = -5.
FrobeniusSpec rotation_spec() {
  FrobeniusSpec s;
  s.M = {2, {}};
  s.free_map = {ints({0, -5}), ints({1, 0})};
  s.P = ints({5, 0, 1});
  s.q = 5;
  return s;
}

/// Characteristic polynomial by Faddeev-LeVerrier, constant term first.
std::vector<BigInt> charpoly(const Matrix& A) {
  const std::size_t n = A.size();
  std::vector<BigInt> c(n + 1, 0);
  c[n] = 1;
  Matrix Mk(n, std::vector<BigInt>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t t = 0; t < n; ++t) next[i][j] += A[i][t] * Mk[t][j];
        if (i == j) next[i][j] += c[n - k + 1];
      }
    Mk = next;
    BigInt tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < n; ++t) tr += A[i][t] * Mk[t][i];
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

/// Torsion-free module of rank 1..3 with a random integer matrix and its characteristic polynomial.
FrobeniusSpec random_spec(std::mt19937_64& rng) {
  FrobeniusSpec s;
  const auto l = static_cast<unsigned>(testgen::uniform(rng, 1, 3));
  s.M = {l, {}};
  s.free_map.assign(l, std::vector<BigInt>(l, 0));
  for (auto& row : s.free_map)
    for (auto& x : row) x = testgen::uniform(rng, -4, 4);
  s.P = charpoly(s.free_map);
  s.q = 5;
  return s;
}

std::set<BigInt> values_of(const SetExpr& E, long B) {
  std::set<BigInt> out;
  for (const auto& t : E.terms) {
    if (const auto* ap = std::get_if<APTerm>(&t)) {
      out.insert(ap->a);
      continue;
    }
    const auto& T = std::get<PSetTerm>(t);
    std::vector<std::uint64_t> n(T.d(), 0);
    while (true) {
      const Rational v = T.value(n);
      REQUIRE(is_integer(v));
      out.insert(boost::multiprecision::numerator(v));
      unsigned i = T.d();
      while (i > 0 && n[i - 1] == static_cast<std::uint64_t>(B)) n[--i] = 0;
      if (i == 0) break;
      ++n[i - 1];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("Frobenius powers") {
  const auto s5 = scalar_spec(1, 5);
  CHECK(phi_power_apply(3, elem({1}), s5) == elem({125}));
  CHECK(phi_power_apply(0, elem({7}), s5) == elem({7}));
  const auto mixed = mixed_spec();
  CHECK_NOTHROW(mixed.validate());
  CHECK(phi_power_apply(2, elem({1}, {1}), mixed) == elem({25}, {1}));
  CHECK(to_string(elem({25}, {1})) == "(25; 1)");

  FrobeniusSpec bad = mixed;
  bad.P = ints({-4, 1});
  CHECK_THROWS_AS(bad.validate(), DomainError);
  // Z/2 -> Z/3 must be zero.
  bad = mixed;
  bad.M.torsion = ints({2, 3});
  bad.tor_map = {ints({1, 0}), ints({1, 1})};
  bad.mixed_map = {ints({0}), ints({0})};
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("Frobenius powers agree with iteration") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const FrobeniusSpec s = random_spec(rng);
    REQUIRE_NOTHROW(s.validate());
    ModElem x = s.M.zero();
    for (auto& v : x.free) v = testgen::uniform(rng, -9, 9);
    ModElem it = x;
    for (std::uint64_t n = 0; n <= 12; ++n) {
      REQUIRE(phi_power_apply(n, x, s) == it);
      it = s.apply(it);
    }
  }
}

TEST_CASE("rotation eigenvalues through quadratic integers") {
  // Phi^2 = -5 matches (sqrt(-5))^n in Z[w], w^2 = -5.
  const auto s = rotation_spec();
  const QuadInt w = QuadInt::omega(0, 5);
  for (std::uint64_t n = 0; n <= 10; ++n) {
    const QuadInt p = w.pow(n);
    const ModElem x = phi_power_apply(n, elem({1, 0}), s);
    // w^n = a + b w and Phi^n e1 = a e1 + b Phi(e1) = (a, b).
    CHECK(x == ModElem{{p.a, p.b}, {}});
  }
}

TEST_CASE("index set examples") {
  const auto mixed = mixed_spec();
  FSetSpec odd{elem({0}, {1}), {{elem({1}, {1})}}, 1};
  const auto D = decompose_index_set(mixed, odd, elem({1}, {0}), 8);
  CHECK(D.exact);
  REQUIRE(D.cosets.size() == 1);
  CHECK(D.cosets[0].str() == "coset base=(1) rect=(0) req=[mult(1,2)]");
  CHECK(to_string(D.cosets[0].H.canonical()) == "[2*(1)]");

  const auto s5 = scalar_spec(1, 5);
  const auto all = decompose_index_set(s5, FSetSpec{elem({0}), {{elem({4})}}, 1}, elem({1}), 8);
  CHECK(all.exact);
  REQUIRE(all.cosets.size() == 1);
  CHECK(all.cosets[0].str() == "coset base=(0) rect=(0) req=[]");

  const auto plane = decompose_index_set(s5, FSetSpec{elem({0}), {{elem({1})}, {elem({1})}}, 1}, elem({1}), 8);
  CHECK(plane.exact);
  REQUIRE(plane.cosets.size() == 1);
  CHECK(plane.cosets[0].str() == "coset base=(0,0) rect=(0,0) req=[]");

  // 5^n in 3Z never holds, 5^n - 1 in 4Z always does, 5^n + 1 in 3Z for odd n.
  CHECK(decompose_index_set(s5, FSetSpec{elem({0}), {{elem({1})}}, 1}, elem({3}), 8).cosets.empty());
  CHECK(decompose_index_set(s5, FSetSpec{elem({-1}), {{elem({1})}}, 1}, elem({4}), 8).cosets.size() == 1);
  const auto shifted = decompose_index_set(s5, FSetSpec{elem({1}), {{elem({1})}}, 1}, elem({3}), 8);
  REQUIRE(shifted.cosets.size() == 1);
  CHECK(shifted.cosets[0].str() == "coset base=(1) rect=(0) req=[mult(1,2)]");
  // 5^n - 1 in 5Z only at n = 0.
  const auto zero = decompose_index_set(s5, FSetSpec{elem({-1}), {{elem({1})}}, 1}, elem({5}), 8);
  REQUIRE(zero.cosets.size() == 1);
  CHECK(zero.cosets[0].str() == "coset base=(0) rect=(0) req=[zero(1)]");
}

TEST_CASE("exact decompositions match brute force") {
  std::mt19937_64 rng(22);
  const auto mixed = mixed_spec();
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = static_cast<unsigned>(testgen::uniform(rng, 1, 2));
    FSetSpec F;
    F.alpha0 = elem({testgen::uniform(rng, -6, 6)}, {testgen::uniform(rng, 0, 2)});
    F.stride = static_cast<std::uint64_t>(testgen::uniform(rng, 1, 2));
    for (unsigned i = 0; i < d; ++i) {
      std::vector<ModElem> row;
      const long width = testgen::uniform(rng, 1, 2);
      for (long j = 0; j < width; ++j) row.push_back(elem({testgen::uniform(rng, -3, 3)}, {testgen::uniform(rng, 0, 2)}));
      F.alpha.push_back(row);
    }
    const ModElem g0 = elem({testgen::uniform(rng, 1, 4) * (testgen::uniform(rng, 0, 1) ? 1 : -1)}, {testgen::uniform(rng, 0, 2)});
    const std::uint64_t N = 6;
    const auto D = decompose_index_set(mixed, F, g0, N);
    REQUIRE(D.exact);
    std::vector<std::uint64_t> n(d, 0);
    while (true) {
      const bool truth = in_cyclic(mixed.M, F.point(mixed, n), g0);
      REQUIRE(D.member(IntVec(n.begin(), n.end())) == truth);
      unsigned i = d;
      while (i > 0 && n[i - 1] == 2 * N) n[--i] = 0;
      if (i == 0) break;
      ++n[i - 1];
    }
  }
}

TEST_CASE("orbits without invariant lines") {
  // No Phi-stable subgroup of Z*(1,0); only alpha = 0 returns for every n.
  const auto s = rotation_spec();
  const ModElem g = elem({1, 0});
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    ModElem a = elem({testgen::uniform(rng, -3, 3), testgen::uniform(rng, -3, 3)});
    if (trial == 0) a = elem({0, 0});
    const auto D = decompose_index_set(s, FSetSpec{elem({0, 0}), {{a}}, 1}, g, 8);
    if (a != elem({0, 0})) {
      CHECK_FALSE(D.exact);
      CHECK(D.certified_window == 16);
    }
    const bool full = D.cosets.size() == 1 && D.cosets[0].str() == "coset base=(0) rect=(0) req=[]";
    CHECK(full == (a == elem({0, 0})));
    if (a.free[0] != 0 && a.free[1] == 0) CHECK(D.str() == "window-certified [0,16]\ncoset base=(0) rect=(0) req=[mult(1,2)]\n");
  }
}

TEST_CASE("diagonal index sets are reported, not guessed") {
  // 5^n1 - 5^n2 = 0 exactly on the diagonal.
  const auto s = scalar_spec(2, 5);
  FSetSpec F{elem({0, 0}), {{elem({0, 1})}, {elem({0, -1})}}, 1};
  CHECK_THROWS_AS(decompose_index_set(s, F, elem({1, 0}), 6), FitFailure);
}

TEST_CASE("closed form of orbit sums") {
  SUBCASE("examples") {
    const auto E = frobenius_orbit_closed_form(0, ints({4}), 5);
    CHECK(to_string(E) == "PS(5;-1;[1])");
    const auto neg = frobenius_orbit_closed_form(0, ints({6}), -5);
    REQUIRE(neg.terms.size() == 2);
    CHECK(to_string(std::get<PSetTerm>(neg.terms[0])) == "PS(25;1;[-1])");
    CHECK(to_string(std::get<PSetTerm>(neg.terms[1])) == "PS(25;1;[5])");
    CHECK(to_string(frobenius_orbit_closed_form(7, ints({0}), 5)) == "AP(7,0)");
    CHECK_THROWS_AS(frobenius_orbit_closed_form(0, ints({1}), 6), DomainError);
    CHECK_THROWS_AS(frobenius_orbit_closed_form(0, ints({1}), 1), DomainError);
  }
  SUBCASE("matches brute force orbit sums") {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 50; ++trial) {
      const long e = testgen::uniform(rng, 1, 2);
      const BigInt t = (testgen::uniform(rng, 0, 1) ? 1 : -1) * big_pow(5, e);
      const long d = testgen::uniform(rng, 1, 3);
      const BigInt c = testgen::uniform(rng, -20, 20);
      std::vector<BigInt> l;
      for (long i = 0; i < d; ++i) l.push_back(testgen::uniform(rng, -6, 6));
      const auto E = frobenius_orbit_closed_form(c, l, t);
      for (const auto& term : E.terms)
        if (const auto* T = std::get_if<PSetTerm>(&term)) REQUIRE_NOTHROW(validate(*T, 5));
      // Orbit sums over n in [0, top]^d; negative t compares n = 2m + eps with m <= 3.
      const std::uint64_t top = t > 0 ? 8 : 7;
      std::set<BigInt> brute;
      std::vector<std::uint64_t> n(d, 0);
      while (true) {
        BigInt v = c;
        for (long i = 0; i < d; ++i) v += l[i] * ((big_pow(t, n[i]) - 1) / (t - 1));
        brute.insert(v);
        long i = d;
        while (i > 0 && n[i - 1] == top) n[--i] = 0;
        if (i == 0) break;
        ++n[i - 1];
      }
      CAPTURE(to_string(E));
      CHECK(values_of(E, t > 0 ? 8 : 3) == brute);
    }
  }
}

TEST_CASE("power coefficient fitting") {
  std::vector<BigInt> samples;
  for (unsigned n = 0; n <= default_fit_nmax(2); ++n) samples.push_back(3 * big_pow(25, n) + 2 * big_pow(625, n));
  CHECK(samples[1] == 1325);
  CHECK(samples[2] == 783125);
  const auto c = fit_power_coefficients(samples, 25, 2);
  REQUIRE(c);
  CHECK(*c == std::vector<Rational>{3, 2});

  const auto zero = fit_power_coefficients(std::vector<BigInt>(6, 0), 25, 3);
  REQUIRE(zero);
  CHECK(*zero == std::vector<Rational>{0, 0, 0});

  CHECK_FALSE(fit_power_coefficients(ints({1, 26, 626}), 25, 1).has_value());
  CHECK_THROWS_AS(fit_power_coefficients(ints({1, 26}), 25, 1), DomainError);

  // Rational coefficients: l_n = (5^n + 25^n)/2.
  std::vector<BigInt> half;
  for (unsigned n = 0; n < 7; ++n) half.push_back((big_pow(5, n) + big_pow(25, n)) / 2);
  const auto h = fit_power_coefficients(half, 5, 2);
  REQUIRE(h);
  CHECK(*h == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("telescoping recovers coefficients") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const BigInt q = testgen::uniform(rng, 0, 1) ? 5 : 25;
    const unsigned r = static_cast<unsigned>(testgen::uniform(rng, 1, 3));
    std::vector<Rational> c;
    for (unsigned j = 0; j < r; ++j) c.push_back(testgen::uniform(rng, -9, 9));
    std::vector<Rational> cprime(r, 0);
    for (unsigned j = 1; j < r; ++j) cprime[j] = c[j] * Rational(big_pow(q, std::uint64_t{1} << j) - q);
    Rational l0 = 0;
    for (const auto& x : c) l0 += x;
    CHECK(telescoping_coefficients(l0, cprime, q) == c);
  }
}

TEST_CASE("problem text") {
  const auto P = parse_fset_problem(R"(
[module]
rank = 1
torsion = 3
[frobenius]
free = 5
torsion = 2
P = 10 -7 1
q = 5
[fset]
g0 = (1; 0)
alpha0 = (0; 1)
alpha = (1; 1)
)");
  CHECK(P.spec.M.rank == 1);
  CHECK(P.fset.d() == 1);
  CHECK(decompose_index_set(P.spec, P.fset, P.g0, 8).str() == "exact\ncoset base=(1) rect=(0) req=[mult(1,2)]\n");
  CHECK_THROWS_AS(parse_fset_problem("[module]\nrank = 1\n[frobenius]\nfree = 5\nP = -5 1\nq = 5\n[fset]\nbogus = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_fset_problem("[module]\nrank = 1\n[frobenius]\nfree = 5\nP = -4 1\nq = 5\n[fset]\ng0 = (1)\n"), DomainError);
}
