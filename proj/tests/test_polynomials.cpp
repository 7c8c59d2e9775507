#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "retset/dense_poly.hpp"
#include "retset/errors.hpp"
#include "retset/ratfunc.hpp"
#include "retset/sparse_poly.hpp"
#include "retset/specialization.hpp"

#include <random>

using namespace retset;

namespace {

SparsePoly random_sparse(const FieldPtr& f, std::mt19937_64& rng, int max_terms, int max_exp) {
  std::uniform_int_distribution<int> nt(0, max_terms), ex(0, max_exp);
  std::vector<SparseTerm> terms;
  const int n = nt(rng);
  for (int i = 0; i < n; ++i) terms.push_back({BigInt(ex(rng)), f->random(rng)});
  return SparsePoly(f, std::move(terms));
}

// Oracle: naive repeated multiplication.
SparsePoly naive_pow(const SparsePoly& f, unsigned n) {
  SparsePoly r = SparsePoly::constant(f.field(), f.field()->one());
  for (unsigned i = 0; i < n; ++i) r = r * f;
  return r;
}

}  // namespace

TEST_CASE("frobenius power of sparse polynomials") {
  auto f5 = FieldCtx::make(5, 1);
  auto f = parse_sparse(f5, "t^3 + 2");
  CHECK(sparse_frob_pow(f, 1).str() == "t^15 + 2");
  CHECK(sparse_frob_pow(f, 0) == f);
  auto g = parse_sparse(f5, "t + 1");
  CHECK(sparse_frob_pow(g, 2).str() == "t^25 + 1");
  CHECK(g.pow(25) == parse_sparse(f5, "t^25+1"));
  CHECK(naive_pow(g, 25) == parse_sparse(f5, "t^25+1"));
}

TEST_CASE("frobenius is a ring map on random sparse polynomials") {
  std::mt19937_64 rng(11);
  for (unsigned k : {1U, 2U}) {
    auto F = FieldCtx::make(5, k);
    for (int i = 0; i < 50; ++i) {
      auto a = random_sparse(F, rng, 6, 40), b = random_sparse(F, rng, 6, 40);
      const std::uint64_t e = rng() % 4;
      CHECK((a * b).frob_pow(e) == a.frob_pow(e) * b.frob_pow(e));
      CHECK((a + b).frob_pow(e) == a.frob_pow(e) + b.frob_pow(e));
      CHECK(a.frob_pow(1) == naive_pow(a, 5));
    }
  }
}

TEST_CASE("digit power matches naive power") {
  std::mt19937_64 rng(5);
  auto F = FieldCtx::make(5, 2);
  for (int i = 0; i < 30; ++i) {
    auto a = random_sparse(F, rng, 4, 6);
    const unsigned n = rng() % 40;
    CHECK(a.pow(n) == naive_pow(a, n));
  }
}

TEST_CASE("huge exponents stay sparse") {
  auto F = FieldCtx::make(5, 1);
  auto g = parse_sparse(F, "t + 1");
  auto h = g.pow(big_pow(5, 40) + big_pow(5, 80));
  CHECK(h.size() == 4);
  CHECK(h.degree() == big_pow(5, 40) + big_pow(5, 80));
}

TEST_CASE("serialization round trip") {
  auto F = FieldCtx::make(5, 2);
  auto p = parse_sparse(F, "3*t^15625 + [1,2]*t^7 - t + 2");
  CHECK(parse_sparse(F, p.str()) == p);
  CHECK(p.str() == "3*t^15625 + [1,2]*t^7 + 4*t + 2");
  CHECK_THROWS_AS(parse_sparse(F, "3*x^2"), ParseError);
}

TEST_CASE("rational function equality") {
  auto F = FieldCtx::make(5, 1);
  RatFunc a(parse_sparse(F, "t^2 - 1"), parse_sparse(F, "t - 1"));
  RatFunc b(parse_sparse(F, "t + 1"));
  CHECK(ratfunc_eq(a, b).equal);
  CHECK_FALSE(ratfunc_eq(RatFunc::t(F), b).equal);
  CHECK_THROWS_AS(RatFunc(parse_sparse(F, "t"), SparsePoly(F)), DivisionByZero);
}

TEST_CASE("torus identity at n = 2 over F_25") {
  auto F = FieldCtx::make(5, 2);
  const FqElem alpha = F->gen_u();
  auto tp = RatFunc(SparsePoly(F, {{1, F->one()}, {0, alpha}}));
  auto tm = RatFunc(SparsePoly(F, {{1, F->one()}, {0, F->neg(alpha)}}));
  auto lhs = tp.pow(2) + tm.pow(2);
  auto rhs = RatFunc(SparsePoly(F, {{2, F->from_int(2)}, {0, F->scale(F->sqr(alpha), 2)}}));
  auto v = ratfunc_eq(lhs, rhs);
  CHECK(v.equal);
  CHECK_FALSE(v.probabilistic);
}

TEST_CASE("exact and specialization paths agree") {
  std::mt19937_64 rng(21);
  auto F = FieldCtx::make(5, 1);
  EqOptions forced;
  forced.exact_term_limit = 0;
  forced.field_degree = 10;
  for (int i = 0; i < 40; ++i) {
    auto n1 = random_sparse(F, rng, 4, 12), d1 = random_sparse(F, rng, 3, 8);
    auto n2 = random_sparse(F, rng, 4, 12);
    if (d1.is_zero()) d1 = SparsePoly::constant(F, F->one());
    RatFunc a(n1, d1);
    // b is equal to a in half the cases.
    RatFunc b = (i % 2 == 0) ? RatFunc(n1 * n2 + n1, d1 * n2 + d1) : RatFunc(n2 + n1, d1);
    if (b.den().is_zero()) continue;
    auto exact = ratfunc_eq(a, b);
    forced.seed = static_cast<std::uint64_t>(i);
    auto mc = ratfunc_eq(a, b, forced);
    CHECK(exact.equal == mc.equal);
    if (mc.equal) {
      CHECK(mc.probabilistic);
      CHECK(mc.error_bound < Rational(1, 1000000));
    }
  }
}

TEST_CASE("rational equality is an equivalence on random triples") {
  std::mt19937_64 rng(8);
  auto F = FieldCtx::make(5, 1);
  for (int i = 0; i < 40; ++i) {
    auto base_n = random_sparse(F, rng, 3, 5), base_d = random_sparse(F, rng, 2, 4);
    if (base_d.is_zero()) base_d = SparsePoly::constant(F, F->one());
    auto m1 = random_sparse(F, rng, 2, 3), m2 = random_sparse(F, rng, 2, 3);
    if (m1.is_zero() || m2.is_zero()) continue;
    RatFunc a(base_n, base_d), b(base_n * m1, base_d * m1), c(base_n * m2, base_d * m2);
    CHECK(ratfunc_eq(a, a).equal);
    CHECK(ratfunc_eq(a, b).equal == ratfunc_eq(b, a).equal);
    if (ratfunc_eq(a, b).equal && ratfunc_eq(b, c).equal) CHECK(ratfunc_eq(a, c).equal);
  }
}

TEST_CASE("specialization") {
  auto F = FieldCtx::make(5, 1);
  SpecializationSampler sampler(F, 1, false);
  auto s2 = sampler.at(sampler.target()->from_int(2));
  CHECK(specialize(RatFunc(parse_sparse(F, "t+1")), s2) == sampler.target()->from_int(3));
  auto s0 = sampler.at(sampler.target()->zero());
  CHECK(specialize(RatFunc(parse_sparse(F, "t^2-1"), parse_sparse(F, "t-1")), s0) == sampler.target()->one());
  CHECK_THROWS_AS(specialize(RatFunc(parse_sparse(F, "1"), parse_sparse(F, "t-2")), s2), BadSpecialization);
}

TEST_CASE("specialization is a ring homomorphism") {
  std::mt19937_64 rng(13);
  auto F = FieldCtx::make(5, 2);
  SpecializationSampler sampler(F, 6, true);
  CHECK(sampler.target()->k() == 12);
  for (int i = 0; i < 60; ++i) {
    auto a = random_sparse(F, rng, 5, 300), b = random_sparse(F, rng, 5, 300);
    auto s = sampler.draw(rng);
    const auto& T = s.target();
    CHECK(T.frob(s.theta(), 6) == s.theta());
    CHECK(s.eval(a + b) == T.add(s.eval(a), s.eval(b)));
    CHECK(s.eval(a * b) == T.mul(s.eval(a), s.eval(b)));
    CHECK(s.eval(a.frob_pow(3)) == T.frob(s.eval(a), 3));
    const FqElem c = F->random(rng), d = F->random(rng);
    CHECK(s.embed(F->mul(c, d)) == T.mul(s.embed(c), s.embed(d)));
  }
}

TEST_CASE("dense roots") {
  auto F = FieldCtx::make(5, 2);
  auto f = DensePoly::from_ints(F, {1, 0, 0, 1});  // x^3 + 1
  auto rs = roots(f);
  CHECK(rs.size() == 3);
  for (auto& r : rs) CHECK(F->is_zero(f.eval(r)));
  auto f5 = FieldCtx::make(5, 1);
  CHECK(roots(DensePoly::from_ints(f5, {1, 0, 0, 1})).size() == 1);
}
