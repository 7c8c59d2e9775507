#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "retset/elliptic_curve.hpp"
#include "retset/errors.hpp"

#include <random>

using namespace retset;

namespace {

FqPoint random_point(const CurveOver& C, std::mt19937_64& rng) {
  for (;;) {
    auto P = C.lift_x(C.field().random(rng));
    if (P) return *P;
  }
}

}  // namespace

TEST_CASE("supersingular curve over F_5") {
  EllipticCurve E(5, 0, 1);
  CHECK(E.count_fp() == 6);
  CHECK(E.trace() == 0);
  CHECK(E.supersingular());
  EllipticCurve E2(5, 0, 2);
  CHECK(E2.count_fp() == 6);
  CHECK(E2.supersingular());
  EllipticCurve ordinary(5, 1, 1);
  CHECK(ordinary.count_fp() == 9);
  CHECK_FALSE(ordinary.supersingular());
  CHECK_THROWS_AS(EllipticCurve(5, 0, 0), DomainError);
}

TEST_CASE("group law examples over F_5") {
  EllipticCurve E(5, 0, 1);
  CurveOver C(E, E.prime_field());
  const auto& f = C.field();
  const FqPoint P = FqPoint::affine(f.from_int(0), f.from_int(1));
  const FqPoint Pm = FqPoint::affine(f.from_int(0), f.from_int(4));
  const FqPoint Q = FqPoint::affine(f.from_int(2), f.from_int(2));
  CHECK(C.add(P, FqPoint::infinity()) == P);
  CHECK(C.add(P, Pm).inf);
  CHECK(C.add(P, Q) == FqPoint::affine(f.from_int(2), f.from_int(3)));
  CHECK(C.mul(3, P).inf);
  CHECK(C.dbl(P) == Pm);
  CHECK(C.mul(0, P).inf);
  CHECK(C.frob(P, 2) == P);
  CHECK(C.neg(C.frob(P, 2)) == C.mul_plain(5, P));
}

TEST_CASE("group axioms on random points") {
  std::mt19937_64 rng(17);
  EllipticCurve E(5, 0, 1);
  CurveOver C(E, FieldCtx::make(5, 6));
  for (int i = 0; i < 100; ++i) {
    const FqPoint P = random_point(C, rng), Q = random_point(C, rng), R = random_point(C, rng);
    CHECK(C.on_curve(P));
    CHECK(C.add(C.add(P, Q), R) == C.add(P, C.add(Q, R)));
    CHECK(C.add(P, Q) == C.add(Q, P));
    CHECK(C.add(P, C.neg(P)).inf);
    // F^2 = [-p]
    CHECK(C.frob(P, 2) == C.neg(C.mul_plain(5, P)));
    const BigInt n = rng() % 2000;
    CHECK(C.mul(n, P) == C.mul_plain(n, P));
  }
}

TEST_CASE("division polynomials") {
  EllipticCurve E(5, 0, 1);
  auto [f1, g1] = division_poly(1, E);
  CHECK(f1 == DensePoly::x(E.prime_field()));
  CHECK(g1 == DensePoly::from_ints(E.prime_field(), {1}));
  auto [f2, g2] = division_poly(2, E);
  CHECK(f2 == DensePoly::from_ints(E.prime_field(), {0, 2, 0, 0, 1}));
  CHECK(g2 == DensePoly::from_ints(E.prime_field(), {4, 0, 0, 4}));
  CHECK(E.prime_field()->is_zero(f2.eval(E.prime_field()->zero())));
  for (std::uint64_t m = 1; m <= 12; ++m) {
    if (m % 5 == 0) continue;
    auto [f, g] = division_poly(m, E);
    CHECK(f.degree() == static_cast<long>(m * m));
    CHECK(g.degree() == static_cast<long>(m * m - 1));
    CHECK(g.lead() == E.prime_field()->from_int(static_cast<std::int64_t>(m * m)));
    CHECK(gcd(f, g).degree() == 0);
  }
}

TEST_CASE("division polynomials agree with scalar multiplication") {
  std::mt19937_64 rng(23);
  for (auto [A, B] : {std::pair{0, 1}, std::pair{1, 1}, std::pair{2, 1}}) {
    EllipticCurve E(5, A, B);
    CurveOver C(E, FieldCtx::make(5, 8));
    const auto& F = C.field();
    for (std::uint64_t m = 1; m <= 12; ++m) {
      auto [f, g] = division_poly(m, E);
      std::vector<FqElem> fc, gc;
      for (auto& c : f.coeffs()) fc.push_back(F.from_int(c.c[0]));
      for (auto& c : g.coeffs()) gc.push_back(F.from_int(c.c[0]));
      DensePoly fe(C.field_ptr(), fc), ge(C.field_ptr(), gc);
      for (int i = 0; i < 10; ++i) {
        const FqPoint P = random_point(C, rng);
        const FqPoint mP = C.mul_plain(m, P);
        const FqElem gv = ge.eval(P.x);
        if (mP.inf) {
          CHECK(F.is_zero(gv));
        } else {
          CHECK(F.div(fe.eval(P.x), gv) == mP.x);
        }
      }
    }
  }
}

TEST_CASE("torsion counts") {
  EllipticCurve E(5, 0, 1);
  CHECK(torsion_count(1, E) == 1);
  CHECK(torsion_count(2, E) == 4);
  CHECK(torsion_count_at(2, E, 1) == 2);
  CHECK(torsion_count(5, E) == 1);
  CHECK(torsion_count(3, E) == 9);
  CHECK(torsion_count(10, E) == 4);
  CHECK_THROWS_AS(torsion_count(7, E, 1), ResourceError);
}

TEST_CASE("symbolic points and frobenius") {
  auto F = FieldCtx::make(5, 1);
  EllipticCurve E(5, 0, 1);
  SymCurve S(E, F);
  const SymPoint P = SymPoint::from_x(E, RatFunc::t(F));
  CHECK(S.on_curve(P));
  const SymPoint P5 = S.mul(5, P);
  CHECK(P5.x.str() == "t^25");
  CHECK(S.on_curve(P5));
  const SymPoint FP = S.frob(P, 1);
  CHECK(FP.x.str() == "t^5");
  CHECK(S.on_curve(FP));
  CHECK(S.mul(0, P).inf);
  // 5 P by the Frobenius route equals 5 P by the chord-tangent law.
  SymPoint acc = SymPoint::infinity();
  for (int i = 0; i < 5; ++i) acc = S.add(acc, P);
  CHECK(ratfunc_eq(acc.x, P5.x).equal);
  CHECK(ratfunc_eq(S.y_coefficient(acc), S.y_coefficient(P5)).equal);
}

TEST_CASE("specialization commutes with the group law") {
  std::mt19937_64 rng(29);
  auto F = FieldCtx::make(5, 1);
  EllipticCurve E(5, 0, 1);
  SymCurve S(E, F);
  SpecializationSampler sampler(F, 6, true);
  CurveOver C(E, sampler.target());
  const SymPoint Q1 = SymPoint::from_x(E, RatFunc(parse_sparse(F, "t+1")));
  const SymPoint Q2 = SymPoint::from_x(E, RatFunc(parse_sparse(F, "t")));
  for (int i = 0; i < 10; ++i) {
    const BigInt m = rng() % 50 + 1;
    const SymPoint mQ = S.mul(m, Q1);
    auto s = sampler.draw(rng);
    try {
      const FqPoint q = S.specialize(Q1, s);
      CHECK(C.on_curve(q));
      CHECK(S.specialize(mQ, s) == C.mul(m, q));
      CHECK(S.specialize(S.frob(Q2, 3), s) == C.frob(S.specialize(Q2, s), 3));
    } catch (const BadSpecialization&) {
    }
  }
  CHECK_THROWS_AS(S.add(Q1, Q2), FieldMismatch);
}
