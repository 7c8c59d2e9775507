#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "retset/config.hpp"
#include "retset/errors.hpp"
#include "retset/subvariety.hpp"

#include <random>

using namespace retset;

namespace {

const char* kTorusGroup = R"(
[field]
p = 5
k = 2
alpha = generator   # generator of the multiplicative group

[group]
torus dim=3

[point]
torus = t+alpha, t-alpha, t
)";

const char* kTorusVariety = R"(
[coordinates]
torus = x, y, z
[equations]
x + y = 2*z + 2*alpha^2
)";

const char* kSegreGroup = R"(
[field]
p = 5
[group]
curve A=0 B=1
curve A=0 B=1
[point]
curve = t+1 ; adjoin sqrt((t+1)^3+1)
curve = t ; adjoin sqrt(t^3+1)
)";

const char* kWitnessGroup = R"(
[field]
p = 5
[group]
torus dim=2
curve A=0 B=1
curve A=0 B=1
[point]
torus = t+1, t
curve = t+1
curve = t
)";

const char* kC1 = R"(
[coordinates]
torus = x0, x1
curve = P0, P1, P2
curve = Q0, Q1, Q2
[equations]
x0 = x1 + 1
P0 = 0
P2 = 0
Q0 = 0
Q2 = 0
[inequations]
x1
x1 + 1
)";

const char* kC2 = R"(
[coordinates]
torus = x0, x1
curve = P0, P1, P2
curve = Q0, Q1, Q2
[equations]
x0 = 1
x1 = 1
P0*Q2 = (Q0 + Q2)*P2
[inequations]
P2
Q2
)";

const char* kC3 = R"(
[coordinates]
torus = x0, x1
curve = P0, P1, P2
curve = Q0, Q1, Q2
[equations]
x0 = x1 + 1
P0 = x0*P2
Q0 = x1*Q2
[inequations]
P2
Q2
x1
x1 + 1
)";

CheckOptions mc(unsigned k = 18, std::uint64_t seed = 7) {
  CheckOptions o;
  o.mode = Mode::MonteCarlo;
  o.field_degree = k;
  o.seed = seed;
  return o;
}

}  // namespace

TEST_CASE("expression parser") {
  auto f = FieldCtx::make(5, 1);
  const RatFunc r = expr_to_ratfunc(parse_expr("2*t^3 - (t+1)/t + 7"), f, {});
  CHECK(ratfunc_eq(r, RatFunc(parse_sparse(f, "2*t^4 + t + 4"), parse_sparse(f, "t"))).equal);
  CHECK(expr_identifiers(parse_expr("x*y + alpha - x^2")) == std::vector<std::string>{"alpha", "x", "y"});
  CHECK(ratfunc_eq(expr_to_ratfunc(parse_expr("t^-2"), f, {}), RatFunc(parse_sparse(f, "1"), parse_sparse(f, "t^2"))).equal);
  CHECK_THROWS_AS(parse_expr("t +"), ParseError);
  CHECK_THROWS_AS(parse_expr("(t"), ParseError);
  CHECK_THROWS_AS(parse_expr("t $ 2"), ParseError);
  CHECK_THROWS_AS(expr_to_ratfunc(parse_expr("beta"), f, {}), ParseError);
  CHECK_THROWS_AS(expr_to_mpoly(parse_expr("x/y"), f, {"x", "y"}, {}), ParseError);
  const MPoly m = expr_to_mpoly(parse_expr("(x+y)^2 - x^2 - y^2"), f, {"x", "y"}, {});
  CHECK(m.str({"x", "y"}) == "2*x*y");
}

TEST_CASE("least generator of F_25") {
  auto f = FieldCtx::make(5, 2);
  const FqElem a = least_generator(*f);
  BigInt order = 0;
  FqElem x = a;
  for (int i = 1; i <= 24; ++i) {
    if (f->is_one(x)) {
      order = i;
      break;
    }
    x = f->mul(x, a);
  }
  CHECK(order == 24);
}

TEST_CASE("group config parsing") {
  const GroupConfig cfg = parse_group_config(kTorusGroup);
  CHECK(cfg.coeffs->k() == 2);
  CHECK(cfg.components.size() == 1);
  REQUIRE(cfg.point);
  CHECK(cfg.consts.count("alpha") == 1);

  const GroupConfig seg = parse_group_config(kSegreGroup);
  CHECK(seg.components.size() == 2);
  CHECK(!(*seg.point)[0].curve.inf);

  CHECK_THROWS_AS(parse_group_config("[field]\np=5\n"), ParseError);
  CHECK_THROWS_AS(parse_group_config("[field]\np=6\n[group]\ntorus dim=1\n"), ParseError);
  CHECK_THROWS_AS(parse_group_config("[field]\np=5\n[group]\nsphere dim=1\n"), ParseError);
  CHECK_THROWS_AS(parse_group_config("[field]\np=5\n[group]\ntorus dim=1\n[point]\ntorus = 0\n"), DomainError);
  CHECK_THROWS_AS(parse_group_config("[field]\np=5\n[group]\ncurve A=0 B=1\n[point]\ncurve = t ; adjoin sqrt(t^3+2)\n"),
                  DomainError);
  CHECK_THROWS_AS(parse_group_config("[field]\np=5\n[group]\ncurve A=0 B=1\n[point]\ncurve = 0, 2\n"), DomainError);
  // (0, 1) is on y^2 = x^3 + 1 with a rational y.
  const GroupConfig rat = parse_group_config("[field]\np=5\n[group]\ncurve A=0 B=1\n[point]\ncurve = 0, 1\n");
  CHECK((*rat.point)[0].curve.D.is_constant());
}

TEST_CASE("variety parsing") {
  const GroupConfig cfg = parse_group_config(kTorusGroup);
  const PolySystem V = parse_poly_system(kTorusVariety, cfg.coeffs, cfg.consts);
  CHECK(V.nvars() == 3);
  CHECK(V.equations().size() == 1);
  V.check_ambient(cfg.group());
  CHECK_THROWS_AS(parse_poly_system("[coordinates]\ntorus = x\n[equations]\nx + w\n", cfg.coeffs, cfg.consts), ParseError);
  CHECK_THROWS_AS(parse_poly_system("[coordinates]\ncurve = a, b, c\n[equations]\na + b*c\n", cfg.coeffs, cfg.consts),
                  DomainError);
  CHECK_THROWS_AS(parse_poly_system("[coordinates]\ncurve = a, b\n[equations]\na\n", cfg.coeffs, cfg.consts), DomainError);
  const PolySystem two = parse_poly_system("[coordinates]\ntorus = x, y\n[equations]\nx - y\n", cfg.coeffs, cfg.consts);
  CHECK_THROWS_AS(two.check_ambient(cfg.group()), DomainError);
}

TEST_CASE("group_mul on the torus point") {
  const GroupConfig cfg = parse_group_config(kTorusGroup);
  const AmbientGroup G = cfg.group();
  const GroupPoint& g = *cfg.point;
  const FieldPtr& f = cfg.coeffs;
  const FqElem alpha = cfg.consts.at("alpha");

  const GroupPoint zero = group_mul(G, 0, g);
  for (const auto& c : zero[0].torus) CHECK(ratfunc_eq(c, RatFunc::constant(f, f->one())).equal);

  const GroupPoint two = group_mul(G, 2, g);
  CHECK(ratfunc_eq(two[0].torus[0], g[0].torus[0] * g[0].torus[0]).equal);

  const GroupPoint p26 = group_mul(G, 26, g);
  const RatFunc t = RatFunc::t(f);
  const RatFunc a = RatFunc::constant(f, alpha);
  CHECK(ratfunc_eq(p26[0].torus[0], (t.pow(25) + a) * (t + a)).equal);

  const GroupPoint inv = group_add(G, g, group_neg(G, g));
  CHECK(points_equal(G, inv, identity(G)));
}

TEST_CASE("torus membership examples") {
  const GroupConfig cfg = parse_group_config(kTorusGroup);
  const AmbientGroup G = cfg.group();
  const PolySystem V = parse_poly_system(kTorusVariety, cfg.coeffs, cfg.consts);
  const GroupPoint& g = *cfg.point;
  CHECK(contains(V, G, group_mul(G, 2, g)).verdict == Verdict::Member);
  CHECK(contains(V, G, group_mul(G, 3, g)).verdict == Verdict::NonMember);
  CHECK(contains(V, G, group_mul(G, 26, g)).verdict == Verdict::Member);
  const MembershipResult m = contains(V, G, group_mul(G, 2, g), mc(12));
  CHECK(m.verdict == Verdict::ProbableMember);
  CHECK(m.error_bound < Rational(1, 1000000));
  CHECK(m.error_bound > 0);
  CHECK(contains(V, G, group_mul(G, 3, g), mc(12)).verdict == Verdict::NonMember);
}

TEST_CASE("exact and Monte Carlo membership agree on the torus") {
  const GroupConfig cfg = parse_group_config(kTorusGroup);
  const AmbientGroup G = cfg.group();
  const PolySystem V = parse_poly_system(kTorusVariety, cfg.coeffs, cfg.consts);
  for (int n = 0; n <= 80; ++n) {
    const GroupPoint P = group_mul(G, n, *cfg.point);
    const bool exact = contains(V, G, P).verdict == Verdict::Member;
    const bool prob = contains(V, G, P, mc(10, 100 + n)).verdict == Verdict::ProbableMember;
    CHECK_MESSAGE(exact == prob, "n = " << n);
    CHECK(exact == (n == 2 || n == 26 || n == 50));
  }
}

TEST_CASE("Segre hyperplane on the curve orbit") {
  const GroupConfig cfg = parse_group_config(kSegreGroup);
  const AmbientGroup G = cfg.group();
  const PolySystem V = segre_hyperplane(cfg.coeffs);
  for (int n : {0, 1, 5, 25}) CHECK(contains(V, G, group_mul(G, n, *cfg.point)).verdict == Verdict::Member);
  for (int n : {2, 3, 4, 6}) CHECK(contains(V, G, group_mul(G, n, *cfg.point)).verdict == Verdict::NonMember);
  for (int n = 0; n <= 7; ++n) {
    const GroupPoint P = group_mul(G, n, *cfg.point);
    const bool exact = contains(V, G, P).verdict == Verdict::Member;
    const bool prob = contains(V, G, P, mc(12, n)).verdict == Verdict::ProbableMember;
    CHECK_MESSAGE(exact == prob, "n = " << n);
  }
}

TEST_CASE("segre_affine_reduce") {
  auto f = FieldCtx::make(5, 1);
  EllipticCurve E(5, 0, 1);
  const PolySystem V = segre_hyperplane(f);
  const SymPoint P = parse_curve_point("t+1", E, f, {});
  const SymPoint Q = parse_curve_point("t", E, f, {});
  const SymPoint R = parse_curve_point("t^2", E, f, {});

  const SegreCondition c = segre_affine_reduce(V, P, Q);
  CHECK(!c.degenerate);
  CHECK(decide(c) == Verdict::Member);
  CHECK(decide(segre_affine_reduce(V, SymPoint::infinity(), Q)) == Verdict::Member);
  CHECK(decide(segre_affine_reduce(V, P, SymPoint::infinity())) == Verdict::Member);
  CHECK(decide(segre_affine_reduce(V, R, Q)) == Verdict::NonMember);

  const PolySystem other = parse_poly_system(
      "[coordinates]\ncurve = X0, X1, X2\ncurve = Y0, Y1, Y2\n[equations]\nX0*Y2 = X2*Y0\n", f, {});
  CHECK_THROWS_AS(segre_affine_reduce(other, P, Q), DomainError);
  const PolySystem scaled = parse_poly_system(
      "[coordinates]\ncurve = X0, X1, X2\ncurve = Y0, Y1, Y2\n[equations]\n3*X0*Y2 = 3*X2*Y0 + 3*X2*Y2\n", f, {});
  CHECK(decide(segre_affine_reduce(scaled, P, Q)) == Verdict::Member);
}

TEST_CASE("membership is invariant under rescaling projective representatives") {
  auto f = FieldCtx::make(5, 1);
  auto F = FieldCtx::make(5, 6);
  EllipticCurve E(5, 0, 1);
  CurveOver C(E, F);
  const PolySystem V = segre_hyperplane(f);
  const Embedding emb(f, F);
  const auto embed = [&](const FqElem& c) { return emb(c); };
  std::mt19937_64 rng(3);
  auto lift = [&](const FqElem& x) { return C.lift_x(x); };
  int members = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::optional<FqPoint> P, Q;
    const FqElem xq = F->random(rng);
    Q = lift(xq);
    // Half the trials place P on the hyperplane.
    P = trial % 2 ? lift(F->add(xq, F->one())) : lift(F->random(rng));
    if (trial % 5 == 0) P = FqPoint::infinity();
    if (!P || !Q) continue;
    std::vector<FqElem> vals = {P->inf ? F->zero() : P->x, P->inf ? F->one() : P->y, P->inf ? F->zero() : F->one(),
                                Q->x, Q->y, F->one()};
    const bool base = evaluate_at(V, *F, vals, embed).equations_vanish;
    members += base;
    FqElem l = F->random(rng), m = F->random(rng);
    if (F->is_zero(l) || F->is_zero(m)) continue;
    for (int i = 0; i < 3; ++i) vals[i] = F->mul(vals[i], l);
    for (int i = 3; i < 6; ++i) vals[i] = F->mul(vals[i], m);
    CHECK(evaluate_at(V, *F, vals, embed).equations_vanish == base);
  }
  CHECK(members > 50);
}

TEST_CASE("sum witnesses for the three-factor construction") {
  const GroupConfig cfg = parse_group_config(kWitnessGroup);
  const AmbientGroup G = cfg.group();
  const FieldPtr& f = cfg.coeffs;
  const GroupPoint& g = *cfg.point;
  std::vector<PolySystem> factors = {parse_poly_system(kC1, f, {}), parse_poly_system(kC2, f, {}),
                                     parse_poly_system(kC3, f, {})};
  auto witness = [&](unsigned j) {
    const BigInt a = big_pow(BigInt(5), j), b = a * a;
    const RatFunc ta = RatFunc::t(f).pow(a), tb = RatFunc::t(f).pow(b);
    const RatFunc one = RatFunc::constant(f, f->one());
    GroupPoint w1 = identity(G), w2 = identity(G), w3;
    w1[0].torus = {ta + one, ta};
    const GroupPoint gb = group_mul(G, b, g), ga = group_mul(G, a, g);
    w2[1] = gb[1];
    w2[2] = gb[2];
    w3 = ga;
    w3[0].torus = {tb + one, tb};
    return SumWitness{{w1, w2, w3}, factors};
  };
  for (unsigned j = 0; j <= 1; ++j) {
    const BigInt n = big_pow(BigInt(5), j) + big_pow(BigInt(25), j);
    const WitnessResult ex = check_sum_witness(G, witness(j), g, n);
    CHECK_MESSAGE(ex.verdict == Verdict::Member, ex.detail);
  }
  for (unsigned j = 0; j <= 3; ++j) {
    const BigInt n = big_pow(BigInt(5), j) + big_pow(BigInt(25), j);
    const WitnessResult r = check_sum_witness(G, witness(j), g, n, mc());
    CHECK_MESSAGE(r.verdict == Verdict::ProbableMember, r.detail);
    CHECK(r.error_bound < Rational(1, 1000000));
    // Wrong target.
    CHECK(check_sum_witness(G, witness(j), g, n + 1, mc()).failed_index == 0);
  }
  SumWitness bad = witness(1);
  bad.points[2][0].torus[0] = RatFunc::t(f).pow(25) - RatFunc::constant(f, f->one());
  const WitnessResult r = check_sum_witness(G, bad, g, 30, mc());
  CHECK(r.verdict == Verdict::NonMember);
  CHECK(r.failed_index == 3);
  CHECK(check_sum_witness(G, bad, g, 30).failed_index == 3);

  // Negated curve parts still satisfy the factor conditions but break the sum.
  SumWitness flipped = witness(1);
  flipped.points[2] = group_neg(G, flipped.points[2]);
  flipped.points[2][0].torus = witness(1).points[2][0].torus;
  const WitnessResult s = check_sum_witness(G, flipped, g, 30, mc());
  CHECK(s.verdict == Verdict::NonMember);
  CHECK(s.failed_index == 0);
}

TEST_CASE("Monte Carlo error bound arithmetic") {
  CHECK(mc_error_bound(10, 110, 10, 2) == Rational(1, 100));
  CHECK(mc_error_bound(500, 110, 10, 3) == 1);
  CHECK_THROWS_AS(mc_error_bound(1, 10, 10, 1), ResourceError);
}
