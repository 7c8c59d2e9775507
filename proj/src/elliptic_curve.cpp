#include "retset/elliptic_curve.hpp"

#include "retset/errors.hpp"

#include <sstream>

namespace retset {

EllipticCurve::EllipticCurve(std::uint32_t p, std::int64_t A, std::int64_t B) : p_(p) {
  if (p <= 3 || !is_prime(p)) throw DomainError("curve characteristic must be a prime > 3");
  fp_ = FieldCtx::make(p, 1);
  const FieldCtx& f = *fp_;
  const FqElem a = f.from_int(A), b = f.from_int(B);
  a_ = a.c[0];
  b_ = b.c[0];
  const FqElem disc = f.add(f.scale(f.mul(f.sqr(a), a), 4), f.scale(f.sqr(b), 27));
  if (f.is_zero(disc)) throw DomainError("singular curve: 4A^3 + 27B^2 = 0");
  count_ = 1;
  const std::uint64_t half = (p - 1) / 2;
  for (std::uint32_t x = 0; x < p; ++x) {
    const FqElem xv = f.from_int(x);
    const FqElem v = f.add(f.add(f.mul(f.sqr(xv), xv), f.mul(a, xv)), b);
    if (f.is_zero(v)) {
      count_ += 1;
    } else if (f.is_one(f.pow(v, half))) {
      count_ += 2;
    }
  }
}

DensePoly EllipticCurve::rhs() const {
  return DensePoly::from_ints(fp_, {static_cast<std::int64_t>(b_), static_cast<std::int64_t>(a_), 0, 1});
}

std::string EllipticCurve::str() const {
  std::ostringstream os;
  os << "y^2 = x^3 + " << a_ << "*x + " << b_ << " over F_" << p_;
  return os.str();
}

CurveOver::CurveOver(const EllipticCurve& e, FieldPtr f) : e_(e), f_(std::move(f)) {
  if (f_->p() != e.p()) throw FieldMismatch("curve and field characteristic differ");
  A_ = f_->from_int(e.A());
  B_ = f_->from_int(e.B());
}

FqElem CurveOver::rhs(const FqElem& x) const {
  const FieldCtx& f = *f_;
  return f.add(f.mul(f.add(f.sqr(x), A_), x), B_);
}

bool CurveOver::on_curve(const FqPoint& P) const { return P.inf || f_->sqr(P.y) == rhs(P.x); }

FqPoint CurveOver::neg(const FqPoint& P) const {
  if (P.inf) return P;
  return FqPoint::affine(P.x, f_->neg(P.y));
}

FqPoint CurveOver::add(const FqPoint& P, const FqPoint& Q) const {
  if (P.inf) return Q;
  if (Q.inf) return P;
  const FieldCtx& f = *f_;
  FqElem lambda;
  if (P.x == Q.x) {
    if (!(P.y == Q.y) || f.is_zero(P.y)) return FqPoint::infinity();
    const FqElem num = f.add(f.scale(f.sqr(P.x), 3), A_);
    lambda = f.div(num, f.add(P.y, P.y));
  } else {
    lambda = f.div(f.sub(Q.y, P.y), f.sub(Q.x, P.x));
  }
  const FqElem x3 = f.sub(f.sub(f.sqr(lambda), P.x), Q.x);
  const FqElem y3 = f.sub(f.mul(lambda, f.sub(P.x, x3)), P.y);
  return FqPoint::affine(x3, y3);
}

FqPoint CurveOver::mul_plain(const BigInt& n, const FqPoint& P) const {
  if (n < 0) return neg(mul_plain(-n, P));
  FqPoint R = FqPoint::infinity();
  if (n == 0 || P.inf) return R;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  for (unsigned i = bits; i-- > 0;) {
    R = dbl(R);
    if (boost::multiprecision::bit_test(n, i)) R = add(R, P);
  }
  return R;
}

FqPoint CurveOver::mul(const BigInt& n, const FqPoint& P) const {
  if (n < 0) return neg(mul(-n, P));
  if (!e_.supersingular() || n == 0) return mul_plain(n, P);
  BigInt m = n;
  unsigned e = 0;
  while (m % e_.p() == 0) {
    m /= e_.p();
    ++e;
  }
  FqPoint R = mul_plain(m, P);
  // p P = -F^2(P).
  R = frob(R, 2ULL * e);
  return (e % 2 == 1) ? neg(R) : R;
}

FqPoint CurveOver::frob(const FqPoint& P, std::uint64_t e) const {
  if (P.inf) return P;
  return FqPoint::affine(f_->frob(P.x, e), f_->frob(P.y, e));
}

std::optional<FqPoint> CurveOver::lift_x(const FqElem& x) const {
  auto r = f_->sqrt(rhs(x));
  if (!r) return std::nullopt;
  return FqPoint::affine(x, *r);
}

SymPoint SymPoint::from_x(const EllipticCurve& e, const RatFunc& x) {
  if (!x.den().is_constant()) throw DomainError("point x-coordinate must be a polynomial");
  const auto& f = x.field();
  const SparsePoly xp = x.num().scaled(f->inv(x.den().constant_term()));
  SparsePoly D = xp * xp * xp + xp.scaled(f->from_int(e.A())) + SparsePoly::constant(f, f->from_int(e.B()));
  SymPoint P;
  P.inf = false;
  P.x = RatFunc(xp);
  P.c = RatFunc::constant(f, f->one());
  P.h = 0;
  P.D = std::move(D);
  return P;
}

SymCurve::SymCurve(const EllipticCurve& e, FieldPtr coeffs) : e_(e), f_(std::move(coeffs)) {
  if (f_->p() != e.p()) throw FieldMismatch("curve and coefficient field characteristic differ");
}

RatFunc SymCurve::constant(std::int64_t v) const { return RatFunc::constant(f_, f_->from_int(v)); }

SymPoint SymCurve::neg(const SymPoint& P) const {
  if (P.inf) return P;
  SymPoint R = P;
  R.c = -P.c;
  return R;
}

RatFunc SymCurve::y_coefficient(const SymPoint& P) const {
  if (P.h == 0) return P.c;
  return P.c * RatFunc(P.D.pow(P.h));
}

SymPoint SymCurve::add(const SymPoint& P, const SymPoint& Q) const {
  if (P.inf) return Q;
  if (Q.inf) return P;
  if (!(P.D == Q.D)) throw FieldMismatch("points use different square-root adjunctions");
  const RatFunc yP = y_coefficient(P), yQ = y_coefficient(Q);
  const RatFunc D(P.D);
  RatFunc lambda;  // slope divided by sqrt(D)
  RatFunc x3;
  if (ratfunc_eq(P.x, Q.x).equal) {
    if (!ratfunc_eq(yP, yQ).equal || yP.is_zero()) return SymPoint::infinity();
    const RatFunc num = constant(3) * P.x * P.x + constant(e_.A());
    lambda = (num / (constant(2) * yP * D)).reduced();
    x3 = (lambda * lambda * D - constant(2) * P.x).reduced();
  } else {
    lambda = ((yQ - yP) / (Q.x - P.x)).reduced();
    x3 = (lambda * lambda * D - P.x - Q.x).reduced();
  }
  SymPoint R;
  R.inf = false;
  R.x = x3;
  R.c = (lambda * (P.x - x3) - yP).reduced();
  R.h = 0;
  R.D = P.D;
  return R;
}

SymPoint SymCurve::frob(const SymPoint& P, std::uint64_t e) const {
  if (P.inf) return P;
  SymPoint R = P;
  const BigInt p = e_.p();
  for (std::uint64_t i = 0; i < e; ++i) {
    R.x = R.x.frob_pow(1);
    R.c = R.c.frob_pow(1);
    // sqrt(D)^p = D^((p-1)/2) sqrt(D)
    R.h = R.h * p + (p - 1) / 2;
  }
  return R;
}

SymPoint SymCurve::mul(const BigInt& n, const SymPoint& P) const {
  if (n < 0) return neg(mul(-n, P));
  if (n == 0 || P.inf) return SymPoint::infinity();
  BigInt m = n;
  unsigned e = 0;
  if (e_.supersingular()) {
    while (m % e_.p() == 0) {
      m /= e_.p();
      ++e;
    }
  }
  SymPoint R = SymPoint::infinity();
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(m)) + 1;
  for (unsigned i = bits; i-- > 0;) {
    R = dbl(R);
    if (boost::multiprecision::bit_test(m, i)) R = add(R, P);
  }
  if (e == 0) return R;
  R = frob(R, 2ULL * e);
  return (e % 2 == 1) ? neg(R) : R;
}

bool SymCurve::on_curve(const SymPoint& P) const {
  if (P.inf) return true;
  const RatFunc y = y_coefficient(P);
  const RatFunc lhs = y * y * RatFunc(P.D);
  const RatFunc rhs = P.x * P.x * P.x + constant(e_.A()) * P.x + constant(e_.B());
  return ratfunc_eq(lhs, rhs).equal;
}

FqPoint SymCurve::specialize(const SymPoint& P, const Specialization& s) const {
  if (P.inf) return FqPoint::infinity();
  const FieldCtx& T = s.target();
  const FqElem x = retset::specialize(P.x, s);
  const FqElem d = s.eval(P.D);
  auto root = s.sqrt(d);
  if (!root) throw BadSpecialization("radicand has no square root in the working field");
  FqElem y = T.mul(retset::specialize(P.c, s), *root);
  if (P.h != 0) y = T.mul(y, T.pow(d, P.h));
  return FqPoint::affine(x, y);
}

namespace {

class DivisionPolys {
 public:
  explicit DivisionPolys(const EllipticCurve& e) : f_(e.prime_field()) {
    const std::int64_t A = e.A(), B = e.B();
    Y_ = e.rhs();
    F_[0] = DensePoly(f_);
    F_[1] = DensePoly::from_ints(f_, {1});
    F_[2] = DensePoly::from_ints(f_, {2});
    F_[3] = DensePoly::from_ints(f_, {-A * A, 12 * B, 6 * A, 0, 3});
    F_[4] = DensePoly::from_ints(f_, {-8 * B * B - A * A * A, -4 * A * B, -5 * A * A, 20 * B, 5 * A, 0, 1})
                .scaled(f_->from_int(4));
  }

  /// psi_m = F_m for odd m, y F_m for even m.
  const DensePoly& F(std::uint64_t m) {
    auto it = F_.find(m);
    if (it != F_.end()) return it->second;
    DensePoly r;
    const std::uint64_t k = m / 2;
    if (m % 2 == 1) {
      DensePoly a = F(k + 2) * cube(F(k));
      DensePoly b = F(k - 1) * cube(F(k + 1));
      if (k % 2 == 0) {
        a = a * Y_ * Y_;
      } else {
        b = b * Y_ * Y_;
      }
      r = a - b;
    } else {
      DensePoly inner = F(k + 2) * F(k - 1) * F(k - 1) - F(k - 2) * F(k + 1) * F(k + 1);
      r = (F(k) * inner).scaled(f_->inv(f_->from_int(2)));
    }
    return F_.emplace(m, std::move(r)).first->second;
  }

  /// psi_m^2 as a polynomial in x.
  DensePoly psi_sq(std::uint64_t m) {
    DensePoly s = F(m) * F(m);
    return m % 2 == 0 ? s * Y_ : s;
  }

  /// psi_{m-1} psi_{m+1} as a polynomial in x (m >= 1).
  DensePoly psi_neighbors(std::uint64_t m) {
    DensePoly s = F(m - 1) * F(m + 1);
    return m % 2 == 1 ? s * Y_ : s;
  }

  const DensePoly& Y() const { return Y_; }

 private:
  static DensePoly cube(const DensePoly& a) { return a * a * a; }

  FieldPtr f_;
  DensePoly Y_;
  std::map<std::uint64_t, DensePoly> F_;
};

}  // namespace

std::pair<DensePoly, DensePoly> division_poly(std::uint64_t m, const EllipticCurve& e) {
  if (m == 0) throw DomainError("division polynomial index must be positive");
  DivisionPolys dp(e);
  const auto& f = e.prime_field();
  DensePoly g = dp.psi_sq(m);
  DensePoly num = DensePoly::x(f) * g - dp.psi_neighbors(m);
  const DensePoly common = gcd(num, g);
  num = divmod(num, common).first;
  g = divmod(g, common).first;
  const FqElem m2 = f->from_big(BigInt(m) * m);
  const FqElem s = f->is_zero(m2) ? f->inv(g.lead()) : f->div(m2, g.lead());
  return {num.scaled(s), g.scaled(s)};
}

std::uint64_t torsion_count_at(std::uint64_t m, const EllipticCurve& e, unsigned k) {
  if (m == 0) throw DomainError("torsion index must be positive");
  if (m == 1) return 1;
  auto F = FieldCtx::make(e.p(), k);
  DivisionPolys dp(e);
  auto lift = [&](const DensePoly& a) {
    std::vector<FqElem> c;
    for (const auto& v : a.coeffs()) c.push_back(F->from_int(v.c[0]));
    return DensePoly(F, std::move(c));
  };
  const DensePoly g = lift(dp.psi_sq(m));
  if (g.degree() <= 0) return 1;
  const DensePoly x = DensePoly::x(F);
  const DensePoly h = gcd(g, powmod(x, F->size(), g) - x);
  if (h.degree() <= 0) return 1;
  const DensePoly Y = lift(dp.Y());
  const DensePoly h0 = gcd(h, Y);
  const DensePoly one = DensePoly::constant(F, F->one());
  const DensePoly hsq = gcd(h, powmod(Y, (F->size() - 1) / 2, h) - one);
  return 1 + static_cast<std::uint64_t>(h0.degree()) + 2 * static_cast<std::uint64_t>(std::max<long>(hsq.degree(), 0));
}

std::uint64_t torsion_count(std::uint64_t m, const EllipticCurve& e, unsigned max_k) {
  if (!e.supersingular()) throw DomainError("torsion_count expects a supersingular curve");
  std::uint64_t mp = m;
  while (mp % e.p() == 0) mp /= e.p();
  for (unsigned k = 1; k <= max_k; ++k) {
    const std::uint64_t c = torsion_count_at(m, e, k);
    if (c == mp * mp) return c;
  }
  throw ResourceError("bound too small: m-torsion count not stabilized by degree " + std::to_string(max_k));
}

}  // namespace retset
