#include "retset/dense_poly.hpp"

#include "retset/errors.hpp"

#include <algorithm>
#include <random>

namespace retset {

DensePoly::DensePoly(FieldPtr f, std::vector<FqElem> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
  trim();
}

DensePoly DensePoly::constant(FieldPtr f, const FqElem& c) { return DensePoly(std::move(f), {c}); }

DensePoly DensePoly::x(FieldPtr f) {
  auto& ctx = *f;
  return DensePoly(std::move(f), {ctx.zero(), ctx.one()});
}

DensePoly DensePoly::from_ints(FieldPtr f, const std::vector<std::int64_t>& coeffs) {
  std::vector<FqElem> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(f->from_int(v));
  return DensePoly(std::move(f), std::move(c));
}

void DensePoly::trim() {
  if (!f_) return;
  while (!c_.empty() && f_->is_zero(c_.back())) c_.pop_back();
}

FqElem DensePoly::lead() const {
  if (c_.empty()) throw DomainError("zero polynomial has no leading coefficient");
  return c_.back();
}

FqElem DensePoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : FqElem{}; }

DensePoly DensePoly::operator+(const DensePoly& o) const {
  const FieldPtr& f = f_ ? f_ : o.f_;
  std::vector<FqElem> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f->add(coeff(i), o.coeff(i));
  return DensePoly(f, std::move(r));
}

DensePoly DensePoly::operator-(const DensePoly& o) const {
  const FieldPtr& f = f_ ? f_ : o.f_;
  std::vector<FqElem> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f->sub(coeff(i), o.coeff(i));
  return DensePoly(f, std::move(r));
}

DensePoly DensePoly::operator-() const {
  std::vector<FqElem> r(c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->neg(c_[i]);
  return DensePoly(f_, std::move(r));
}

DensePoly DensePoly::operator*(const DensePoly& o) const {
  const FieldPtr& f = f_ ? f_ : o.f_;
  if (c_.empty() || o.c_.empty()) return DensePoly(f);
  std::vector<FqElem> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (f->is_zero(c_[i])) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = f->add(r[i + j], f->mul(c_[i], o.c_[j]));
  }
  return DensePoly(f, std::move(r));
}

DensePoly DensePoly::scaled(const FqElem& s) const {
  std::vector<FqElem> r(c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->mul(c_[i], s);
  return DensePoly(f_, std::move(r));
}

DensePoly DensePoly::monic() const {
  if (c_.empty()) return *this;
  return scaled(f_->inv(c_.back()));
}

FqElem DensePoly::eval(const FqElem& x) const {
  FqElem acc{};
  for (std::size_t i = c_.size(); i-- > 0;) acc = f_->add(f_->mul(acc, x), c_[i]);
  return acc;
}

std::pair<DensePoly, DensePoly> divmod(const DensePoly& a, const DensePoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  const auto& f = b.field();
  if (a.degree() < b.degree()) return {DensePoly(f), a};
  std::vector<FqElem> rem = a.coeffs();
  std::vector<FqElem> quo(rem.size() - b.coeffs().size() + 1);
  const FqElem lead_inv = f->inv(b.lead());
  const auto& bc = b.coeffs();
  for (std::size_t i = quo.size(); i-- > 0;) {
    const FqElem coef = f->mul(rem[i + bc.size() - 1], lead_inv);
    quo[i] = coef;
    if (f->is_zero(coef)) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) rem[i + j] = f->sub(rem[i + j], f->mul(coef, bc[j]));
  }
  rem.resize(bc.size() - 1);
  return {DensePoly(f, std::move(quo)), DensePoly(f, std::move(rem))};
}

DensePoly operator%(const DensePoly& a, const DensePoly& b) { return divmod(a, b).second; }

DensePoly gcd(const DensePoly& a, const DensePoly& b) {
  DensePoly x = a, y = b;
  while (!y.is_zero()) {
    DensePoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

DensePoly mulmod(const DensePoly& a, const DensePoly& b, const DensePoly& m) { return (a * b) % m; }

DensePoly powmod(const DensePoly& a, const BigInt& e, const DensePoly& m) {
  const auto& f = m.field();
  DensePoly result = DensePoly::constant(f, f->one()) % m;
  if (e == 0) return result;
  DensePoly base = a % m;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(e)) + 1;
  for (unsigned i = bits; i-- > 0;) {
    result = mulmod(result, result, m);
    if (boost::multiprecision::bit_test(e, i)) result = mulmod(result, base, m);
  }
  return result;
}

DensePoly compose(const DensePoly& f, const DensePoly& g) {
  DensePoly acc(f.field());
  for (std::size_t i = f.coeffs().size(); i-- > 0;)
    acc = acc * g + DensePoly::constant(f.field(), f.coeffs()[i]);
  return acc;
}

namespace {

void split_roots(const DensePoly& f, std::mt19937_64& rng, std::vector<FqElem>& out) {
  const auto& ctx = f.field();
  if (f.degree() <= 0) return;
  if (f.degree() == 1) {
    out.push_back(ctx->neg(f.monic().coeff(0)));
    return;
  }
  const BigInt q = ctx->size();
  for (int attempt = 0; attempt < 200; ++attempt) {
    DensePoly probe(ctx, {ctx->random(rng), ctx->one()});
    DensePoly h;
    if (ctx->p() == 2) {
      // Trace map: sum of probe^(2^i), i < k.
      DensePoly acc(ctx), cur = probe % f;
      for (unsigned i = 0; i < ctx->k(); ++i) {
        acc = acc + cur;
        cur = mulmod(cur, cur, f);
      }
      h = acc;
    } else {
      h = powmod(probe, (q - 1) / 2, f) - DensePoly::constant(ctx, ctx->one());
    }
    DensePoly g = gcd(f, h);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      split_roots(g, rng, out);
      split_roots(divmod(f, g).first, rng, out);
      return;
    }
  }
  throw ResourceError("root splitting did not converge");
}

}  // namespace

std::vector<FqElem> roots(const DensePoly& f) {
  if (f.is_zero()) throw DomainError("roots of the zero polynomial");
  const auto& ctx = f.field();
  std::vector<FqElem> out;
  if (f.degree() <= 0) return out;
  DensePoly x = DensePoly::x(ctx);
  DensePoly fm = f.monic();
  // Product of distinct linear factors: gcd(f, x^q - x).
  DensePoly xq = powmod(x, ctx->size(), fm);
  DensePoly lin = gcd(fm, xq - x);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  split_roots(lin, rng, out);
  std::sort(out.begin(), out.end(), [&](const FqElem& a, const FqElem& b) { return ctx->less(a, b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace retset
