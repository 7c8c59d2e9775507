#include "retset/ratfunc.hpp"

#include "retset/errors.hpp"

namespace retset {

RatFunc::RatFunc(SparsePoly num) : num_(std::move(num)), den_(SparsePoly::constant(num_.field(), num_.field()->one())) {}

RatFunc::RatFunc(SparsePoly num, SparsePoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero();
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw DivisionByZero();
  return RatFunc(den_, num_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::pow(const BigInt& n) const {
  if (n < 0) return inverse().pow(-n);
  return RatFunc(num_.pow(n), den_.pow(n));
}

RatFunc RatFunc::normalized() const {
  const auto& f = *num_.field();
  const FqElem s = f.inv(den_.lead());
  return RatFunc(num_.scaled(s), den_.scaled(s));
}

RatFunc RatFunc::reduced(std::size_t degree_limit) const {
  if (num_.is_zero()) return RatFunc(num_, SparsePoly::constant(field(), field()->one()));
  if (num_.degree() >= BigInt(degree_limit) || den_.degree() >= BigInt(degree_limit)) return *this;
  const DensePoly n = num_.to_dense(), d = den_.to_dense();
  const DensePoly g = gcd(n, d);
  DensePoly nq = divmod(n, g).first, dq = divmod(d, g).first;
  const FqElem s = field()->inv(dq.lead());
  return RatFunc(SparsePoly::from_dense(nq.scaled(s)), SparsePoly::from_dense(dq.scaled(s)));
}

std::string RatFunc::str() const {
  if (den_.is_constant() && num_.field()->is_one(den_.constant_term())) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

FqElem specialize(const RatFunc& f, const Specialization& s) {
  const FqElem d = s.eval(f.den());
  if (s.target().is_zero(d)) throw BadSpecialization("denominator vanishes at theta");
  return s.target().div(s.eval(f.num()), d);
}

EqVerdict ratfunc_eq(const RatFunc& a, const RatFunc& b, const EqOptions& opt) {
  EqVerdict v;
  const std::size_t left = a.num().size() * b.den().size();
  const std::size_t right = b.num().size() * a.den().size();
  if (left < opt.exact_term_limit && right < opt.exact_term_limit) {
    v.equal = a.num() * b.den() == b.num() * a.den();
    return v;
  }
  // a.num*b.den - b.num*a.den is a polynomial of degree at most deg; each independent theta that is
  // not a root of it exposes a difference.
  BigInt deg = a.num().degree() + b.den().degree();
  deg = std::max(deg, b.num().degree() + a.den().degree());
  if (deg < 0) deg = 0;
  SpecializationSampler sampler(a.field(), opt.field_degree, false);
  // Conditioning on theta avoiding the poles shrinks the sample space by at most their count.
  const BigInt space = sampler.theta_space() - a.den().degree() - b.den().degree();
  if (space <= deg) throw ResourceError("specialization field too small for this degree");
  SeedStream seeds(opt.seed);
  v.probabilistic = true;
  v.error_bound = 1;
  for (unsigned i = 0; i < opt.specializations; ++i) {
    auto rng = seeds.engine();
    for (int tries = 0;; ++tries) {
      if (tries > 64) throw BadSpecialization("specialization retries exhausted");
      Specialization s = sampler.draw(rng);
      const auto& tg = s.target();
      const FqElem ad = s.eval(a.den()), bd = s.eval(b.den());
      if (tg.is_zero(ad) || tg.is_zero(bd)) continue;
      const FqElem lhs = tg.mul(s.eval(a.num()), bd);
      const FqElem rhs = tg.mul(s.eval(b.num()), ad);
      if (!(lhs == rhs)) {
        v.equal = false;
        v.error_bound = 0;
        return v;
      }
      break;
    }
    v.error_bound *= Rational(deg, space);
  }
  v.equal = true;
  return v;
}

RatFunc parse_ratfunc(FieldPtr f, const std::string& text) {
  // "(num)/(den)" or a bare polynomial.
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  const auto split = s.find(")/(");
  if (!s.empty() && s.front() == '(' && s.back() == ')' && split != std::string::npos) {
    return RatFunc(parse_sparse(f, s.substr(1, split - 1)), parse_sparse(f, s.substr(split + 3, s.size() - split - 4)));
  }
  return RatFunc(parse_sparse(std::move(f), s));
}

}  // namespace retset
