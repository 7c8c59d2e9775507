#include "retset/specialization.hpp"

#include <string>

#include "retset/dense_poly.hpp"
#include "retset/errors.hpp"

#include <numeric>

namespace retset {

Embedding::Embedding(FieldPtr source, FieldPtr target) : source_(std::move(source)), target_(std::move(target)) {
  if (source_->p() != target_->p() || target_->k() % source_->k() != 0)
    throw FieldMismatch("no embedding between the given fields");
  basis_.push_back(target_->one());
  if (source_->k() == 1) return;
  std::vector<std::int64_t> mod;
  for (auto c : source_->modulus()) mod.push_back(c);
  auto rs = roots(DensePoly::from_ints(target_, mod));
  if (rs.empty()) throw FieldMismatch("source modulus has no root in target");
  const FqElem u = rs.front();
  for (unsigned i = 1; i < source_->k(); ++i) basis_.push_back(target_->mul(basis_.back(), u));
}

FqElem Embedding::operator()(const FqElem& a) const {
  FqElem r = target_->zero();
  for (unsigned i = 0; i < source_->k(); ++i)
    if (a.c[i]) r = target_->add(r, target_->scale(basis_[i], a.c[i]));
  return r;
}

std::uint64_t SeedStream::next() {
  // SplitMix64.
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31U);
}

FqElem Specialization::eval(const SparsePoly& f) const {
  const FieldCtx& tg = target();
  FqElem acc = tg.zero();
  const bool theta_zero = tg.is_zero(theta_);
  for (const auto& term : f.terms()) {
    FqElem c = embed(term.coef);
    if (term.exp == 0) {
      acc = tg.add(acc, c);
    } else if (!theta_zero) {
      acc = tg.add(acc, tg.mul(c, tg.pow(theta_, term.exp)));
    }
  }
  return acc;
}

SpecializationSampler::SpecializationSampler(FieldPtr source, unsigned theta_degree, bool need_sqrt)
    : theta_degree_(theta_degree) {
  if (theta_degree == 0) throw DomainError("field degree must be positive");
  unsigned big = std::lcm(source->k(), theta_degree);
  if (need_sqrt) big *= 2;
  if (big > kMaxExtensionDegree) throw DomainError("working field degree exceeds supported maximum");
  FieldPtr target = FieldCtx::make(source->p(), big);
  emb_ = std::make_shared<const Embedding>(std::move(source), std::move(target));
}

Specialization SpecializationSampler::draw(std::mt19937_64& rng) const {
  const FieldCtx& tg = *emb_->target();
  FqElem theta = tg.trace_to_subfield(tg.random(rng), theta_degree_);
  return Specialization(emb_, theta);
}

double bound_as_double(const Rational& r) {
  if (r >= 1) return 1.0;
  return r.convert_to<double>();
}

std::string format_scientific(const Rational& r) {
  if (r < 0) return "-" + format_scientific(-r);
  if (r == 0) return "0";
  const BigInt num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
  // Shift so that the integer quotient has exactly four digits.
  long e = static_cast<long>(num.str().size()) - static_cast<long>(den.str().size());
  BigInt q;
  for (;;) {
    const long shift = 3 - e;
    q = shift >= 0 ? num * big_pow(BigInt(10), static_cast<unsigned>(shift)) / den
                   : num / (den * big_pow(BigInt(10), static_cast<unsigned>(-shift)));
    if (q >= 10000) {
      ++e;
    } else if (q < 1000) {
      --e;
    } else {
      break;
    }
  }
  const std::string d = q.str();
  return d.substr(0, 1) + "." + d.substr(1) + "e" + (e < 0 ? "-" : "+") + std::to_string(e < 0 ? -e : e);
}

}  // namespace retset
