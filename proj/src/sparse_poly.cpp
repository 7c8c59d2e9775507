#include "retset/sparse_poly.hpp"

#include "retset/errors.hpp"

#include <algorithm>
#include <sstream>

namespace retset {

SparsePoly::SparsePoly(FieldPtr f, std::vector<SparseTerm> terms) : f_(std::move(f)), terms_(std::move(terms)) {
  normalize();
}

void SparsePoly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const SparseTerm& a, const SparseTerm& b) { return a.exp < b.exp; });
  std::vector<SparseTerm> merged;
  merged.reserve(terms_.size());
  for (auto& term : terms_) {
    if (term.exp < 0) throw DomainError("negative exponent in polynomial");
    if (!merged.empty() && merged.back().exp == term.exp) {
      merged.back().coef = f_->add(merged.back().coef, term.coef);
    } else {
      merged.push_back(std::move(term));
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [&](const SparseTerm& t) { return f_->is_zero(t.coef); }),
               merged.end());
  terms_ = std::move(merged);
}

SparsePoly SparsePoly::constant(FieldPtr f, const FqElem& c) { return monomial(std::move(f), c, 0); }

SparsePoly SparsePoly::monomial(FieldPtr f, const FqElem& c, const BigInt& e) {
  SparsePoly r(std::move(f));
  if (!r.f_->is_zero(c)) r.terms_.push_back({e, c});
  return r;
}

SparsePoly SparsePoly::from_dense(const DensePoly& d) {
  std::vector<SparseTerm> terms;
  for (std::size_t i = 0; i < d.coeffs().size(); ++i)
    if (!d.field()->is_zero(d.coeffs()[i])) terms.push_back({BigInt(i), d.coeffs()[i]});
  SparsePoly r(d.field());
  r.terms_ = std::move(terms);
  return r;
}

FqElem SparsePoly::constant_term() const {
  if (!terms_.empty() && terms_[0].exp == 0) return terms_[0].coef;
  return FqElem{};
}

FqElem SparsePoly::lead() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading coefficient");
  return terms_.back().coef;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  const FieldPtr& f = f_ ? f_ : o.f_;
  SparsePoly r(f);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].exp < o.terms_[j].exp)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].exp < terms_[i].exp) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      FqElem c = f->add(terms_[i].coef, o.terms_[j].coef);
      if (!f->is_zero(c)) r.terms_.push_back({terms_[i].exp, c});
      ++i;
      ++j;
    }
  }
  return r;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r = *this;
  for (auto& term : r.terms_) term.coef = f_->neg(term.coef);
  return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const { return *this + (-o); }

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  const FieldPtr& f = f_ ? f_ : o.f_;
  if (terms_.empty() || o.terms_.empty()) return SparsePoly(f);
  const BigInt deg = terms_.back().exp + o.terms_.back().exp;
  const std::size_t work = terms_.size() * o.terms_.size();
  if (deg < BigInt(kDefaultTermLimit) && work > 4 * deg) {
    // Dense enough to accumulate into an array indexed by exponent.
    const std::size_t n = deg.convert_to<std::size_t>() + 1;
    std::vector<FqElem> acc(n);
    std::vector<std::size_t> ea, eb;
    for (const auto& a : terms_) ea.push_back(a.exp.convert_to<std::size_t>());
    for (const auto& b : o.terms_) eb.push_back(b.exp.convert_to<std::size_t>());
    for (std::size_t i = 0; i < ea.size(); ++i)
      for (std::size_t j = 0; j < eb.size(); ++j)
        acc[ea[i] + eb[j]] = f->add(acc[ea[i] + eb[j]], f->mul(terms_[i].coef, o.terms_[j].coef));
    SparsePoly r(f);
    for (std::size_t e = 0; e < n; ++e)
      if (!f->is_zero(acc[e])) r.terms_.push_back({BigInt(e), acc[e]});
    return r;
  }
  if (work > 64 * kDefaultTermLimit) throw ResourceError("sparse product too large");
  std::vector<SparseTerm> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) prod.push_back({a.exp + b.exp, f->mul(a.coef, b.coef)});
  return SparsePoly(f, std::move(prod));
}

SparsePoly SparsePoly::scaled(const FqElem& s) const {
  if (f_->is_zero(s)) return SparsePoly(f_);
  SparsePoly r = *this;
  for (auto& term : r.terms_) term.coef = f_->mul(term.coef, s);
  return r;
}

SparsePoly SparsePoly::frob_pow(std::uint64_t e) const {
  if (e == 0) return *this;
  SparsePoly r = *this;
  const BigInt scale = big_pow(BigInt(f_->p()), e);
  for (auto& term : r.terms_) {
    term.exp *= scale;
    term.coef = f_->frob(term.coef, e);
  }
  return r;
}

SparsePoly SparsePoly::inflate(const BigInt& m) const {
  if (m <= 0) throw DomainError("inflation factor must be positive");
  SparsePoly r = *this;
  for (auto& term : r.terms_) term.exp *= m;
  return r;
}

SparsePoly SparsePoly::pow(const BigInt& n, std::size_t term_limit) const {
  if (n < 0) throw DomainError("negative power of a polynomial");
  const FieldPtr& f = f_;
  SparsePoly result = constant(f, f->one());
  if (n == 0) return result;
  if (terms_.empty()) return *this;
  if (terms_.size() == 1) {
    return monomial(f, f->pow(terms_[0].coef, n), terms_[0].exp * n);
  }
  BigInt rest = n;
  std::uint64_t digit_pos = 0;
  SparsePoly base = *this;
  while (rest > 0) {
    const unsigned d = static_cast<unsigned>((rest % f->p()).convert_to<std::uint32_t>());
    rest /= f->p();
    if (d) {
      SparsePoly piece = base.frob_pow(digit_pos);
      SparsePoly acc = piece;
      for (unsigned i = 1; i < d; ++i) {
        acc = acc * piece;
        if (acc.size() > term_limit) throw ResourceError("polynomial power exceeds term limit");
      }
      result = result * acc;
      if (result.size() > term_limit) throw ResourceError("polynomial power exceeds term limit");
    }
    ++digit_pos;
  }
  return result;
}

DensePoly SparsePoly::to_dense(std::size_t term_limit) const {
  if (terms_.empty()) return DensePoly(f_);
  if (terms_.back().exp >= BigInt(term_limit)) throw ResourceError("dense conversion exceeds term limit");
  std::vector<FqElem> c(terms_.back().exp.convert_to<std::size_t>() + 1);
  for (const auto& term : terms_) c[term.exp.convert_to<std::size_t>()] = term.coef;
  return DensePoly(f_, std::move(c));
}

bool operator==(const SparsePoly& a, const SparsePoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exp != b.terms_[i].exp || !(a.terms_[i].coef == b.terms_[i].coef)) return false;
  return true;
}

std::string SparsePoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = terms_.size(); i-- > 0;) {
    const auto& term = terms_[i];
    if (!first) os << " + ";
    first = false;
    const bool unit = f_->is_one(term.coef);
    if (term.exp == 0) {
      os << f_->format(term.coef);
      continue;
    }
    if (!unit) os << f_->format(term.coef) << '*';
    os << 't';
    if (term.exp != 1) os << '^' << term.exp.str();
  }
  return os.str();
}

SparsePoly sparse_frob_pow(const SparsePoly& f, std::uint64_t e) { return f.frob_pow(e); }

SparsePoly parse_sparse(FieldPtr f, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty polynomial");
  std::vector<SparseTerm> terms;
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    }
    // Split off the next term; '+'/'-' inside brackets belong to the coefficient.
    std::size_t end = pos;
    int depth = 0;
    while (end < s.size()) {
      if (s[end] == '[') ++depth;
      if (s[end] == ']') --depth;
      if (depth == 0 && (s[end] == '+' || s[end] == '-') && end > pos) break;
      ++end;
    }
    std::string term = s.substr(pos, end - pos);
    pos = end;
    if (term.empty()) throw ParseError("empty term in " + text);
    FqElem coef = f->one();
    BigInt exp = 0;
    const auto tpos = term.find('t');
    std::string coef_part = tpos == std::string::npos ? term : term.substr(0, tpos);
    if (!coef_part.empty()) {
      if (coef_part.back() == '*') coef_part.pop_back();
      if (coef_part.empty()) throw ParseError("bad term: " + term);
      coef = f->parse(coef_part);
    }
    if (tpos != std::string::npos) {
      std::string rest = term.substr(tpos + 1);
      if (rest.empty()) {
        exp = 1;
      } else if (rest[0] == '^' && rest.size() > 1 &&
                 std::all_of(rest.begin() + 1, rest.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        exp = BigInt(rest.substr(1));
      } else {
        throw ParseError("bad exponent in term: " + term);
      }
    }
    if (negative) coef = f->neg(coef);
    terms.push_back({exp, coef});
  }
  return SparsePoly(std::move(f), std::move(terms));
}

}  // namespace retset
