#include "retset/expr.hpp"

#include "retset/errors.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace retset {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static ExprPtr node(Expr::Op op, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      if (eat('+')) {
        e = node(Expr::Op::Add, e, term());
      } else if (eat('-')) {
        e = node(Expr::Op::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    for (;;) {
      if (eat('*')) {
        e = node(Expr::Op::Mul, e, unary());
      } else if (eat('/')) {
        e = node(Expr::Op::Div, e, unary());
      } else {
        return e;
      }
    }
  }

  ExprPtr unary() {
    if (eat('-')) return node(Expr::Op::Neg, unary(), nullptr);
    if (eat('+')) return unary();
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (!eat('^')) return base;
    skip();
    bool negative = false;
    bool paren = eat('(');
    if (eat('-')) negative = true;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    auto e = std::make_shared<Expr>();
    e->op = Expr::Op::Pow;
    e->num = BigInt(s_.substr(start, pos_ - start));
    if (negative) e->num = -e->num;
    if (paren && !eat(')')) fail("expected ')'");
    e->lhs = std::move(base);
    return e;
  }

  ExprPtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    auto e = std::make_shared<Expr>();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      e->op = Expr::Op::Num;
      e->num = BigInt(s_.substr(start, pos_ - start));
      return e;
    }
    if (c == '[') {
      const std::size_t end = s_.find(']', pos_);
      if (end == std::string::npos) fail("unterminated field literal");
      e->op = Expr::Op::Elem;
      e->text = s_.substr(pos_, end - pos_ + 1);
      pos_ = end + 1;
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      e->op = Expr::Op::Var;
      e->text = s_.substr(start, pos_ - start);
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

void collect_ids(const ExprPtr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->op == Expr::Op::Var) out.insert(e->text);
  collect_ids(e->lhs, out);
  collect_ids(e->rhs, out);
}

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

std::vector<std::string> expr_identifiers(const ExprPtr& e) {
  std::set<std::string> ids;
  collect_ids(e, ids);
  return {ids.begin(), ids.end()};
}

RatFunc expr_to_ratfunc(const ExprPtr& e, const FieldPtr& f, const ConstTable& consts) {
  switch (e->op) {
    case Expr::Op::Num:
      return RatFunc::constant(f, f->from_big(e->num));
    case Expr::Op::Elem:
      return RatFunc::constant(f, f->parse(e->text));
    case Expr::Op::Var: {
      if (e->text == "t") return RatFunc::t(f);
      auto it = consts.find(e->text);
      if (it == consts.end()) throw ParseError("unknown identifier: " + e->text);
      return RatFunc::constant(f, it->second);
    }
    case Expr::Op::Add:
      return expr_to_ratfunc(e->lhs, f, consts) + expr_to_ratfunc(e->rhs, f, consts);
    case Expr::Op::Sub:
      return expr_to_ratfunc(e->lhs, f, consts) - expr_to_ratfunc(e->rhs, f, consts);
    case Expr::Op::Mul:
      return expr_to_ratfunc(e->lhs, f, consts) * expr_to_ratfunc(e->rhs, f, consts);
    case Expr::Op::Div:
      return expr_to_ratfunc(e->lhs, f, consts) / expr_to_ratfunc(e->rhs, f, consts);
    case Expr::Op::Neg:
      return -expr_to_ratfunc(e->lhs, f, consts);
    case Expr::Op::Pow:
      return expr_to_ratfunc(e->lhs, f, consts).pow(e->num);
  }
  throw ParseError("bad expression node");
}

MPoly MPoly::constant(FieldPtr f, std::size_t nvars, const FqElem& c) {
  MPoly r(std::move(f), nvars);
  if (!r.f_->is_zero(c)) r.terms_.push_back({c, std::vector<std::uint32_t>(nvars, 0)});
  return r;
}

MPoly MPoly::variable(FieldPtr f, std::size_t nvars, std::size_t i) {
  MPoly r(std::move(f), nvars);
  std::vector<std::uint32_t> e(nvars, 0);
  e.at(i) = 1;
  r.terms_.push_back({r.f_->one(), std::move(e)});
  return r;
}

void MPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.exps < b.exps; });
  std::vector<Term> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exps == t.exps) {
      merged.back().coef = f_->add(merged.back().coef, t.coef);
    } else {
      merged.push_back(std::move(t));
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [&](const Term& t) { return f_->is_zero(t.coef); }),
               merged.end());
  terms_ = std::move(merged);
}

bool MPoly::uses(std::size_t i) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.exps[i] > 0; });
}

std::uint32_t MPoly::degree_in(std::size_t begin, std::size_t end) const {
  std::uint32_t best = 0;
  for (const auto& t : terms_) {
    std::uint32_t d = 0;
    for (std::size_t i = begin; i < end; ++i) d += t.exps[i];
    best = std::max(best, d);
  }
  return best;
}

bool MPoly::homogeneous_in(std::size_t begin, std::size_t end) const {
  const std::uint32_t d = degree_in(begin, end);
  for (const auto& t : terms_) {
    std::uint32_t s = 0;
    for (std::size_t i = begin; i < end; ++i) s += t.exps[i];
    if (s != d) return false;
  }
  return true;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r(f_ ? f_ : o.f_, std::max(nvars_, o.nvars_));
  r.terms_ = terms_;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  r.normalize();
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + o.scaled(o.f_->neg(o.f_->one())); }

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r(f_ ? f_ : o.f_, std::max(nvars_, o.nvars_));
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      Term t{r.f_->mul(a.coef, b.coef), a.exps};
      for (std::size_t i = 0; i < t.exps.size(); ++i) t.exps[i] += b.exps[i];
      r.terms_.push_back(std::move(t));
    }
  }
  r.normalize();
  return r;
}

MPoly MPoly::scaled(const FqElem& c) const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.coef = f_->mul(t.coef, c);
  r.normalize();
  return r;
}

MPoly MPoly::pow(std::uint32_t n) const {
  MPoly r = constant(f_, nvars_, f_->one());
  for (std::uint32_t i = 0; i < n; ++i) r = r * *this;
  return r;
}

std::string MPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[terms_.size() - 1 - k];
    if (k) os << " + ";
    bool any = false;
    if (!f_->is_one(t.coef)) {
      os << f_->format(t.coef);
      any = true;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!t.exps[i]) continue;
      if (any) os << '*';
      os << names.at(i);
      if (t.exps[i] > 1) os << '^' << t.exps[i];
      any = true;
    }
    if (!any) os << "1";
  }
  return os.str();
}

MPoly expr_to_mpoly(const ExprPtr& e, const FieldPtr& f, const std::vector<std::string>& vars, const ConstTable& consts) {
  const std::size_t n = vars.size();
  switch (e->op) {
    case Expr::Op::Num:
      return MPoly::constant(f, n, f->from_big(e->num));
    case Expr::Op::Elem:
      return MPoly::constant(f, n, f->parse(e->text));
    case Expr::Op::Var: {
      auto it = std::find(vars.begin(), vars.end(), e->text);
      if (it != vars.end()) return MPoly::variable(f, n, static_cast<std::size_t>(it - vars.begin()));
      auto c = consts.find(e->text);
      if (c == consts.end()) throw ParseError("undeclared coordinate or constant: " + e->text);
      return MPoly::constant(f, n, c->second);
    }
    case Expr::Op::Add:
      return expr_to_mpoly(e->lhs, f, vars, consts) + expr_to_mpoly(e->rhs, f, vars, consts);
    case Expr::Op::Sub:
      return expr_to_mpoly(e->lhs, f, vars, consts) - expr_to_mpoly(e->rhs, f, vars, consts);
    case Expr::Op::Mul:
      return expr_to_mpoly(e->lhs, f, vars, consts) * expr_to_mpoly(e->rhs, f, vars, consts);
    case Expr::Op::Div: {
      MPoly d = expr_to_mpoly(e->rhs, f, vars, consts);
      if (d.is_zero()) throw DivisionByZero();
      if (d.terms().size() != 1 || std::any_of(d.terms()[0].exps.begin(), d.terms()[0].exps.end(), [](auto x) { return x > 0; }))
        throw ParseError("equations may only divide by constants");
      return expr_to_mpoly(e->lhs, f, vars, consts).scaled(f->inv(d.terms()[0].coef));
    }
    case Expr::Op::Neg:
      return expr_to_mpoly(e->lhs, f, vars, consts).scaled(f->neg(f->one()));
    case Expr::Op::Pow:
      if (e->num < 0 || e->num > 4096) throw ParseError("equation exponents must lie in [0, 4096]");
      return expr_to_mpoly(e->lhs, f, vars, consts).pow(e->num.convert_to<std::uint32_t>());
  }
  throw ParseError("bad expression node");
}

FqElem least_generator(const FieldCtx& f) {
  const BigInt order = f.size() - 1;
  std::vector<BigInt> primes;
  BigInt rest = order;
  for (BigInt d = 2; d * d <= rest && d < 1'000'000; ++d) {
    if (rest % d == 0) {
      primes.push_back(d);
      while (rest % d == 0) rest /= d;
    }
  }
  if (rest > 1) {
    if (!boost::multiprecision::miller_rabin_test(rest, 25)) throw ResourceError("cannot factor group order");
    primes.push_back(rest);
  }
  for (BigInt code = 1; code <= order; ++code) {
    const FqElem a = f.decode(code);
    bool gen = true;
    for (const auto& l : primes) {
      if (f.is_one(f.pow(a, BigInt(order / l)))) {
        gen = false;
        break;
      }
    }
    if (gen) return a;
  }
  throw DomainError("no generator found");
}

}  // namespace retset
