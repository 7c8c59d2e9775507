#pragma once

#include "retset/finite_field.hpp"
#include "retset/ratfunc.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace retset {

/// Parsed arithmetic expression: integers, "[a0,...]" field literals, identifiers, + - * / ^ and parentheses.
struct Expr {
  enum class Op { Num, Elem, Var, Add, Sub, Mul, Div, Neg, Pow };
  Op op = Op::Num;
  BigInt num;        // Num value or Pow exponent
  std::string text;  // Elem literal or Var name
  std::shared_ptr<const Expr> lhs, rhs;
};
using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr parse_expr(const std::string& text);
/// Identifiers used by the expression, sorted.
std::vector<std::string> expr_identifiers(const ExprPtr& e);

/// Named constants of the coefficient field.
using ConstTable = std::map<std::string, FqElem>;

/// Evaluates with t as the function-field variable and constants from the table.
RatFunc expr_to_ratfunc(const ExprPtr& e, const FieldPtr& f, const ConstTable& consts);

/// Polynomial in named variables with coefficients in a finite field.
class MPoly {
 public:
  struct Term {
    FqElem coef;
    std::vector<std::uint32_t> exps;
  };

  MPoly() = default;
  MPoly(FieldPtr f, std::size_t nvars) : f_(std::move(f)), nvars_(nvars) {}
  static MPoly constant(FieldPtr f, std::size_t nvars, const FqElem& c);
  static MPoly variable(FieldPtr f, std::size_t nvars, std::size_t i);

  const FieldPtr& field() const noexcept { return f_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// True when variable i occurs.
  bool uses(std::size_t i) const;
  /// Total degree in the variables of [begin, end).
  std::uint32_t degree_in(std::size_t begin, std::size_t end) const;
  /// True when every term has the same degree in the variables of [begin, end).
  bool homogeneous_in(std::size_t begin, std::size_t end) const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly scaled(const FqElem& c) const;
  MPoly pow(std::uint32_t n) const;

  /// Generic evaluation: `lift` maps coefficients into the value ring.
  template <class V, class Lift, class Add, class Mul>
  V eval(const std::vector<V>& vals, const V& zero, Lift lift, Add add, Mul mul) const {
    V acc = zero;
    for (const auto& term : terms_) {
      V m = lift(term.coef);
      for (std::size_t i = 0; i < nvars_; ++i)
        for (std::uint32_t k = 0; k < term.exps[i]; ++k) m = mul(m, vals[i]);
      acc = add(acc, m);
    }
    return acc;
  }

  std::string str(const std::vector<std::string>& names) const;

 private:
  void normalize();

  FieldPtr f_;
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

/// Variables resolve to their index in `vars`, other identifiers to constants. Division only by constants.
MPoly expr_to_mpoly(const ExprPtr& e, const FieldPtr& f, const std::vector<std::string>& vars, const ConstTable& consts);

/// Least generator of F_q^* under the integer encoding.
FqElem least_generator(const FieldCtx& f);

}  // namespace retset
