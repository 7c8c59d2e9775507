#pragma once

#include "retset/finite_field.hpp"

#include <vector>

namespace retset {

/// Dense univariate polynomial over a FieldCtx, coefficients low degree first, no trailing zeros.
/// Only used at small degree: embeddings, division polynomials, torsion counts.
class DensePoly {
 public:
  DensePoly() = default;
  explicit DensePoly(FieldPtr f) : f_(std::move(f)) {}
  DensePoly(FieldPtr f, std::vector<FqElem> coeffs);

  static DensePoly constant(FieldPtr f, const FqElem& c);
  static DensePoly x(FieldPtr f);
  /// Builds from small integer coefficients, low degree first.
  static DensePoly from_ints(FieldPtr f, const std::vector<std::int64_t>& coeffs);

  const FieldPtr& field() const noexcept { return f_; }
  const std::vector<FqElem>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  FqElem lead() const;
  FqElem coeff(std::size_t i) const;

  DensePoly operator+(const DensePoly& o) const;
  DensePoly operator-(const DensePoly& o) const;
  DensePoly operator-() const;
  DensePoly operator*(const DensePoly& o) const;
  DensePoly scaled(const FqElem& s) const;
  DensePoly monic() const;

  friend bool operator==(const DensePoly& a, const DensePoly& b) { return a.c_ == b.c_; }

  FqElem eval(const FqElem& x) const;

 private:
  void trim();

  FieldPtr f_;
  std::vector<FqElem> c_;
};

/// Quotient and remainder; throws DivisionByZero for a zero divisor.
std::pair<DensePoly, DensePoly> divmod(const DensePoly& a, const DensePoly& b);
DensePoly operator%(const DensePoly& a, const DensePoly& b);
/// Monic gcd (zero when both inputs are zero).
DensePoly gcd(const DensePoly& a, const DensePoly& b);
DensePoly mulmod(const DensePoly& a, const DensePoly& b, const DensePoly& m);
DensePoly powmod(const DensePoly& a, const BigInt& e, const DensePoly& m);
/// f(g(x)).
DensePoly compose(const DensePoly& f, const DensePoly& g);
/// All roots in the coefficient field, sorted by FieldCtx::less, without multiplicity.
std::vector<FqElem> roots(const DensePoly& f);

}  // namespace retset
