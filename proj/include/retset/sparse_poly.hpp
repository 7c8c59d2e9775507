#pragma once

#include "retset/dense_poly.hpp"
#include "retset/finite_field.hpp"

#include <string>
#include <vector>

namespace retset {

/// Term count above which products and powers refuse to materialize.
inline constexpr std::size_t kDefaultTermLimit = 1'000'000;

struct SparseTerm {
  BigInt exp;
  FqElem coef;
};

/// Polynomial in t over a finite field with arbitrary-precision exponents.
/// Terms are sorted by increasing exponent; no zero coefficients are stored.
class SparsePoly {
 public:
  SparsePoly() = default;
  explicit SparsePoly(FieldPtr f) : f_(std::move(f)) {}
  /// Terms may be unsorted and contain repeats; they are merged.
  SparsePoly(FieldPtr f, std::vector<SparseTerm> terms);

  static SparsePoly constant(FieldPtr f, const FqElem& c);
  static SparsePoly monomial(FieldPtr f, const FqElem& c, const BigInt& e);
  static SparsePoly t(FieldPtr f) { return monomial(f, f->one(), 1); }
  static SparsePoly from_dense(const DensePoly& d);

  const FieldPtr& field() const noexcept { return f_; }
  const std::vector<SparseTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == 0); }
  /// -1 for the zero polynomial.
  BigInt degree() const { return terms_.empty() ? BigInt(-1) : terms_.back().exp; }
  FqElem constant_term() const;
  FqElem lead() const;

  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator-() const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly scaled(const FqElem& s) const;
  /// f^n; powers of p go through Frobenius so t^(p^e)-shaped inputs stay sparse.
  SparsePoly pow(const BigInt& n, std::size_t term_limit = kDefaultTermLimit) const;
  /// f^(p^e): a t^m -> a^(p^e) t^(m p^e).
  SparsePoly frob_pow(std::uint64_t e) const;
  /// Substitutes t -> t^m.
  SparsePoly inflate(const BigInt& m) const;

  DensePoly to_dense(std::size_t term_limit = kDefaultTermLimit) const;

  friend bool operator==(const SparsePoly& a, const SparsePoly& b);

  /// "3*t^15625 + 2"; extension-field coefficients print as "[a0,...]".
  std::string str() const;

 private:
  void normalize();

  FieldPtr f_;
  std::vector<SparseTerm> terms_;
};

SparsePoly sparse_frob_pow(const SparsePoly& f, std::uint64_t e);

/// Parses sums of "c*t^e" terms (c an integer or "[a0,...]", either part optional).
SparsePoly parse_sparse(FieldPtr f, const std::string& text);

}  // namespace retset
