#pragma once

#include "retset/sparse_poly.hpp"
#include "retset/specialization.hpp"

#include <cstdint>
#include <string>

namespace retset {

/// num/den with den != 0. Not kept reduced; equality is cross-multiplicative.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(SparsePoly num);
  RatFunc(SparsePoly num, SparsePoly den);

  static RatFunc constant(FieldPtr f, const FqElem& c) { return RatFunc(SparsePoly::constant(std::move(f), c)); }
  static RatFunc t(FieldPtr f) { return RatFunc(SparsePoly::t(std::move(f))); }

  const SparsePoly& num() const noexcept { return num_; }
  const SparsePoly& den() const noexcept { return den_; }
  const FieldPtr& field() const noexcept { return num_.field(); }
  bool is_zero() const noexcept { return num_.is_zero(); }
  /// Total term count of numerator and denominator.
  std::size_t size() const noexcept { return num_.size() + den_.size(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc inverse() const;
  RatFunc pow(const BigInt& n) const;
  RatFunc frob_pow(std::uint64_t e) const { return RatFunc(num_.frob_pow(e), den_.frob_pow(e)); }
  /// Cancels a common constant so the denominator is monic; cheap, not a gcd reduction.
  RatFunc normalized() const;
  /// Divides out gcd(num, den) when both degrees are below the limit; otherwise returns *this.
  RatFunc reduced(std::size_t degree_limit = 4096) const;

  std::string str() const;

 private:
  SparsePoly num_;
  SparsePoly den_;
};

struct EqOptions {
  /// Cross products with at least this many terms go to the specialization path.
  std::size_t exact_term_limit = 200'000;
  unsigned specializations = 5;
  unsigned field_degree = 12;
  std::uint64_t seed = 1;
};

struct EqVerdict {
  bool equal = false;
  bool probabilistic = false;
  /// False-accept bound, zero on the exact path.
  Rational error_bound = 0;
};

EqVerdict ratfunc_eq(const RatFunc& a, const RatFunc& b, const EqOptions& opt = {});

/// Throws BadSpecialization when the denominator vanishes at theta.
FqElem specialize(const RatFunc& f, const Specialization& s);

RatFunc parse_ratfunc(FieldPtr f, const std::string& text);

}  // namespace retset
