#pragma once

#include "retset/dense_poly.hpp"
#include "retset/finite_field.hpp"
#include "retset/ratfunc.hpp"
#include "retset/specialization.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace retset {

/// y^2 = x^3 + A x + B with A, B in F_p, p > 3.
class EllipticCurve {
 public:
  EllipticCurve(std::uint32_t p, std::int64_t A, std::int64_t B);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t A() const noexcept { return a_; }
  std::uint32_t B() const noexcept { return b_; }
  const FieldPtr& prime_field() const noexcept { return fp_; }
  /// #E(F_p) by exhaustive count.
  std::uint64_t count_fp() const noexcept { return count_; }
  /// a_p = p + 1 - #E(F_p).
  std::int64_t trace() const noexcept { return static_cast<std::int64_t>(p_) + 1 - static_cast<std::int64_t>(count_); }
  bool supersingular() const noexcept { return trace() % static_cast<std::int64_t>(p_) == 0; }
  /// x^3 + A x + B over the prime field.
  DensePoly rhs() const;
  std::string str() const;

 private:
  std::uint32_t p_, a_, b_;
  FieldPtr fp_;
  std::uint64_t count_ = 0;
};

/// Affine point or O over a finite field.
struct FqPoint {
  bool inf = true;
  FqElem x{}, y{};
  static FqPoint infinity() { return {}; }
  static FqPoint affine(const FqElem& x, const FqElem& y) { return {false, x, y}; }
  friend bool operator==(const FqPoint&, const FqPoint&) = default;
};

/// Group law of a constant curve over an extension field of its prime field.
class CurveOver {
 public:
  CurveOver(const EllipticCurve& e, FieldPtr f);

  const FieldCtx& field() const noexcept { return *f_; }
  const FieldPtr& field_ptr() const noexcept { return f_; }
  const EllipticCurve& curve() const noexcept { return e_; }

  bool on_curve(const FqPoint& P) const;
  FqElem rhs(const FqElem& x) const;
  FqPoint neg(const FqPoint& P) const;
  FqPoint add(const FqPoint& P, const FqPoint& Q) const;
  FqPoint dbl(const FqPoint& P) const { return add(P, P); }
  /// Plain double-and-add.
  FqPoint mul_plain(const BigInt& n, const FqPoint& P) const;
  /// Routes powers of p through -F^2 on supersingular curves, double-and-add otherwise.
  FqPoint mul(const BigInt& n, const FqPoint& P) const;
  /// Coordinates raised to p^e.
  FqPoint frob(const FqPoint& P, std::uint64_t e = 1) const;
  /// A point with the given x and least y, if any.
  std::optional<FqPoint> lift_x(const FqElem& x) const;

 private:
  EllipticCurve e_;
  FieldPtr f_;
  FqElem A_, B_;
};

/// Point over F(t)[sqrt(D)]: (x, c * D^h * sqrt(D)) with x, c rational in t. The exponent h is kept
/// separate so that Frobenius images stay sparse.
struct SymPoint {
  bool inf = true;
  RatFunc x;
  RatFunc c;
  BigInt h = 0;
  SparsePoly D;

  static SymPoint infinity() { return {}; }
  /// (x, sqrt(x^3 + A x + B)); x must be a polynomial in t.
  static SymPoint from_x(const EllipticCurve& e, const RatFunc& x);
};

class SymCurve {
 public:
  /// Coordinates live over `coeffs`, which must contain the curve's prime field.
  SymCurve(const EllipticCurve& e, FieldPtr coeffs);

  const EllipticCurve& curve() const noexcept { return e_; }
  const FieldPtr& field() const noexcept { return f_; }

  SymPoint neg(const SymPoint& P) const;
  /// Throws FieldMismatch when the two points use different radicands.
  SymPoint add(const SymPoint& P, const SymPoint& Q) const;
  SymPoint dbl(const SymPoint& P) const { return add(P, P); }
  SymPoint mul(const BigInt& n, const SymPoint& P) const;
  SymPoint frob(const SymPoint& P, std::uint64_t e = 1) const;
  /// y / sqrt(D) as a rational function; throws ResourceError when D^h would be too large.
  RatFunc y_coefficient(const SymPoint& P) const;
  /// Exact on-curve test; needs y_coefficient.
  bool on_curve(const SymPoint& P) const;
  /// Image under t -> theta; the radicand's square root is the least root in the target field.
  FqPoint specialize(const SymPoint& P, const Specialization& s) const;

 private:
  RatFunc constant(std::int64_t v) const;

  EllipticCurve e_;
  FieldPtr f_;
};

/// x(m P) = f_m(x) / g_m(x), gcd-reduced, g_m monic up to its leading coefficient m^2.
std::pair<DensePoly, DensePoly> division_poly(std::uint64_t m, const EllipticCurve& e);

/// Number of m-torsion points over F_{p^k}, for the least k <= max_k at which the count reaches m'^2
/// (m' the prime-to-p part of m). Throws ResourceError when max_k is too small.
std::uint64_t torsion_count(std::uint64_t m, const EllipticCurve& e, unsigned max_k = 12);

/// Number of m-torsion points over F_{p^k}.
std::uint64_t torsion_count_at(std::uint64_t m, const EllipticCurve& e, unsigned k);

}  // namespace retset
