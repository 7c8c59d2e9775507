#pragma once

#include "retset/elliptic_curve.hpp"
#include "retset/ratfunc.hpp"
#include "retset/specialization.hpp"

#include <optional>
#include <string>
#include <vector>

namespace retset {

struct Component {
  enum class Kind { Torus, Curve };
  Kind kind = Kind::Torus;
  unsigned dim = 0;  // torus dimension; 0 for curves
  std::optional<EllipticCurve> curve;

  static Component torus(unsigned dim);
  static Component elliptic(const EllipticCurve& e);
  bool is_curve() const noexcept { return kind == Kind::Curve; }
};

/// Direct product of tori and constant elliptic curves, coordinates over coeffs(t).
class AmbientGroup {
 public:
  AmbientGroup(FieldPtr coeffs, std::vector<Component> comps);

  const FieldPtr& coeffs() const noexcept { return coeffs_; }
  const std::vector<Component>& components() const noexcept { return comps_; }
  std::size_t size() const noexcept { return comps_.size(); }
  const Component& operator[](std::size_t i) const { return comps_.at(i); }
  bool has_curves() const noexcept;
  const SymCurve& sym_curve(std::size_t i) const;

 private:
  FieldPtr coeffs_;
  std::vector<Component> comps_;
  std::vector<std::optional<SymCurve>> sym_;
};

struct ComponentPoint {
  std::vector<RatFunc> torus;  // torus components
  SymPoint curve;              // curve components
};
using GroupPoint = std::vector<ComponentPoint>;

struct FqComponentPoint {
  std::vector<FqElem> torus;
  FqPoint curve;
  friend bool operator==(const FqComponentPoint&, const FqComponentPoint&) = default;
};
using FqGroupPoint = std::vector<FqComponentPoint>;

/// Per-coordinate bounds on max(deg num, deg den) in t; a curve component has entries (x, y), where the
/// y entry bounds the rational part and half the radicand degree.
using Heights = std::vector<std::vector<BigInt>>;

GroupPoint identity(const AmbientGroup& G);
GroupPoint group_add(const AmbientGroup& G, const GroupPoint& a, const GroupPoint& b);
GroupPoint group_neg(const AmbientGroup& G, const GroupPoint& a);
/// Componentwise n-th power on tori, scalar multiplication on curves.
GroupPoint group_mul(const AmbientGroup& G, const BigInt& n, const GroupPoint& g);
/// Throws DomainError when a coordinate is off its component (zero torus coordinate, off-curve point).
void validate_point(const AmbientGroup& G, const GroupPoint& g);

Heights heights_of(const AmbientGroup& G, const GroupPoint& g);
Heights heights_mul(const AmbientGroup& G, const Heights& h, const BigInt& n);
Heights heights_add(const AmbientGroup& G, const Heights& a, const Heights& b);
/// Sum of all entries.
BigInt height_total(const Heights& h);

/// The group after t -> theta.
class SpecializedGroup {
 public:
  SpecializedGroup(const AmbientGroup& G, FieldPtr target);

  const FieldCtx& field() const noexcept { return *target_; }
  const FieldPtr& field_ptr() const noexcept { return target_; }
  const CurveOver& curve(std::size_t i) const { return *curves_.at(i); }

  FqGroupPoint identity() const;
  FqGroupPoint add(const FqGroupPoint& a, const FqGroupPoint& b) const;
  FqGroupPoint neg(const FqGroupPoint& a) const;
  FqGroupPoint mul(const BigInt& n, const FqGroupPoint& a) const;
  /// Throws BadSpecialization on poles.
  FqGroupPoint specialize(const GroupPoint& g, const Specialization& s) const;

 private:
  AmbientGroup G_;
  FieldPtr target_;
  std::vector<std::optional<CurveOver>> curves_;
};

std::string format_point(const AmbientGroup& G, const GroupPoint& g);

}  // namespace retset
