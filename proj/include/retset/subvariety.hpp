#pragma once

#include "retset/config.hpp"
#include "retset/expr.hpp"
#include "retset/group.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace retset {

/// Coordinates of one ambient component: torus coordinates, or the projective (X0:X1:X2) of a curve,
/// where an affine point is (x:y:1) and O is (0:1:0).
struct CoordBlock {
  bool curve = false;
  std::vector<std::string> names;
};

/// Equations (= 0) and inequations (!= 0) in the coordinates of an ambient group.
///
/// Text form:
///
///   [coordinates]
///   torus = x, y, z
///   curve = X0, X1, X2
///   [equations]
///   x + y = 2*z + 2*alpha^2
///   [inequations]
///   z + 1
class PolySystem {
 public:
  /// Throws DomainError when a polynomial is not homogeneous in the coordinates of some curve block.
  PolySystem(FieldPtr f, std::vector<CoordBlock> blocks, std::vector<MPoly> equations, std::vector<MPoly> inequations = {});

  const FieldPtr& field() const noexcept { return f_; }
  const std::vector<CoordBlock>& blocks() const noexcept { return blocks_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t nvars() const noexcept { return names_.size(); }
  std::size_t offset(std::size_t block) const { return offsets_.at(block); }
  const std::vector<MPoly>& equations() const noexcept { return eqs_; }
  const std::vector<MPoly>& inequations() const noexcept { return ineqs_; }

  /// Throws DomainError when the blocks do not match the components of G.
  void check_ambient(const AmbientGroup& G) const;
  std::string str() const;

 private:
  FieldPtr f_;
  std::vector<CoordBlock> blocks_;
  std::vector<std::string> names_;
  std::vector<std::size_t> offsets_;
  std::vector<MPoly> eqs_, ineqs_;
};

PolySystem parse_poly_system(const std::string& text, const FieldPtr& f, const ConstTable& consts);
PolySystem load_poly_system(const std::string& path, const FieldPtr& f, const ConstTable& consts);

/// The hyperplane X0*Y2 = X2*Y0 + X2*Y2 on a product of two curves, i.e. x(P) = x(Q) + 1 in the affine chart.
PolySystem segre_hyperplane(const FieldPtr& f);

/// Undecided marks a resource failure; membership tests themselves never return it.
enum class Verdict { Member, NonMember, ProbableMember, Undecided };
std::string to_string(Verdict v);

enum class Mode { Exact, MonteCarlo };

struct CheckOptions {
  Mode mode = Mode::Exact;
  unsigned specializations = 5;
  /// theta is drawn from F_{p^k}, k = field_degree.
  unsigned field_degree = 18;
  std::uint64_t seed = 1;
  /// Fresh draws allowed when theta hits a pole or a zero of a torus coordinate.
  unsigned max_redraws = 200;
};

struct MembershipResult {
  Verdict verdict = Verdict::NonMember;
  /// False-accept bound; zero unless the verdict is ProbableMember.
  Rational error_bound = 0;
  std::string detail;
};

MembershipResult contains(const PolySystem& V, const AmbientGroup& G, const GroupPoint& P, const CheckOptions& opt = {});

/// Outcome of evaluating a system at one specialized point.
struct SystemEval {
  bool equations_vanish = true;
  /// Bit i set when inequation i is nonzero.
  std::uint64_t nonzero_inequations = 0;
};

/// A system with coefficients mapped into a specialization field, for repeated evaluation.
class SpecializedSystem {
 public:
  SpecializedSystem(const PolySystem& V, const FieldCtx& F, const std::function<FqElem(const FqElem&)>& embed) : F_(F) {
    auto convert = [&](const MPoly& m) {
      std::vector<Term> out;
      for (const auto& t : m.terms()) out.push_back({embed(t.coef), t.exps});
      return out;
    };
    for (const auto& m : V.equations()) eqs_.push_back(convert(m));
    for (const auto& m : V.inequations()) ineqs_.push_back(convert(m));
  }

  SystemEval operator()(const std::vector<FqElem>& vals) const {
    SystemEval ev;
    for (const auto& e : eqs_) {
      if (!F_.is_zero(value(e, vals))) {
        ev.equations_vanish = false;
        break;
      }
    }
    for (std::size_t i = 0; i < ineqs_.size(); ++i)
      if (!F_.is_zero(value(ineqs_[i], vals))) ev.nonzero_inequations |= 1ULL << i;
    return ev;
  }

 private:
  struct Term {
    FqElem coef;
    std::vector<std::uint32_t> exps;
  };

  FqElem value(const std::vector<Term>& poly, const std::vector<FqElem>& vals) const {
    FqElem acc = F_.zero();
    for (const auto& t : poly) {
      FqElem m = t.coef;
      for (std::size_t i = 0; i < t.exps.size(); ++i)
        if (t.exps[i]) m = F_.mul(m, F_.pow(vals[i], static_cast<std::uint64_t>(t.exps[i])));
      acc = F_.add(acc, m);
    }
    return acc;
  }

  const FieldCtx& F_;
  std::vector<std::vector<Term>> eqs_, ineqs_;
};

/// Coordinate values of a specialized point, in the order of V's variables.
std::vector<FqElem> point_coordinates(const PolySystem& V, const AmbientGroup& G, const FqGroupPoint& P, const FieldCtx& F);
/// `embed` maps the system's coefficients into F.
SystemEval evaluate_at(const PolySystem& V, const FieldCtx& F, const std::vector<FqElem>& vals,
                       const std::function<FqElem(const FqElem&)>& embed);
std::uint64_t all_inequations_mask(const PolySystem& V);

/// Per-specialization false-accept numerator: sum over equations of 2^r * (height bound of the equation
/// at a point with these heights), r the number of curve y-coordinates it uses, plus the heights of the
/// curve x-coordinates (poles where the affine chart fails).
BigInt mc_numerator(const PolySystem& V, const AmbientGroup& G, const Heights& h);
/// Values of theta excluded up front: zeros and poles of torus coordinates, poles of curve coordinates.
BigInt bad_theta_bound(const AmbientGroup& G, const Heights& h);
/// (numerator / (space - bad))^s, capped at 1.
Rational mc_error_bound(const BigInt& numerator, const BigInt& space, const BigInt& bad, unsigned s);

/// Scalar form of the Segre hyperplane at (P, Q).
struct SegreCondition {
  /// Either point is O; then `holds` is the value of the chart evaluation at (0:1:0).
  bool degenerate = false;
  bool holds = false;
  /// Otherwise the condition reads lhs = rhs, namely x(P) = x(Q) + 1.
  RatFunc lhs, rhs;
};

/// Throws DomainError unless V is the Segre hyperplane (up to a scalar) on two curve blocks.
SegreCondition segre_affine_reduce(const PolySystem& V, const SymPoint& P, const SymPoint& Q);
Verdict decide(const SegreCondition& c, const EqOptions& opt = {});

/// Points w_1..w_k with factor systems C_1..C_k claimed to sum to n*g.
struct SumWitness {
  std::vector<GroupPoint> points;
  std::vector<PolySystem> factors;
};

struct WitnessResult {
  Verdict verdict = Verdict::NonMember;
  Rational error_bound = 0;
  /// 1-based index of the failing factor, 0 when the factors pass and the sum does not match.
  std::size_t failed_index = 0;
  std::string detail;
};

WitnessResult check_sum_witness(const AmbientGroup& G, const SumWitness& w, const GroupPoint& g, const BigInt& n,
                                const CheckOptions& opt = {});

/// Exact equality of symbolic group points; throws UndecidedError for curve points over different radicands.
bool points_equal(const AmbientGroup& G, const GroupPoint& a, const GroupPoint& b);

}  // namespace retset
