#pragma once

#include "retset/bigint.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace retset {

/// {c0 + sum_i sum_j c_ij q^(2^j n_i) : n in N^d}. Row i of c holds c_i0, ..., c_ir.
struct PSetTerm {
  BigInt q;
  Rational c0;
  std::vector<std::vector<Rational>> c;

  unsigned d() const { return static_cast<unsigned>(c.size()); }
  unsigned r() const { return c.empty() ? 0 : static_cast<unsigned>(c.front().size() - 1); }
  Rational value(const std::vector<std::uint64_t>& n) const;
  /// Largest j with a nonzero coefficient in any row, or 0.
  unsigned effective_r() const;
  bool operator==(const PSetTerm&) const = default;
};

/// Throws InvalidTerm unless q is a power of p, the shape is rectangular, every c_ij satisfies
///   (q^(2^j) - 1) * prod_{s != j} (q^(2^j) - q^(2^s)) * c_ij in Z,
/// and every value of the term is an integer.
void validate(const PSetTerm& T, std::uint32_t p);


enum class Answer { Yes, No, Unknown };
std::string to_string(Answer a);

struct MemberVerdict {
  Answer answer = Answer::Unknown;
  /// Lexicographically least witness when answer is Yes.
  std::vector<std::uint64_t> witness;
  /// Search radius used for an Unknown answer.
  std::uint64_t searched = 0;
};

/// True when membership is decidable by monotone growth: the nonzero rows' leading coefficients all share a
/// sign.
bool certifiable(const PSetTerm& T);

/// Three-valued membership. Certified answers need certifiable(T); otherwise tuples in [0, bound]^d are searched
/// and a miss is Unknown.
MemberVerdict pset_member(const BigInt& n, const PSetTerm& T, std::uint64_t bound = 32);

/// Distinct values of T in [lo, hi], increasing. Throws UndecidedError when T
/// is not certifiable.
std::vector<BigInt> pset_window(const PSetTerm& T, const BigInt& lo, const BigInt& hi);

/// {a + k delta : k in Z}; delta = 0 is the singleton {a}.
struct APTerm {
  BigInt a;
  BigInt delta;
  bool contains(const BigInt& n) const;
  bool operator==(const APTerm&) const = default;
};

enum class Domain { Integers, Naturals };

/// Finite union of terms, intersected with N when tagged so, with finite sets added and removed.
struct SetExpr {
  std::vector<std::variant<APTerm, PSetTerm>> terms;
  Domain domain = Domain::Integers;
  std::set<BigInt> added;
  std::set<BigInt> removed;

  static SetExpr of(APTerm t);
  static SetExpr of(PSetTerm t);
};

/// Membership in a whole expression; Unknown when some PSetTerm cannot be certified and no other part decides.
MemberVerdict expr_member(const BigInt& n, const SetExpr& E, std::uint64_t bound = 32);

/// Sorted elements of E in [lo, hi]. Throws UndecidedError naming the first undecided n.
std::vector<BigInt> window(const SetExpr& E, const BigInt& lo, const BigInt& hi);
inline std::vector<BigInt> window(const SetExpr& E, std::uint64_t N) { return window(E, 0, BigInt(N)); }

/// Union. Exception sets are resolved by membership, so this may throw UndecidedError. Mixing an N-tagged
/// with a Z-tagged expression throws DomainError.
SetExpr set_union(const SetExpr& A, const SetExpr& B);
/// a * E + b. On N-tagged expressions a and b must be nonnegative.
SetExpr affine(const BigInt& a, const BigInt& b, const SetExpr& E);
SetExpr intersect_nat(const SetExpr& E);

enum class Classification { PNormal, WidelyOnly, Invalid };
std::string to_string(Classification c);
Classification classify(const SetExpr& E, std::uint32_t p);
/// True when T (with r = 0) has the form S_{q,d,0}(c0'/(q-1); c_i/(q-1)) with q-1 | c0' + sum c_i.
bool p_normal_term(const PSetTerm& T);

struct FiniteDifferenceReport {
  BigInt lo, hi, threshold;
  /// Symmetric difference inside [lo, hi].
  std::vector<BigInt> differences;
  /// All differences lie below threshold. Evidence only.
  bool consistent = true;
};
FiniteDifferenceReport equal_up_to_finite(const SetExpr& A, const SetExpr& B, const BigInt& lo, const BigInt& hi,
                                          const BigInt& threshold);

/// A(q; q1, q2) = {q1 q^n1 + q2 q^n2} or B(q; c0, c1) = {c0 + c1 q^n}, with q a positive power of p0 = p^2,
/// q1, q2 powers of p0, c0 >= 0 and c1 >= 1.
struct ABTerm {
  enum class Kind { A, B } kind = Kind::A;
  BigInt q;
  BigInt x, y;  // (q1, q2) or (c0, c1)

  PSetTerm to_pset() const;
  bool operator==(const ABTerm&) const = default;
};
void validate(const ABTerm& t, std::uint32_t p);

/// Grammar, whitespace-insensitive:
///   expr   := term ("+" term)* ["add{" ints "}"] ["del{" ints "}"] ["in N" | "in Z"]
///   term   := "AP(" a "," delta ")" | "PS(" q ";" c0 ";[" row ("|" row)* "])" | "A(" q ";" q1 "," q2 ")"
///           | "B(" q ";" c0 "," c1 ")"
///   row    := rational ("," rational)*
/// A and B terms are stored as the equivalent PS terms. Every PS term is validated against p.
SetExpr parse_set_expr(const std::string& text, std::uint32_t p = 5);
std::string to_string(const SetExpr& E);
std::string to_string(const PSetTerm& T);
std::string to_string(const APTerm& T);

/// One component of a solution set in N^2.
struct ExpComponent {
  enum class Form { Singleton = 1, FirstRay = 2, SecondRay = 3, Diagonal = 4, Quadrant = 5 };
  Form form = Form::Singleton;
  std::uint64_t n1 = 0, n2 = 0;

  bool contains(std::uint64_t a, std::uint64_t b) const;
  std::string str() const;
  bool operator==(const ExpComponent&) const = default;
};

struct ExpDecomposition {
  std::vector<ExpComponent> components;
  std::uint64_t fit_window = 0;
  std::uint64_t certified_window = 0;
  bool contains(std::uint64_t a, std::uint64_t b) const;
};

/// Exact test for: exists m in N^d with c1 q^n1 + c2 q^n2 = e0 + sum e_i q^m_i.
bool two_exponential_solvable(const Rational& c1, const Rational& c2, const Rational& e0, const std::vector<Rational>& e,
                              const BigInt& q, std::uint64_t n1, std::uint64_t n2);

/// Fits the solution set on [0, N]^2 by components of the five forms and re-checks the fit on [0, 2N]^2.
/// Throws FitFailure when no consistent decomposition is found.
ExpDecomposition two_exponential_decompose(const Rational& c1, const Rational& c2, const Rational& e0,
                                           const std::vector<Rational>& e, const BigInt& q, std::uint64_t N);

}  // namespace retset
