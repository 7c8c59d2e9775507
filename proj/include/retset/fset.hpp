#pragma once

#include "retset/bigint.hpp"
#include "retset/good_coset.hpp"
#include "retset/set_algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace retset {

using Matrix = std::vector<std::vector<BigInt>>;

/// Element of Z^rank + sum Z/d_i.
struct ModElem {
  std::vector<BigInt> free;
  std::vector<BigInt> tor;
  bool operator==(const ModElem&) const = default;
};

/// "(f1 f2; t1 t2)".
std::string to_string(const ModElem& x);

struct FGModule {
  unsigned rank = 0;
  /// Invariants d_i >= 2.
  std::vector<BigInt> torsion;

  ModElem zero() const;
  /// Torsion components brought into [0, d_i). Throws DomainError on a shape mismatch.
  ModElem reduce(ModElem x) const;
  ModElem add(const ModElem& x, const ModElem& y) const;
  ModElem scale(const BigInt& k, const ModElem& x) const;
  /// Exponent of the torsion part (lcm of the d_i), 1 when torsion-free.
  BigInt torsion_exponent() const;
};

/// Endomorphism Phi of M = M_tor + M_0 with P(Phi) = 0.
///   free part of Phi(x)    = free_map * x_free
///   torsion part of Phi(x) = tor_map * x_tor + mixed_map * x_free   (mod d)
struct FrobeniusSpec {
  FGModule M;
  Matrix free_map;
  Matrix tor_map;
  Matrix mixed_map;
  /// Monic, constant term first.
  std::vector<BigInt> P;
  BigInt q = 1;

  ModElem apply(const ModElem& x) const;
  /// Phi applied n times in turn.
  ModElem iterate(std::uint64_t n, const ModElem& x) const;
  /// Throws DomainError on bad shapes, a torsion map that is not well defined, a non-monic P, or P(Phi) != 0
  /// on some generator.
  void validate() const;
};

/// Phi^n(x) = sum_j c_j(n) Phi^j(x).
ModElem phi_power_apply(std::uint64_t n, const ModElem& x, const FrobeniusSpec& spec);

/// alpha0 + sum_i sum_j Phi^(stride * 2^j * n_i)(alpha[i][j]). A plain F-set has one entry per row.
struct FSetSpec {
  ModElem alpha0;
  std::vector<std::vector<ModElem>> alpha;
  std::uint64_t stride = 1;

  unsigned d() const { return static_cast<unsigned>(alpha.size()); }
  ModElem point(const FrobeniusSpec& spec, const std::vector<std::uint64_t>& n) const;
};

/// x in Z * g0. g0 must have a nonzero free part.
bool in_cyclic(const FGModule& M, const ModElem& x, const ModElem& g0);

/// {n in N^d : F.point(n) in Z * g0} as a union of good cosets.
struct IndexDecomposition {
  std::vector<GoodCoset> cosets;
  /// Exact on all of N^d, or checked against brute force on [0, certified_window]^d only.
  bool exact = false;
  std::uint64_t certified_window = 0;

  bool member(const IntVec& n) const;
  /// First line "exact" or "window-certified [0,W]", then one coset per line.
  std::string str() const;
};

/// Exact when every free part of alpha0 and of Phi^t(alpha_ij), t < deg P, is a rational multiple of g0's free
/// part: the condition then depends on c_t(n) modulo |g0_a| * exponent(M_tor) only. Otherwise fits
/// product-periodic cosets on [0, N]^d and certifies them on [0, 2N]^d, throwing FitFailure on mismatch.
IndexDecomposition decompose_index_set(const FrobeniusSpec& spec, const FSetSpec& F, const ModElem& g0, std::uint64_t N);

/// {c + sum_i l_i (t^n_i - 1)/(t - 1) : n in N^d} for t = +-p^e. Zero l_i are dropped; all zero gives {c}.
/// Negative t splits n_i = 2 m_i + eps_i into 2^d terms with ratio t^2.
SetExpr frobenius_orbit_closed_form(const BigInt& c, const std::vector<BigInt>& l, const BigInt& t);

/// Coefficients c_0..c_{r-1} with l_n = sum_j c_j q^(2^j n) for every sample, or nullopt. The first r samples fix
/// the coefficients; the rest and the differences l'_m = l_(m+1) - q l_m are checked exactly. Needs at least
/// r + 2 samples and q >= 2.
std::optional<std::vector<Rational>> fit_power_coefficients(const std::vector<BigInt>& samples, const BigInt& q,
                                                            unsigned r);
inline std::uint64_t default_fit_nmax(unsigned r) { return r + 5; }
/// Inverse of the difference step: from l_0 and the coefficients c'_j (j >= 1, entry 0 ignored) of l'_m, recovers
/// c_j = c'_j / (q^(2^j) - q) and c_0 = l_0 - sum_{j>=1} c_j.
std::vector<Rational> telescoping_coefficients(const Rational& l0, const std::vector<Rational>& cprime, const BigInt& q);

/// Text form of a decomposition problem:
///   [module]    rank = 1 / torsion = 3
///   [frobenius] free = 5 / torsion = 2 / mixed = 0 / P = 10 -7 1 / q = 5
///   [fset]      g0 = (1; 0) / alpha0 = (0; 1) / alpha = (1; 1) / stride = 1
/// Matrix rows are separated by '|'; each "alpha" line is one row i with entries j separated by ','.
struct FSetProblem {
  FrobeniusSpec spec;
  FSetSpec fset;
  ModElem g0;
};
FSetProblem parse_fset_problem(const std::string& text);

}  // namespace retset
