#pragma once

#include "retset/bigint.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace retset {

inline constexpr unsigned kMaxExtensionDegree = 64;

/// Element of F_{p^k}: coordinates a_0 + a_1 u + ... + a_{k-1} u^{k-1} with respect to the
/// modulus of the owning FieldCtx. Unused coordinates are always zero.
struct FqElem {
  std::array<std::uint16_t, kMaxExtensionDegree> c{};

  friend bool operator==(const FqElem&, const FqElem&) = default;
};

/// Elements of the prime field are degree-1 FqElem values.
using FpElem = FqElem;

/// Arithmetic context for F_{p^k}. Immutable after construction.
class FieldCtx {
 public:
  /// Deterministic modulus: least monic irreducible of degree k under the encoding
  /// a_0 + a_1 p + ... + a_{k-1} p^{k-1}.
  FieldCtx(std::uint32_t p, unsigned k);
  /// Explicit monic modulus, coefficients from degree 0 upward (leading 1 included).
  FieldCtx(std::uint32_t p, const std::vector<std::int64_t>& modulus);

  static std::shared_ptr<const FieldCtx> make(std::uint32_t p, unsigned k) {
    return std::make_shared<const FieldCtx>(p, k);
  }

  std::uint32_t p() const noexcept { return p_; }
  unsigned k() const noexcept { return k_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  BigInt size() const { return size_; }
  bool same_field(const FieldCtx& other) const noexcept {
    return p_ == other.p_ && modulus_ == other.modulus_;
  }

  FqElem zero() const noexcept { return FqElem{}; }
  FqElem one() const noexcept {
    FqElem e;
    e.c[0] = 1;
    return e;
  }
  FqElem from_int(std::int64_t v) const noexcept;
  FqElem from_big(const BigInt& v) const;
  FqElem from_coeffs(const std::vector<std::int64_t>& coeffs) const;
  /// The class of u (the adjoined root of the modulus); requires k >= 2.
  FqElem gen_u() const;

  bool is_zero(const FqElem& a) const noexcept { return a == FqElem{}; }
  bool is_one(const FqElem& a) const noexcept { return a == one(); }
  /// True when a lies in F_p.
  bool in_prime_field(const FqElem& a) const noexcept;

  FqElem add(const FqElem& a, const FqElem& b) const noexcept;
  FqElem sub(const FqElem& a, const FqElem& b) const noexcept;
  FqElem neg(const FqElem& a) const noexcept;
  FqElem mul(const FqElem& a, const FqElem& b) const noexcept;
  FqElem scale(const FqElem& a, std::uint32_t s) const noexcept;
  FqElem sqr(const FqElem& a) const noexcept { return mul(a, a); }
  /// Throws DivisionByZero on a = 0.
  FqElem inv(const FqElem& a) const;
  FqElem div(const FqElem& a, const FqElem& b) const { return mul(a, inv(b)); }
  FqElem pow(const FqElem& a, const BigInt& e) const;
  FqElem pow(const FqElem& a, std::uint64_t e) const;
  /// a^(p^e); linear over F_p, applied through a cached matrix.
  FqElem frob(const FqElem& a, std::uint64_t e = 1) const noexcept;

  bool is_square(const FqElem& a) const;
  /// Least square root under `less`, or nullopt when a is a non-square.
  std::optional<FqElem> sqrt(const FqElem& a) const;

  /// Total order: compares the integer encodings a_0 + a_1 p + ... .
  bool less(const FqElem& a, const FqElem& b) const noexcept;
  BigInt encode(const FqElem& a) const;
  FqElem decode(const BigInt& v) const;

  template <class Rng>
  FqElem random(Rng& rng) const {
    std::uniform_int_distribution<std::uint32_t> dist(0, p_ - 1);
    FqElem e;
    for (unsigned i = 0; i < k_; ++i) e.c[i] = static_cast<std::uint16_t>(dist(rng));
    return e;
  }

  /// Tr_{F_{p^k} / F_{p^sub_k}}(a); sub_k must divide k.
  FqElem trace_to_subfield(const FqElem& a, unsigned sub_k) const;

  /// "[a0,...,a{k-1}]", or a bare integer for elements of F_p.
  std::string format(const FqElem& a) const;
  /// "[a0,...] mod u^k + ..."
  std::string format_with_modulus(const FqElem& a) const;
  std::string modulus_string() const;
  /// Parses either a bare integer or "[a0,...,a{k-1}]".
  FqElem parse(const std::string& text) const;

 private:
  void init();

  std::uint32_t p_;
  unsigned k_;
  std::vector<std::uint32_t> modulus_;  // monic, degree k_
  std::vector<std::pair<unsigned, std::uint32_t>> reduction_;  // (j, p - m_j) for nonzero m_j, j < k
  std::vector<std::array<std::uint16_t, kMaxExtensionDegree>> frob_matrix_;  // column i = u^{i p}
  BigInt size_;
  FqElem non_residue_{};
  unsigned two_adicity_ = 0;
  BigInt odd_part_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

bool is_prime(std::uint64_t n) noexcept;

}  // namespace retset
