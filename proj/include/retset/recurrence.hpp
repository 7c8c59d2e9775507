#pragma once

#include "retset/bigint.hpp"

#include <cstdint>
#include <vector>

namespace retset {

/// Basis sequences c_0(n), ..., c_{s-1}(n) of the recurrence with characteristic polynomial P, i.e.
/// x^n = sum_j c_j(n) x^j mod P. P is monic, coefficients listed from the constant term up.
class RecurrenceBasis {
 public:
  explicit RecurrenceBasis(std::vector<BigInt> P);

  unsigned order() const { return static_cast<unsigned>(P_.size() - 1); }
  const std::vector<BigInt>& polynomial() const { return P_; }
  /// (c_0(n), ..., c_{s-1}(n)).
  std::vector<BigInt> at(std::uint64_t n) const;
  BigInt term(unsigned j, std::uint64_t n) const { return at(n).at(j); }

 private:
  std::vector<BigInt> P_;
};

/// u(n) with characteristic polynomial P and initial values u(0..s-1).
struct LinearRecurrence {
  std::vector<BigInt> P;
  std::vector<BigInt> initial;

  BigInt value(std::uint64_t n) const;
  /// u(0), ..., u(count-1) by unrolling.
  std::vector<BigInt> prefix(std::uint64_t count) const;
};

struct Period {
  std::uint64_t preperiod = 0;
  std::uint64_t period = 1;
  bool operator==(const Period&) const = default;
};

/// Minimal (preperiod, period) of u(n) mod N, by cycle detection on windows of s consecutive terms.
/// Throws ResourceError after max_states distinct states.
Period eventual_period_mod(const LinearRecurrence& u, const BigInt& N, std::uint64_t max_states = 20'000'000);
/// Joint period of (c_0(n), ..., c_{s-1}(n)) mod N.
Period eventual_period_mod(const RecurrenceBasis& basis, const BigInt& N, std::uint64_t max_states = 20'000'000);

/// Element a + b w of Z[w] with w^2 = u w - v.
struct QuadInt {
  BigInt a, b;
  BigInt u, v;

  static QuadInt omega(const BigInt& u, const BigInt& v) { return {0, 1, u, v}; }
  QuadInt operator+(const QuadInt& o) const;
  QuadInt operator-(const QuadInt& o) const;
  QuadInt operator*(const QuadInt& o) const;
  QuadInt pow(std::uint64_t n) const;
  /// Norm a^2 + u a b + v b^2.
  BigInt norm() const;
  bool operator==(const QuadInt& o) const { return a == o.a && b == o.b && u == o.u && v == o.v; }
};

}  // namespace retset
