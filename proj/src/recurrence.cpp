#include "retset/recurrence.hpp"

#include "retset/errors.hpp"

#include <unordered_map>

namespace retset {

namespace {

/// a * b mod P for polynomials of degree < s.
std::vector<BigInt> mulmod(const std::vector<BigInt>& a, const std::vector<BigInt>& b, const std::vector<BigInt>& P) {
  const std::size_t s = P.size() - 1;
  std::vector<BigInt> prod(2 * s, 0);
  for (std::size_t i = 0; i < s; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < s; ++j) prod[i + j] += a[i] * b[j];
  }
  for (std::size_t k = prod.size(); k-- > s;) {
    if (prod[k] == 0) continue;
    const BigInt c = prod[k];
    for (std::size_t i = 0; i < s; ++i) prod[k - s + i] -= c * P[i];
    prod[k] = 0;
  }
  prod.resize(s);
  return prod;
}

void check_monic(const std::vector<BigInt>& P) {
  if (P.size() < 2) throw DomainError("recurrence polynomial must have degree at least 1");
  if (P.back() != 1) throw DomainError("recurrence polynomial must be monic");
}

BigInt reduce(const BigInt& x, const BigInt& N) { return mod_floor(x, N); }

struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
    return h;
  }
};

/// Runs state -> next from the initial state and returns the first repeat.
template <class Step>
Period detect(std::vector<std::int64_t> state, Step step, std::uint64_t max_states) {
  std::unordered_map<std::vector<std::int64_t>, std::uint64_t, VecHash> seen;
  for (std::uint64_t n = 0;; ++n) {
    auto [it, fresh] = seen.emplace(state, n);
    if (!fresh) return Period{it->second, n - it->second};
    if (seen.size() > max_states) throw ResourceError("eventual period search exceeded its state budget");
    state = step(state);
  }
}

std::int64_t small_modulus(const BigInt& N) {
  if (N < 1) throw DomainError("modulus must be positive");
  if (N > BigInt(1) << 62) throw ResourceError("modulus too large for period detection");
  return static_cast<std::int64_t>(N);
}

std::int64_t mulmod64(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

}  // namespace

RecurrenceBasis::RecurrenceBasis(std::vector<BigInt> P) : P_(std::move(P)) { check_monic(P_); }

std::vector<BigInt> RecurrenceBasis::at(std::uint64_t n) const {
  const std::size_t s = order();
  std::vector<BigInt> result(s, 0), base(s, 0);
  result[0] = 1;
  if (s == 1) {
    result[0] = big_pow(-P_[0], n);
    return result;
  }
  base[1] = 1;
  while (n) {
    if (n & 1U) result = mulmod(result, base, P_);
    n >>= 1U;
    if (n) base = mulmod(base, base, P_);
  }
  return result;
}

BigInt LinearRecurrence::value(std::uint64_t n) const {
  const RecurrenceBasis basis(P);
  if (initial.size() != basis.order()) throw DomainError("initial values must match the recurrence order");
  const auto c = basis.at(n);
  BigInt v = 0;
  for (std::size_t j = 0; j < c.size(); ++j) v += c[j] * initial[j];
  return v;
}

std::vector<BigInt> LinearRecurrence::prefix(std::uint64_t count) const {
  check_monic(P);
  const std::size_t s = P.size() - 1;
  if (initial.size() != s) throw DomainError("initial values must match the recurrence order");
  std::vector<BigInt> out(initial.begin(), initial.end());
  while (out.size() < count) {
    BigInt next = 0;
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < s; ++i) next -= P[i] * out[n - s + i];
    out.push_back(next);
  }
  out.resize(count);
  return out;
}

Period eventual_period_mod(const LinearRecurrence& u, const BigInt& Nbig, std::uint64_t max_states) {
  check_monic(u.P);
  const std::int64_t N = small_modulus(Nbig);
  const std::size_t s = u.P.size() - 1;
  if (u.initial.size() != s) throw DomainError("initial values must match the recurrence order");
  std::vector<std::int64_t> coeff(s), state(s);
  for (std::size_t i = 0; i < s; ++i) {
    coeff[i] = static_cast<std::int64_t>(reduce(-u.P[i], Nbig));
    state[i] = static_cast<std::int64_t>(reduce(u.initial[i], Nbig));
  }
  return detect(
      state,
      [&](const std::vector<std::int64_t>& w) {
        std::int64_t next = 0;
        for (std::size_t i = 0; i < s; ++i) next = (next + mulmod64(coeff[i], w[i], N)) % N;
        std::vector<std::int64_t> out(w.begin() + 1, w.end());
        out.push_back(next);
        return out;
      },
      max_states);
}

Period eventual_period_mod(const RecurrenceBasis& basis, const BigInt& Nbig, std::uint64_t max_states) {
  const std::int64_t N = small_modulus(Nbig);
  const auto& P = basis.polynomial();
  const std::size_t s = basis.order();
  std::vector<std::int64_t> coeff(s);
  for (std::size_t i = 0; i < s; ++i) coeff[i] = static_cast<std::int64_t>(reduce(-P[i], Nbig));
  std::vector<std::int64_t> state(s, 0);
  state[0] = 1 % N;
  // Multiplication by x modulo P.
  return detect(
      state,
      [&](const std::vector<std::int64_t>& c) {
        std::vector<std::int64_t> out(s, 0);
        const std::int64_t top = c[s - 1];
        for (std::size_t i = s; i-- > 1;) out[i] = c[i - 1];
        for (std::size_t i = 0; i < s; ++i) out[i] = (out[i] + mulmod64(top, coeff[i], N)) % N;
        return out;
      },
      max_states);
}

QuadInt QuadInt::operator+(const QuadInt& o) const { return {a + o.a, b + o.b, u, v}; }
QuadInt QuadInt::operator-(const QuadInt& o) const { return {a - o.a, b - o.b, u, v}; }

QuadInt QuadInt::operator*(const QuadInt& o) const {
  if (u != o.u || v != o.v) throw DomainError("quadratic integers from different orders");
  // (a + b w)(c + d w) = ac + (ad + bc) w + bd (u w - v)
  const BigInt bd = b * o.b;
  return {a * o.a - v * bd, a * o.b + b * o.a + u * bd, u, v};
}

QuadInt QuadInt::pow(std::uint64_t n) const {
  QuadInt result{1, 0, u, v}, base = *this;
  while (n) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n) base = base * base;
  }
  return result;
}

BigInt QuadInt::norm() const { return a * a + u * a * b + v * b * b; }

}  // namespace retset
