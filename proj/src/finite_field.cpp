#include "retset/finite_field.hpp"

#include "retset/errors.hpp"

#include <algorithm>
#include <sstream>

namespace retset {

namespace {

using PolyP = std::vector<std::uint32_t>;  // F_p polynomial, low degree first, trimmed

void trim(PolyP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // Fermat; p is prime and small.
  std::uint64_t result = 1, base = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1U) result = result * base % p;
    base = base * base % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

PolyP poly_mod(PolyP a, const PolyP& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::uint64_t coef = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j) {
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - coef * m[j] % p) % p);
    }
    trim(a);
  }
  return a;
}

PolyP poly_mulmod(const PolyP& a, const PolyP& b, const PolyP& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  PolyP r(acc.begin(), acc.end());
  return poly_mod(std::move(r), m, p);
}

PolyP poly_powmod(PolyP base, std::uint64_t e, const PolyP& m, std::uint32_t p) {
  PolyP result{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1U) result = poly_mulmod(result, base, m, p);
    e >>= 1U;
    if (e) base = poly_mulmod(base, base, m, p);
  }
  return result;
}

PolyP poly_gcd(PolyP a, PolyP b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyP r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool rabin_irreducible(const PolyP& f, std::uint32_t p) {
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  if (k == 1) return true;
  // x^(p^i) mod f for i = 1..k
  std::vector<PolyP> xpow(k + 1);
  xpow[0] = poly_mod(PolyP{0, 1}, f, p);
  for (unsigned i = 1; i <= k; ++i) xpow[i] = poly_powmod(xpow[i - 1], p, f, p);
  if (xpow[k] != xpow[0]) return false;
  for (unsigned r = 2; r <= k; ++r) {
    if (k % r != 0 || !is_prime(r)) continue;
    PolyP h = xpow[k / r];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    PolyP g = poly_gcd(f, h, p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldCtx::FieldCtx(std::uint32_t p, unsigned k) : p_(p), k_(k) {
  if (!is_prime(p) || p > 65521) throw DomainError("field characteristic must be a prime below 2^16");
  if (k < 1 || k > kMaxExtensionDegree) throw DomainError("extension degree out of range");
  if (k == 1) {
    modulus_ = {0, 1};
  } else {
    // Enumerate lower coefficients as the integer a_0 + a_1 p + ... in increasing order.
    PolyP cand(k + 1, 0);
    cand[k] = 1;
    for (;;) {
      if (cand[0] != 0 && rabin_irreducible(cand, p)) break;
      unsigned i = 0;
      while (i < k) {
        if (++cand[i] < p) break;
        cand[i] = 0;
        ++i;
      }
      if (i == k) throw Error("no irreducible polynomial found");
    }
    modulus_ = cand;
  }
  init();
}

FieldCtx::FieldCtx(std::uint32_t p, const std::vector<std::int64_t>& modulus) : p_(p) {
  if (!is_prime(p) || p > 65521) throw DomainError("field characteristic must be a prime below 2^16");
  if (modulus.size() < 2) throw DomainError("modulus must have degree >= 1");
  for (std::int64_t c : modulus) {
    std::int64_t r = c % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    modulus_.push_back(static_cast<std::uint32_t>(r));
  }
  trim(modulus_);
  if (modulus_.size() < 2 || modulus_.back() != 1) throw DomainError("modulus must be monic");
  k_ = static_cast<unsigned>(modulus_.size() - 1);
  if (k_ > kMaxExtensionDegree) throw DomainError("extension degree out of range");
  if (!rabin_irreducible(modulus_, p_)) throw DomainError("modulus is reducible");
  init();
}

void FieldCtx::init() {
  for (unsigned j = 0; j < k_; ++j)
    if (modulus_[j] != 0) reduction_.emplace_back(j, (p_ - modulus_[j]) % p_);
  size_ = big_pow(BigInt(p_), k_);

  // Frobenius matrix: column i holds u^{i p}.
  frob_matrix_.resize(k_);
  if (k_ == 1) {
    frob_matrix_[0] = {};
    frob_matrix_[0][0] = 1;
  } else {
    FqElem u = gen_u();
    FqElem up = pow(u, std::uint64_t{p_});
    FqElem cur = one();
    for (unsigned i = 0; i < k_; ++i) {
      frob_matrix_[i] = cur.c;
      cur = mul(cur, up);
    }
  }

  // Tonelli-Shanks data.
  BigInt qm1 = size_ - 1;
  two_adicity_ = 0;
  while (qm1 % 2 == 0 && qm1 != 0) {
    qm1 /= 2;
    ++two_adicity_;
  }
  odd_part_ = qm1;
  if (p_ != 2) {
    BigInt half = (size_ - 1) / 2;
    for (BigInt code = 1; code < size_; ++code) {
      FqElem cand = decode(code);
      if (!is_one(pow(cand, half))) {
        non_residue_ = cand;
        break;
      }
    }
  }
}

FqElem FieldCtx::from_int(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  FqElem e;
  e.c[0] = static_cast<std::uint16_t>(r);
  return e;
}

FqElem FieldCtx::from_big(const BigInt& v) const {
  BigInt r = mod_floor(v, BigInt(p_));
  FqElem e;
  e.c[0] = static_cast<std::uint16_t>(r.convert_to<std::uint32_t>());
  return e;
}

FqElem FieldCtx::from_coeffs(const std::vector<std::int64_t>& coeffs) const {
  if (coeffs.size() > k_) throw DomainError("too many coordinates for field element");
  FqElem e;
  for (std::size_t i = 0; i < coeffs.size(); ++i) e.c[i] = from_int(coeffs[i]).c[0];
  return e;
}

FqElem FieldCtx::gen_u() const {
  if (k_ < 2) throw DomainError("prime field has no adjoined generator");
  FqElem e;
  e.c[1] = 1;
  return e;
}

bool FieldCtx::in_prime_field(const FqElem& a) const noexcept {
  for (unsigned i = 1; i < k_; ++i)
    if (a.c[i]) return false;
  return true;
}

FqElem FieldCtx::add(const FqElem& a, const FqElem& b) const noexcept {
  FqElem r;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint32_t s = std::uint32_t{a.c[i]} + b.c[i];
    if (s >= p_) s -= p_;
    r.c[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

FqElem FieldCtx::sub(const FqElem& a, const FqElem& b) const noexcept {
  FqElem r;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint32_t s = std::uint32_t{a.c[i]} + p_ - b.c[i];
    if (s >= p_) s -= p_;
    r.c[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

FqElem FieldCtx::neg(const FqElem& a) const noexcept {
  FqElem r;
  for (unsigned i = 0; i < k_; ++i) r.c[i] = static_cast<std::uint16_t>(a.c[i] ? p_ - a.c[i] : 0);
  return r;
}

FqElem FieldCtx::scale(const FqElem& a, std::uint32_t s) const noexcept {
  FqElem r;
  s %= p_;
  for (unsigned i = 0; i < k_; ++i)
    r.c[i] = static_cast<std::uint16_t>(std::uint64_t{a.c[i]} * s % p_);
  return r;
}

FqElem FieldCtx::mul(const FqElem& a, const FqElem& b) const noexcept {
  if (k_ == 1) {
    FqElem r;
    r.c[0] = static_cast<std::uint16_t>(std::uint64_t{a.c[0]} * b.c[0] % p_);
    return r;
  }
  std::array<std::uint64_t, 2 * kMaxExtensionDegree> acc{};
  for (unsigned i = 0; i < k_; ++i) {
    const std::uint64_t ai = a.c[i];
    if (!ai) continue;
    for (unsigned j = 0; j < k_; ++j) acc[i + j] += ai * b.c[j];
  }
  for (unsigned i = 2 * k_ - 2; i >= k_; --i) {
    const std::uint64_t coef = acc[i] % p_;
    if (coef) {
      const unsigned base = i - k_;
      for (const auto& [j, m] : reduction_) acc[base + j] += coef * m;
    }
  }
  FqElem r;
  for (unsigned i = 0; i < k_; ++i) r.c[i] = static_cast<std::uint16_t>(acc[i] % p_);
  return r;
}

FqElem FieldCtx::inv(const FqElem& a) const {
  if (is_zero(a)) throw DivisionByZero();
  if (k_ == 1) {
    FqElem r;
    r.c[0] = static_cast<std::uint16_t>(inv_mod(a.c[0], p_));
    return r;
  }
  // Extended Euclid: find s with s*a = 1 mod modulus.
  PolyP r0 = modulus_, r1(a.c.begin(), a.c.begin() + k_);
  trim(r1);
  PolyP s0{}, s1{1};
  while (r1.size() > 1) {
    // q, r = divmod(r0, r1)
    PolyP rem = r0;
    PolyP quo(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, 0);
    const std::uint32_t lead_inv = inv_mod(r1.back(), p_);
    while (rem.size() >= r1.size()) {
      const std::uint64_t coef = std::uint64_t{rem.back()} * lead_inv % p_;
      const std::size_t shift = rem.size() - r1.size();
      quo[shift] = static_cast<std::uint32_t>(coef);
      for (std::size_t j = 0; j < r1.size(); ++j)
        rem[shift + j] = static_cast<std::uint32_t>((rem[shift + j] + p_ - coef * r1[j] % p_) % p_);
      trim(rem);
    }
    // s2 = s0 - q*s1
    PolyP s2(std::max(s0.size(), quo.size() + s1.size()), 0);
    for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
    for (std::size_t i = 0; i < quo.size(); ++i) {
      if (!quo[i]) continue;
      for (std::size_t j = 0; j < s1.size(); ++j)
        s2[i + j] = static_cast<std::uint32_t>((s2[i + j] + p_ - std::uint64_t{quo[i]} * s1[j] % p_) % p_);
    }
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant c; inverse is s1 / c.
  const std::uint64_t cinv = inv_mod(r1[0], p_);
  FqElem r;
  for (std::size_t i = 0; i < s1.size() && i < k_; ++i)
    r.c[i] = static_cast<std::uint16_t>(std::uint64_t{s1[i]} * cinv % p_);
  return r;
}

FqElem FieldCtx::pow(const FqElem& a, std::uint64_t e) const {
  FqElem result = one();
  FqElem base = a;
  while (e) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e) base = sqr(base);
  }
  return result;
}

FqElem FieldCtx::pow(const FqElem& a, const BigInt& e) const {
  if (e < 0) return pow(inv(a), BigInt(-e));
  if (e == 0) return one();
  if (is_zero(a)) return zero();
  // Reduce modulo the group order q - 1.
  BigInt red = e % (size_ - 1);
  if (red == 0) return one();
  FqElem result = one();
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(red)) + 1;
  for (unsigned i = bits; i-- > 0;) {
    result = sqr(result);
    if (boost::multiprecision::bit_test(red, i)) result = mul(result, a);
  }
  return result;
}

FqElem FieldCtx::frob(const FqElem& a, std::uint64_t e) const noexcept {
  if (k_ == 1) return a;
  e %= k_;
  FqElem cur = a;
  for (std::uint64_t step = 0; step < e; ++step) {
    std::array<std::uint64_t, kMaxExtensionDegree> acc{};
    for (unsigned i = 0; i < k_; ++i) {
      const std::uint64_t ci = cur.c[i];
      if (!ci) continue;
      const auto& col = frob_matrix_[i];
      for (unsigned j = 0; j < k_; ++j) acc[j] += ci * col[j];
    }
    for (unsigned j = 0; j < k_; ++j) cur.c[j] = static_cast<std::uint16_t>(acc[j] % p_);
  }
  return cur;
}

bool FieldCtx::is_square(const FqElem& a) const {
  if (is_zero(a) || p_ == 2) return true;
  return is_one(pow(a, BigInt((size_ - 1) / 2)));
}

std::optional<FqElem> FieldCtx::sqrt(const FqElem& a) const {
  if (is_zero(a)) return zero();
  if (p_ == 2) return pow(a, BigInt(size_ / 2));
  if (!is_square(a)) return std::nullopt;
  // Tonelli-Shanks.
  unsigned m = two_adicity_;
  FqElem c = pow(non_residue_, odd_part_);
  FqElem t = pow(a, odd_part_);
  FqElem r = pow(a, BigInt((odd_part_ + 1) / 2));
  while (!is_one(t)) {
    unsigned i = 0;
    FqElem t2 = t;
    while (!is_one(t2)) {
      t2 = sqr(t2);
      ++i;
    }
    FqElem b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = sqr(b);
    m = i;
    c = sqr(b);
    t = mul(t, c);
    r = mul(r, b);
  }
  FqElem other = neg(r);
  return less(other, r) ? other : r;
}

bool FieldCtx::less(const FqElem& a, const FqElem& b) const noexcept {
  for (unsigned i = k_; i-- > 0;) {
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  }
  return false;
}

BigInt FieldCtx::encode(const FqElem& a) const {
  BigInt v = 0;
  for (unsigned i = k_; i-- > 0;) v = v * p_ + a.c[i];
  return v;
}

FqElem FieldCtx::decode(const BigInt& v) const {
  FqElem e;
  BigInt rest = v;
  for (unsigned i = 0; i < k_; ++i) {
    e.c[i] = static_cast<std::uint16_t>((rest % p_).convert_to<std::uint32_t>());
    rest /= p_;
  }
  return e;
}

FqElem FieldCtx::trace_to_subfield(const FqElem& a, unsigned sub_k) const {
  if (sub_k == 0 || k_ % sub_k != 0) throw DomainError("subfield degree must divide extension degree");
  FqElem acc = zero();
  FqElem cur = a;
  for (unsigned i = 0; i < k_ / sub_k; ++i) {
    acc = add(acc, cur);
    cur = frob(cur, sub_k);
  }
  return acc;
}

std::string FieldCtx::format(const FqElem& a) const {
  if (in_prime_field(a)) return std::to_string(a.c[0]);
  std::ostringstream os;
  os << '[';
  for (unsigned i = 0; i < k_; ++i) os << (i ? "," : "") << a.c[i];
  os << ']';
  return os.str();
}

std::string FieldCtx::modulus_string() const {
  std::ostringstream os;
  bool first = true;
  for (unsigned i = k_ + 1; i-- > 0;) {
    const std::uint32_t c = modulus_[i];
    if (!c) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i > 0) {
      if (c != 1) os << '*';
      os << 'u';
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

std::string FieldCtx::format_with_modulus(const FqElem& a) const {
  std::ostringstream os;
  os << '[';
  for (unsigned i = 0; i < k_; ++i) os << (i ? "," : "") << a.c[i];
  os << "] mod " << modulus_string();
  return os.str();
}

FqElem FieldCtx::parse(const std::string& text) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty field element");
  if (s.front() != '[') {
    try {
      return from_big(BigInt(s));
    } catch (const std::exception&) {
      throw ParseError("bad field element: " + text);
    }
  }
  if (s.back() != ']') throw ParseError("bad field element: " + text);
  std::vector<std::int64_t> coeffs;
  std::stringstream ss(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      coeffs.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw ParseError("bad field coordinate: " + item);
    }
  }
  return from_coeffs(coeffs);
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in " + text);
    return Rational(num, den);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad rational: " + text);
  }
}

}  // namespace retset
