#include "retset/errors.hpp"
#include "retset/set_algebra.hpp"

#include <algorithm>

namespace retset {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

/// floor(log_q x) for x >= 1.
std::uint64_t ilog(const BigInt& x, const BigInt& q) {
  std::uint64_t k = 0;
  for (BigInt y = q; y <= x; y *= q) ++k;
  return k;
}

bool power_of(BigInt x, const BigInt& q) {
  if (x < 1) return false;
  while (x % q == 0) x /= q;
  return x == 1;
}

/// Integer form of the equation: C1 q^n1 + C2 q^n2 - E0 = sum E_i q^m_i with the zero E_i dropped.
struct Scaled {
  BigInt C1, C2, E0;
  std::vector<BigInt> E;
  BigInt Esum = 0;
};

Scaled scale(const Rational& c1, const Rational& c2, const Rational& e0, const std::vector<Rational>& e) {
  BigInt L = 1;
  auto fold = [&](const Rational& x) { L = L / boost::multiprecision::gcd(L, denominator(x)) * denominator(x); };
  fold(c1);
  fold(c2);
  fold(e0);
  for (const auto& x : e) fold(x);
  Scaled s;
  s.C1 = numerator(Rational(c1 * L));
  s.C2 = numerator(Rational(c2 * L));
  s.E0 = numerator(Rational(e0 * L));
  for (const auto& x : e)
    if (x != 0) {
      s.E.push_back(numerator(Rational(x * L)));
      s.Esum += abs(s.E.back());
    }
  return s;
}

/// Whether T = sum E_i q^m_i for some m. A solution can be compressed so that consecutive exponents differ by
/// at most g0 (q^g0 > |T| + sum |E_i|: a part above a larger gap must sum to zero and may be shifted down),
/// and its least exponent satisfies q^min | T. So the first d-1 exponents may be searched in [0, M] and the
/// last one solved for.
bool solvable(const BigInt& T, const Scaled& s, const BigInt& q, std::vector<BigInt>& pw) {
  const std::size_t d = s.E.size();
  if (d == 0) return T == 0;
  const BigInt absT = abs(T);
  const std::uint64_t g0 = ilog(absT + s.Esum, q) + 1;
  const std::uint64_t M = (T == 0 ? 0 : ilog(absT, q)) + (d - 1) * g0;
  while (pw.size() <= M) pw.push_back(pw.back() * q);
  std::vector<std::uint64_t> m(d - 1, 0);
  while (true) {
    BigInt rest = T;
    for (std::size_t i = 0; i + 1 < d; ++i) rest -= s.E[i] * pw[m[i]];
    if (rest % s.E.back() == 0 && power_of(rest / s.E.back(), q)) return true;
    std::size_t i = d - 1;
    while (i > 0 && m[i - 1] == M) m[--i] = 0;
    if (i == 0) return false;
    ++m[i - 1];
  }
}

}  // namespace

bool two_exponential_solvable(const Rational& c1, const Rational& c2, const Rational& e0, const std::vector<Rational>& e,
                              const BigInt& q, std::uint64_t n1, std::uint64_t n2) {
  if (q <= 1) throw DomainError("q must exceed 1");
  const Scaled s = scale(c1, c2, e0, e);
  std::vector<BigInt> pw{1};
  return solvable(s.C1 * big_pow(q, n1) + s.C2 * big_pow(q, n2) - s.E0, s, q, pw);
}

bool ExpComponent::contains(std::uint64_t a, std::uint64_t b) const {
  switch (form) {
    case Form::Singleton: return a == n1 && b == n2;
    case Form::FirstRay: return a >= n1 && b == n2;
    case Form::SecondRay: return a == n1 && b >= n2;
    case Form::Diagonal: return a >= n1 && b >= n2 && a - n1 == b - n2;
    case Form::Quadrant: return a >= n1 && b >= n2;
  }
  return false;
}

std::string ExpComponent::str() const {
  const std::string a = std::to_string(n1), b = std::to_string(n2);
  switch (form) {
    case Form::Singleton: return "{(" + a + "," + b + ")}";
    case Form::FirstRay: return "{(n+" + a + "," + b + ")}";
    case Form::SecondRay: return "{(" + a + ",n+" + b + ")}";
    case Form::Diagonal: return "{(n+" + a + ",n+" + b + ")}";
    case Form::Quadrant: return "{(n1+" + a + ",n2+" + b + ")}";
  }
  return "";
}

bool ExpDecomposition::contains(std::uint64_t a, std::uint64_t b) const {
  return std::any_of(components.begin(), components.end(), [&](const ExpComponent& c) { return c.contains(a, b); });
}

ExpDecomposition two_exponential_decompose(const Rational& c1, const Rational& c2, const Rational& e0,
                                           const std::vector<Rational>& e, const BigInt& q, std::uint64_t N) {
  if (q <= 1) throw DomainError("q must exceed 1");
  const Scaled s = scale(c1, c2, e0, e);
  const std::uint64_t W = 2 * N;
  std::vector<BigInt> pw{1};
  while (pw.size() <= W) pw.push_back(pw.back() * q);
  std::vector<std::vector<char>> sol(W + 1, std::vector<char>(W + 1, 0));
  for (std::uint64_t a = 0; a <= W; ++a)
    for (std::uint64_t b = 0; b <= W; ++b) sol[a][b] = solvable(s.C1 * pw[a] + s.C2 * pw[b] - s.E0, s, q, pw);

  ExpDecomposition out;
  out.fit_window = N;
  out.certified_window = W;
  using Form = ExpComponent::Form;
  auto holds = [&](Form f, std::uint64_t a, std::uint64_t b) {
    switch (f) {
      case Form::FirstRay:
        for (std::uint64_t x = a; x <= W; ++x)
          if (!sol[x][b]) return false;
        return true;
      case Form::SecondRay:
        for (std::uint64_t y = b; y <= W; ++y)
          if (!sol[a][y]) return false;
        return true;
      case Form::Diagonal:
        for (std::uint64_t k = 0; a + k <= W && b + k <= W; ++k)
          if (!sol[a + k][b + k]) return false;
        return true;
      case Form::Quadrant:
        for (std::uint64_t x = a; x <= W; ++x)
          for (std::uint64_t y = b; y <= W; ++y)
            if (!sol[x][y]) return false;
        return true;
      default: return true;
    }
  };
  // Rays already implied by chosen components are skipped.
  auto covered = [&](Form f, std::uint64_t a, std::uint64_t b) {
    for (std::uint64_t k = 0; a + (f == Form::SecondRay ? 0 : k) <= W && b + (f == Form::FirstRay ? 0 : k) <= W; ++k) {
      const std::uint64_t x = a + (f == Form::SecondRay ? 0 : k), y = b + (f == Form::FirstRay ? 0 : k);
      if (!out.contains(x, y)) return false;
    }
    return true;
  };

  for (std::uint64_t a = 0; a <= N; ++a)
    for (std::uint64_t b = 0; b <= N; ++b) {
      if (!sol[a][b] || out.contains(a, b)) continue;
      if (holds(Form::Quadrant, a, b)) {
        out.components.push_back({Form::Quadrant, a, b});
        continue;
      }
      bool any = false;
      for (Form f : {Form::FirstRay, Form::SecondRay, Form::Diagonal})
        if (holds(f, a, b) && !covered(f, a, b)) {
          out.components.push_back({f, a, b});
          any = true;
        }
      if (!any) out.components.push_back({Form::Singleton, a, b});
    }

  for (std::uint64_t a = 0; a <= W; ++a)
    for (std::uint64_t b = 0; b <= W; ++b)
      if (static_cast<bool>(sol[a][b]) != out.contains(a, b))
        throw FitFailure("no consistent decomposition on window: (" + std::to_string(a) + "," + std::to_string(b) +
                         ") is " + (sol[a][b] ? "a solution outside" : "not a solution but inside") + " the fitted components");
  return out;
}

}  // namespace retset
