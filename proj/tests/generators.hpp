#pragma once

// Hand-rolled random generators shared by the property tests and the acceptance binary.

#include "retset/good_coset.hpp"
#include "retset/set_algebra.hpp"

#include <cmath>
#include <random>

namespace testgen {

using retset::BigInt;
using retset::Rational;

inline long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Valid term with q in {5, 25}, d <= 3, r <= 2 and positive leading coefficients large enough that every
/// value at most 10^6 comes from a tuple in [0, 10]^d.
inline retset::PSetTerm pset_term(std::mt19937_64& rng) {
  retset::PSetTerm T;
  T.q = uniform(rng, 0, 1) ? 5 : 25;
  const long d = uniform(rng, 1, 3), r = uniform(rng, 0, 2);
  const long kind = uniform(rng, 0, 2);
  const BigInt m = T.q - 1;
  if (kind == 0) {
    // Integer coefficients.
    for (long i = 0; i < d; ++i) {
      std::vector<Rational> row;
      for (long j = 0; j < r; ++j) row.push_back(uniform(rng, -10, 10));
      row.push_back(uniform(rng, 1, 10));
      T.c.push_back(row);
    }
    T.c0 = uniform(rng, -50, 50);
    return T;
  }
  // Coefficients a/(q-1) with q-1 | c0' + sum a; every q^k is 1 mod q-1, so all values are integers.
  const long rr = kind == 1 ? 0 : r;
  BigInt sum = 0;
  for (long i = 0; i < d; ++i) {
    std::vector<Rational> row;
    for (long j = 0; j < rr; ++j) {
      const long a = uniform(rng, -40, 40);
      sum += a;
      row.push_back(Rational(a, m));
    }
    const long a = uniform(rng, 1, 40);
    sum += a;
    row.push_back(Rational(a, m));
    T.c.push_back(row);
  }
  BigInt c0 = uniform(rng, -50, 50);
  c0 -= retset::mod_floor(c0 + sum, m);
  T.c0 = Rational(c0, m);
  return T;
}


/// Up to four random requirements on d coordinates, D in [1, 4].
inline std::vector<retset::Requirement> requirements(std::mt19937_64& rng, unsigned d) {
  using retset::Requirement;
  std::vector<Requirement> out;
  const long count = uniform(rng, 0, 4);
  for (long k = 0; k < count; ++k) {
    const auto i = static_cast<unsigned>(uniform(rng, 1, d)), j = static_cast<unsigned>(uniform(rng, 1, d));
    switch (uniform(rng, 0, 5)) {
      case 0: out.push_back(Requirement::zero(i)); break;
      case 1:
      case 2: out.push_back(Requirement::mult(i, uniform(rng, 1, 4))); break;
      case 3:
      case 4: out.push_back(Requirement::eq(i, j)); break;
      default: out.push_back(Requirement::twice(i, j)); break;
    }
  }
  return out;
}

inline retset::GoodCoset coset(std::mt19937_64& rng, unsigned d) {
  retset::IntVec base(d), rect(d);
  for (unsigned u = 0; u < d; ++u) {
    base[u] = uniform(rng, 0, 6);
    rect[u] = uniform(rng, 0, 4);
  }
  return retset::GoodCoset(base, rect, retset::GoodSubgroup(d, requirements(rng, d)));
}


/// c1 q^n1 + c2 q^n2 = e0 + sum e_i q^m_i with q = 5 and |coefficients| <= 10. Kinds 0-3 plant a diagonal, a ray,
/// a quadrant or a single point; kind 4 is unplanted.
struct TwoExpInstance {
  long kind = 4;
  Rational c1, c2, e0;
  std::vector<Rational> e;
};

inline TwoExpInstance two_exp_instance(std::mt19937_64& rng) {
  auto nonzero = [&] {
    const long v = uniform(rng, 1, 10);
    return uniform(rng, 0, 1) ? v : -v;
  };
  TwoExpInstance t;
  t.kind = uniform(rng, 0, 4);
  const long a = nonzero(), b = nonzero();
  t.c1 = a;
  t.c2 = b;
  switch (t.kind) {
    case 0:
      // a 5^n + b 5^n = (a + b) 5^m.
      t.e0 = 0;
      t.e = {Rational(a + b)};
      if (a + b == 0) t.e = {};
      break;
    case 1:
      // n2 = 0: a 5^n1 + b = b + a 5^m.
      t.e0 = b;
      t.e = {Rational(a)};
      break;
    case 2:
      t.e0 = 0;
      t.e = {Rational(a), Rational(b)};
      break;
    case 3: {
      const long x = uniform(rng, 0, 2), y = uniform(rng, 0, 2);
      t.e0 = a * static_cast<long>(std::pow(5, x)) + b * static_cast<long>(std::pow(5, y));
      break;
    }
    default:
      t.e0 = uniform(rng, -10, 10);
      for (long k = uniform(rng, 0, 2); k > 0; --k) t.e.push_back(Rational(nonzero()));
  }
  return t;
}

}  // namespace testgen
