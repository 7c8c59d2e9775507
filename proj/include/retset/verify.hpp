#pragma once

#include "retset/orbit_scan.hpp"
#include "retset/set_algebra.hpp"
#include "retset/subvariety.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace retset {

/// Orbit of g = ((t+1, .), (t, .)) on E x E, E: y^2 = x^3 + A x + B over F_p, against x(P) = x(Q) + 1.
struct SegreOrbitOptions {
  std::uint32_t p = 5;
  std::int64_t A = 0, B = 1;
  /// Exact check of n = p^j for j = 0..max_j.
  unsigned max_j = 6;
  /// Scan [1, window]; 0 skips the scan.
  std::uint64_t window = 100000;
  ScanOptions scan;
  bool parallel = true;
  /// Member bounds above this fail the report.
  Rational max_bound = Rational(1, 1000000);
};

struct SegreOrbitReport {
  SegreOrbitOptions options;
  /// Verdict of the exact check per j.
  std::vector<Verdict> powers;
  std::optional<unsigned> first_power_failure;
  std::optional<ScanReport> scan;
  /// Members whose prime-to-p part is not +-1 mod 2p.
  std::vector<std::uint64_t> sign_violations;
  /// Members that are not powers of p. Recorded, never a failure.
  std::vector<std::uint64_t> extra_members;
  bool bound_ok = true;
  double exact_seconds = 0;

  bool powers_ok() const { return !first_power_failure; }
  bool members_ok() const { return sign_violations.empty() && bound_ok; }
  bool pass() const { return powers_ok() && members_ok(); }
  /// Human-readable report; excludes timings so that it is reproducible.
  std::string text() const;
};

SegreOrbitReport verify_segre_orbit(const SegreOrbitOptions& opt);

/// Prime-to-p part of n >= 1.
std::uint64_t prime_to_part(std::uint64_t n, std::uint32_t p);

struct CounterexampleOptions {
  std::uint32_t p = 5;
  /// Torus window [0, window]; the scan is exact.
  std::uint64_t window = 20000;
  /// Witness triples for j = 0..n_max.
  unsigned n_max = 3;
  CheckOptions witness{Mode::MonteCarlo, 5, 18, 1, 200};
  bool parallel = true;
  /// Negates the constant in the first torus coordinate of the third witness point.
  bool corrupt_third = false;
  Rational max_bound = Rational(1, 1000000);
};

struct CounterexampleReport {
  CounterexampleOptions options;
  ScanReport torus;
  /// {p0^a + p0^b} in [0, window], p0 = p^2.
  std::vector<std::uint64_t> expected;
  std::vector<WitnessResult> witnesses;
  std::string classified_term;
  Classification classification = Classification::Invalid;

  bool torus_ok() const { return torus.members() == expected && torus.undecided().empty(); }
  bool witnesses_ok() const;
  bool classify_ok() const { return classification == Classification::WidelyOnly; }
  bool pass() const { return torus_ok() && witnesses_ok() && classify_ok(); }
  std::string text() const;
};

CounterexampleReport verify_counterexample(const CounterexampleOptions& opt);

/// Sorted {q^a + q^b : a, b >= 0} in [0, N].
std::vector<std::uint64_t> two_power_sums(std::uint64_t q, std::uint64_t N);

}  // namespace retset
