#pragma once

#include "retset/group.hpp"
#include "retset/subvariety.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace retset {

struct ScanOptions {
  Mode mode = Mode::MonteCarlo;
  unsigned specializations = 5;
  unsigned field_degree = 18;
  std::uint64_t seed = 1;
  unsigned max_redraws = 200;
  /// Accept p^k <= N^2 * (number of equations).
  bool allow_small_field = false;
  /// Length of the index blocks handed to parallel workers.
  std::uint64_t chunk = 2048;
};

struct ScanRow {
  std::uint64_t n = 0;
  Verdict verdict = Verdict::NonMember;
  Rational error_bound = 0;
  std::string detail;
};

struct ScanReport {
  std::uint64_t lo = 0, hi = 0;
  ScanOptions options;
  std::vector<ScanRow> rows;
  /// Wall time; excluded from the serialized report so that reports are reproducible.
  double seconds = 0;

  std::vector<std::uint64_t> members() const;
  std::vector<std::uint64_t> undecided() const;
  /// Largest bound over member rows.
  Rational max_member_bound() const;
};

/// Verdicts for n*g, n in [lo, hi]. Monte Carlo mode specializes g once per theta and walks the orbit by
/// repeated addition; exact mode evaluates each n*g symbolically.
ScanReport scan_serial(const AmbientGroup& G, const GroupPoint& g, const PolySystem& V, std::uint64_t lo,
                       std::uint64_t hi, const ScanOptions& opt = {});
/// Same report as scan_serial, computed with OpenMP over index blocks and specializations.
ScanReport scan_parallel(const AmbientGroup& G, const GroupPoint& g, const PolySystem& V, std::uint64_t lo,
                         std::uint64_t hi, const ScanOptions& opt = {});

/// "n,verdict,error_bound" rows.
std::string to_csv(const ScanReport& r);
std::string to_json(const ScanReport& r);

}  // namespace retset
