#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "retset/constructions.hpp"
#include "retset/errors.hpp"
#include "retset/orbit_scan.hpp"

#include <algorithm>

using namespace retset;

namespace {

bool contains_all(const std::vector<std::uint64_t>& v, std::initializer_list<std::uint64_t> want) {
  return std::all_of(want.begin(), want.end(), [&](std::uint64_t n) { return std::find(v.begin(), v.end(), n) != v.end(); });
}

PolySystem segre(const GroupConfig& cfg) { return segre_hyperplane(cfg.coeffs); }

}  // namespace

TEST_CASE("exact torus scan on [0,100]") {
  const GroupConfig cfg = torus_config();
  ScanOptions opt;
  opt.mode = Mode::Exact;
  const ScanReport r = scan_serial(cfg.group(), *cfg.point, torus_hyperplane(cfg), 0, 100, opt);
  CHECK(r.members() == std::vector<std::uint64_t>{2, 26, 50});
  CHECK(r.undecided().empty());
  CHECK(r.rows.size() == 101);
}

TEST_CASE("serial and parallel scans agree") {
  const GroupConfig cfg = curve_pair_config();
  ScanOptions opt;
  opt.chunk = 7;
  const auto G = cfg.group();
  const PolySystem V = segre(cfg);
  const ScanReport a = scan_serial(G, *cfg.point, V, 0, 60, opt);
  const ScanReport b = scan_parallel(G, *cfg.point, V, 0, 60, opt);
  CHECK(to_csv(a) == to_csv(b));
  CHECK(to_json(a) == to_json(b));
  CHECK(contains_all(a.members(), {0, 1, 5, 25}));

  const GroupConfig tc = torus_config();
  ScanOptions ex;
  ex.mode = Mode::Exact;
  const auto TG = tc.group();
  const PolySystem TV = torus_hyperplane(tc);
  CHECK(to_csv(scan_serial(TG, *tc.point, TV, 20, 30, ex)) == to_csv(scan_parallel(TG, *tc.point, TV, 20, 30, ex)));
}

TEST_CASE("segre scan on [0,30]") {
  const GroupConfig cfg = curve_pair_config();
  const ScanReport r = scan_parallel(cfg.group(), *cfg.point, segre(cfg), 0, 30);
  const auto m = r.members();
  CHECK(contains_all(m, {0, 1, 5, 25}));
  for (std::uint64_t n : m) {
    std::uint64_t k = n;
    while (k && k % 5 == 0) k /= 5;
    CHECK((k == 0 || k % 10 == 1 || k % 10 == 9));
  }
  CHECK(r.max_member_bound() < Rational(1, 1000000));
}

TEST_CASE("single index window") {
  const GroupConfig cfg = curve_pair_config();
  const ScanReport r = scan_serial(cfg.group(), *cfg.point, segre(cfg), 0, 0);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].n == 0);
  CHECK(r.members() == std::vector<std::uint64_t>{0});
}

TEST_CASE("reports are reproducible and seed independent in their member lists") {
  const GroupConfig cfg = curve_pair_config();
  const auto G = cfg.group();
  const PolySystem V = segre(cfg);
  ScanOptions opt;
  const ScanReport a = scan_serial(G, *cfg.point, V, 1, 40, opt);
  const ScanReport b = scan_serial(G, *cfg.point, V, 1, 40, opt);
  CHECK(to_json(a) == to_json(b));
  opt.seed = 99;
  CHECK(scan_serial(G, *cfg.point, V, 1, 40, opt).members() == a.members());
}

TEST_CASE("csv and json layout") {
  const GroupConfig cfg = torus_config();
  ScanOptions opt;
  opt.mode = Mode::Exact;
  const ScanReport r = scan_serial(cfg.group(), *cfg.point, torus_hyperplane(cfg), 1, 3, opt);
  CHECK(to_csv(r) == "n,verdict,error_bound\n1,non-member,0\n2,member,0\n3,non-member,0\n");
  const std::string j = to_json(r);
  CHECK(j.find("\"mode\": \"exact\"") != std::string::npos);
  CHECK(j.find("\"members\": [\n    2\n  ]") != std::string::npos);
}

TEST_CASE("scan argument checks") {
  const GroupConfig cfg = curve_pair_config();
  const auto G = cfg.group();
  const PolySystem V = segre(cfg);
  CHECK_THROWS_AS(scan_serial(G, *cfg.point, V, 5, 4), DomainError);
  ScanOptions opt;
  opt.field_degree = 2;
  CHECK_THROWS_AS(scan_serial(G, *cfg.point, V, 0, 100, opt), DomainError);
  opt.allow_small_field = true;
  CHECK_NOTHROW(scan_serial(G, *cfg.point, V, 0, 10, opt));
  opt.specializations = 0;
  CHECK_THROWS_AS(scan_serial(G, *cfg.point, V, 0, 10, opt), DomainError);
}
