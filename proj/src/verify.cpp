#include "retset/verify.hpp"

#include "retset/constructions.hpp"
#include "retset/errors.hpp"

#include <chrono>
#include <set>
#include <sstream>

namespace retset {

std::uint64_t prime_to_part(std::uint64_t n, std::uint32_t p) {
  if (n == 0) throw DomainError("prime-to-p part of 0");
  while (n % p == 0) n /= p;
  return n;
}

namespace {

bool power_of(std::uint64_t n, std::uint32_t p) { return n >= 1 && prime_to_part(n, p) == 1; }

std::string join(const std::vector<std::uint64_t>& v, std::size_t limit = 50) {
  std::string out;
  for (std::size_t k = 0; k < v.size() && k < limit; ++k) out += (k ? "," : "") + std::to_string(v[k]);
  if (v.size() > limit) out += ",... (" + std::to_string(v.size()) + " total)";
  return out.empty() ? "none" : out;
}

const char* mark(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

SegreOrbitReport verify_segre_orbit(const SegreOrbitOptions& opt) {
  SegreOrbitReport rep;
  rep.options = opt;
  const GroupConfig cfg = curve_pair_config(opt.p, opt.A, opt.B);
  const AmbientGroup G = cfg.group();
  const PolySystem V = segre_hyperplane(cfg.coeffs);
  const GroupPoint& g = *cfg.point;

  const auto start = std::chrono::steady_clock::now();
  for (unsigned j = 0; j <= opt.max_j; ++j) {
    Verdict v;
    try {
      v = contains(V, G, group_mul(G, big_pow(BigInt(opt.p), j), g)).verdict;
    } catch (const ResourceError&) {
      v = Verdict::Undecided;
    }
    rep.powers.push_back(v);
    if (v != Verdict::Member) {
      rep.first_power_failure = j;
      break;
    }
  }
  rep.exact_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (opt.window >= 1) {
    ScanOptions so = opt.scan;
    so.mode = Mode::MonteCarlo;
    rep.scan = opt.parallel ? scan_parallel(G, g, V, 1, opt.window, so) : scan_serial(G, g, V, 1, opt.window, so);
    const std::uint64_t m2p = 2ULL * opt.p;
    for (auto n : rep.scan->members()) {
      const std::uint64_t m = prime_to_part(n, opt.p) % m2p;
      if (m != 1 && m != m2p - 1) rep.sign_violations.push_back(n);
      if (!power_of(n, opt.p)) rep.extra_members.push_back(n);
    }
    rep.bound_ok = rep.scan->max_member_bound() < opt.max_bound;
  }
  return rep;
}

std::string SegreOrbitReport::text() const {
  std::ostringstream os;
  const auto& o = options;
  os << "orbit of ((t+1,.),(t,.)) on E x E, E: y^2 = x^3 + A x + B with A = " << o.A << ", B = " << o.B << " over F_" << o.p
     << ", against x(P) = x(Q) + 1\n";
  os << "(a) n = " << o.p << "^j exact, j = 0.." << o.max_j << ": " << mark(powers_ok());
  if (first_power_failure)
    os << " (j = " << *first_power_failure << " gave " << to_string(powers.back()) << ")";
  os << "\n";
  if (scan) {
    os << "(b) scan [1," << o.window << "], " << scan->options.specializations << " specializations over F_" << o.p
       << "^" << scan->options.field_degree << ", seed " << scan->options.seed << ": " << mark(members_ok()) << "\n";
    os << "    members: " << join(scan->members()) << "\n";
    os << "    prime-to-" << o.p << " parts outside +-1 mod " << 2 * o.p << ": " << join(sign_violations) << "\n";
    os << "    max false-accept bound: " << format_scientific(scan->max_member_bound()) << " (limit "
       << format_scientific(o.max_bound) << ")\n";
    os << "    members beyond the powers of " << o.p << " (data only): " << join(extra_members) << "\n";
    if (!scan->undecided().empty()) os << "    undecided: " << join(scan->undecided()) << "\n";
  } else {
    os << "(b) scan skipped\n";
  }
  os << "verdict: " << mark(pass()) << "\n";
  return os.str();
}

std::vector<std::uint64_t> two_power_sums(std::uint64_t q, std::uint64_t N) {
  if (q < 2) throw DomainError("base must be at least 2");
  std::vector<std::uint64_t> powers;
  for (std::uint64_t x = 1; x <= N; x *= q) {
    powers.push_back(x);
    if (x > N / q) break;
  }
  std::set<std::uint64_t> out;
  for (auto a : powers)
    for (auto b : powers)
      if (a + b <= N) out.insert(a + b);
  return {out.begin(), out.end()};
}

bool CounterexampleReport::witnesses_ok() const {
  for (const auto& w : witnesses) {
    if (w.verdict == Verdict::Member) continue;
    if (w.verdict == Verdict::ProbableMember && w.error_bound < options.max_bound) continue;
    return false;
  }
  return true;
}

CounterexampleReport verify_counterexample(const CounterexampleOptions& opt) {
  CounterexampleReport rep;
  rep.options = opt;
  const std::uint64_t p0 = std::uint64_t{opt.p} * opt.p;

  const GroupConfig tcfg = torus_config(opt.p);
  const AmbientGroup T = tcfg.group();
  const PolySystem V0 = torus_hyperplane(tcfg);
  ScanOptions so;
  so.mode = Mode::Exact;
  rep.torus = opt.parallel ? scan_parallel(T, *tcfg.point, V0, 0, opt.window, so)
                           : scan_serial(T, *tcfg.point, V0, 0, opt.window, so);
  rep.expected = two_power_sums(p0, opt.window);

  const GroupConfig wcfg = three_factor_config(opt.p);
  const AmbientGroup W = wcfg.group();
  for (unsigned j = 0; j <= opt.n_max; ++j) {
    SumWitness w = three_factor_witness(wcfg, j);
    if (opt.corrupt_third) {
      const RatFunc one = RatFunc::constant(wcfg.coeffs, wcfg.coeffs->one());
      w.points[2][0].torus[0] = w.points[2][0].torus[1] - one;
    }
    const BigInt n = big_pow(BigInt(opt.p), j) + big_pow(BigInt(opt.p), 2 * j);
    rep.witnesses.push_back(check_sum_witness(W, w, *wcfg.point, n, opt.witness));
  }

  rep.classified_term = "PS(" + std::to_string(p0) + ";0;[1,1])";
  rep.classification = classify(parse_set_expr(rep.classified_term, opt.p), opt.p);
  return rep;
}

std::string CounterexampleReport::text() const {
  std::ostringstream os;
  const auto& o = options;
  const std::uint64_t p0 = std::uint64_t{o.p} * o.p;
  os << "computable ingredients only; the non-normality argument itself is not a computation\n";
  os << "(1) torus return set on [0," << o.window << "] equals {" << p0 << "^a + " << p0
     << "^b}: " << mark(torus_ok()) << "\n";
  os << "    members:  " << join(torus.members()) << "\n";
  os << "    expected: " << join(expected) << "\n";
  if (!torus.undecided().empty()) os << "    undecided: " << join(torus.undecided()) << "\n";
  os << "(2) witness triples for (" << o.p << "^j + " << o.p << "^(2j)) g, j = 0.." << o.n_max << ": "
     << mark(witnesses_ok()) << "\n";
  for (std::size_t j = 0; j < witnesses.size(); ++j) {
    const auto& w = witnesses[j];
    os << "    j = " << j << ": " << to_string(w.verdict);
    if (w.verdict == Verdict::ProbableMember) os << ", bound " << format_scientific(w.error_bound);
    if (w.verdict == Verdict::NonMember) os << ", failed at " << (w.failed_index ? "factor " + std::to_string(w.failed_index) : std::string("the sum"));
    if (!w.detail.empty()) os << " (" << w.detail << ")";
    os << "\n";
  }
  os << "(3) classify " << classified_term << ": " << to_string(classification) << ", expected "
     << to_string(Classification::WidelyOnly) << ": " << mark(classify_ok()) << "\n";
  os << "verdict: " << mark(pass()) << "\n";
  return os.str();
}

}  // namespace retset
