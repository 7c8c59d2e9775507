#include "retset/orbit_scan.hpp"

#include "retset/errors.hpp"

#include "json.hpp"

#include <chrono>
#include <exception>
#include <mutex>
#include <sstream>

namespace retset {

std::vector<std::uint64_t> ScanReport::members() const {
  std::vector<std::uint64_t> out;
  for (const auto& r : rows)
    if (r.verdict == Verdict::Member || r.verdict == Verdict::ProbableMember) out.push_back(r.n);
  return out;
}

std::vector<std::uint64_t> ScanReport::undecided() const {
  std::vector<std::uint64_t> out;
  for (const auto& r : rows)
    if (r.verdict == Verdict::Undecided) out.push_back(r.n);
  return out;
}

Rational ScanReport::max_member_bound() const {
  Rational m = 0;
  for (const auto& r : rows)
    if (r.verdict == Verdict::ProbableMember && r.error_bound > m) m = r.error_bound;
  return m;
}

namespace {

/// Everything the Monte Carlo kernel needs for one theta.
struct ThetaState {
  std::shared_ptr<Specialization> spec;
  FqGroupPoint g;
  std::shared_ptr<SpecializedSystem> system;
};

struct McSetup {
  std::shared_ptr<SpecializationSampler> sampler;
  std::shared_ptr<SpecializedGroup> group;
  std::vector<ThetaState> thetas;
};

McSetup prepare_mc(const AmbientGroup& G, const GroupPoint& g, const PolySystem& V, std::uint64_t hi, const ScanOptions& opt) {
  if (opt.specializations == 0) throw DomainError("at least one specialization is required");
  McSetup s;
  s.sampler = std::make_shared<SpecializationSampler>(G.coeffs(), opt.field_degree, G.has_curves());
  const BigInt need = BigInt(hi) * BigInt(hi) * BigInt(std::max<std::size_t>(1, V.equations().size()));
  if (!opt.allow_small_field && s.sampler->theta_space() <= need)
    throw DomainError("p^k must exceed N^2 times the number of equations; raise the field degree");
  s.group = std::make_shared<SpecializedGroup>(G, s.sampler->target());
  SeedStream seeds(opt.seed);
  std::mt19937_64 rng = seeds.engine();
  for (unsigned i = 0; i < opt.specializations; ++i) {
    ThetaState st;
    for (unsigned attempt = 0;; ++attempt) {
      if (attempt > opt.max_redraws) throw ResourceError("specialization redraws exhausted");
      auto sp = std::make_shared<Specialization>(s.sampler->draw(rng));
      try {
        st.g = s.group->specialize(g, *sp);
      } catch (const BadSpecialization&) {
        continue;
      }
      st.spec = sp;
      break;
    }
    const Specialization* sp = st.spec.get();
    st.system = std::make_shared<SpecializedSystem>(V, s.group->field(), [sp](const FqElem& c) { return sp->embed(c); });
    s.thetas.push_back(std::move(st));
  }
  return s;
}

struct Cell {
  bool pass = false;
  std::uint64_t nonzero = 0;
};

/// Evaluates n*g at one theta for n in [a, b), walking by addition.
void mc_kernel(const McSetup& s, const AmbientGroup& G, const PolySystem& V, std::size_t i, std::uint64_t a,
               std::uint64_t b, Cell* out) {
  const SpecializedGroup& SG = *s.group;
  const ThetaState& st = s.thetas[i];
  FqGroupPoint P = SG.mul(BigInt(a), st.g);
  for (std::uint64_t n = a; n < b; ++n) {
    const SystemEval ev = (*st.system)(point_coordinates(V, G, P, SG.field()));
    out[n - a] = {ev.equations_vanish, ev.nonzero_inequations};
    if (n + 1 < b) P = SG.add(P, st.g);
  }
}

void mc_rows(ScanReport& rep, const AmbientGroup& G, const GroupPoint& g, const PolySystem& V, const McSetup& s,
             const std::vector<std::vector<Cell>>& cells) {
  const Heights hg = heights_of(G, g);
  const BigInt bad = bad_theta_bound(G, hg);
  const BigInt space = s.sampler->theta_space();
  const std::uint64_t full = all_inequations_mask(V);
  for (std::uint64_t n = rep.lo; n <= rep.hi; ++n) {
    ScanRow row;
    row.n = n;
    bool pass = true;
    std::uint64_t nz = 0;
    for (const auto& c : cells) {
      pass = pass && c[n - rep.lo].pass;
      nz |= c[n - rep.lo].nonzero;
    }
    if (pass && nz == full) {
      row.verdict = Verdict::ProbableMember;
      row.error_bound = mc_error_bound(mc_numerator(V, G, heights_mul(G, hg, BigInt(n))), space, bad,
                                       static_cast<unsigned>(cells.size()));
    } else {
      row.verdict = Verdict::NonMember;
      if (pass) row.detail = "an inequation vanished at every specialization";
    }
    rep.rows.push_back(std::move(row));
  }
}

ScanRow exact_row(const AmbientGroup& G, const GroupPoint& g, const PolySystem& V, std::uint64_t n) {
  ScanRow row;
  row.n = n;
  try {
    const MembershipResult m = contains(V, G, group_mul(G, BigInt(n), g));
    row.verdict = m.verdict;
    row.detail = m.detail;
  } catch (const ResourceError& e) {
    row.verdict = Verdict::Undecided;
    row.detail = e.what();
  }
  return row;
}

void check_range(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw DomainError("empty scan range");
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

ScanReport scan_serial(const AmbientGroup& G, const GroupPoint& g, const PolySystem& V, std::uint64_t lo,
                       std::uint64_t hi, const ScanOptions& opt) {
  check_range(lo, hi);
  V.check_ambient(G);
  const auto start = std::chrono::steady_clock::now();
  ScanReport rep{lo, hi, opt, {}, 0};
  if (opt.mode == Mode::Exact) {
    for (std::uint64_t n = lo; n <= hi; ++n) rep.rows.push_back(exact_row(G, g, V, n));
  } else {
    const McSetup s = prepare_mc(G, g, V, hi, opt);
    std::vector<std::vector<Cell>> cells(s.thetas.size(), std::vector<Cell>(hi - lo + 1));
    for (std::size_t i = 0; i < s.thetas.size(); ++i) mc_kernel(s, G, V, i, lo, hi + 1, cells[i].data());
    mc_rows(rep, G, g, V, s, cells);
  }
  rep.seconds = elapsed(start);
  return rep;
}

ScanReport scan_parallel(const AmbientGroup& G, const GroupPoint& g, const PolySystem& V, std::uint64_t lo,
                         std::uint64_t hi, const ScanOptions& opt) {
  check_range(lo, hi);
  V.check_ambient(G);
  const auto start = std::chrono::steady_clock::now();
  ScanReport rep{lo, hi, opt, {}, 0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const std::uint64_t count = hi - lo + 1;

  if (opt.mode == Mode::Exact) {
    rep.rows.resize(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(count); ++k) {
      try {
        rep.rows[k] = exact_row(G, g, V, lo + static_cast<std::uint64_t>(k));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  } else {
    const McSetup s = prepare_mc(G, g, V, hi, opt);
    const std::uint64_t chunk = std::max<std::uint64_t>(1, opt.chunk);
    const std::uint64_t blocks = (count + chunk - 1) / chunk;
    const std::uint64_t tasks = blocks * s.thetas.size();
    std::vector<std::vector<Cell>> cells(s.thetas.size(), std::vector<Cell>(count));
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t task = 0; task < static_cast<std::int64_t>(tasks); ++task) {
      const std::size_t i = static_cast<std::size_t>(task) / blocks;
      const std::uint64_t blk = static_cast<std::uint64_t>(task) % blocks;
      const std::uint64_t a = lo + blk * chunk;
      const std::uint64_t b = std::min(hi + 1, a + chunk);
      try {
        mc_kernel(s, G, V, i, a, b, cells[i].data() + (a - lo));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    mc_rows(rep, G, g, V, s, cells);
  }
  if (failure) std::rethrow_exception(failure);
  rep.seconds = elapsed(start);
  return rep;
}

std::string to_csv(const ScanReport& r) {
  std::ostringstream os;
  os << "n,verdict,error_bound\n";
  for (const auto& row : r.rows) os << row.n << ',' << to_string(row.verdict) << ',' << format_scientific(row.error_bound) << '\n';
  return os.str();
}

std::string to_json(const ScanReport& r) {
  nlohmann::ordered_json j;
  j["range"] = {r.lo, r.hi};
  j["mode"] = r.options.mode == Mode::Exact ? "exact" : "monte_carlo";
  if (r.options.mode == Mode::MonteCarlo) {
    j["specializations"] = r.options.specializations;
    j["field_degree"] = r.options.field_degree;
    j["seed"] = r.options.seed;
  }
  j["members"] = r.members();
  j["max_member_error_bound"] = format_scientific(r.max_member_bound());
  j["undecided"] = r.undecided();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o;
    o["n"] = row.n;
    o["verdict"] = to_string(row.verdict);
    o["error_bound"] = format_scientific(row.error_bound);
    if (!row.detail.empty()) o["detail"] = row.detail;
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace retset
