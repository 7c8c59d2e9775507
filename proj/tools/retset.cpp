// Command-line front end: orbit scans, the two verification reports, and set utilities.
//
// Exit codes: 0 pass, 1 fail with a counterexample, 2 undecided or out of resources, 3 usage error.

#include "retset/config.hpp"
#include "retset/errors.hpp"
#include "retset/fset.hpp"
#include "retset/good_coset.hpp"
#include "retset/orbit_scan.hpp"
#include "retset/set_algebra.hpp"
#include "retset/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace retset;

namespace {

enum Exit { Pass = 0, Fail = 1, Undecided = 2, Usage = 3 };

const Rational kBoundLimit(1, 1000000);

struct Common {
  std::uint32_t prime = 5;
  unsigned specializations = 5;
  unsigned field_degree = 18;
  std::uint64_t seed = 1;
  std::string out;
  bool allow_weak_bound = false;
  bool serial = false;
};

void add_mc_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--specializations", c.specializations, "Monte Carlo specializations")->check(CLI::Range(1u, 1000u));
  cmd->add_option("--field-degree", c.field_degree, "theta is drawn from F_{p^k}, k = this")->check(CLI::Range(1u, 60u));
  cmd->add_option("--seed", c.seed, "Monte Carlo seed");
  cmd->add_flag("--allow-weak-bound", c.allow_weak_bound, "accept member bounds above 1e-6");
  cmd->add_flag("--serial", c.serial, "use the serial reference kernel");
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw DomainError("cannot write " + out);
  f << text;
}

std::vector<BigInt> int_list(const std::string& s) {
  std::vector<BigInt> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.emplace_back(item);
    } catch (const std::exception&) {
      throw ParseError("not an integer: '" + item + "'");
    }
  }
  return out;
}

std::vector<Rational> rational_list(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& item : split_top_level(s, ',')) {
    if (!trim(item).empty()) out.push_back(parse_rational(trim(item)));
  }
  return out;
}

std::string join_values(const std::vector<BigInt>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + v[k].str();
  return out;
}

int run_scan(const std::string& group_file, const std::string& variety_file, std::uint64_t lo, std::uint64_t window,
             bool exact, bool allow_small, const std::string& format, bool prime_given, const Common& c) {
  const GroupConfig cfg = load_group_config(group_file);
  if (!cfg.point) throw DomainError(group_file + " has no [point] section");
  if (prime_given && cfg.coeffs->p() != c.prime) throw DomainError("--prime disagrees with the group file");
  const AmbientGroup G = cfg.group();
  const PolySystem V = load_poly_system(variety_file, cfg.coeffs, cfg.consts);
  ScanOptions so;
  so.mode = exact ? Mode::Exact : Mode::MonteCarlo;
  so.specializations = c.specializations;
  so.field_degree = c.field_degree;
  so.seed = c.seed;
  so.allow_small_field = allow_small;
  const ScanReport r = c.serial ? scan_serial(G, *cfg.point, V, lo, window, so) : scan_parallel(G, *cfg.point, V, lo, window, so);
  const bool json = format == "json" || (format.empty() && c.out.size() > 5 && c.out.substr(c.out.size() - 5) == ".json");
  emit(json ? to_json(r) : to_csv(r), c.out);
  std::cerr << "members: " << r.members().size() << ", undecided: " << r.undecided().size() << ", max bound "
            << format_scientific(r.max_member_bound()) << ", " << r.seconds << " s\n";
  if (!r.undecided().empty()) return Undecided;
  if (!exact && r.max_member_bound() >= kBoundLimit && !c.allow_weak_bound) {
    std::cerr << "refusing member verdicts with false-accept bound above 1e-6; raise --field-degree or "
                 "--specializations, or pass --allow-weak-bound\n";
    return Undecided;
  }
  return Pass;
}

int run_segre(const SegreOrbitOptions& base, const Common& c) {
  SegreOrbitOptions o = base;
  o.p = c.prime;
  o.scan.specializations = c.specializations;
  o.scan.field_degree = c.field_degree;
  o.scan.seed = c.seed;
  o.parallel = !c.serial;
  if (c.allow_weak_bound) o.max_bound = 1;
  const SegreOrbitReport r = verify_segre_orbit(o);
  emit(r.text(), c.out);
  if (r.pass()) return Pass;
  if (r.powers_ok() && r.sign_violations.empty()) return Undecided;  // only the bound failed
  if (!r.powers_ok() && r.powers.back() == Verdict::Undecided) return Undecided;
  return Fail;
}

int run_counterexample(const CounterexampleOptions& base, const Common& c) {
  CounterexampleOptions o = base;
  o.p = c.prime;
  o.witness = {Mode::MonteCarlo, c.specializations, c.field_degree, c.seed, 200};
  o.parallel = !c.serial;
  if (c.allow_weak_bound) o.max_bound = 1;
  const CounterexampleReport r = verify_counterexample(o);
  emit(r.text(), c.out);
  if (r.pass()) return Pass;
  if (!r.torus.undecided().empty()) return Undecided;
  return Fail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Return sets of orbits on tori and supersingular curves over F_p(t)"};
  app.require_subcommand(1);
  Common c;
  bool prime_given = false;
  auto add_prime = [&](CLI::App* cmd) {
    cmd->add_option("--prime", c.prime, "characteristic p")->check(CLI::Range(2u, 65521u))->each([&](const std::string&) {
      prime_given = true;
    });
    cmd->add_option("--out", c.out, "write the report here instead of stdout");
  };

  // scan
  auto* scan = app.add_subcommand("scan", "verdicts for n g, n in [lo, window]");
  std::string group_file, variety_file, format;
  std::uint64_t lo = 0, scan_window = 100;
  bool exact = false, allow_small = false;
  scan->add_option("--group", group_file, "group description file")->required()->check(CLI::ExistingFile);
  scan->add_option("--variety", variety_file, "subvariety file")->required()->check(CLI::ExistingFile);
  scan->add_option("--window", scan_window, "last n");
  scan->add_option("--lo", lo, "first n");
  scan->add_option("--format", format, "csv or json (default from --out extension, else csv)")->check(CLI::IsMember({"csv", "json"}));
  scan->add_flag("--exact", exact, "exact symbolic membership instead of Monte Carlo");
  scan->add_flag("--allow-small-field", allow_small, "accept p^k <= window^2 * equations");
  add_prime(scan);
  add_mc_flags(scan, c);

  // verify-segre-orbit
  auto* segre = app.add_subcommand("verify-segre-orbit", "powers of p return; members have prime-to-p part +-1 mod 2p");
  SegreOrbitOptions so;
  segre->add_option("--window", so.window, "scan [1, window]; 0 skips the scan");
  segre->add_option("--max-j", so.max_j, "exact check of p^j for j <= this");
  segre->add_option("--curve-a", so.A, "A in y^2 = x^3 + A x + B");
  segre->add_option("--curve-b", so.B, "B in y^2 = x^3 + A x + B");
  add_prime(segre);
  add_mc_flags(segre, c);

  // verify-counterexample
  auto* counter = app.add_subcommand("verify-counterexample", "torus identity, witness triples and the classifier");
  CounterexampleOptions co;
  counter->add_option("--window", co.window, "exact torus scan on [0, window]");
  counter->add_option("--n-max", co.n_max, "witness triples for j <= this");
  counter->add_flag("--corrupt-third", co.corrupt_third, "negative control: break the third witness point");
  add_prime(counter);
  add_mc_flags(counter, c);

  // set
  auto* set = app.add_subcommand("set", "set-expression, coset and F-set utilities");
  set->require_subcommand(1);
  std::string e1, e2, a1, a2, a3, a4;
  std::uint64_t bound = 32;
  auto* s_window = set->add_subcommand("window", "elements of EXPR in [lo, N]");
  std::string s_lo = "0";
  s_window->add_option("expr", e1)->required();
  s_window->add_option("N", a1)->required();
  s_window->add_option("--lo", s_lo, "lower end");
  auto* s_member = set->add_subcommand("member", "yes/no/unknown with a witness tuple");
  s_member->add_option("expr", e1)->required();
  s_member->add_option("n", a1)->required();
  s_member->add_option("--bound", bound, "search radius for uncertifiable terms");
  auto* s_classify = set->add_subcommand("classify", "p-normal, widely-p-normal-only or invalid");
  s_classify->add_option("expr", e1)->required();
  auto* s_affine = set->add_subcommand("affine", "a * EXPR + b");
  s_affine->add_option("a", a1)->required();
  s_affine->add_option("b", a2)->required();
  s_affine->add_option("expr", e1)->required();
  auto* s_union = set->add_subcommand("union", "EXPR1 union EXPR2");
  s_union->add_option("expr1", e1)->required();
  s_union->add_option("expr2", e2)->required();
  auto* s_diff = set->add_subcommand("diff", "symmetric difference in [lo, hi], expected below threshold");
  std::string d_lo = "0", d_hi = "1000", d_thr = "1000";
  s_diff->add_option("expr1", e1)->required();
  s_diff->add_option("expr2", e2)->required();
  s_diff->add_option("--lo", d_lo);
  s_diff->add_option("--hi", d_hi);
  s_diff->add_option("--threshold", d_thr);
  auto* s_decompose = set->add_subcommand("decompose", "solutions of c1 q^n1 + c2 q^n2 = e0 + sum e_i q^m_i");
  std::string q_text = "5";
  std::uint64_t fit_window = 30;
  s_decompose->add_option("c1", a1)->required();
  s_decompose->add_option("c2", a2)->required();
  s_decompose->add_option("e0", a3)->required();
  s_decompose->add_option("e", a4, "comma-separated e_i")->required();
  s_decompose->add_option("--q", q_text);
  s_decompose->add_option("--window", fit_window, "fit window N; certified on [0, 2N]");
  auto* s_coset = set->add_subcommand("coset", "canonical form, members up to W, or intersection");
  std::uint64_t coset_w = 10;
  s_coset->add_option("coset", e1)->required();
  s_coset->add_option("other", e2, "second coset to intersect with");
  s_coset->add_option("--window", coset_w, "list members in [0, W]^d");
  auto* s_fset = set->add_subcommand("fset", "index set of an F-set against Z g0, from a problem file");
  std::string fset_file;
  std::uint64_t fset_window = 8;
  s_fset->add_option("file", fset_file)->required()->check(CLI::ExistingFile);
  s_fset->add_option("--window", fset_window, "fit window N when the exact route does not apply");
  auto* s_closed = set->add_subcommand("closed-form", "{c + sum l_i (t^n_i - 1)/(t - 1)}");
  s_closed->add_option("c", a1)->required();
  s_closed->add_option("l", a2, "comma-separated l_i")->required();
  s_closed->add_option("t", a3)->required();
  auto* s_fit = set->add_subcommand("fit", "coefficients c_j with l_n = sum c_j q^(2^j n)");
  unsigned fit_r = 1;
  s_fit->add_option("samples", a1, "comma-separated l_0, l_1, ...")->required();
  s_fit->add_option("--q", q_text);
  s_fit->add_option("--r", fit_r);
  for (auto* sub : set->get_subcommands({})) add_prime(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Pass : Usage;
  }

  try {
    if (*scan) return run_scan(group_file, variety_file, lo, scan_window, exact, allow_small, format, prime_given, c);
    if (*segre) return run_segre(so, c);
    if (*counter) return run_counterexample(co, c);

    const std::uint32_t p = c.prime;
    if (*s_window) {
      emit(join_values(window(parse_set_expr(e1, p), BigInt(s_lo), BigInt(a1))) + "\n", c.out);
    } else if (*s_member) {
      const MemberVerdict v = expr_member(BigInt(a1), parse_set_expr(e1, p), bound);
      std::string line = to_string(v.answer);
      if (v.answer == Answer::Yes && !v.witness.empty()) {
        line += " (";
        for (std::size_t k = 0; k < v.witness.size(); ++k) line += (k ? "," : "") + std::to_string(v.witness[k]);
        line += ")";
      }
      if (v.answer == Answer::Unknown) line += " (searched [0," + std::to_string(v.searched) + "]^d)";
      emit(line + "\n", c.out);
      if (v.answer == Answer::Unknown) return Undecided;
    } else if (*s_classify) {
      emit(to_string(classify(parse_set_expr(e1, p), p)) + "\n", c.out);
    } else if (*s_affine) {
      emit(to_string(affine(BigInt(a1), BigInt(a2), parse_set_expr(e1, p))) + "\n", c.out);
    } else if (*s_union) {
      emit(to_string(set_union(parse_set_expr(e1, p), parse_set_expr(e2, p))) + "\n", c.out);
    } else if (*s_diff) {
      const auto r = equal_up_to_finite(parse_set_expr(e1, p), parse_set_expr(e2, p), BigInt(d_lo), BigInt(d_hi), BigInt(d_thr));
      emit("differences: " + (r.differences.empty() ? std::string("none") : join_values(r.differences)) + "\n" +
               "consistent with finite difference below " + d_thr + ": " + (r.consistent ? "yes" : "no") + "\n",
           c.out);
      if (!r.consistent) return Fail;
    } else if (*s_decompose) {
      const auto D = two_exponential_decompose(parse_rational(a1), parse_rational(a2), parse_rational(a3),
                                               rational_list(a4), BigInt(q_text), fit_window);
      std::string text = "fit [0," + std::to_string(D.fit_window) + "]^2, certified [0," + std::to_string(D.certified_window) + "]^2\n";
      for (const auto& comp : D.components) text += comp.str() + "\n";
      emit(text, c.out);
    } else if (*s_coset) {
      const GoodCoset A = parse_coset(e1);
      std::optional<GoodCoset> C = A;
      std::string text;
      if (!e2.empty()) {
        C = intersect(A, parse_coset(e2));
        text += to_string(C) + "\n";
      }
      if (C) {
        text += "canonical " + to_string(C->H.canonical()) + "\n";
        for (const auto& v : C->enumerate(static_cast<std::int64_t>(coset_w))) {
          text += "(";
          for (std::size_t k = 0; k < v.size(); ++k) text += (k ? "," : "") + std::to_string(v[k]);
          text += ")\n";
        }
      }
      emit(text, c.out);
    } else if (*s_fset) {
      const FSetProblem P = parse_fset_problem(read_text_file(fset_file));
      emit(decompose_index_set(P.spec, P.fset, P.g0, fset_window).str(), c.out);
    } else if (*s_closed) {
      emit(to_string(frobenius_orbit_closed_form(BigInt(a1), int_list(a2), BigInt(a3))) + "\n", c.out);
    } else if (*s_fit) {
      const auto r = fit_power_coefficients(int_list(a1), BigInt(q_text), fit_r);
      if (!r) {
        emit("no fit\n", c.out);
        return Fail;
      }
      std::string text;
      for (std::size_t j = 0; j < r->size(); ++j) text += (j ? "," : "") + to_string((*r)[j]);
      emit(text + "\n", c.out);
    }
    return Pass;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return Undecided;
  } catch (const UndecidedError& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return Undecided;
  } catch (const FitFailure& e) {
    std::cerr << e.what() << "\n";
    return Undecided;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  }
}
