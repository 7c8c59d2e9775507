#include "retset/subvariety.hpp"

#include "retset/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

namespace retset {

PolySystem::PolySystem(FieldPtr f, std::vector<CoordBlock> blocks, std::vector<MPoly> equations,
                       std::vector<MPoly> inequations)
    : f_(std::move(f)), blocks_(std::move(blocks)), eqs_(std::move(equations)), ineqs_(std::move(inequations)) {
  for (const auto& b : blocks_) {
    if (b.curve && b.names.size() != 3) throw DomainError("a curve block needs three projective coordinates");
    if (!b.curve && b.names.empty()) throw DomainError("a torus block needs at least one coordinate");
    offsets_.push_back(names_.size());
    names_.insert(names_.end(), b.names.begin(), b.names.end());
  }
  std::vector<std::string> sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw DomainError("duplicate coordinate name");
  if (ineqs_.size() > 64) throw DomainError("at most 64 inequations are supported");
  auto check = [&](const MPoly& m) {
    if (m.nvars() != names_.size()) throw DomainError("polynomial has the wrong number of variables");
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      if (blocks_[b].curve && !m.homogeneous_in(offsets_[b], offsets_[b] + 3))
        throw DomainError("not homogeneous in the coordinates of curve block " + std::to_string(b + 1) + ": " +
                          m.str(names_));
  };
  for (const auto& m : eqs_) check(m);
  for (const auto& m : ineqs_) check(m);
}

void PolySystem::check_ambient(const AmbientGroup& G) const {
  if (G.size() != blocks_.size()) throw DomainError("system and group have different component counts");
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i].is_curve() != blocks_[i].curve) throw DomainError("component kinds differ at " + std::to_string(i + 1));
    if (!blocks_[i].curve && blocks_[i].names.size() != G[i].dim)
      throw DomainError("torus dimension differs at component " + std::to_string(i + 1));
  }
  if (!G.coeffs()->same_field(*f_)) throw FieldMismatch("system and group use different coefficient fields");
}

std::string PolySystem::str() const {
  std::ostringstream os;
  os << "[coordinates]\n";
  for (const auto& b : blocks_) {
    os << (b.curve ? "curve = " : "torus = ");
    for (std::size_t i = 0; i < b.names.size(); ++i) os << (i ? ", " : "") << b.names[i];
    os << '\n';
  }
  os << "[equations]\n";
  for (const auto& e : eqs_) os << e.str(names_) << '\n';
  if (!ineqs_.empty()) {
    os << "[inequations]\n";
    for (const auto& e : ineqs_) os << e.str(names_) << '\n';
  }
  return os.str();
}

PolySystem parse_poly_system(const std::string& text, const FieldPtr& f, const ConstTable& consts) {
  std::vector<CoordBlock> blocks;
  std::vector<std::string> eq_lines, ineq_lines;
  for (const auto& sec : split_sections(text)) {
    if (sec.name == "coordinates") {
      for (const auto& line : sec.lines) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'torus = ...' or 'curve = ...': " + line);
        const std::string kind = trim(line.substr(0, eq));
        if (kind != "torus" && kind != "curve") throw ParseError("unknown coordinate block: " + kind);
        CoordBlock b;
        b.curve = kind == "curve";
        for (const auto& n : split_top_level(line.substr(eq + 1), ',')) {
          if (n.empty() || n == "t" || consts.count(n)) throw ParseError("bad coordinate name: '" + n + "'");
          b.names.push_back(n);
        }
        blocks.push_back(std::move(b));
      }
    } else if (sec.name == "equations") {
      eq_lines.insert(eq_lines.end(), sec.lines.begin(), sec.lines.end());
    } else if (sec.name == "inequations") {
      ineq_lines.insert(ineq_lines.end(), sec.lines.begin(), sec.lines.end());
    } else {
      throw ParseError("unknown section [" + sec.name + "]");
    }
  }
  if (blocks.empty()) throw ParseError("missing [coordinates]");
  std::vector<std::string> names;
  for (const auto& b : blocks) names.insert(names.end(), b.names.begin(), b.names.end());
  auto to_poly = [&](const std::string& line) {
    const auto sides = split_top_level(line, '=');
    if (sides.size() > 2) throw ParseError("more than one '=': " + line);
    MPoly m = expr_to_mpoly(parse_expr(sides[0]), f, names, consts);
    if (sides.size() == 2) m = m - expr_to_mpoly(parse_expr(sides[1]), f, names, consts);
    return m;
  };
  std::vector<MPoly> eqs, ineqs;
  for (const auto& l : eq_lines) eqs.push_back(to_poly(l));
  for (const auto& l : ineq_lines) {
    if (split_top_level(l, '=').size() > 1) throw ParseError("inequations are single expressions: " + l);
    ineqs.push_back(to_poly(l));
  }
  return PolySystem(f, std::move(blocks), std::move(eqs), std::move(ineqs));
}

PolySystem load_poly_system(const std::string& path, const FieldPtr& f, const ConstTable& consts) {
  return parse_poly_system(read_text_file(path), f, consts);
}

PolySystem segre_hyperplane(const FieldPtr& f) {
  return parse_poly_system(
      "[coordinates]\ncurve = X0, X1, X2\ncurve = Y0, Y1, Y2\n[equations]\nX0*Y2 = X2*Y0 + X2*Y2\n", f, {});
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Member:
      return "member";
    case Verdict::NonMember:
      return "non-member";
    case Verdict::ProbableMember:
      return "probable-member";
    case Verdict::Undecided:
      return "undecided";
  }
  return "?";
}

namespace {

/// Element of F(t)[s_1, ..., s_r] with s_i^2 = D_i, stored as mask -> coefficient.
class TowerElem {
 public:
  TowerElem() = default;
  explicit TowerElem(RatFunc c, std::uint32_t mask = 0) {
    if (!c.is_zero()) parts_.emplace(mask, std::move(c));
  }

  bool is_zero() const noexcept { return parts_.empty(); }

  TowerElem operator+(const TowerElem& o) const {
    TowerElem r = *this;
    for (const auto& [mask, c] : o.parts_) {
      auto it = r.parts_.find(mask);
      if (it == r.parts_.end()) {
        r.parts_.emplace(mask, c);
      } else {
        it->second = it->second + c;
        if (it->second.is_zero()) r.parts_.erase(it);
      }
    }
    return r;
  }

  TowerElem mul(const TowerElem& o, const std::vector<SparsePoly>& rads) const {
    TowerElem r;
    for (const auto& [ma, a] : parts_) {
      for (const auto& [mb, b] : o.parts_) {
        RatFunc c = a * b;
        const std::uint32_t both = ma & mb;
        for (std::size_t i = 0; i < rads.size(); ++i)
          if (both & (1U << i)) c = c * RatFunc(rads[i]);
        r = r + TowerElem(std::move(c), ma ^ mb);
      }
    }
    return r;
  }

 private:
  std::map<std::uint32_t, RatFunc> parts_;
};

std::vector<bool> used_variables(const PolySystem& V) {
  std::vector<bool> used(V.nvars(), false);
  for (std::size_t i = 0; i < V.nvars(); ++i) {
    for (const auto& m : V.equations()) used[i] = used[i] || m.uses(i);
    for (const auto& m : V.inequations()) used[i] = used[i] || m.uses(i);
  }
  return used;
}

bool is_unit_radicand(const SparsePoly& D) { return D.is_constant() && D.field()->is_one(D.constant_term()); }

const EqOptions kExactEq{std::numeric_limits<std::size_t>::max(), 5, 12, 1};

MembershipResult contains_exact(const PolySystem& V, const AmbientGroup& G, const GroupPoint& P) {
  const FieldPtr& f = G.coeffs();
  const auto used = used_variables(V);
  std::vector<SparsePoly> rads;
  auto radicand_bit = [&](const SparsePoly& D) -> std::uint32_t {
    for (std::size_t i = 0; i < rads.size(); ++i)
      if (rads[i] == D) return 1U << i;
    if (rads.size() >= 16) throw ResourceError("too many square roots adjoined");
    rads.push_back(D);
    return 1U << (rads.size() - 1);
  };

  const RatFunc one = RatFunc::constant(f, f->one());
  std::vector<TowerElem> vals(V.nvars());
  for (std::size_t b = 0; b < G.size(); ++b) {
    const std::size_t off = V.offset(b);
    if (!G[b].is_curve()) {
      for (std::size_t j = 0; j < G[b].dim; ++j)
        if (used[off + j]) vals[off + j] = TowerElem(P[b].torus[j]);
      continue;
    }
    const SymPoint& Q = P[b].curve;
    if (Q.inf) {
      vals[off + 1] = TowerElem(one);
      continue;
    }
    vals[off] = TowerElem(Q.x);
    vals[off + 2] = TowerElem(one);
    if (used[off + 1]) {
      const RatFunc coef = G.sym_curve(b).y_coefficient(Q);
      vals[off + 1] = is_unit_radicand(Q.D) ? TowerElem(coef) : TowerElem(coef, radicand_bit(Q.D));
    }
  }

  auto eval = [&](const MPoly& m) {
    return m.eval<TowerElem>(
        vals, TowerElem(), [&](const FqElem& c) { return TowerElem(RatFunc::constant(f, c)); },
        [](const TowerElem& a, const TowerElem& b) { return a + b; },
        [&](const TowerElem& a, const TowerElem& b) { return a.mul(b, rads); });
  };

  MembershipResult r;
  for (std::size_t j = 0; j < V.equations().size(); ++j) {
    if (!eval(V.equations()[j]).is_zero()) {
      r.verdict = Verdict::NonMember;
      r.detail = "equation " + std::to_string(j + 1) + " does not vanish";
      return r;
    }
  }
  for (std::size_t j = 0; j < V.inequations().size(); ++j) {
    if (eval(V.inequations()[j]).is_zero()) {
      r.verdict = Verdict::NonMember;
      r.detail = "inequation " + std::to_string(j + 1) + " vanishes";
      return r;
    }
  }
  r.verdict = Verdict::Member;
  return r;
}

/// Specializes P, drawing fresh theta while it hits a pole or a torus zero.
template <class Fn>
Specialization draw_good(const SpecializationSampler& sampler, std::mt19937_64& rng, unsigned max_redraws, Fn&& try_point) {
  for (unsigned attempt = 0; attempt <= max_redraws; ++attempt) {
    Specialization s = sampler.draw(rng);
    try {
      try_point(s);
      return s;
    } catch (const BadSpecialization&) {
    }
  }
  throw ResourceError("specialization redraws exhausted");
}

}  // namespace

std::vector<FqElem> point_coordinates(const PolySystem& V, const AmbientGroup& G, const FqGroupPoint& P, const FieldCtx& F) {
  std::vector<FqElem> vals(V.nvars(), F.zero());
  for (std::size_t b = 0; b < G.size(); ++b) {
    const std::size_t off = V.offset(b);
    if (!G[b].is_curve()) {
      for (std::size_t j = 0; j < G[b].dim; ++j) vals[off + j] = P[b].torus[j];
    } else if (P[b].curve.inf) {
      vals[off + 1] = F.one();
    } else {
      vals[off] = P[b].curve.x;
      vals[off + 1] = P[b].curve.y;
      vals[off + 2] = F.one();
    }
  }
  return vals;
}

SystemEval evaluate_at(const PolySystem& V, const FieldCtx& F, const std::vector<FqElem>& vals,
                       const std::function<FqElem(const FqElem&)>& embed) {
  return SpecializedSystem(V, F, embed)(vals);
}

std::uint64_t all_inequations_mask(const PolySystem& V) {
  const std::size_t n = V.inequations().size();
  return n == 64 ? ~0ULL : ((1ULL << n) - 1);
}

BigInt mc_numerator(const PolySystem& V, const AmbientGroup& G, const Heights& h) {
  std::vector<BigInt> var_height(V.nvars(), 0);
  std::vector<int> y_block(V.nvars(), -1);
  BigInt poles = 0;
  for (std::size_t b = 0; b < G.size(); ++b) {
    const std::size_t off = V.offset(b);
    if (G[b].is_curve()) {
      var_height[off] = h[b][0];
      var_height[off + 1] = h[b][1];
      y_block[off + 1] = static_cast<int>(b);
      poles += h[b][0];
    } else {
      for (std::size_t j = 0; j < G[b].dim; ++j) var_height[off + j] = h[b][j];
    }
  }
  BigInt total = poles;
  for (const auto& eq : V.equations()) {
    BigInt H = 0;
    unsigned r = 0;
    for (std::size_t i = 0; i < V.nvars(); ++i)
      if (y_block[i] >= 0 && eq.uses(i)) ++r;
    for (const auto& term : eq.terms())
      for (std::size_t i = 0; i < V.nvars(); ++i) H += var_height[i] * term.exps[i];
    total += (BigInt(1) << r) * H;
  }
  return total;
}

BigInt bad_theta_bound(const AmbientGroup& G, const Heights& h) {
  BigInt bad = 0;
  for (std::size_t b = 0; b < G.size(); ++b) {
    if (G[b].is_curve()) {
      bad += h[b][0] + h[b][1];
    } else {
      for (const auto& v : h[b]) bad += 2 * v;
    }
  }
  return bad;
}

Rational mc_error_bound(const BigInt& numerator, const BigInt& space, const BigInt& bad, unsigned s) {
  if (space <= bad) throw ResourceError("specialization field too small: poles and zeros cover it");
  Rational per(numerator, space - bad);
  if (per >= 1) return 1;
  return rat_pow(per, s);
}

MembershipResult contains(const PolySystem& V, const AmbientGroup& G, const GroupPoint& P, const CheckOptions& opt) {
  V.check_ambient(G);
  if (P.size() != G.size()) throw DomainError("point has the wrong number of components");
  if (opt.mode == Mode::Exact) return contains_exact(V, G, P);
  if (opt.specializations == 0) throw DomainError("at least one specialization is required");

  SpecializationSampler sampler(G.coeffs(), opt.field_degree, G.has_curves());
  SpecializedGroup SG(G, sampler.target());
  SeedStream seeds(opt.seed);
  std::mt19937_64 rng = seeds.engine();
  std::uint64_t nonzero = 0;
  MembershipResult r;
  for (unsigned i = 0; i < opt.specializations; ++i) {
    FqGroupPoint Ps;
    const Specialization s = draw_good(sampler, rng, opt.max_redraws, [&](const Specialization& sp) { Ps = SG.specialize(P, sp); });
    SpecializedSystem sys(V, SG.field(), [&](const FqElem& c) { return s.embed(c); });
    const SystemEval ev = sys(point_coordinates(V, G, Ps, SG.field()));
    if (!ev.equations_vanish) {
      r.verdict = Verdict::NonMember;
      r.detail = "an equation is nonzero at specialization " + std::to_string(i + 1);
      return r;
    }
    nonzero |= ev.nonzero_inequations;
  }
  if (nonzero != all_inequations_mask(V)) {
    r.verdict = Verdict::NonMember;
    r.detail = "an inequation vanished at every specialization";
    return r;
  }
  const Heights h = heights_of(G, P);
  r.verdict = Verdict::ProbableMember;
  r.error_bound = mc_error_bound(mc_numerator(V, G, h), sampler.theta_space(), bad_theta_bound(G, h), opt.specializations);
  return r;
}

SegreCondition segre_affine_reduce(const PolySystem& V, const SymPoint& P, const SymPoint& Q) {
  if (V.blocks().size() != 2 || !V.blocks()[0].curve || !V.blocks()[1].curve || V.equations().size() != 1 ||
      !V.inequations().empty())
    throw DomainError("not a hyperplane on a product of two curves");
  const MPoly ref = segre_hyperplane(V.field()).equations()[0];
  const MPoly& eq = V.equations()[0];
  if (eq.terms().size() != ref.terms().size() || eq.is_zero()) throw DomainError("not the Segre hyperplane");
  const FieldCtx& f = *V.field();
  const FqElem scale = f.div(eq.terms()[0].coef, ref.terms()[0].coef);
  if (!(eq - ref.scaled(scale)).is_zero()) throw DomainError("not the Segre hyperplane");

  SegreCondition c;
  if (P.inf || Q.inf) {
    // z02 = X0*Y2, z20 = X2*Y0 and z22 = X2*Y2 all vanish when either factor is (0:1:0).
    c.degenerate = true;
    const std::vector<FqElem> vals = {P.inf ? f.zero() : f.one(), f.one(), P.inf ? f.zero() : f.one(),
                                      Q.inf ? f.zero() : f.one(), f.one(), Q.inf ? f.zero() : f.one()};
    c.holds = evaluate_at(V, f, vals, [](const FqElem& x) { return x; }).equations_vanish;
    return c;
  }
  c.lhs = P.x;
  c.rhs = Q.x + RatFunc::constant(V.field(), f.one());
  return c;
}

Verdict decide(const SegreCondition& c, const EqOptions& opt) {
  if (c.degenerate) return c.holds ? Verdict::Member : Verdict::NonMember;
  const EqVerdict v = ratfunc_eq(c.lhs, c.rhs, opt);
  if (!v.equal) return Verdict::NonMember;
  return v.probabilistic ? Verdict::ProbableMember : Verdict::Member;
}

bool points_equal(const AmbientGroup& G, const GroupPoint& a, const GroupPoint& b) {
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (!G[i].is_curve()) {
      for (std::size_t j = 0; j < G[i].dim; ++j)
        if (!ratfunc_eq(a[i].torus[j], b[i].torus[j], kExactEq).equal) return false;
      continue;
    }
    const SymPoint& P = a[i].curve;
    const SymPoint& Q = b[i].curve;
    if (P.inf || Q.inf) {
      if (P.inf != Q.inf) return false;
      continue;
    }
    if (!ratfunc_eq(P.x, Q.x, kExactEq).equal) return false;
    if (!(P.D == Q.D)) throw UndecidedError("curve points over different radicands");
    const BigInt m = P.h < Q.h ? P.h : Q.h;
    const RatFunc D(P.D);
    if (!ratfunc_eq(P.c * D.pow(P.h - m), Q.c * D.pow(Q.h - m), kExactEq).equal) return false;
  }
  return true;
}

namespace {

/// Distinct radicands other than 1 on curve component b.
unsigned radicand_count(const std::vector<const GroupPoint*>& pts, std::size_t b) {
  std::vector<SparsePoly> seen;
  for (const auto* p : pts) {
    const SymPoint& P = (*p)[b].curve;
    if (P.inf || is_unit_radicand(P.D)) continue;
    if (std::none_of(seen.begin(), seen.end(), [&](const SparsePoly& D) { return D == P.D; })) seen.push_back(P.D);
  }
  return static_cast<unsigned>(seen.size());
}

}  // namespace

WitnessResult check_sum_witness(const AmbientGroup& G, const SumWitness& w, const GroupPoint& g, const BigInt& n,
                                const CheckOptions& opt) {
  if (w.points.size() != w.factors.size()) throw DomainError("one factor system per witness point");
  if (w.points.empty()) throw DomainError("empty witness");
  for (const auto& C : w.factors) C.check_ambient(G);
  WitnessResult r;

  if (opt.mode == Mode::Exact) {
    for (std::size_t i = 0; i < w.points.size(); ++i) {
      const MembershipResult m = contains(w.factors[i], G, w.points[i], opt);
      if (m.verdict == Verdict::NonMember) {
        r.failed_index = i + 1;
        r.detail = "factor " + std::to_string(i + 1) + ": " + m.detail;
        return r;
      }
    }
    GroupPoint sum = identity(G);
    for (const auto& p : w.points) sum = group_add(G, sum, p);
    if (!points_equal(G, sum, group_mul(G, n, g))) {
      r.failed_index = 0;
      r.detail = "witnesses do not sum to the target";
      return r;
    }
    r.verdict = Verdict::Member;
    return r;
  }

  if (opt.specializations == 0) throw DomainError("at least one specialization is required");
  SpecializationSampler sampler(G.coeffs(), opt.field_degree, G.has_curves());
  SpecializedGroup SG(G, sampler.target());
  SeedStream seeds(opt.seed);
  std::mt19937_64 rng = seeds.engine();
  std::vector<std::uint64_t> nonzero(w.points.size(), 0);
  for (unsigned k = 0; k < opt.specializations; ++k) {
    std::vector<FqGroupPoint> ws(w.points.size());
    FqGroupPoint gs;
    const Specialization s = draw_good(sampler, rng, opt.max_redraws, [&](const Specialization& sp) {
      for (std::size_t i = 0; i < w.points.size(); ++i) ws[i] = SG.specialize(w.points[i], sp);
      gs = SG.specialize(g, sp);
    });
    const auto embed = [&](const FqElem& c) { return s.embed(c); };
    for (std::size_t i = 0; i < w.points.size(); ++i) {
      const SystemEval ev = evaluate_at(w.factors[i], SG.field(), point_coordinates(w.factors[i], G, ws[i], SG.field()), embed);
      if (!ev.equations_vanish) {
        r.failed_index = i + 1;
        r.detail = "factor " + std::to_string(i + 1) + ": an equation is nonzero at specialization " + std::to_string(k + 1);
        return r;
      }
      nonzero[i] |= ev.nonzero_inequations;
    }
    FqGroupPoint sum = SG.identity();
    for (const auto& p : ws) sum = SG.add(sum, p);
    if (!(sum == SG.mul(n, gs))) {
      r.failed_index = 0;
      r.detail = "witnesses do not sum to the target at specialization " + std::to_string(k + 1);
      return r;
    }
  }
  for (std::size_t i = 0; i < w.points.size(); ++i) {
    if (nonzero[i] != all_inequations_mask(w.factors[i])) {
      r.failed_index = i + 1;
      r.detail = "factor " + std::to_string(i + 1) + ": an inequation vanished at every specialization";
      return r;
    }
  }

  // Union bound over the factor identities and the sum identity.
  BigInt numerator = 0, bad = 0;
  std::vector<const GroupPoint*> all;
  Heights hs;
  for (std::size_t i = 0; i < w.points.size(); ++i) {
    const Heights hw = heights_of(G, w.points[i]);
    numerator += mc_numerator(w.factors[i], G, hw);
    bad += bad_theta_bound(G, hw);
    hs = i == 0 ? hw : heights_add(G, hs, hw);
    all.push_back(&w.points[i]);
  }
  all.push_back(&g);
  const Heights hg = heights_of(G, g);
  bad += bad_theta_bound(G, hg);
  const Heights hd = heights_add(G, hs, heights_mul(G, hg, n));
  for (std::size_t b = 0; b < G.size(); ++b) {
    if (G[b].is_curve()) {
      numerator += (BigInt(1) << radicand_count(all, b)) * hd[b][0];
    } else {
      for (const auto& v : hd[b]) numerator += v;
    }
  }
  r.verdict = Verdict::ProbableMember;
  r.error_bound = mc_error_bound(numerator, sampler.theta_space(), bad, opt.specializations);
  return r;
}

}  // namespace retset
