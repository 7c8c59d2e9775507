#include "retset/constructions.hpp"

#include "retset/errors.hpp"

#include <sstream>

namespace retset {

namespace {

std::string rhs_text(const std::string& x, std::int64_t A, std::int64_t B) {
  std::ostringstream os;
  os << "(" << x << ")^3";
  if (A) os << " + (" << A << ")*(" << x << ")";
  if (B) os << " + (" << B << ")";
  return os.str();
}

}  // namespace

std::string curve_pair_text(std::uint32_t p, std::int64_t A, std::int64_t B) {
  std::ostringstream os;
  os << "[field]\np = " << p << "\n\n[group]\n";
  os << "curve A=" << A << " B=" << B << "\ncurve A=" << A << " B=" << B << "\n\n[point]\n";
  os << "curve = t+1 ; adjoin sqrt(" << rhs_text("t+1", A, B) << ")\n";
  os << "curve = t ; adjoin sqrt(" << rhs_text("t", A, B) << ")\n";
  return os.str();
}

GroupConfig curve_pair_config(std::uint32_t p, std::int64_t A, std::int64_t B) {
  return parse_group_config(curve_pair_text(p, A, B));
}

std::string torus_text(std::uint32_t p) {
  std::ostringstream os;
  os << "[field]\np = " << p << "\nk = 2\nalpha = generator\n\n[group]\ntorus dim=3\n\n[point]\n"
     << "torus = t+alpha, t-alpha, t\n";
  return os.str();
}

GroupConfig torus_config(std::uint32_t p) { return parse_group_config(torus_text(p)); }

std::string torus_hyperplane_text() {
  return "[coordinates]\ntorus = x, y, z\n\n[equations]\nx + y = 2*z + 2*alpha^2\n";
}

PolySystem torus_hyperplane(const GroupConfig& cfg) {
  return parse_poly_system(torus_hyperplane_text(), cfg.coeffs, cfg.consts);
}

std::string three_factor_text(std::uint32_t p) {
  std::ostringstream os;
  os << "[field]\np = " << p << "\n\n[group]\ntorus dim=2\ncurve A=0 B=1\ncurve A=0 B=1\n\n[point]\n"
     << "torus = t+1, t\ncurve = t+1 ; adjoin sqrt((t+1)^3+1)\ncurve = t ; adjoin sqrt(t^3+1)\n";
  return os.str();
}

GroupConfig three_factor_config(std::uint32_t p) { return parse_group_config(three_factor_text(p)); }

std::vector<std::string> three_factor_system_texts() {
  const std::string coords = "[coordinates]\ntorus = x0, x1\ncurve = P0, P1, P2\ncurve = Q0, Q1, Q2\n\n";
  return {
      coords + "[equations]\nx0 = x1 + 1\nP0 = 0\nP2 = 0\nQ0 = 0\nQ2 = 0\n\n[inequations]\nx1\nx1 + 1\n",
      coords + "[equations]\nx0 = 1\nx1 = 1\nP0*Q2 = (Q0 + Q2)*P2\n\n[inequations]\nP2\nQ2\n",
      coords + "[equations]\nx0 = x1 + 1\nP0 = x0*P2\nQ0 = x1*Q2\n\n[inequations]\nP2\nQ2\nx1\nx1 + 1\n",
  };
}

std::vector<PolySystem> three_factor_systems(const FieldPtr& f) {
  std::vector<PolySystem> out;
  for (const auto& text : three_factor_system_texts()) out.push_back(parse_poly_system(text, f, {}));
  return out;
}

SumWitness three_factor_witness(const GroupConfig& cfg, unsigned j) {
  if (!cfg.point) throw DomainError("configuration has no base point");
  const AmbientGroup G = cfg.group();
  const FieldPtr& f = cfg.coeffs;
  const GroupPoint& g = *cfg.point;
  const BigInt a = big_pow(BigInt(f->p()), j), b = a * a;
  const RatFunc one = RatFunc::constant(f, f->one());
  const RatFunc ta = RatFunc::t(f).pow(a), tb = RatFunc::t(f).pow(b);

  GroupPoint w1 = identity(G), w2 = identity(G);
  w1[0].torus = {ta + one, ta};
  const GroupPoint gb = group_mul(G, b, g);
  w2[1] = gb[1];
  w2[2] = gb[2];
  GroupPoint w3 = group_mul(G, a, g);
  w3[0].torus = {tb + one, tb};
  return SumWitness{{w1, w2, w3}, three_factor_systems(f)};
}

}  // namespace retset
