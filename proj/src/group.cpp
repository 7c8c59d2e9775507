#include "retset/group.hpp"

#include "retset/errors.hpp"

#include <sstream>

namespace retset {

Component Component::torus(unsigned dim) {
  if (dim == 0) throw DomainError("torus dimension must be positive");
  Component c;
  c.kind = Kind::Torus;
  c.dim = dim;
  return c;
}

Component Component::elliptic(const EllipticCurve& e) {
  Component c;
  c.kind = Kind::Curve;
  c.curve = e;
  return c;
}

AmbientGroup::AmbientGroup(FieldPtr coeffs, std::vector<Component> comps) : coeffs_(std::move(coeffs)), comps_(std::move(comps)) {
  if (comps_.empty()) throw DomainError("ambient group needs at least one component");
  for (const auto& c : comps_) {
    if (c.is_curve()) {
      sym_.emplace_back(SymCurve(*c.curve, coeffs_));
    } else {
      sym_.emplace_back();
    }
  }
}

bool AmbientGroup::has_curves() const noexcept {
  for (const auto& c : comps_)
    if (c.is_curve()) return true;
  return false;
}

const SymCurve& AmbientGroup::sym_curve(std::size_t i) const {
  if (!sym_.at(i)) throw DomainError("component is not a curve");
  return *sym_[i];
}

GroupPoint identity(const AmbientGroup& G) {
  GroupPoint g(G.size());
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i].is_curve()) {
      g[i].curve = SymPoint::infinity();
    } else {
      g[i].torus.assign(G[i].dim, RatFunc::constant(G.coeffs(), G.coeffs()->one()));
    }
  }
  return g;
}

GroupPoint group_add(const AmbientGroup& G, const GroupPoint& a, const GroupPoint& b) {
  GroupPoint r(G.size());
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i].is_curve()) {
      r[i].curve = G.sym_curve(i).add(a[i].curve, b[i].curve);
    } else {
      for (unsigned j = 0; j < G[i].dim; ++j) r[i].torus.push_back(a[i].torus[j] * b[i].torus[j]);
    }
  }
  return r;
}

GroupPoint group_neg(const AmbientGroup& G, const GroupPoint& a) {
  GroupPoint r(G.size());
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i].is_curve()) {
      r[i].curve = G.sym_curve(i).neg(a[i].curve);
    } else {
      for (const auto& c : a[i].torus) r[i].torus.push_back(c.inverse());
    }
  }
  return r;
}

GroupPoint group_mul(const AmbientGroup& G, const BigInt& n, const GroupPoint& g) {
  GroupPoint r(G.size());
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i].is_curve()) {
      r[i].curve = G.sym_curve(i).mul(n, g[i].curve);
    } else {
      for (const auto& c : g[i].torus) r[i].torus.push_back(c.pow(n));
    }
  }
  return r;
}

void validate_point(const AmbientGroup& G, const GroupPoint& g) {
  if (g.size() != G.size()) throw DomainError("point has the wrong number of components");
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i].is_curve()) {
      const auto& P = g[i].curve;
      if (P.inf) continue;
      const auto& e = *G[i].curve;
      const RatFunc rhs = P.x * P.x * P.x + RatFunc::constant(G.coeffs(), G.coeffs()->from_int(e.A())) * P.x +
                          RatFunc::constant(G.coeffs(), G.coeffs()->from_int(e.B()));
      // y^2 = c^2 D^(2h+1); only checked directly when h = 0.
      if (P.h == 0) {
        if (!ratfunc_eq(P.c * P.c * RatFunc(P.D), rhs).equal) throw DomainError("point is not on the curve");
      } else if (!G.sym_curve(i).on_curve(P)) {
        throw DomainError("point is not on the curve");
      }
    } else {
      if (g[i].torus.size() != G[i].dim) throw DomainError("torus coordinate count mismatch");
      for (const auto& c : g[i].torus)
        if (c.is_zero()) throw DomainError("torus coordinate is zero");
    }
  }
}

namespace {

BigInt height(const RatFunc& f) {
  BigInt a = f.num().degree(), b = f.den().degree();
  if (a < 0) a = 0;
  return a > b ? a : b;
}

}  // namespace

Heights heights_of(const AmbientGroup& G, const GroupPoint& g) {
  Heights h(G.size());
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i].is_curve()) {
      const auto& P = g[i].curve;
      if (P.inf) {
        h[i] = {0, 0};
      } else {
        const BigInt dD = P.D.degree();
        h[i] = {height(P.x), height(P.c) + P.h * dD + (dD + 1) / 2};
      }
    } else {
      for (const auto& c : g[i].torus) h[i].push_back(height(c));
    }
  }
  return h;
}

Heights heights_mul(const AmbientGroup& G, const Heights& h, const BigInt& n) {
  Heights r = h;
  const BigInt an = n < 0 ? BigInt(-n) : n;
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i].is_curve()) {
      if (an == 0) {
        r[i] = {0, 0};
      } else {
        // x(nP) = f_n(x)/g_n(x) with deg f_n = n^2; y(nP) = y R(x) with deg R <= 3n^2/2.
        const BigInt n2 = an * an;
        r[i] = {n2 * h[i][0], h[i][1] + (3 * n2 + 1) / 2 * h[i][0]};
      }
    } else {
      for (auto& v : r[i]) v *= an;
    }
  }
  return r;
}

Heights heights_add(const AmbientGroup& G, const Heights& a, const Heights& b) {
  Heights r = a;
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i].is_curve()) {
      const BigInt& x1 = a[i][0];
      const BigInt& y1 = a[i][1];
      const BigInt& x2 = b[i][0];
      const BigInt& y2 = b[i][1];
      const BigInt lambda = x1 + x2 + y1 + y2;
      const BigInt x3 = 2 * lambda + x1 + x2;
      r[i] = {x3, lambda + x1 + x3 + y1};
    } else {
      for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] = a[i][j] + b[i][j];
    }
  }
  return r;
}

BigInt height_total(const Heights& h) {
  BigInt s = 0;
  for (const auto& comp : h)
    for (const auto& v : comp) s += v;
  return s;
}

SpecializedGroup::SpecializedGroup(const AmbientGroup& G, FieldPtr target) : G_(G), target_(std::move(target)) {
  for (const auto& c : G.components()) {
    if (c.is_curve()) {
      curves_.emplace_back(CurveOver(*c.curve, target_));
    } else {
      curves_.emplace_back();
    }
  }
}

FqGroupPoint SpecializedGroup::identity() const {
  FqGroupPoint g(G_.size());
  for (std::size_t i = 0; i < G_.size(); ++i)
    if (!G_[i].is_curve()) g[i].torus.assign(G_[i].dim, target_->one());
  return g;
}

FqGroupPoint SpecializedGroup::add(const FqGroupPoint& a, const FqGroupPoint& b) const {
  FqGroupPoint r(G_.size());
  for (std::size_t i = 0; i < G_.size(); ++i) {
    if (G_[i].is_curve()) {
      r[i].curve = curves_[i]->add(a[i].curve, b[i].curve);
    } else {
      r[i].torus.resize(G_[i].dim);
      for (unsigned j = 0; j < G_[i].dim; ++j) r[i].torus[j] = target_->mul(a[i].torus[j], b[i].torus[j]);
    }
  }
  return r;
}

FqGroupPoint SpecializedGroup::neg(const FqGroupPoint& a) const {
  FqGroupPoint r(G_.size());
  for (std::size_t i = 0; i < G_.size(); ++i) {
    if (G_[i].is_curve()) {
      r[i].curve = curves_[i]->neg(a[i].curve);
    } else {
      for (const auto& c : a[i].torus) r[i].torus.push_back(target_->inv(c));
    }
  }
  return r;
}

FqGroupPoint SpecializedGroup::mul(const BigInt& n, const FqGroupPoint& a) const {
  FqGroupPoint r(G_.size());
  for (std::size_t i = 0; i < G_.size(); ++i) {
    if (G_[i].is_curve()) {
      r[i].curve = curves_[i]->mul(n, a[i].curve);
    } else {
      for (const auto& c : a[i].torus) r[i].torus.push_back(target_->pow(c, n));
    }
  }
  return r;
}

FqGroupPoint SpecializedGroup::specialize(const GroupPoint& g, const Specialization& s) const {
  FqGroupPoint r(G_.size());
  for (std::size_t i = 0; i < G_.size(); ++i) {
    if (G_[i].is_curve()) {
      r[i].curve = G_.sym_curve(i).specialize(g[i].curve, s);
    } else {
      for (const auto& c : g[i].torus) {
        const FqElem v = retset::specialize(c, s);
        if (target_->is_zero(v)) throw BadSpecialization("torus coordinate vanishes at theta");
        r[i].torus.push_back(v);
      }
    }
  }
  return r;
}

std::string format_point(const AmbientGroup& G, const GroupPoint& g) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (i) os << ", ";
    if (G[i].is_curve()) {
      const auto& P = g[i].curve;
      if (P.inf) {
        os << 'O';
      } else {
        os << "(x=" << P.x.str() << ", y=(" << P.c.str() << ")";
        if (P.h != 0) os << "*D^" << P.h.str();
        os << "*sqrt(" << P.D.str() << "))";
      }
    } else {
      for (std::size_t j = 0; j < g[i].torus.size(); ++j) os << (j ? ", " : "") << g[i].torus[j].str();
    }
  }
  os << ')';
  return os.str();
}

}  // namespace retset
