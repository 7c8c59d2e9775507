#include "retset/good_coset.hpp"

#include "retset/bigint.hpp"
#include "retset/errors.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

namespace retset {

namespace {

std::string vec_str(const IntVec& v) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
  return out + ")";
}

std::int64_t floor_div64(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div64(std::int64_t a, std::int64_t b) { return -floor_div64(-a, b); }

std::int64_t mod64(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

/// n_i = 2^w n_j along an edge.
struct Edge {
  unsigned to;
  int w;
};

std::vector<std::vector<Edge>> relation_graph(unsigned d, const std::vector<Requirement>& reqs) {
  std::vector<std::vector<Edge>> adj(d);
  for (const auto& r : reqs) {
    if (r.kind != Requirement::Kind::Eq && r.kind != Requirement::Kind::Double) continue;
    const int w = r.kind == Requirement::Kind::Double ? 1 : 0;
    adj[r.i - 1].push_back({r.j - 1, w});
    adj[r.j - 1].push_back({r.i - 1, -w});
  }
  return adj;
}

struct Component {
  std::vector<unsigned> nodes;
  std::vector<int> k;  // log2 scale per node, indexed like nodes
  bool consistent = true;
};

std::vector<Component> components(unsigned d, const std::vector<std::vector<Edge>>& adj) {
  std::vector<int> k(d, 0);
  std::vector<int> comp(d, -1);
  std::vector<Component> out;
  for (unsigned s = 0; s < d; ++s) {
    if (comp[s] >= 0) continue;
    Component c;
    std::queue<unsigned> q;
    q.push(s);
    comp[s] = static_cast<int>(out.size());
    k[s] = 0;
    while (!q.empty()) {
      const unsigned u = q.front();
      q.pop();
      c.nodes.push_back(u);
      for (const auto& e : adj[u]) {
        // n_u = 2^w n_to, so k_to = k_u - w.
        const int kt = k[u] - e.w;
        if (comp[e.to] < 0) {
          comp[e.to] = comp[s];
          k[e.to] = kt;
          q.push(e.to);
        } else if (k[e.to] != kt) {
          c.consistent = false;
        }
      }
    }
    std::sort(c.nodes.begin(), c.nodes.end());
    const int kmin = std::accumulate(c.nodes.begin(), c.nodes.end(), k[c.nodes[0]], [&](int m, unsigned u) { return std::min(m, k[u]); });
    for (unsigned u : c.nodes) c.k.push_back(k[u] - kmin);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

bool Requirement::holds(const IntVec& v) const {
  switch (kind) {
    case Kind::Zero: return v[i - 1] == 0;
    case Kind::Mult: return v[i - 1] % D == 0;
    case Kind::Eq: return v[i - 1] == v[j - 1];
    case Kind::Double: return v[i - 1] == 2 * v[j - 1];
  }
  return false;
}

std::string Requirement::str() const {
  switch (kind) {
    case Kind::Zero: return "zero(" + std::to_string(i) + ")";
    case Kind::Mult: return "mult(" + std::to_string(i) + "," + std::to_string(D) + ")";
    case Kind::Eq: return "eq(" + std::to_string(i) + "," + std::to_string(j) + ")";
    case Kind::Double: return "double(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  return "";
}

GoodSubgroup::GoodSubgroup(unsigned d, std::vector<Requirement> reqs) : d_(d), reqs_(std::move(reqs)) {
  if (d == 0 || d > 60) throw DomainError("dimension must be in 1..60");
  for (const auto& r : reqs_) {
    if (r.i < 1 || r.i > d || r.j < 1 || r.j > d) throw DomainError("requirement " + r.str() + " has an index outside 1.." + std::to_string(d));
    if (r.kind == Requirement::Kind::Mult && r.D < 1) throw DomainError("requirement " + r.str() + " needs D >= 1");
  }
  gens_ = canonicalize(*this);
}

bool GoodSubgroup::contains(const IntVec& v) const {
  if (v.size() != d_) throw DomainError("dimension mismatch");
  return std::all_of(reqs_.begin(), reqs_.end(), [&](const Requirement& r) { return r.holds(v); });
}

bool GoodSubgroup::span_contains(const IntVec& v) const {
  if (v.size() != d_) throw DomainError("dimension mismatch");
  std::vector<bool> used(d_, false);
  for (const auto& g : gens_) {
    std::int64_t x = 0;
    bool have = false;
    for (unsigned u = 0; u < d_; ++u) {
      if (g.eta[u] == 0) continue;
      used[u] = true;
      const std::int64_t step = g.D * g.eta[u];
      if (v[u] % step != 0) return false;
      if (!have) {
        x = v[u] / step;
        have = true;
      } else if (v[u] / step != x) {
        return false;
      }
    }
  }
  for (unsigned u = 0; u < d_; ++u)
    if (!used[u] && v[u] != 0) return false;
  return true;
}

std::vector<Generator> canonicalize(const GoodSubgroup& H) {
  const unsigned d = H.dim();
  const auto& reqs = H.requirements();
  std::vector<Generator> out;
  for (const auto& c : components(d, relation_graph(d, reqs))) {
    if (!c.consistent) continue;
    bool zero = false;
    std::int64_t L = 1;
    for (const auto& r : reqs) {
      const auto it = std::find(c.nodes.begin(), c.nodes.end(), r.i - 1);
      if (it == c.nodes.end()) continue;
      const int k = c.k[it - c.nodes.begin()];
      if (r.kind == Requirement::Kind::Zero) zero = true;
      if (r.kind == Requirement::Kind::Mult) {
        // D | 2^k x  iff  D / gcd(D, 2^k) | x.
        const std::int64_t need = r.D / std::gcd(r.D, std::int64_t{1} << std::min(k, 62));
        L = std::lcm(L, need);
      }
    }
    if (zero) continue;
    Generator g{L, IntVec(d, 0)};
    for (std::size_t t = 0; t < c.nodes.size(); ++t) g.eta[c.nodes[t]] = std::int64_t{1} << c.k[t];
    out.push_back(std::move(g));
  }
  return out;
}

std::string to_string(const std::vector<Generator>& gens) {
  std::string out = "[";
  for (std::size_t k = 0; k < gens.size(); ++k) out += (k ? ", " : "") + std::to_string(gens[k].D) + "*" + vec_str(gens[k].eta);
  return out + "]";
}

GoodCoset::GoodCoset(IntVec b, IntVec r, GoodSubgroup h) : base(std::move(b)), rect(std::move(r)), H(std::move(h)) {
  if (base.size() != H.dim() || rect.size() != H.dim()) throw DomainError("coset data has mismatched dimensions");
  for (auto m : rect)
    if (m < 0) throw DomainError("rectangle bounds must be nonnegative");
}

bool GoodCoset::member(const IntVec& v) const {
  if (v.size() != dim()) throw DomainError("dimension mismatch");
  IntVec diff(dim());
  for (unsigned u = 0; u < dim(); ++u) {
    if (v[u] < rect[u] || v[u] < 0) return false;
    diff[u] = v[u] - base[u];
  }
  return H.contains(diff);
}

std::vector<IntVec> GoodCoset::enumerate(std::int64_t W) const {
  const unsigned d = dim();
  const auto& gens = H.canonical();
  std::vector<bool> used(d, false);
  std::vector<std::pair<std::int64_t, std::int64_t>> range;
  for (const auto& g : gens) {
    std::int64_t lo = std::numeric_limits<std::int64_t>::min() / 4, hi = std::numeric_limits<std::int64_t>::max() / 4;
    for (unsigned u = 0; u < d; ++u) {
      if (g.eta[u] == 0) continue;
      used[u] = true;
      const std::int64_t step = g.D * g.eta[u];
      lo = std::max(lo, ceil_div64(std::max<std::int64_t>(rect[u], 0) - base[u], step));
      hi = std::min(hi, floor_div64(W - base[u], step));
    }
    if (lo > hi) return {};
    range.push_back({lo, hi});
  }
  for (unsigned u = 0; u < d; ++u)
    if (!used[u] && (base[u] < std::max<std::int64_t>(rect[u], 0) || base[u] > W)) return {};
  std::vector<IntVec> out;
  std::vector<std::int64_t> x(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) x[k] = range[k].first;
  while (true) {
    IntVec v = base;
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (unsigned u = 0; u < d; ++u) v[u] += x[k] * gens[k].D * gens[k].eta[u];
    out.push_back(std::move(v));
    std::size_t k = gens.size();
    while (k > 0 && x[k - 1] == range[k - 1].second) {
      x[k - 1] = range[k - 1].first;
      --k;
    }
    if (k == 0) break;
    ++x[k - 1];
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool GoodCoset::empty() const { return !intersect(*this, *this).has_value(); }

std::string GoodCoset::str() const {
  std::string out = "coset base=" + vec_str(base) + " rect=" + vec_str(rect) + " req=[";
  const auto& reqs = H.requirements();
  for (std::size_t k = 0; k < reqs.size(); ++k) out += (k ? ", " : "") + reqs[k].str();
  return out + "]";
}

namespace {

/// Integer points of a system of shifted requirements: each requirement holds for v - shift.
struct Shifted {
  Requirement req;
  const IntVec* shift;
};

std::optional<IntVec> solve(unsigned d, const std::vector<Shifted>& cons, const IntVec& lower) {
  std::vector<Requirement> plain;
  for (const auto& c : cons) plain.push_back(c.req);
  const auto adj = relation_graph(d, plain);
  IntVec result(d, 0);
  for (const auto& comp : components(d, adj)) {
    // Root at a node of least scale so that every s_u = 2^(k_u) is a positive integer.
    unsigned root = comp.nodes[0];
    for (std::size_t t = 0; t < comp.nodes.size(); ++t)
      if (comp.k[t] == 0) {
        root = comp.nodes[t];
        break;
      }
    std::vector<Rational> s(d, 0), t(d, 0);
    std::vector<bool> seen(d, false);
    std::queue<unsigned> q;
    q.push(root);
    seen[root] = true;
    s[root] = 1;
    std::optional<Rational> fixed;
    bool infeasible = false;
    auto pin = [&](const Rational& coef, const Rational& rhs) {
      // coef * r = rhs
      if (coef == 0) {
        if (rhs != 0) infeasible = true;
        return;
      }
      const Rational r = rhs / coef;
      if (fixed && *fixed != r) infeasible = true;
      fixed = r;
    };
    // Spanning tree first, then every relation as a check.
    while (!q.empty()) {
      const unsigned u = q.front();
      q.pop();
      for (const auto& c : cons) {
        const auto& r = c.req;
        if (r.kind != Requirement::Kind::Eq && r.kind != Requirement::Kind::Double) continue;
        const unsigned a = r.i - 1, b = r.j - 1;
        const std::int64_t m = r.kind == Requirement::Kind::Double ? 2 : 1;
        // v_a = m v_b + (shift_a - m shift_b)
        const Rational off = (*c.shift)[a] - m * (*c.shift)[b];
        if (a == u && !seen[b]) {
          s[b] = s[u] / m;
          t[b] = (t[u] - off) / m;
          seen[b] = true;
          q.push(b);
        } else if (b == u && !seen[a]) {
          s[a] = m * s[u];
          t[a] = m * t[u] + off;
          seen[a] = true;
          q.push(a);
        }
      }
    }
    std::vector<std::pair<std::int64_t, std::pair<unsigned, std::int64_t>>> congruences;  // (D, (u, residue))
    for (const auto& c : cons) {
      const auto& r = c.req;
      const unsigned a = r.i - 1;
      if (!seen[a]) continue;
      switch (r.kind) {
        case Requirement::Kind::Zero: pin(s[a], (*c.shift)[a] - t[a]); break;
        case Requirement::Kind::Mult: congruences.push_back({r.D, {a, mod64((*c.shift)[a], r.D)}}); break;
        default: {
          const unsigned b = r.j - 1;
          const std::int64_t m = r.kind == Requirement::Kind::Double ? 2 : 1;
          const Rational off = (*c.shift)[a] - m * (*c.shift)[b];
          pin(s[a] - m * s[b], m * t[b] + off - t[a]);
        }
      }
    }
    if (infeasible) return std::nullopt;

    auto valid = [&](const BigInt& r) {
      for (unsigned u : comp.nodes) {
        const Rational v = s[u] * r + t[u];
        if (!is_integer(v)) return false;
      }
      for (const auto& [D, ur] : congruences) {
        const BigInt v = boost::multiprecision::numerator(Rational(s[ur.first] * r + t[ur.first]));
        if (mod_floor(v - ur.second, BigInt(D)) != 0) return false;
      }
      return true;
    };
    BigInt r;
    if (fixed) {
      if (!is_integer(*fixed)) return std::nullopt;
      r = boost::multiprecision::numerator(*fixed);
      if (!valid(r)) return std::nullopt;
      for (unsigned u : comp.nodes)
        if (s[u] * r + t[u] < lower[u]) return std::nullopt;
    } else {
      BigInt P = 1;
      for (const auto& [D, ur] : congruences) P = P / boost::multiprecision::gcd(P, BigInt(D)) * D;
      for (unsigned u : comp.nodes) {
        const BigInt den = boost::multiprecision::denominator(t[u]);
        P = P / boost::multiprecision::gcd(P, den) * den;
        P *= boost::multiprecision::numerator(s[u]);
      }
      if (P > 10'000'000) throw ResourceError("coset system period too large");
      bool found = false;
      for (r = 0; r < P; ++r)
        if (valid(r)) {
          found = true;
          break;
        }
      if (!found) return std::nullopt;
      // Least representative r + m P with every coordinate at or above its lower bound.
      std::optional<BigInt> m;
      for (unsigned u : comp.nodes) {
        const Rational need = (Rational(lower[u]) - t[u]) / s[u] - Rational(r);
        const Rational per = need / Rational(P);
        const BigInt k = -floor_div(-boost::multiprecision::numerator(per), boost::multiprecision::denominator(per));
        if (!m || k > *m) m = k;
      }
      r += *m * P;
    }
    for (unsigned u : comp.nodes) result[u] = static_cast<std::int64_t>(boost::multiprecision::numerator(Rational(s[u] * r + t[u])));
  }
  return result;
}

}  // namespace

std::optional<GoodCoset> intersect(const GoodCoset& A, const GoodCoset& B) {
  if (A.dim() != B.dim()) throw DomainError("dimension mismatch");
  const unsigned d = A.dim();
  std::vector<Shifted> cons;
  for (const auto& r : A.H.requirements()) cons.push_back({r, &A.base});
  for (const auto& r : B.H.requirements()) cons.push_back({r, &B.base});
  IntVec rect(d);
  for (unsigned u = 0; u < d; ++u) rect[u] = std::max({A.rect[u], B.rect[u], std::int64_t{0}});
  // Coordinates without any requirement are free; those still get a base at the rectangle corner.
  const auto point = solve(d, cons, rect);
  if (!point) return std::nullopt;
  std::vector<Requirement> reqs = A.H.requirements();
  for (const auto& r : B.H.requirements())
    if (std::find(reqs.begin(), reqs.end(), r) == reqs.end()) reqs.push_back(r);
  return GoodCoset(*point, rect, GoodSubgroup(d, reqs));
}

std::string to_string(const std::optional<GoodCoset>& c) { return c ? c->str() : "empty"; }

namespace {

IntVec parse_tuple(const std::string& s, std::size_t& pos) {
  IntVec out;
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  skip();
  if (pos >= s.size() || s[pos] != '(') throw ParseError("expected '(' in coset text");
  ++pos;
  while (true) {
    skip();
    std::size_t used = 0;
    try {
      out.push_back(std::stoll(s.substr(pos), &used));
    } catch (const std::exception&) {
      throw ParseError("expected an integer in coset text");
    }
    pos += used;
    skip();
    if (pos < s.size() && s[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < s.size() && s[pos] == ')') {
      ++pos;
      return out;
    }
    throw ParseError("expected ',' or ')' in coset text");
  }
}

}  // namespace

GoodCoset parse_coset(const std::string& text) {
  auto field = [&](const std::string& key) -> std::size_t {
    const auto at = text.find(key + "=");
    if (at == std::string::npos) throw ParseError("coset text lacks '" + key + "='");
    return at + key.size() + 1;
  };
  if (text.find("coset") == std::string::npos) throw ParseError("coset text must start with 'coset'");
  std::size_t pos = field("base");
  const IntVec base = parse_tuple(text, pos);
  pos = field("rect");
  const IntVec rect = parse_tuple(text, pos);
  pos = field("req");
  const auto open = text.find('[', pos), close = text.rfind(']');
  if (open == std::string::npos || close == std::string::npos || close < open) throw ParseError("requirements need [...]");
  std::vector<Requirement> reqs;
  const std::string body = text.substr(open + 1, close - open - 1);
  std::size_t k = 0;
  while (k < body.size()) {
    while (k < body.size() && (std::isspace(static_cast<unsigned char>(body[k])) || body[k] == ',')) ++k;
    if (k >= body.size()) break;
    const auto paren = body.find('(', k);
    if (paren == std::string::npos) throw ParseError("bad requirement in coset text");
    std::string name = body.substr(k, paren - k);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
    std::size_t p = paren;
    const IntVec args = parse_tuple(body, p);
    k = p;
    auto arity = [&](std::size_t n) {
      if (args.size() != n) throw ParseError("requirement " + name + " takes " + std::to_string(n) + " arguments");
      for (auto a : args)
        if (a < 0) throw ParseError("requirement arguments must be nonnegative");
    };
    if (name == "zero") {
      arity(1);
      reqs.push_back(Requirement::zero(static_cast<unsigned>(args[0])));
    } else if (name == "mult") {
      arity(2);
      reqs.push_back(Requirement::mult(static_cast<unsigned>(args[0]), args[1]));
    } else if (name == "eq") {
      arity(2);
      reqs.push_back(Requirement::eq(static_cast<unsigned>(args[0]), static_cast<unsigned>(args[1])));
    } else if (name == "double") {
      arity(2);
      reqs.push_back(Requirement::twice(static_cast<unsigned>(args[0]), static_cast<unsigned>(args[1])));
    } else {
      throw ParseError("unknown requirement '" + name + "'");
    }
  }
  if (base.size() != rect.size()) throw ParseError("base and rect have different lengths");
  return GoodCoset(base, rect, GoodSubgroup(static_cast<unsigned>(base.size()), reqs));
}

}  // namespace retset
