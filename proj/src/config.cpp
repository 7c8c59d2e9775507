#include "retset/config.hpp"

#include "retset/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace retset {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<Section> split_sections(const std::string& text) {
  std::vector<Section> out;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']' && line.find(',') == std::string::npos) {
      out.push_back({trim(line.substr(1, line.size() - 2)), {}, {}});
      continue;
    }
    if (out.empty()) throw ParseError("line " + std::to_string(lineno) + ": content before the first section");
    out.back().lines.push_back(line);
    out.back().line_numbers.push_back(lineno);
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

std::pair<std::string, std::string> key_value(const std::string& line) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw ParseError("expected key = value: " + line);
  return {trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
}

/// "torus dim=2" -> {"dim": "2"}.
std::map<std::string, std::string> attributes(const std::string& rest) {
  std::map<std::string, std::string> out;
  std::istringstream in(rest);
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("expected name=value, got " + tok);
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

std::int64_t to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw ParseError("not an integer: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("not an integer: " + s);
  }
}

SparsePoly as_polynomial(const RatFunc& r) {
  if (r.den().degree() != 0) throw ParseError("expected a polynomial in t: " + r.str());
  const FieldPtr& f = r.field();
  return r.num().scaled(f->inv(r.den().constant_term()));
}

}  // namespace

SymPoint parse_curve_point(const std::string& text, const EllipticCurve& e, const FieldPtr& f, const ConstTable& consts) {
  const std::string s = trim(text);
  if (s == "O") return SymPoint::infinity();
  const auto parts = split_top_level(s, ';');
  if (parts.size() > 2) throw ParseError("curve point has too many ';' parts: " + s);
  const RatFunc A = RatFunc::constant(f, f->from_int(e.A()));
  const RatFunc B = RatFunc::constant(f, f->from_int(e.B()));

  const auto coords = split_top_level(parts[0], ',');
  if (coords.size() > 2) throw ParseError("curve point has too many coordinates: " + s);
  const RatFunc x = expr_to_ratfunc(parse_expr(coords[0]), f, consts);
  const RatFunc rhs = x * x * x + A * x + B;

  SymPoint P;
  P.inf = false;
  P.x = x;
  P.h = 0;
  if (coords.size() == 2) {
    if (parts.size() == 2) throw ParseError("give either a rational y or an adjoined root, not both: " + s);
    P.c = expr_to_ratfunc(parse_expr(coords[1]), f, consts);
    P.D = SparsePoly::constant(f, f->one());
    if (!ratfunc_eq(P.c * P.c, rhs).equal) throw DomainError("point is not on the curve: " + s);
    return P;
  }
  if (parts.size() == 1) {
    P.c = RatFunc::constant(f, f->one());
    P.D = as_polynomial(rhs);
    return P;
  }
  std::string adj = parts[1];
  if (adj.rfind("adjoin", 0) != 0) throw ParseError("expected 'adjoin sqrt(...)': " + adj);
  adj = trim(adj.substr(6));
  bool negative = false;
  if (!adj.empty() && adj[0] == '-') {
    negative = true;
    adj = trim(adj.substr(1));
  }
  if (adj.rfind("sqrt(", 0) != 0 || adj.back() != ')') throw ParseError("expected sqrt(<polynomial>): " + adj);
  const RatFunc rad = expr_to_ratfunc(parse_expr(adj.substr(5, adj.size() - 6)), f, consts);
  P.D = as_polynomial(rad);
  P.c = RatFunc::constant(f, negative ? f->neg(f->one()) : f->one());
  if (!ratfunc_eq(RatFunc(P.D), rhs).equal) throw DomainError("radicand is not x^3 + A x + B: " + s);
  return P;
}

GroupConfig parse_group_config(const std::string& text) {
  GroupConfig cfg;
  const auto sections = split_sections(text);
  std::uint32_t p = 0;
  unsigned k = 1;
  std::vector<std::pair<std::string, std::string>> const_defs;
  const Section* point_section = nullptr;
  const Section* group_section = nullptr;

  for (const auto& sec : sections) {
    if (sec.name == "field") {
      for (const auto& line : sec.lines) {
        auto [key, val] = key_value(line);
        if (key == "p") {
          p = static_cast<std::uint32_t>(to_int(val));
        } else if (key == "k") {
          k = static_cast<unsigned>(to_int(val));
        } else {
          const_defs.emplace_back(key, val);
        }
      }
    } else if (sec.name == "group") {
      group_section = &sec;
    } else if (sec.name == "point") {
      point_section = &sec;
    } else {
      throw ParseError("unknown section [" + sec.name + "]");
    }
  }
  if (!group_section) throw ParseError("missing [group] section");
  if (p == 0) {
    // The prime may also come from the curve lines alone.
    for (const auto& line : group_section->lines) {
      std::istringstream in(line);
      std::string kind;
      in >> kind;
      std::string rest;
      std::getline(in, rest);
      auto attrs = attributes(rest);
      if (attrs.count("p")) p = static_cast<std::uint32_t>(to_int(attrs["p"]));
    }
  }
  if (p == 0) throw ParseError("the prime p is not given");
  if (!is_prime(p)) throw ParseError("p is not prime");
  cfg.coeffs = FieldCtx::make(p, k);

  for (const auto& [name, val] : const_defs) {
    if (name == "t") throw ParseError("t is reserved for the function-field variable");
    cfg.consts[name] = val == "generator" ? least_generator(*cfg.coeffs) : cfg.coeffs->parse(val);
  }

  for (const auto& line : group_section->lines) {
    std::istringstream in(line);
    std::string kind;
    in >> kind;
    std::string rest;
    std::getline(in, rest);
    auto attrs = attributes(rest);
    if (attrs.count("p") && static_cast<std::uint32_t>(to_int(attrs["p"])) != p)
      throw ParseError("component prime disagrees with the field: " + line);
    if (kind == "torus") {
      if (!attrs.count("dim")) throw ParseError("torus needs dim=: " + line);
      const auto dim = to_int(attrs["dim"]);
      if (dim <= 0) throw ParseError("torus dimension must be positive: " + line);
      cfg.components.push_back(Component::torus(static_cast<unsigned>(dim)));
    } else if (kind == "curve") {
      const std::int64_t A = attrs.count("A") ? to_int(attrs["A"]) : 0;
      const std::int64_t B = attrs.count("B") ? to_int(attrs["B"]) : 0;
      cfg.components.push_back(Component::elliptic(EllipticCurve(p, A, B)));
    } else {
      throw ParseError("unknown component kind: " + kind);
    }
  }
  if (cfg.components.empty()) throw ParseError("[group] lists no components");

  if (point_section) {
    if (point_section->lines.size() != cfg.components.size())
      throw ParseError("[point] needs one line per component");
    GroupPoint g(cfg.components.size());
    for (std::size_t i = 0; i < cfg.components.size(); ++i) {
      auto [kind, val] = key_value(point_section->lines[i]);
      const Component& c = cfg.components[i];
      if (kind != (c.is_curve() ? "curve" : "torus"))
        throw ParseError("[point] line " + std::to_string(i + 1) + " does not match component kind");
      if (c.is_curve()) {
        g[i].curve = parse_curve_point(val, *c.curve, cfg.coeffs, cfg.consts);
      } else {
        for (const auto& piece : split_top_level(val, ','))
          g[i].torus.push_back(expr_to_ratfunc(parse_expr(piece), cfg.coeffs, cfg.consts));
      }
    }
    validate_point(cfg.group(), g);
    cfg.point = std::move(g);
  }
  return cfg;
}

GroupConfig load_group_config(const std::string& path) { return parse_group_config(read_text_file(path)); }

}  // namespace retset
