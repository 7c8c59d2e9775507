#include "retset/set_algebra.hpp"

#include "retset/errors.hpp"
#include "retset/recurrence.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace retset {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

BigInt qpow(const BigInt& q, unsigned j, std::uint64_t m) { return big_pow(q, (std::uint64_t{1} << j) * m); }

Rational row_value(const BigInt& q, const std::vector<Rational>& row, std::uint64_t m) {
  Rational v = 0;
  for (unsigned j = 0; j < row.size(); ++j)
    if (row[j] != 0) v += row[j] * qpow(q, j, m);
  return v;
}

/// Index of the last nonzero coefficient, or -1.
int lead_index(const std::vector<Rational>& row) {
  for (int j = static_cast<int>(row.size()) - 1; j >= 0; --j)
    if (row[j] != 0) return j;
  return -1;
}

/// Smallest m such that the row is strictly increasing from m on. The leading coefficient must be positive.
/// Uses c_r (q^(2^r) - 1) q^(2^r m) > sum_{j<r} |c_j| (q^(2^j) - 1) q^(2^j m), which once true stays true.
std::uint64_t monotone_from(const BigInt& q, const std::vector<Rational>& row) {
  const int r = lead_index(row);
  if (r <= 0) return 0;
  for (std::uint64_t m = 0; m < 100000; ++m) {
    const Rational lhs = row[r] * (qpow(q, r, 1) - 1) * qpow(q, r, m);
    Rational rhs = 0;
    for (int j = 0; j < r; ++j)
      if (row[j] != 0) rhs += abs(row[j]) * (qpow(q, j, 1) - 1) * qpow(q, j, m);
    if (lhs > rhs) return m;
  }
  throw ResourceError("growth bound search did not terminate");
}

PSetTerm negated(const PSetTerm& T) {
  PSetTerm out = T;
  out.c0 = -out.c0;
  for (auto& row : out.c)
    for (auto& x : row) x = -x;
  return out;
}

bool positive_orientation(const PSetTerm& T) {
  for (const auto& row : T.c) {
    const int j = lead_index(row);
    if (j >= 0) return row[j] > 0;
  }
  return true;
}

/// Visits, in lexicographic order of the tuple, every tuple whose value is <= U. Every nonzero row of T must
/// have a positive leading coefficient. visit returns true to stop.
template <class Visit>
void enumerate_upto(const PSetTerm& T, const Rational& U, Visit visit) {
  const unsigned d = T.d();
  std::vector<Rational> mins(d, 0);
  std::vector<std::uint64_t> mono(d, 0);
  std::vector<bool> zero(d, false);
  for (unsigned i = 0; i < d; ++i) {
    zero[i] = lead_index(T.c[i]) < 0;
    if (zero[i]) continue;
    mono[i] = monotone_from(T.q, T.c[i]);
    mins[i] = row_value(T.q, T.c[i], 0);
    for (std::uint64_t m = 1; m <= mono[i]; ++m) mins[i] = std::min(mins[i], row_value(T.q, T.c[i], m));
  }
  Rational total_min = 0;
  for (const auto& m : mins) total_min += m;

  std::vector<std::vector<std::pair<std::uint64_t, Rational>>> table(d);
  for (unsigned i = 0; i < d; ++i) {
    if (zero[i]) {
      table[i].push_back({0, Rational(0)});
      continue;
    }
    const Rational bound = U - T.c0 - (total_min - mins[i]);
    for (std::uint64_t m = 0;; ++m) {
      const Rational v = row_value(T.q, T.c[i], m);
      if (v <= bound) table[i].push_back({m, v});
      else if (m >= mono[i]) break;
    }
  }
  std::vector<Rational> suffix(d + 1, 0);
  for (unsigned i = d; i-- > 0;) suffix[i] = suffix[i + 1] + mins[i];

  std::vector<std::uint64_t> tuple(d, 0);
  bool stop = false;
  auto rec = [&](auto&& self, unsigned i, const Rational& partial) -> void {
    if (stop || T.c0 + partial + suffix[i] > U) return;
    if (i == d) {
      stop = visit(T.c0 + partial, tuple);
      return;
    }
    for (const auto& [m, v] : table[i]) {
      tuple[i] = m;
      self(self, i + 1, partial + v);
      if (stop) return;
    }
  };
  rec(rec, 0, Rational(0));
}

BigInt as_integer(const Rational& v) {
  if (!is_integer(v)) throw InvalidTerm("term takes the non-integer value " + to_string(v));
  return numerator(v);
}

bool is_power_of(BigInt x, const BigInt& base) {
  if (x < 1) return false;
  while (x % base == 0) x /= base;
  return x == 1;
}

BigInt lcm_big(const BigInt& a, const BigInt& b) { return a / boost::multiprecision::gcd(a, b) * b; }

}  // namespace

Rational PSetTerm::value(const std::vector<std::uint64_t>& n) const {
  if (n.size() != d()) throw DomainError("tuple length does not match the term dimension");
  Rational v = c0;
  for (unsigned i = 0; i < d(); ++i) v += row_value(q, c[i], n[i]);
  return v;
}

unsigned PSetTerm::effective_r() const {
  int r = 0;
  for (const auto& row : c) r = std::max(r, lead_index(row));
  return static_cast<unsigned>(r);
}

void validate(const PSetTerm& T, std::uint32_t p) {
  if (T.q < 2) throw InvalidTerm("q must be at least 2");
  if (!is_power_of(T.q, BigInt(p))) throw InvalidTerm("q = " + T.q.str() + " is not a power of " + std::to_string(p));
  if (T.c.empty()) throw InvalidTerm("term needs at least one row");
  const std::size_t width = T.c.front().size();
  if (width == 0) throw InvalidTerm("rows need at least one coefficient");
  for (const auto& row : T.c)
    if (row.size() != width) throw InvalidTerm("rows must have equal length");

  const unsigned r = T.r();
  for (unsigned j = 0; j <= r; ++j) {
    BigInt bound = qpow(T.q, j, 1) - 1;
    for (unsigned s = 0; s <= r; ++s)
      if (s != j) bound *= qpow(T.q, j, 1) - qpow(T.q, s, 1);
    for (unsigned i = 0; i < T.d(); ++i)
      if (!is_integer(T.c[i][j] * bound))
        throw InvalidTerm("coefficient c_" + std::to_string(i + 1) + std::to_string(j) + " = " + to_string(T.c[i][j]) +
                          " violates the denominator bound");
  }

  // Integrality of every value. With D the common denominator, D * value mod D must vanish; each row's
  // contribution mod D is a function of q^n mod D, which is eventually periodic, and must be constant.
  BigInt D = denominator(T.c0);
  for (const auto& row : T.c)
    for (const auto& x : row) D = lcm_big(D, denominator(x));
  if (D == 1) return;
  const Period per = eventual_period_mod(LinearRecurrence{{-T.q, 1}, {1}}, D);
  BigInt total = numerator(Rational(T.c0 * D));
  for (unsigned i = 0; i < T.d(); ++i) {
    std::vector<BigInt> a;
    for (const auto& x : T.c[i]) a.push_back(numerator(Rational(x * D)));
    auto residue = [&](std::uint64_t n) {
      BigInt v = 0;
      for (unsigned j = 0; j < a.size(); ++j) v += a[j] * BigInt(boost::multiprecision::powm(T.q, BigInt((std::uint64_t{1} << j) * n), D));
      return mod_floor(v, D);
    };
    const BigInt base = residue(0);
    for (std::uint64_t n = 1; n < per.preperiod + per.period; ++n)
      if (residue(n) != base) throw InvalidTerm("term takes non-integer values (row " + std::to_string(i + 1) + ")");
    total += base;
  }
  if (mod_floor(total, D) != 0) throw InvalidTerm("term takes non-integer values");
}

std::string to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    default: return "unknown";
  }
}

bool certifiable(const PSetTerm& T) {
  int sign = 0;
  for (const auto& row : T.c) {
    const int j = lead_index(row);
    if (j < 0) continue;
    const int s = row[j] > 0 ? 1 : -1;
    if (sign != 0 && s != sign) return false;
    sign = s;
  }
  return true;
}

MemberVerdict pset_member(const BigInt& n, const PSetTerm& T, std::uint64_t bound) {
  MemberVerdict out;
  if (certifiable(T)) {
    const bool pos = positive_orientation(T);
    const PSetTerm S = pos ? T : negated(T);
    const Rational target = pos ? Rational(n) : Rational(-n);
    out.answer = Answer::No;
    enumerate_upto(S, target, [&](const Rational& v, const std::vector<std::uint64_t>& tuple) {
      if (v != target) return false;
      out.answer = Answer::Yes;
      out.witness = tuple;
      return true;
    });
    return out;
  }
  std::vector<std::uint64_t> tuple(T.d(), 0);
  const Rational target(n);
  while (true) {
    if (T.value(tuple) == target) {
      out.answer = Answer::Yes;
      out.witness = tuple;
      return out;
    }
    unsigned i = T.d();
    while (i > 0 && tuple[i - 1] == bound) tuple[--i] = 0;
    if (i == 0) break;
    ++tuple[i - 1];
  }
  out.answer = Answer::Unknown;
  out.searched = bound;
  return out;
}

std::vector<BigInt> pset_window(const PSetTerm& T, const BigInt& lo, const BigInt& hi) {
  if (!certifiable(T)) throw UndecidedError("term " + to_string(T) + " has leading coefficients of both signs");
  std::set<BigInt> vals;
  if (lo > hi) return {};
  const bool pos = positive_orientation(T);
  const PSetTerm S = pos ? T : negated(T);
  const Rational U = pos ? Rational(hi) : Rational(-lo);
  enumerate_upto(S, U, [&](const Rational& v, const std::vector<std::uint64_t>&) {
    const BigInt x = pos ? as_integer(v) : BigInt(-as_integer(v));
    if (x >= lo && x <= hi) vals.insert(x);
    return false;
  });
  return {vals.begin(), vals.end()};
}

bool APTerm::contains(const BigInt& n) const {
  if (delta == 0) return n == a;
  return mod_floor(n - a, delta) == 0;
}

SetExpr SetExpr::of(APTerm t) {
  SetExpr e;
  e.terms.emplace_back(std::move(t));
  return e;
}

SetExpr SetExpr::of(PSetTerm t) {
  SetExpr e;
  e.terms.emplace_back(std::move(t));
  return e;
}

MemberVerdict expr_member(const BigInt& n, const SetExpr& E, std::uint64_t bound) {
  MemberVerdict out;
  out.answer = Answer::No;
  if (E.domain == Domain::Naturals && n < 0) return out;
  if (E.removed.count(n)) return out;
  if (E.added.count(n)) {
    out.answer = Answer::Yes;
    return out;
  }
  bool unknown = false;
  for (const auto& t : E.terms) {
    if (const auto* ap = std::get_if<APTerm>(&t)) {
      if (ap->contains(n)) {
        out.answer = Answer::Yes;
        return out;
      }
      continue;
    }
    const MemberVerdict v = pset_member(n, std::get<PSetTerm>(t), bound);
    if (v.answer == Answer::Yes) return v;
    if (v.answer == Answer::Unknown) {
      unknown = true;
      out.searched = v.searched;
    }
  }
  if (unknown) out.answer = Answer::Unknown;
  return out;
}

std::vector<BigInt> window(const SetExpr& E, const BigInt& lo_in, const BigInt& hi) {
  BigInt lo = lo_in;
  if (E.domain == Domain::Naturals && lo < 0) lo = 0;
  if (lo > hi) return {};
  std::set<BigInt> vals;
  std::vector<const PSetTerm*> open;
  for (const auto& t : E.terms) {
    if (const auto* ap = std::get_if<APTerm>(&t)) {
      if (ap->delta == 0) {
        if (ap->a >= lo && ap->a <= hi) vals.insert(ap->a);
        continue;
      }
      const BigInt step = abs(ap->delta);
      for (BigInt x = lo + mod_floor(ap->a - lo, step); x <= hi; x += step) vals.insert(x);
      continue;
    }
    const auto& T = std::get<PSetTerm>(t);
    if (!certifiable(T)) {
      open.push_back(&T);
      continue;
    }
    for (auto& x : pset_window(T, lo, hi)) vals.insert(std::move(x));
  }
  for (const auto& x : E.added)
    if (x >= lo && x <= hi) vals.insert(x);
  if (!open.empty()) {
    for (BigInt n = lo; n <= hi; ++n) {
      if (vals.count(n) || E.removed.count(n)) continue;
      for (const PSetTerm* T : open) {
        const MemberVerdict v = pset_member(n, *T, 32);
        if (v.answer == Answer::Yes) {
          vals.insert(n);
          break;
        }
        if (v.answer == Answer::Unknown)
          throw UndecidedError("undecided element " + n.str() + ": term " + to_string(*T) +
                               " has mixed-sign leading coefficients (searched [0," + std::to_string(v.searched) + "]^d)");
      }
    }
  }
  for (const auto& x : E.removed) vals.erase(x);
  return {vals.begin(), vals.end()};
}

namespace {

/// Whether E has an element. Infinite terms always survive the finite removal set.
bool nonempty(const SetExpr& E) {
  if (!E.added.empty()) return true;
  const bool nat = E.domain == Domain::Naturals;
  for (const auto& t : E.terms) {
    if (const auto* ap = std::get_if<APTerm>(&t)) {
      if (ap->delta != 0) return true;
      if (!E.removed.count(ap->a) && (!nat || ap->a >= 0)) return true;
      continue;
    }
    const auto& T = std::get<PSetTerm>(t);
    const bool constant = std::all_of(T.c.begin(), T.c.end(), [](const auto& row) { return lead_index(row) < 0; });
    if (constant) {
      const BigInt v = as_integer(T.c0);
      if (!E.removed.count(v) && (!nat || v >= 0)) return true;
      continue;
    }
    if (!nat || !certifiable(T) || positive_orientation(T)) return true;
    // Decreasing term on N: finitely many nonnegative values.
    bool found = false;
    enumerate_upto(negated(T), Rational(0), [&](const Rational& v, const std::vector<std::uint64_t>&) {
      found = !E.removed.count(BigInt(-as_integer(v)));
      return found;
    });
    if (found) return true;
  }
  return false;
}

}  // namespace

SetExpr set_union(const SetExpr& A, const SetExpr& B) {
  if (A.domain != B.domain) throw DomainError("union of expressions with different domain tags");
  SetExpr out;
  out.domain = A.domain;
  out.terms = A.terms;
  out.terms.insert(out.terms.end(), B.terms.begin(), B.terms.end());
  out.added = A.added;
  out.added.insert(B.added.begin(), B.added.end());
  auto resolve = [&](const std::set<BigInt>& removed, const SetExpr& other) {
    for (const auto& x : removed) {
      const MemberVerdict v = expr_member(x, other);
      if (v.answer == Answer::Unknown) throw UndecidedError("undecided element " + x.str() + " while forming a union");
      if (v.answer == Answer::Yes) out.added.insert(x);
      else out.removed.insert(x);
    }
  };
  resolve(A.removed, B);
  resolve(B.removed, A);
  for (const auto& x : out.added) out.removed.erase(x);
  return out;
}

SetExpr affine(const BigInt& a, const BigInt& b, const SetExpr& E) {
  if (E.domain == Domain::Naturals && (a < 0 || b < 0))
    throw DomainError("affine maps of N-tagged sets need nonnegative a and b");
  SetExpr out;
  out.domain = E.domain;
  if (a == 0) {
    if (nonempty(E)) out.terms.emplace_back(APTerm{b, 0});
    return out;
  }
  for (const auto& t : E.terms) {
    if (const auto* ap = std::get_if<APTerm>(&t)) {
      out.terms.emplace_back(APTerm{a * ap->a + b, abs(a * ap->delta)});
      continue;
    }
    PSetTerm T = std::get<PSetTerm>(t);
    T.c0 = T.c0 * a + b;
    for (auto& row : T.c)
      for (auto& x : row) x *= a;
    out.terms.emplace_back(std::move(T));
  }
  for (const auto& x : E.added) out.added.insert(a * x + b);
  for (const auto& x : E.removed) out.removed.insert(a * x + b);
  if (E.domain == Domain::Naturals) {
    // Negative t with a t + b >= 0 were excluded from E but would reappear after the map.
    SetExpr unrestricted = E;
    unrestricted.domain = Domain::Integers;
    for (BigInt t = -(b / a); t < 0; ++t) {
      const MemberVerdict v = expr_member(t, unrestricted);
      if (v.answer == Answer::Unknown) throw UndecidedError("undecided element " + t.str() + " under an affine map");
      if (v.answer == Answer::Yes) {
        out.removed.insert(a * t + b);
        out.added.erase(a * t + b);
      }
    }
  }
  return out;
}

SetExpr intersect_nat(const SetExpr& E) {
  SetExpr out = E;
  out.domain = Domain::Naturals;
  std::erase_if(out.added, [](const BigInt& x) { return x < 0; });
  std::erase_if(out.removed, [](const BigInt& x) { return x < 0; });
  return out;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::PNormal: return "p-normal";
    case Classification::WidelyOnly: return "widely-p-normal-only";
    default: return "invalid";
  }
}

bool p_normal_term(const PSetTerm& T) {
  if (T.effective_r() != 0) return false;
  const BigInt m = T.q - 1;
  const Rational c0 = T.c0 * m;
  if (!is_integer(c0)) return false;
  BigInt sum = numerator(c0);
  for (const auto& row : T.c) {
    const Rational ci = row[0] * m;
    if (!is_integer(ci)) return false;
    sum += numerator(ci);
  }
  return mod_floor(sum, m) == 0;
}

Classification classify(const SetExpr& E, std::uint32_t p) {
  Classification out = Classification::PNormal;
  for (const auto& t : E.terms) {
    const auto* T = std::get_if<PSetTerm>(&t);
    if (!T) continue;
    try {
      validate(*T, p);
    } catch (const InvalidTerm&) {
      return Classification::Invalid;
    }
    if (!p_normal_term(*T)) out = Classification::WidelyOnly;
  }
  return out;
}

FiniteDifferenceReport equal_up_to_finite(const SetExpr& A, const SetExpr& B, const BigInt& lo, const BigInt& hi,
                                          const BigInt& threshold) {
  if (!(lo < hi)) throw DomainError("comparison window must have lo < hi");
  FiniteDifferenceReport rep{lo, hi, threshold, {}, true};
  const auto wa = window(A, lo, hi), wb = window(B, lo, hi);
  std::set_symmetric_difference(wa.begin(), wa.end(), wb.begin(), wb.end(), std::back_inserter(rep.differences));
  for (const auto& x : rep.differences)
    if (x >= threshold) rep.consistent = false;
  return rep;
}

PSetTerm ABTerm::to_pset() const {
  PSetTerm T;
  T.q = q;
  if (kind == Kind::A) {
    T.c0 = 0;
    T.c = {{Rational(x)}, {Rational(y)}};
  } else {
    T.c0 = Rational(x);
    T.c = {{Rational(y)}};
  }
  return T;
}

void validate(const ABTerm& t, std::uint32_t p) {
  const BigInt p0 = BigInt(p) * p;
  if (t.q <= 1 || !is_power_of(t.q, p0)) throw InvalidTerm("q must be a positive power of " + p0.str());
  if (t.kind == ABTerm::Kind::A) {
    if (!is_power_of(t.x, p0) || !is_power_of(t.y, p0)) throw InvalidTerm("q1 and q2 must be powers of " + p0.str());
  } else {
    if (t.x < 0) throw InvalidTerm("c0 must be nonnegative");
    if (t.y < 1) throw InvalidTerm("c1 must be positive");
  }
}

// ---------------------------------------------------------------------------------------------------------
// Text form

namespace {

class Cursor {
 public:
  explicit Cursor(const std::string& s) : s_(s) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  bool eat(const std::string& tok) {
    skip();
    if (s_.compare(i_, tok.size(), tok) == 0) {
      i_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& tok) {
    if (!eat(tok)) fail("expected '" + tok + "'");
  }
  /// Text up to (not including) the next character in stops.
  std::string until(const std::string& stops) {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && stops.find(s_[i_]) == std::string::npos) ++i_;
    std::string out = s_.substr(start, i_ - start);
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    if (out.empty()) fail("expected a number");
    return out;
  }
  Rational rational(const std::string& stops) {
    const std::string tok = until(stops);
    try {
      return parse_rational(tok);
    } catch (const std::exception&) {
      fail("bad number '" + tok + "'");
    }
  }
  BigInt integer(const std::string& stops) {
    const Rational r = rational(stops);
    if (!is_integer(r)) fail("expected an integer");
    return numerator(r);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(i_) + " in \"" + s_ + "\"");
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
};

std::set<BigInt> int_list(Cursor& cur) {
  std::set<BigInt> out;
  if (cur.eat("}")) return out;
  do out.insert(cur.integer(",}"));
  while (cur.eat(","));
  cur.expect("}");
  return out;
}

std::string join_set(const std::set<BigInt>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : ",") + x.str();
  return out;
}

}  // namespace

SetExpr parse_set_expr(const std::string& text, std::uint32_t p) {
  Cursor cur(text);
  SetExpr E;
  auto term = [&]() -> bool {
    if (cur.eat("AP(")) {
      APTerm t;
      t.a = cur.integer(",");
      cur.expect(",");
      t.delta = cur.integer(")");
      cur.expect(")");
      if (t.delta < 0) cur.fail("progression step must be nonnegative");
      E.terms.emplace_back(std::move(t));
      return true;
    }
    if (cur.eat("PS(")) {
      PSetTerm T;
      T.q = cur.integer(";");
      cur.expect(";");
      T.c0 = cur.rational(";");
      cur.expect(";");
      cur.expect("[");
      do {
        std::vector<Rational> row;
        do row.push_back(cur.rational(",|]"));
        while (cur.eat(","));
        T.c.push_back(std::move(row));
      } while (cur.eat("|"));
      cur.expect("]");
      cur.expect(")");
      validate(T, p);
      E.terms.emplace_back(std::move(T));
      return true;
    }
    const bool is_a = cur.eat("A(");
    if (is_a || cur.eat("B(")) {
      ABTerm t;
      t.kind = is_a ? ABTerm::Kind::A : ABTerm::Kind::B;
      t.q = cur.integer(";");
      cur.expect(";");
      t.x = cur.integer(",");
      cur.expect(",");
      t.y = cur.integer(")");
      cur.expect(")");
      validate(t, p);
      E.terms.emplace_back(t.to_pset());
      return true;
    }
    return false;
  };

  if (term())
    while (cur.eat("+"))
      if (!term()) cur.fail("expected a term after '+'");
  if (cur.eat("add{")) E.added = int_list(cur);
  if (cur.eat("del{")) E.removed = int_list(cur);
  if (cur.eat("in")) {
    if (cur.eat("N")) E.domain = Domain::Naturals;
    else if (!cur.eat("Z")) cur.fail("expected N or Z");
  }
  if (!cur.done()) cur.fail("unexpected text");
  for (const auto& x : E.added)
    if (E.removed.count(x)) throw ParseError("element " + x.str() + " is both added and removed");
  if (E.domain == Domain::Naturals) E = intersect_nat(E);
  return E;
}

std::string to_string(const APTerm& T) { return "AP(" + T.a.str() + "," + T.delta.str() + ")"; }

std::string to_string(const PSetTerm& T) {
  std::string out = "PS(" + T.q.str() + ";" + retset::to_string(T.c0) + ";[";
  for (std::size_t i = 0; i < T.c.size(); ++i) {
    if (i) out += "|";
    for (std::size_t j = 0; j < T.c[i].size(); ++j) out += (j ? "," : "") + retset::to_string(T.c[i][j]);
  }
  return out + "])";
}

std::string to_string(const SetExpr& E) {
  std::string out;
  for (const auto& t : E.terms) {
    if (!out.empty()) out += " + ";
    out += std::visit([](const auto& x) { return to_string(x); }, t);
  }
  auto section = [&](const std::string& head, const std::set<BigInt>& s) {
    if (!out.empty()) out += " ";
    out += head + "{" + join_set(s) + "}";
  };
  if (!E.added.empty() || E.terms.empty()) section("add", E.added);
  if (!E.removed.empty()) section("del", E.removed);
  if (E.domain == Domain::Naturals) out += " in N";
  return out;
}

}  // namespace retset
