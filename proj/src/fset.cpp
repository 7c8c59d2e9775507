#include "retset/fset.hpp"

#include "retset/errors.hpp"
#include "retset/recurrence.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace retset {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

BigInt lcm_big(const BigInt& a, const BigInt& b) { return a / boost::multiprecision::gcd(a, b) * b; }

}  // namespace

std::string to_string(const ModElem& x) {
  std::string out = "(";
  for (std::size_t k = 0; k < x.free.size(); ++k) out += (k ? " " : "") + x.free[k].str();
  out += ";";
  for (const auto& t : x.tor) out += " " + t.str();
  return out + ")";
}

ModElem FGModule::zero() const { return {std::vector<BigInt>(rank, 0), std::vector<BigInt>(torsion.size(), 0)}; }

ModElem FGModule::reduce(ModElem x) const {
  if (x.free.size() != rank || x.tor.size() != torsion.size()) throw DomainError("element " + to_string(x) + " does not fit the module");
  for (std::size_t i = 0; i < torsion.size(); ++i) x.tor[i] = mod_floor(x.tor[i], torsion[i]);
  return x;
}

ModElem FGModule::add(const ModElem& x, const ModElem& y) const {
  ModElem z = x;
  for (std::size_t i = 0; i < rank; ++i) z.free[i] += y.free[i];
  for (std::size_t i = 0; i < torsion.size(); ++i) z.tor[i] += y.tor[i];
  return reduce(std::move(z));
}

ModElem FGModule::scale(const BigInt& k, const ModElem& x) const {
  ModElem z = x;
  for (auto& v : z.free) v *= k;
  for (auto& v : z.tor) v *= k;
  return reduce(std::move(z));
}

BigInt FGModule::torsion_exponent() const {
  BigInt L = 1;
  for (const auto& d : torsion) L = lcm_big(L, d);
  return L;
}

ModElem FrobeniusSpec::apply(const ModElem& x) const {
  ModElem y = M.zero();
  for (std::size_t i = 0; i < M.rank; ++i)
    for (std::size_t j = 0; j < M.rank; ++j) y.free[i] += free_map[i][j] * x.free[j];
  for (std::size_t i = 0; i < M.torsion.size(); ++i) {
    for (std::size_t j = 0; j < M.torsion.size(); ++j) y.tor[i] += tor_map[i][j] * x.tor[j];
    for (std::size_t j = 0; j < M.rank; ++j) y.tor[i] += mixed_map[i][j] * x.free[j];
  }
  return M.reduce(std::move(y));
}

ModElem FrobeniusSpec::iterate(std::uint64_t n, const ModElem& x) const {
  ModElem y = M.reduce(x);
  for (std::uint64_t k = 0; k < n; ++k) y = apply(y);
  return y;
}

void FrobeniusSpec::validate() const {
  const std::size_t l = M.rank, s = M.torsion.size();
  auto shape = [](const Matrix& A, std::size_t rows, std::size_t cols) {
    if (A.size() != rows) return false;
    return std::all_of(A.begin(), A.end(), [&](const auto& row) { return row.size() == cols; });
  };
  if (!shape(free_map, l, l) || !shape(tor_map, s, s) || !shape(mixed_map, s, l)) throw DomainError("Frobenius matrices have the wrong shape");
  for (const auto& d : M.torsion)
    if (d < 2) throw DomainError("torsion invariants must be at least 2");
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      if (mod_floor(M.torsion[j] * tor_map[i][j], M.torsion[i]) != 0)
        throw DomainError("torsion map is not well defined on Z/" + M.torsion[j].str());
  if (P.size() < 2 || P.back() != 1) throw DomainError("P must be monic of degree at least 1");
  if (q < 2) throw DomainError("q must be at least 2");
  std::vector<ModElem> gens;
  for (std::size_t i = 0; i < l; ++i) {
    ModElem e = M.zero();
    e.free[i] = 1;
    gens.push_back(e);
  }
  for (std::size_t i = 0; i < s; ++i) {
    ModElem e = M.zero();
    e.tor[i] = 1;
    gens.push_back(e);
  }
  for (const auto& e : gens) {
    ModElem acc = M.zero(), power = e;
    for (std::size_t k = 0; k < P.size(); ++k) {
      acc = M.add(acc, M.scale(P[k], power));
      power = apply(power);
    }
    if (acc != M.zero()) throw DomainError("P(Phi) does not vanish on generator " + to_string(e));
  }
}

ModElem phi_power_apply(std::uint64_t n, const ModElem& x, const FrobeniusSpec& spec) {
  const RecurrenceBasis basis(spec.P);
  const auto c = basis.at(n);
  ModElem acc = spec.M.zero(), power = spec.M.reduce(x);
  for (unsigned j = 0; j < basis.order(); ++j) {
    acc = spec.M.add(acc, spec.M.scale(c[j], power));
    power = spec.apply(power);
  }
  return acc;
}

ModElem FSetSpec::point(const FrobeniusSpec& spec, const std::vector<std::uint64_t>& n) const {
  if (n.size() != d()) throw DomainError("index tuple has the wrong length");
  ModElem acc = spec.M.reduce(alpha0);
  for (unsigned i = 0; i < d(); ++i)
    for (std::size_t j = 0; j < alpha[i].size(); ++j)
      acc = spec.M.add(acc, phi_power_apply(stride * (std::uint64_t{1} << j) * n[i], alpha[i][j], spec));
  return acc;
}

namespace {

std::size_t pivot_of(const ModElem& g0) {
  for (std::size_t a = 0; a < g0.free.size(); ++a)
    if (g0.free[a] != 0) return a;
  throw DomainError("g0 must have a nonzero free part");
}

}  // namespace

bool in_cyclic(const FGModule& M, const ModElem& x0, const ModElem& g0) {
  const std::size_t a = pivot_of(g0);
  const ModElem x = M.reduce(x0);
  if (x.free[a] % g0.free[a] != 0) return false;
  const BigInt m = x.free[a] / g0.free[a];
  return M.reduce(M.add(x, M.scale(-m, g0))) == M.zero();
}

bool IndexDecomposition::member(const IntVec& n) const {
  return std::any_of(cosets.begin(), cosets.end(), [&](const GoodCoset& c) { return c.member(n); });
}

std::string IndexDecomposition::str() const {
  std::string out = exact ? "exact\n" : "window-certified [0," + std::to_string(certified_window) + "]\n";
  for (const auto& c : cosets) out += c.str() + "\n";
  return out;
}

namespace {

/// Eventually periodic predicate on N^d: values for n_i < pre_i + per_i, reduced otherwise.
struct PeriodicTable {
  std::vector<Period> shape;
  std::vector<char> cells;

  std::uint64_t length(unsigned i) const { return shape[i].preperiod + shape[i].period; }

  std::uint64_t index(const std::vector<std::uint64_t>& n) const {
    std::uint64_t idx = 0;
    for (unsigned i = 0; i < shape.size(); ++i) {
      std::uint64_t v = n[i];
      if (v >= shape[i].preperiod) v = shape[i].preperiod + (v - shape[i].preperiod) % shape[i].period;
      idx = idx * length(i) + v;
    }
    return idx;
  }
  bool at(const std::vector<std::uint64_t>& n) const { return cells[index(n)] != 0; }
};

template <class F>
void each_tuple(const std::vector<std::uint64_t>& len, F&& visit) {
  std::vector<std::uint64_t> n(len.size(), 0);
  for (auto l : len)
    if (l == 0) return;
  while (true) {
    visit(n);
    std::size_t i = len.size();
    while (i > 0 && n[i - 1] + 1 == len[i - 1]) n[--i] = 0;
    if (i == 0) return;
    ++n[i - 1];
  }
}

std::uint64_t cell_count(const std::vector<std::uint64_t>& len) {
  std::uint64_t total = 1;
  for (auto l : len) {
    if (l > 1'000'000 || total * l > 1'000'000) throw ResourceError("index grid exceeds 10^6 cells");
    total *= l;
  }
  return total;
}

/// Shrinks each (preperiod, period) while the predicate stays unchanged.
std::vector<Period> minimize(const PeriodicTable& T) {
  std::vector<Period> out = T.shape;
  const unsigned d = static_cast<unsigned>(out.size());
  for (unsigned i = 0; i < d; ++i) {
    std::vector<std::uint64_t> len;
    for (unsigned k = 0; k < d; ++k) len.push_back(k == i ? 1 : T.length(k));
    const std::uint64_t mu = out[i].preperiod, pi = out[i].period;
    auto same_shift = [&](std::uint64_t from, std::uint64_t by) {
      bool ok = true;
      each_tuple(len, [&](const std::vector<std::uint64_t>& n) {
        if (!ok) return;
        auto a = n, b = n;
        a[i] = from;
        b[i] = from + by;
        ok = T.at(a) == T.at(b);
      });
      return ok;
    };
    for (std::uint64_t cand = 1; cand <= pi; ++cand) {
      if (pi % cand != 0) continue;
      bool ok = true;
      for (std::uint64_t v = mu; v < mu + pi && ok; ++v) ok = same_shift(v, cand);
      if (ok) {
        out[i].period = cand;
        break;
      }
    }
    while (out[i].preperiod > 0 && same_shift(out[i].preperiod - 1, out[i].period)) --out[i].preperiod;
  }
  return out;
}

/// Per-coordinate piece of a product cell.
struct Piece {
  enum Kind { Single, Residue, AtLeast, Free } kind;
  std::uint64_t v;  // value for Single, representative in [pre, pre + per) for Residue
  auto operator<=>(const Piece&) const = default;
};

using Cell = std::vector<Piece>;

std::vector<GoodCoset> cosets_from(const PeriodicTable& T, const std::vector<Period>& shape) {
  const unsigned d = static_cast<unsigned>(shape.size());
  std::vector<std::uint64_t> len;
  for (const auto& p : shape) len.push_back(p.preperiod + p.period);
  cell_count(len);
  std::set<Cell> good;
  each_tuple(len, [&](const std::vector<std::uint64_t>& n) {
    if (!T.at(n)) return;
    Cell c;
    for (unsigned i = 0; i < d; ++i) c.push_back({n[i] < shape[i].preperiod ? Piece::Single : Piece::Residue, n[i]});
    good.insert(std::move(c));
  });

  // Merge full residue families into AtLeast, then AtLeast plus every small value into Free.
  bool changed = true;
  while (changed) {
    changed = false;
    for (unsigned i = 0; i < d; ++i) {
      std::map<Cell, std::set<Piece>> groups;
      for (const auto& c : good) {
        Cell key = c;
        key[i] = {Piece::Free, 0};
        groups[key].insert(c[i]);
      }
      std::set<Cell> next;
      for (auto& [key, pieces] : groups) {
        std::size_t residues = 0, singles = 0;
        for (const auto& p : pieces) {
          residues += p.kind == Piece::Residue;
          singles += p.kind == Piece::Single;
        }
        if (residues == shape[i].period) {
          std::erase_if(pieces, [](const Piece& p) { return p.kind == Piece::Residue; });
          pieces.insert({Piece::AtLeast, 0});
          changed = true;
        }
        if (pieces.count({Piece::AtLeast, 0}) && singles == shape[i].preperiod && shape[i].preperiod > 0) {
          pieces.clear();
          pieces.insert({Piece::Free, 0});
          changed = true;
        }
        for (const auto& p : pieces) {
          Cell c = key;
          c[i] = p;
          next.insert(std::move(c));
        }
      }
      good = std::move(next);
    }
  }

  std::vector<GoodCoset> out;
  for (const auto& c : good) {
    IntVec base(d), rect(d, 0);
    std::vector<Requirement> reqs;
    for (unsigned i = 0; i < d; ++i) {
      const auto& p = c[i];
      const auto mu = static_cast<std::int64_t>(shape[i].preperiod);
      switch (p.kind) {
        case Piece::Single:
          base[i] = static_cast<std::int64_t>(p.v);
          reqs.push_back(Requirement::zero(i + 1));
          break;
        case Piece::Residue:
          base[i] = static_cast<std::int64_t>(p.v);
          rect[i] = mu;
          if (shape[i].period > 1) reqs.push_back(Requirement::mult(i + 1, static_cast<std::int64_t>(shape[i].period)));
          break;
        case Piece::AtLeast:
          base[i] = rect[i] = mu;
          break;
        case Piece::Free:
          base[i] = 0;
          break;
      }
    }
    out.emplace_back(base, rect, GoodSubgroup(d, reqs));
  }
  std::sort(out.begin(), out.end(), [](const GoodCoset& a, const GoodCoset& b) {
    return std::tie(a.base, a.rect) < std::tie(b.base, b.rect) || (a.base == b.base && a.rect == b.rect && a.str() < b.str());
  });
  return out;
}

/// Residue of an element for the exact test: free coordinate a mod N' and torsion mod d.
struct Residue {
  BigInt X;
  std::vector<BigInt> tor;
};

/// x^e mod (P, N) as coefficients of 1, x, ..., x^(s-1).
class PolyModRing {
 public:
  PolyModRing(std::vector<BigInt> P, BigInt N) : P_(std::move(P)), N_(std::move(N)) {}
  std::size_t s() const { return P_.size() - 1; }

  std::vector<BigInt> mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const {
    std::vector<BigInt> prod(2 * s(), 0);
    for (std::size_t i = 0; i < s(); ++i)
      for (std::size_t j = 0; j < s(); ++j) prod[i + j] += a[i] * b[j];
    for (std::size_t k = prod.size(); k-- > s();) {
      const BigInt top = prod[k] % N_;
      if (top == 0) continue;
      for (std::size_t i = 0; i < s(); ++i) prod[k - s() + i] -= top * P_[i];
      prod[k] = 0;
    }
    prod.resize(s());
    for (auto& c : prod) c = mod_floor(c, N_);
    return prod;
  }
  std::vector<BigInt> one() const {
    std::vector<BigInt> r(s(), 0);
    r[0] = mod_floor(BigInt(1), N_);
    return r;
  }
  std::vector<BigInt> x_pow(std::uint64_t e) const {
    std::vector<BigInt> base(s(), 0), result = one();
    if (s() == 1) {
      base[0] = mod_floor(-P_[0], N_);
    } else {
      base[1] = 1 % N_;
    }
    while (e) {
      if (e & 1U) result = mul(result, base);
      e >>= 1U;
      if (e) base = mul(base, base);
    }
    return result;
  }

 private:
  std::vector<BigInt> P_;
  BigInt N_;
};

bool proportional(const std::vector<BigInt>& v, const std::vector<BigInt>& g, std::size_t a) {
  for (std::size_t b = 0; b < g.size(); ++b)
    if (v[b] * g[a] != v[a] * g[b]) return false;
  return true;
}

std::optional<IndexDecomposition> decompose_exact(const FrobeniusSpec& spec, const FSetSpec& F, const ModElem& g0) {
  const FGModule& M = spec.M;
  const std::size_t a = pivot_of(g0);
  const unsigned s = static_cast<unsigned>(spec.P.size() - 1);
  auto krylov = [&](const ModElem& x) {
    std::vector<ModElem> out{M.reduce(x)};
    while (out.size() < s) out.push_back(spec.apply(out.back()));
    return out;
  };
  std::vector<std::vector<std::vector<ModElem>>> K(F.d());
  if (!proportional(F.alpha0.free, g0.free, a)) return std::nullopt;
  for (unsigned i = 0; i < F.d(); ++i)
    for (const auto& alpha : F.alpha[i]) {
      K[i].push_back(krylov(alpha));
      for (const auto& v : K[i].back())
        if (!proportional(v.free, g0.free, a)) return std::nullopt;
    }

  const BigInt f = abs(g0.free[a]);
  const BigInt L = M.torsion_exponent();
  const BigInt Nmod = f * L;
  const Period base_period = eventual_period_mod(RecurrenceBasis(spec.P), Nmod);
  const PolyModRing ring(spec.P, Nmod);

  auto residue_of = [&](const ModElem& x, const BigInt& k) {
    Residue r{mod_floor(k * x.free[a], Nmod), {}};
    for (std::size_t t = 0; t < M.torsion.size(); ++t) r.tor.push_back(mod_floor(k * x.tor[t], M.torsion[t]));
    return r;
  };
  auto accumulate = [&](Residue& acc, const Residue& r) {
    acc.X = mod_floor(acc.X + r.X, Nmod);
    for (std::size_t t = 0; t < acc.tor.size(); ++t) acc.tor[t] = mod_floor(acc.tor[t] + r.tor[t], M.torsion[t]);
  };

  std::vector<Period> shape(F.d());
  std::vector<std::vector<Residue>> tables(F.d());
  for (unsigned i = 0; i < F.d(); ++i) {
    Period p{0, 1};
    for (std::size_t j = 0; j < F.alpha[i].size(); ++j) {
      const std::uint64_t e = F.stride << j;
      p.preperiod = std::max(p.preperiod, (base_period.preperiod + e - 1) / e);
      p.period = std::lcm(p.period, base_period.period / std::gcd(base_period.period, e));
    }
    shape[i] = p;
    const std::uint64_t len = p.preperiod + p.period;
    if (len > 1'000'000) throw ResourceError("coordinate period exceeds 10^6");
    tables[i].assign(len, residue_of(M.zero(), 0));
    for (std::size_t j = 0; j < F.alpha[i].size(); ++j) {
      const auto step = ring.x_pow(F.stride << j);
      auto state = ring.one();
      for (std::uint64_t n = 0; n < len; ++n) {
        for (unsigned t = 0; t < s; ++t) accumulate(tables[i][n], residue_of(K[i][j][t], state[t]));
        state = ring.mul(state, step);
      }
    }
  }

  PeriodicTable T{shape, {}};
  std::vector<std::uint64_t> len;
  for (unsigned i = 0; i < F.d(); ++i) len.push_back(T.length(i));
  T.cells.resize(cell_count(len));
  const Residue start = residue_of(F.alpha0, 1);
  const BigInt sign = g0.free[a] < 0 ? -1 : 1;
  std::uint64_t idx = 0;
  each_tuple(len, [&](const std::vector<std::uint64_t>& n) {
    Residue acc = start;
    for (unsigned i = 0; i < F.d(); ++i) accumulate(acc, tables[i][n[i]]);
    bool ok = acc.X % f == 0;
    if (ok) {
      const BigInt m = sign * (acc.X / f);
      for (std::size_t t = 0; t < acc.tor.size() && ok; ++t) ok = mod_floor(acc.tor[t] - m * g0.tor[t], M.torsion[t]) == 0;
    }
    T.cells[idx++] = ok;
  });
  IndexDecomposition out;
  out.exact = true;
  out.cosets = cosets_from(T, minimize(T));
  return out;
}

IndexDecomposition decompose_window(const FrobeniusSpec& spec, const FSetSpec& F, const ModElem& g0, std::uint64_t N) {
  const unsigned d = F.d();
  const std::uint64_t W = 2 * N;
  // Orbit sums per coordinate on [0, 2N].
  std::vector<std::vector<ModElem>> tables(d);
  for (unsigned i = 0; i < d; ++i) {
    tables[i].assign(W + 1, spec.M.zero());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t n = 0; n <= static_cast<std::int64_t>(W); ++n) {
      ModElem acc = spec.M.zero();
      for (std::size_t j = 0; j < F.alpha[i].size(); ++j)
        acc = spec.M.add(acc, phi_power_apply((F.stride << j) * static_cast<std::uint64_t>(n), F.alpha[i][j], spec));
      tables[i][n] = acc;
    }
  }
  const std::vector<std::uint64_t> full(d, W + 1);
  const std::uint64_t total = cell_count(full);
  std::vector<char> truth(total);
  auto flat = [&](const std::vector<std::uint64_t>& n) {
    std::uint64_t idx = 0;
    for (unsigned i = 0; i < d; ++i) idx = idx * (W + 1) + n[i];
    return idx;
  };
  std::vector<std::vector<std::uint64_t>> tuples;
  tuples.reserve(total);
  each_tuple(full, [&](const std::vector<std::uint64_t>& n) { tuples.push_back(n); });
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(total); ++k) {
    ModElem x = spec.M.reduce(F.alpha0);
    for (unsigned i = 0; i < d; ++i) x = spec.M.add(x, tables[i][tuples[k][i]]);
    truth[flat(tuples[k])] = in_cyclic(spec.M, x, g0);
  }
  auto value = [&](const std::vector<std::uint64_t>& n) { return truth[flat(n)] != 0; };

  std::vector<Period> shape(d);
  const std::vector<std::uint64_t> fit(d, N + 1);
  for (unsigned i = 0; i < d; ++i) {
    bool found = false;
    for (std::uint64_t pi = 1; !found && 2 * pi <= N + 1; ++pi)
      for (std::uint64_t mu = 0; !found && mu + 2 * pi <= N + 1; ++mu) {
        bool ok = true;
        each_tuple(fit, [&](const std::vector<std::uint64_t>& n) {
          if (!ok || n[i] < mu || n[i] + pi > N) return;
          auto m = n;
          m[i] += pi;
          ok = value(n) == value(m);
        });
        if (ok) {
          shape[i] = {mu, pi};
          found = true;
        }
      }
    if (!found) throw FitFailure("not coset-shaped on window: coordinate " + std::to_string(i + 1) + " has no period on [0," + std::to_string(N) + "]");
  }
  PeriodicTable T{shape, {}};
  std::vector<std::uint64_t> len;
  for (unsigned i = 0; i < d; ++i) len.push_back(T.length(i));
  T.cells.resize(cell_count(len));
  std::uint64_t idx = 0;
  each_tuple(len, [&](const std::vector<std::uint64_t>& n) { T.cells[idx++] = value(n); });

  IndexDecomposition out;
  out.exact = false;
  out.certified_window = W;
  out.cosets = cosets_from(T, shape);
  each_tuple(full, [&](const std::vector<std::uint64_t>& n) {
    IntVec v(n.begin(), n.end());
    if (out.member(v) != value(n)) {
      std::string at = "(";
      for (unsigned i = 0; i < d; ++i) at += (i ? "," : "") + std::to_string(n[i]);
      throw FitFailure("not coset-shaped on window: fitted cosets disagree at " + at + ")");
    }
  });
  return out;
}

}  // namespace

IndexDecomposition decompose_index_set(const FrobeniusSpec& spec, const FSetSpec& F, const ModElem& g0, std::uint64_t N) {
  spec.validate();
  pivot_of(g0);
  spec.M.reduce(g0);
  spec.M.reduce(F.alpha0);
  if (F.d() == 0) throw DomainError("F-set needs at least one coordinate");
  if (F.stride == 0) throw DomainError("stride must be positive");
  for (const auto& row : F.alpha) {
    if (row.empty() || row.size() > 16) throw DomainError("each F-set row needs 1..16 entries");
    for (const auto& x : row) spec.M.reduce(x);
  }
  if (auto exact = decompose_exact(spec, F, g0)) return *exact;
  return decompose_window(spec, F, g0, N);
}

namespace {

bool prime_power(BigInt t) {
  if (t < 2) return false;
  BigInt p = 2;
  while (p * p <= t && t % p != 0) ++p;
  if (t % p != 0) return true;
  while (t % p == 0) t /= p;
  return t == 1;
}

}  // namespace

SetExpr frobenius_orbit_closed_form(const BigInt& c, const std::vector<BigInt>& l, const BigInt& t) {
  if (!prime_power(abs(t))) throw DomainError("t must be plus or minus a prime power");
  std::vector<BigInt> live;
  for (const auto& x : l)
    if (x != 0) live.push_back(x);
  if (live.empty()) return SetExpr::of(APTerm{c, 0});
  const BigInt tm1 = t - 1;
  Rational c0 = c;
  for (const auto& x : live) c0 -= Rational(x) / Rational(tm1);
  SetExpr out;
  if (t > 0) {
    PSetTerm T{t, c0, {}};
    for (const auto& x : live) T.c.push_back({Rational(x) / Rational(tm1)});
    out.terms.push_back(T);
    return out;
  }
  // n = 2m + eps: t^n = t^eps (t^2)^m.
  const std::size_t d = live.size();
  if (d > 16) throw ResourceError("too many coordinates for the sign split");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    PSetTerm T{t * t, c0, {}};
    for (std::size_t i = 0; i < d; ++i) T.c.push_back({Rational((mask >> i) & 1U ? BigInt(live[i] * t) : live[i]) / Rational(tm1)});
    out.terms.push_back(T);
  }
  return out;
}

namespace {

/// Solves A x = b exactly; A is square and nonsingular.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) throw Error("singular Vandermonde system");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      const Rational f = A[r][col] / A[col][col];
      for (std::size_t k = col; k < n; ++k) A[r][k] -= f * A[col][k];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = 0; r < n; ++r) b[r] /= A[r][r];
  return b;
}

}  // namespace

std::optional<std::vector<Rational>> fit_power_coefficients(const std::vector<BigInt>& samples, const BigInt& q, unsigned r) {
  if (q < 2) throw DomainError("q must be at least 2");
  if (r > 8) throw DomainError("r must be at most 8");
  if (samples.size() < r + 2) throw DomainError("need at least r + 2 samples");
  std::vector<BigInt> nodes;
  for (unsigned j = 0; j < r; ++j) nodes.push_back(big_pow(q, std::uint64_t{1} << j));
  std::vector<std::vector<Rational>> A(r, std::vector<Rational>(r));
  std::vector<Rational> b(r);
  for (unsigned n = 0; n < r; ++n) {
    for (unsigned j = 0; j < r; ++j) A[n][j] = Rational(big_pow(nodes[j], n));
    b[n] = samples[n];
  }
  const std::vector<Rational> c = r ? solve_exact(A, b) : std::vector<Rational>{};
  auto model = [&](std::uint64_t n, unsigned from, const std::function<Rational(unsigned)>& coef) {
    Rational v = 0;
    for (unsigned j = from; j < r; ++j) v += coef(j) * Rational(big_pow(nodes[j], n));
    return v;
  };
  for (std::size_t n = 0; n < samples.size(); ++n)
    if (model(n, 0, [&](unsigned j) { return c[j]; }) != samples[n]) return std::nullopt;
  // l'_m = l_(m+1) - q l_m carries coefficients c_j (q^(2^j) - q), and l_n telescopes back from l_0.
  std::vector<BigInt> diff;
  for (std::size_t m = 0; m + 1 < samples.size(); ++m) diff.push_back(samples[m + 1] - q * samples[m]);
  for (std::size_t m = 0; m < diff.size(); ++m)
    if (model(m, 1, [&](unsigned j) { return c[j] * Rational(nodes[j] - q); }) != diff[m]) return std::nullopt;
  for (std::size_t n = 0; n < samples.size(); ++n) {
    BigInt v = big_pow(q, n) * samples[0];
    for (std::size_t m = 0; m < n; ++m) v += big_pow(q, n - 1 - m) * diff[m];
    if (v != samples[n]) return std::nullopt;
  }
  return c;
}

std::vector<Rational> telescoping_coefficients(const Rational& l0, const std::vector<Rational>& cprime, const BigInt& q) {
  std::vector<Rational> c(cprime.size(), 0);
  Rational rest = l0;
  for (std::size_t j = 1; j < cprime.size(); ++j) {
    c[j] = cprime[j] / Rational(big_pow(q, std::uint64_t{1} << j) - q);
    rest -= c[j];
  }
  if (!c.empty()) c[0] = rest;
  return c;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<BigInt> ints_of(const std::string& s) {
  std::vector<BigInt> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    try {
      out.emplace_back(tok);
    } catch (const std::exception&) {
      throw ParseError("expected an integer, got '" + tok + "'");
    }
  }
  return out;
}

Matrix matrix_of(const std::string& s) {
  Matrix m;
  std::stringstream ss(s);
  std::string row;
  while (std::getline(ss, row, '|')) m.push_back(ints_of(row));
  if (trim(s).empty()) m.clear();
  return m;
}

ModElem elem_of(const std::string& text) {
  const std::string s = trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ParseError("element must look like (free; torsion)");
  const std::string body = s.substr(1, s.size() - 2);
  const auto semi = body.find(';');
  if (semi == std::string::npos) return {ints_of(body), {}};
  return {ints_of(body.substr(0, semi)), ints_of(body.substr(semi + 1))};
}

}  // namespace

FSetProblem parse_fset_problem(const std::string& text) {
  FSetProblem out;
  std::istringstream in(text);
  std::string line, section;
  bool have_g0 = false;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      section = line;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value: " + line);
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (section == "[module]" && key == "rank") {
      const auto v = ints_of(value);
      if (v.size() != 1 || v[0] < 0) throw ParseError("rank must be a nonnegative integer");
      out.spec.M.rank = static_cast<unsigned>(v[0]);
    } else if (section == "[module]" && key == "torsion") {
      out.spec.M.torsion = ints_of(value);
    } else if (section == "[frobenius]" && key == "free") {
      out.spec.free_map = matrix_of(value);
    } else if (section == "[frobenius]" && key == "torsion") {
      out.spec.tor_map = matrix_of(value);
    } else if (section == "[frobenius]" && key == "mixed") {
      out.spec.mixed_map = matrix_of(value);
    } else if (section == "[frobenius]" && key == "P") {
      out.spec.P = ints_of(value);
    } else if (section == "[frobenius]" && key == "q") {
      const auto v = ints_of(value);
      if (v.size() != 1) throw ParseError("q takes one integer");
      out.spec.q = v[0];
    } else if (section == "[fset]" && key == "g0") {
      out.g0 = elem_of(value);
      have_g0 = true;
    } else if (section == "[fset]" && key == "alpha0") {
      out.fset.alpha0 = elem_of(value);
    } else if (section == "[fset]" && key == "alpha") {
      std::vector<ModElem> row;
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) row.push_back(elem_of(item));
      out.fset.alpha.push_back(std::move(row));
    } else if (section == "[fset]" && key == "stride") {
      const auto v = ints_of(value);
      if (v.size() != 1 || v[0] < 1) throw ParseError("stride must be a positive integer");
      out.fset.stride = static_cast<std::uint64_t>(v[0]);
    } else {
      throw ParseError("unknown key '" + key + "' in section " + (section.empty() ? "(none)" : section));
    }
  }
  const std::size_t s = out.spec.M.torsion.size(), l = out.spec.M.rank;
  // An absent mixed map means torsion is not fed by the free part.
  if (out.spec.mixed_map.empty() && s) out.spec.mixed_map.assign(s, std::vector<BigInt>(l, 0));
  if (out.spec.tor_map.empty() && s) throw ParseError("torsion map missing");
  if (!have_g0) throw ParseError("g0 missing");
  if (out.fset.alpha0.free.empty() && out.fset.alpha0.tor.empty()) out.fset.alpha0 = out.spec.M.zero();
  out.spec.validate();
  return out;
}

}  // namespace retset
