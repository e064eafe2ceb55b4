#include "rop/decomp.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "rop/union_find.hpp"

namespace rop {

namespace {

void require_multilinear(const MPoly& p) {
  if (!p.is_multilinear()) {
    throw Error(Errc::kNotMultilinear, "polynomial is not multilinear");
  }
}

void require_distinct(std::size_t i, std::size_t j) {
  if (i == j) {
    throw Error(Errc::kSameVariable,
                "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                    ") repeats a variable");
  }
}

}  // namespace

MPoly commutator(const MPoly& p, std::size_t i, std::size_t j) {
  require_distinct(i, j);
  require_multilinear(p);
  return p * p.partial2(i, j) - p.partial(i) * p.partial(j);
}

DecompResult decompose(const MPoly& p, std::size_t i, std::size_t j) {
  require_distinct(i, j);
  require_multilinear(p);
  if (p.degree_in(i) == 0 || p.degree_in(j) == 0) {
    throw Error(Errc::kVariableNotPresent,
                "decompose needs x" + std::to_string(i + 1) + " and x" +
                    std::to_string(j + 1) + " in var(P)");
  }
  DecompResult res;
  MPoly second = p.partial2(i, j);
  if (second.is_zero()) {
    res.degenerate = true;
    return res;
  }
  MPoly delta = commutator(p, i, j);
  const FieldCtx& f = p.ctx();
  Felt c = f.zero();
  if (!delta.is_zero()) {
    // Delta = c * S forces equal leading monomials and fixes c.
    const Term& ld = delta.leading_term();
    const Term& ls = second.leading_term();
    if (!(ld.mono == ls.mono)) return res;
    c = f.div(ld.coeff, ls.coeff);
  }
  if (delta == second.scale(c)) {
    res.decomposable = true;
    res.c = c;
  }
  return res;
}

DecompResult restriction_vote_decompose(const MPoly& p, std::size_t i,
                                        std::size_t j, std::size_t k,
                                        std::array<Felt, 3> values) {
  require_distinct(i, j);
  if (p.ctx().modulus() < 3) {
    throw Error(Errc::kPreconditionFailure,
                "three distinct field elements need p >= 3");
  }
  if (k == i || k == j || k >= p.arity()) {
    throw Error(Errc::kPreconditionFailure, "vote variable must differ from i, j");
  }
  for (Felt& v : values) v = p.ctx().from_u64(v.v);
  if (values[0] == values[1] || values[0] == values[2] ||
      values[1] == values[2]) {
    throw Error(Errc::kPreconditionFailure, "vote values must be distinct");
  }
  std::optional<Felt> common;
  for (Felt v : values) {
    MPoly r = p.restrict(k, v);
    if (r.degree_in(i) == 0 || r.degree_in(j) == 0) return {};
    DecompResult d = decompose(r, i, j);
    if (!d.decomposable) return {};
    if (common && !(*common == *d.c)) return {};
    common = d.c;
  }
  DecompResult whole = decompose(p, i, j);
  if (!whole.decomposable || !(*whole.c == *common)) return {};
  return whole;
}

BPoly b_poly(const MPoly& p, std::size_t i, std::size_t j,
             std::span<const std::size_t> shared) {
  require_distinct(i, j);
  require_multilinear(p);
  const std::size_t n = p.arity();
  if (i >= n || j >= n) throw Error(Errc::kArityMismatch, "pair beyond arity");
  if (2 * n > kMaxArity) {
    throw Error(Errc::kOutOfRange, "B-polynomial needs 2n <= " +
                                       std::to_string(kMaxArity) + " slots");
  }
  BPoly out{i, j, {}, MPoly(p.ctx(), 2 * n)};
  std::vector<std::size_t> y_slot(n), x_slot(n);
  for (std::size_t k = 0; k < n; ++k) {
    x_slot[k] = k;
    y_slot[k] = n + k;
  }
  for (std::size_t k : shared) {
    if (k == i || k == j) {
      throw Error(Errc::kIndexOverlap, "shared set contains i or j");
    }
    if (k >= n) throw Error(Errc::kArityMismatch, "shared index beyond arity");
    y_slot[k] = k;
  }
  out.shared.assign(shared.begin(), shared.end());
  std::sort(out.shared.begin(), out.shared.end());
  out.shared.erase(std::unique(out.shared.begin(), out.shared.end()),
                   out.shared.end());

  MPoly delta = commutator(p, i, j);
  MPoly second = p.partial2(i, j);
  MPoly dx = delta.remap(2 * n, x_slot), dy = delta.remap(2 * n, y_slot);
  MPoly sx = second.remap(2 * n, x_slot), sy = second.remap(2 * n, y_slot);
  out.value = dx * sy - sx * dy;
  return out;
}

bool b_is_zero(const MPoly& p, std::size_t i, std::size_t j,
               std::span<const std::size_t> shared,
               const ZeroTestOptions& opts) {
  if (opts.mode == ZeroTestMode::kExact) {
    if (shared.empty()) {
      require_distinct(i, j);
      MPoly second = p.partial2(i, j);
      if (second.is_zero()) return true;
      return decompose(p, i, j).decomposable;
    }
    return b_poly(p, i, j, shared).value.is_zero();
  }

  if (opts.rng == nullptr) {
    throw Error(Errc::kPreconditionFailure, "randomized mode needs an rng");
  }
  for (std::size_t k : shared) {
    if (k == i || k == j) throw Error(Errc::kIndexOverlap, "shared set contains i or j");
  }
  MPoly second = p.partial2(i, j);
  if (second.is_zero()) return true;
  MPoly delta = commutator(p, i, j);
  const FieldCtx& f = p.ctx();
  Assignment x(p.arity()), y(p.arity());
  for (std::size_t r = 0; r < opts.reps; ++r) {
    for (auto& v : x) v = f.sample(*opts.rng);
    for (auto& v : y) v = f.sample(*opts.rng);
    for (std::size_t k : shared) y[k] = x[k];
    Felt val = f.sub(f.mul(delta.evaluate(x), second.evaluate(y)),
                     f.mul(second.evaluate(x), delta.evaluate(y)));
    if (val.v != 0) return false;
  }
  return true;
}

GateGraph::GateGraph(std::vector<std::size_t> vertices, std::size_t arity)
    : vertices_(std::move(vertices)), arity_(arity), adj_(arity * arity, false) {
  std::sort(vertices_.begin(), vertices_.end());
}

bool GateGraph::has_vertex(std::size_t v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool GateGraph::adjacent(std::size_t a, std::size_t b) const {
  if (a >= arity_ || b >= arity_) return false;
  return adj_[a * arity_ + b];
}

void GateGraph::add_edge(std::size_t a, std::size_t b) {
  if (a == b || !has_vertex(a) || !has_vertex(b)) {
    throw Error(Errc::kPreconditionFailure, "edge endpoints must be distinct vertices");
  }
  adj_[a * arity_ + b] = true;
  adj_[b * arity_ + a] = true;
}

std::vector<std::pair<std::size_t, std::size_t>> GateGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < vertices_.size(); ++x) {
    for (std::size_t y = x + 1; y < vertices_.size(); ++y) {
      if (adjacent(vertices_[x], vertices_[y])) {
        out.emplace_back(vertices_[x], vertices_[y]);
      }
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> GateGraph::components() const {
  UnionFind uf(vertices_.size());
  for (std::size_t x = 0; x < vertices_.size(); ++x) {
    for (std::size_t y = x + 1; y < vertices_.size(); ++y) {
      if (adjacent(vertices_[x], vertices_[y])) uf.unite(x, y);
    }
  }
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> slot(vertices_.size(), SIZE_MAX);
  for (std::size_t x = 0; x < vertices_.size(); ++x) {
    std::size_t root = uf.find(x);
    if (slot[root] == SIZE_MAX) {
      slot[root] = comps.size();
      comps.emplace_back();
    }
    comps[slot[root]].push_back(vertices_[x]);
  }
  return comps;
}

GateGraph GateGraph::without(std::size_t v) const {
  GateGraph g = *this;
  std::erase(g.vertices_, v);
  if (v < arity_) {
    for (std::size_t u = 0; u < arity_; ++u) {
      g.adj_[v * arity_ + u] = false;
      g.adj_[u * arity_ + v] = false;
    }
  }
  return g;
}

bool GateGraph::operator==(const GateGraph& o) const {
  return vertices_ == o.vertices_ && edges() == o.edges();
}

GateGraph gate_graph(const MPoly& p) {
  require_multilinear(p);
  std::vector<std::size_t> vars = p.variables();
  GateGraph g(vars, p.arity());
  for (std::size_t x = 0; x < vars.size(); ++x) {
    for (std::size_t y = x + 1; y < vars.size(); ++y) {
      if (!p.partial2(vars[x], vars[y]).is_zero()) g.add_edge(vars[x], vars[y]);
    }
  }
  return g;
}

bool is_additively_separable(const MPoly& p) {
  require_multilinear(p);
  if (p.variables().size() < 2) {
    throw Error(Errc::kTooFewVariables, "separability needs two variables");
  }
  return !gate_graph(p).connected();
}

std::pair<MPoly, MPoly> additive_split(const MPoly& p,
                                       std::span<const std::size_t> component) {
  std::vector<std::size_t> vars = p.variables();
  std::vector<std::size_t> left(component.begin(), component.end());
  std::sort(left.begin(), left.end());
  left.erase(std::unique(left.begin(), left.end()), left.end());
  if (left.empty() || !std::includes(vars.begin(), vars.end(), left.begin(),
                                     left.end()) ||
      left.size() == vars.size()) {
    throw Error(Errc::kNotSeparableAlongCut,
                "cut must be a proper nonempty subset of var(P)");
  }
  std::vector<std::size_t> right;
  std::set_difference(vars.begin(), vars.end(), left.begin(), left.end(),
                      std::back_inserter(right));
  Assignment zeros(p.arity(), p.ctx().zero());
  MPoly p1 = p.restrict_many(right, zeros);
  MPoly p2 = p.restrict_many(left, zeros).add_constant(
      p.ctx().neg(p.constant_term()));
  if (!(p1 + p2 == p)) {
    throw Error(Errc::kNotSeparableAlongCut, "P is not P1 + P2 along this cut");
  }
  return {std::move(p1), std::move(p2)};
}

MultiplicativeSplit multiplicative_split(const MPoly& p, std::size_t i,
                                         std::size_t j) {
  DecompResult d = decompose(p, i, j);
  if (!d.decomposable) {
    throw Error(Errc::kNotDecomposable,
                "P is not (" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + ",c)-decomposable");
  }
  const FieldCtx& f = p.ctx();
  const Felt c = *d.c;
  const MPoly q = p.add_constant(f.neg(c));
  const std::size_t n = p.arity();

  // x_k joins h iff it sits in a different irreducible factor of P - c than
  // x_j, i.e. iff the commutator of P - c in (k, j) vanishes.
  std::vector<bool> in_h(n, false);
  in_h[i] = true;
  for (std::size_t k : q.variables()) {
    if (k == i || k == j) continue;
    if (commutator(q, k, j).is_zero()) in_h[k] = true;
  }
  auto split_mono = [&](const Monomial& m) {
    Monomial l, r;
    for (std::size_t k = 0; k < n; ++k) {
      if (m.exponent(k) == 0) continue;
      (in_h[k] ? l : r).set_exponent(k, m.exponent(k));
    }
    return std::pair{l, r};
  };

  // With q = h * g and leading monomial m_L * m_R:
  //   sum over terms with R-part m_R = h * g_{m_R},
  //   sum over terms with L-part m_L = h_{m_L} * g,
  // and h_{m_L} * g_{m_R} is the leading coefficient of q.
  const Term& lead = q.leading_term();
  auto [lead_l, lead_r] = split_mono(lead.mono);
  std::vector<Term> hs, gs;
  for (const Term& t : q.terms()) {
    auto [l, r] = split_mono(t.mono);
    if (r == lead_r) hs.push_back({l, t.coeff});
    if (l == lead_l) gs.push_back({r, t.coeff});
  }
  MPoly h = MPoly::from_terms(f, n, std::move(hs)).scale(f.inv(lead.coeff));
  MPoly g = MPoly::from_terms(f, n, std::move(gs));
  Felt s = h.leading_term().coeff;
  h = h.scale(f.inv(s));
  g = g.scale(s);
  if (!((h * g).add_constant(c) == p)) {
    throw Error(Errc::kNotDecomposable, "factor extraction failed to verify");
  }
  return {std::move(h), std::move(g), c};
}

bool trivariate_is_rop(const MPoly& p) {
  require_multilinear(p);
  std::vector<std::size_t> v = p.variables();
  if (v.size() > 3) {
    throw Error(Errc::kTooManyVariables,
                std::to_string(v.size()) + " live variables, expected <= 3");
  }
  if (v.size() <= 2) return true;
  int zeros = 0;
  zeros += b_is_zero(p, v[0], v[1], {}) ? 1 : 0;
  zeros += b_is_zero(p, v[0], v[2], {}) ? 1 : 0;
  if (zeros == 0) return false;
  zeros += b_is_zero(p, v[1], v[2], {}) ? 1 : 0;
  return zeros >= 2;
}

namespace {

// Works on polynomials compacted onto their live variables, stored as a
// dense coefficient table indexed by the support mask of each monomial.
class BruteForceDecider {
 public:
  explicit BruteForceDecider(const FieldCtx& f) : f_(f) {}

  bool decide(const MPoly& p) {
    std::vector<std::size_t> vars = p.variables();
    if (vars.size() <= 1) return true;
    const std::size_t m = vars.size();
    std::vector<std::size_t> slot(p.arity(), 0);
    for (std::size_t t = 0; t < m; ++t) slot[vars[t]] = t;

    std::vector<Felt> table(std::size_t{1} << m, f_.zero());
    for (const Term& t : p.terms()) {
      std::size_t mask = 0;
      for (std::size_t v : vars) {
        if (t.mono.exponent(v)) mask |= std::size_t{1} << slot[v];
      }
      table[mask] = t.coeff;
    }
    return decide_table(m, std::move(table));
  }

 private:
  // ROP-ness is invariant under P -> a*P + b (a != 0), so the memo key drops
  // the constant term and scales the top coefficient to 1.
  static std::string key_of(std::size_t m, const std::vector<Felt>& table) {
    std::string key = std::to_string(m) + ':';
    for (std::size_t k = 1; k < table.size(); ++k) {
      if (table[k].v) key += std::to_string(k) + '=' + std::to_string(table[k].v) + ';';
    }
    return key;
  }

  void normalize(std::vector<Felt>& table) const {
    table[0] = f_.zero();
    for (std::size_t k = table.size(); k-- > 1;) {
      if (table[k].v == 0) continue;
      Felt s = f_.inv(table[k]);
      for (Felt& v : table) v = f_.mul(v, s);
      return;
    }
  }

  // Re-packs a table over `support` (a mask within m bits) to its own width.
  std::pair<std::size_t, std::vector<Felt>> compact(
      std::size_t m, std::size_t support,
      const std::vector<Felt>& table) const {
    std::vector<std::size_t> bits;
    for (std::size_t b = 0; b < m; ++b) {
      if (support >> b & 1) bits.push_back(b);
    }
    std::vector<Felt> out(std::size_t{1} << bits.size(), f_.zero());
    for (std::size_t k = 0; k < table.size(); ++k) {
      if (table[k].v == 0) continue;
      std::size_t packed = 0;
      for (std::size_t t = 0; t < bits.size(); ++t) {
        if (k >> bits[t] & 1) packed |= std::size_t{1} << t;
      }
      out[packed] = table[k];
    }
    return {bits.size(), std::move(out)};
  }

  std::size_t live_mask(const std::vector<Felt>& table) const {
    std::size_t mask = 0;
    for (std::size_t k = 0; k < table.size(); ++k) {
      if (table[k].v) mask |= k;
    }
    return mask;
  }

  bool decide_sub(std::size_t m, const std::vector<Felt>& table) {
    auto [w, packed] = compact(m, live_mask(table), table);
    if (w <= 1) return true;
    return decide_table(w, std::move(packed));
  }

  bool decide_table(std::size_t m, std::vector<Felt> table) {
    normalize(table);
    std::string key = key_of(m, table);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = search(m, table);
    memo_.emplace(std::move(key), result);
    return result;
  }

  bool search(std::size_t m, const std::vector<Felt>& t) {
    const std::size_t full = (std::size_t{1} << m) - 1;
    // Bipartitions (L, R) with bit 0 in L and R nonempty.
    for (std::size_t left = 1; left < full; left += 2) {
      const std::size_t right = full ^ left;
      std::size_t pivot = 0;
      bool additive = true;
      for (std::size_t k = 1; k <= full; ++k) {
        if (t[k].v && (k & left) && (k & right)) {
          additive = false;
          pivot = k;
          break;
        }
      }
      if (additive) {
        std::vector<Felt> a(t.size(), f_.zero()), b(t.size(), f_.zero());
        for (std::size_t k = 0; k <= full; ++k) {
          if ((k & right) == 0) {
            a[k] = t[k];
          } else {
            b[k] = t[k];
          }
        }
        if (decide_sub(m, a) && decide_sub(m, b)) return true;
        continue;
      }
      // Rank-one test of the coefficient matrix M[a][b] = t[a|b] after
      // shifting M[0][0] by c; the pivot entry forces c.
      const std::size_t r = pivot & left, s = pivot & right;
      const Felt c = f_.sub(t[0], f_.div(f_.mul(t[s], t[r]), t[pivot]));
      auto entry = [&](std::size_t a, std::size_t b) {
        Felt v = t[a | b];
        return (a | b) == 0 ? f_.sub(v, c) : v;
      };
      const Felt piv = t[pivot];
      bool rank_one = true;
      for (std::size_t a = left;; a = (a - 1) & left) {
        for (std::size_t b = right;; b = (b - 1) & right) {
          if (!(f_.mul(entry(a, b), piv) == f_.mul(entry(a, s), entry(r, b)))) {
            rank_one = false;
            break;
          }
          if (b == 0) break;
        }
        if (!rank_one || a == 0) break;
      }
      if (!rank_one) continue;
      std::vector<Felt> h(t.size(), f_.zero()), g(t.size(), f_.zero());
      for (std::size_t a = left;; a = (a - 1) & left) {
        h[a] = entry(a, s);
        if (a == 0) break;
      }
      for (std::size_t b = right;; b = (b - 1) & right) {
        g[b] = entry(r, b);
        if (b == 0) break;
      }
      if (decide_sub(m, h) && decide_sub(m, g)) return true;
    }
    return false;
  }

  FieldCtx f_;
  std::unordered_map<std::string, bool> memo_;
};

}  // namespace

bool brute_force_is_rop(const MPoly& p) {
  require_multilinear(p);
  std::size_t live = p.variables().size();
  if (live > kBruteForceMaxVars) {
    throw Error(Errc::kTooManyVariables,
                std::to_string(live) + " live variables exceed the brute-force guard of " +
                    std::to_string(kBruteForceMaxVars));
  }
  BruteForceDecider decider(p.ctx());
  return decider.decide(p);
}

}  // namespace rop
