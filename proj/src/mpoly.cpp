#include "rop/mpoly.hpp"

#include <algorithm>
#include <sstream>

namespace rop {

Monomial Monomial::var(std::size_t i, unsigned e) {
  Monomial m;
  m.set_exponent(i, e);
  return m;
}

void Monomial::set_exponent(std::size_t i, unsigned e) {
  if (i >= kMaxArity) throw Error(Errc::kOutOfRange, "variable slot too large");
  if (e > 255) throw Error(Errc::kOutOfRange, "exponent exceeds 255");
  degree_ = static_cast<std::uint16_t>(degree_ - exp_[i] + e);
  exp_[i] = static_cast<std::uint8_t>(e);
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxArity; ++i) {
    unsigned e = unsigned{exp_[i]} + o.exp_[i];
    if (e > 255) throw Error(Errc::kOutOfRange, "exponent exceeds 255");
    r.exp_[i] = static_cast<std::uint8_t>(e);
  }
  r.degree_ = static_cast<std::uint16_t>(degree_ + o.degree_);
  return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.exp_.begin(), a.exp_.end(),
                                                b.exp_.begin(), b.exp_.end());
}

MPoly::MPoly(const FieldCtx& ctx, std::size_t arity) : ctx_(ctx), arity_(arity) {
  if (arity > kMaxArity) {
    throw Error(Errc::kOutOfRange, "arity " + std::to_string(arity) +
                                       " exceeds " + std::to_string(kMaxArity));
  }
}

MPoly MPoly::constant(const FieldCtx& ctx, std::size_t arity, Felt c) {
  MPoly p(ctx, arity);
  if (c.v != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

MPoly MPoly::variable(const FieldCtx& ctx, std::size_t arity, std::size_t i) {
  MPoly p(ctx, arity);
  p.check_var(i);
  p.terms_.push_back({Monomial::var(i), ctx.one()});
  return p;
}

MPoly MPoly::from_terms(const FieldCtx& ctx, std::size_t arity,
                        std::vector<Term> terms) {
  MPoly p(ctx, arity);
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.mono < b.mono; });
  for (const Term& t : terms) {
    for (std::size_t i = arity; i < kMaxArity; ++i) {
      if (t.mono.exponent(i) != 0) {
        throw Error(Errc::kArityMismatch, "monomial uses slot beyond arity");
      }
    }
    Felt c = ctx.from_u64(t.coeff.v);
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff = ctx.add(p.terms_.back().coeff, c);
    } else {
      p.terms_.push_back({t.mono, c});
    }
  }
  std::erase_if(p.terms_, [](const Term& t) { return t.coeff.v == 0; });
  return p;
}

void MPoly::check_compatible(const MPoly& o) const {
  if (!(ctx_ == o.ctx_)) throw Error(Errc::kFieldMismatch, "different fields");
  if (arity_ != o.arity_) throw Error(Errc::kArityMismatch, "different arities");
}

void MPoly::check_var(std::size_t i) const {
  if (i >= arity_) {
    throw Error(Errc::kArityMismatch, "variable index " + std::to_string(i) +
                                          " >= arity " + std::to_string(arity_));
  }
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_constant());
}

Felt MPoly::constant_term() const {
  if (!terms_.empty() && terms_.front().mono.is_constant()) {
    return terms_.front().coeff;
  }
  return ctx_.zero();
}

const Term& MPoly::leading_term() const {
  if (terms_.empty()) throw Error(Errc::kPreconditionFailure, "zero polynomial");
  return terms_.back();
}

Felt MPoly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m,
      [](const Term& t, const Monomial& key) { return t.mono < key; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return ctx_.zero();
}

bool MPoly::is_multilinear() const {
  for (const Term& t : terms_) {
    for (std::size_t i = 0; i < arity_; ++i) {
      if (t.mono.exponent(i) > 1) return false;
    }
  }
  return true;
}

unsigned MPoly::degree_in(std::size_t i) const {
  check_var(i);
  unsigned d = 0;
  for (const Term& t : terms_) d = std::max(d, t.mono.exponent(i));
  return d;
}

unsigned MPoly::total_degree() const {
  return terms_.empty() ? 0 : terms_.back().mono.degree();
}

std::vector<std::size_t> MPoly::variables() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < arity_; ++i) {
    for (const Term& t : terms_) {
      if (t.mono.exponent(i) != 0) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

Felt MPoly::evaluate(std::span<const Felt> point) const {
  if (point.size() != arity_) {
    throw Error(Errc::kArityMismatch,
                "assignment of length " + std::to_string(point.size()) +
                    " for arity " + std::to_string(arity_));
  }
  Felt acc = ctx_.zero();
  for (const Term& t : terms_) {
    Felt v = t.coeff;
    for (std::size_t i = 0; i < arity_ && v.v != 0; ++i) {
      unsigned e = t.mono.exponent(i);
      if (e == 1) {
        v = ctx_.mul(v, point[i]);
      } else if (e > 1) {
        v = ctx_.mul(v, ctx_.pow(point[i], e));
      }
    }
    acc = ctx_.add(acc, v);
  }
  return acc;
}

MPoly MPoly::restrict(std::size_t i, Felt value) const {
  check_var(i);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (Term t : terms_) {
    unsigned e = t.mono.exponent(i);
    if (e != 0) {
      t.coeff = ctx_.mul(t.coeff, ctx_.pow(value, e));
      t.mono.set_exponent(i, 0);
    }
    out.push_back(t);
  }
  return from_terms(ctx_, arity_, std::move(out));
}

MPoly MPoly::restrict_many(std::span<const std::size_t> vars,
                           std::span<const Felt> point) const {
  if (point.size() != arity_) {
    throw Error(Errc::kArityMismatch, "assignment length differs from arity");
  }
  for (std::size_t i : vars) check_var(i);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (Term t : terms_) {
    for (std::size_t i : vars) {
      unsigned e = t.mono.exponent(i);
      if (e == 0) continue;
      t.coeff = ctx_.mul(t.coeff, ctx_.pow(point[i], e));
      t.mono.set_exponent(i, 0);
    }
    out.push_back(t);
  }
  return from_terms(ctx_, arity_, std::move(out));
}

MPoly MPoly::partial(std::size_t i) const {
  check_var(i);
  std::vector<Term> out;
  for (Term t : terms_) {
    unsigned e = t.mono.exponent(i);
    if (e > 1) {
      throw Error(Errc::kNotMultilinearInVar,
                  "x" + std::to_string(i + 1) + " has degree " +
                      std::to_string(e));
    }
    if (e == 1) {
      t.mono.set_exponent(i, 0);
      out.push_back(t);
    }
  }
  return from_terms(ctx_, arity_, std::move(out));
}

MPoly MPoly::partial2(std::size_t i, std::size_t j) const {
  if (i == j) throw Error(Errc::kSameVariable, "second partial needs i != j");
  return partial(i).partial(j);
}

MPoly MPoly::remap(std::size_t new_arity,
                   std::span<const std::size_t> slot_of) const {
  if (slot_of.size() != arity_) {
    throw Error(Errc::kArityMismatch, "slot map length differs from arity");
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    Monomial m;
    for (std::size_t k = 0; k < arity_; ++k) {
      unsigned e = t.mono.exponent(k);
      if (e == 0) continue;
      if (slot_of[k] >= new_arity) {
        throw Error(Errc::kArityMismatch, "slot map target beyond new arity");
      }
      m = m * Monomial::var(slot_of[k], e);
    }
    out.push_back({m, t.coeff});
  }
  return from_terms(ctx_, new_arity, std::move(out));
}

MPoly MPoly::operator+(const MPoly& o) const {
  check_compatible(o);
  MPoly r(ctx_, arity_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->mono < b->mono)) {
      r.terms_.push_back(*a++);
    } else if (a == terms_.end() || b->mono < a->mono) {
      r.terms_.push_back(*b++);
    } else {
      Felt c = ctx_.add(a->coeff, b->coeff);
      if (c.v != 0) r.terms_.push_back({a->mono, c});
      ++a;
      ++b;
    }
  }
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (Term& t : r.terms_) t.coeff = ctx_.neg(t.coeff);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  check_compatible(o);
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const Term& a : terms_) {
    for (const Term& b : o.terms_) {
      out.push_back({a.mono * b.mono, ctx_.mul(a.coeff, b.coeff)});
    }
  }
  return from_terms(ctx_, arity_, std::move(out));
}

MPoly MPoly::scale(Felt c) const {
  if (c.v == 0) return MPoly(ctx_, arity_);
  MPoly r = *this;
  for (Term& t : r.terms_) t.coeff = ctx_.mul(t.coeff, c);
  return r;
}

MPoly MPoly::add_constant(Felt c) const {
  return *this + constant(ctx_, arity_, c);
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << it->coeff.v;
    for (std::size_t i = 0; i < arity_; ++i) {
      unsigned e = it->mono.exponent(i);
      if (e == 0) continue;
      os << "*x" << (i + 1);
      if (e > 1) os << '^' << e;
    }
  }
  return os.str();
}

bool sz_test(const MPoly& p, std::span<const Felt> sample_set,
             std::size_t reps, Rng& rng) {
  if (sample_set.empty()) throw Error(Errc::kEmptySampleSet, "empty V");
  if (p.is_zero()) return false;
  std::uniform_int_distribution<std::size_t> pick(0, sample_set.size() - 1);
  Assignment point(p.arity());
  for (std::size_t r = 0; r < reps; ++r) {
    for (Felt& v : point) v = sample_set[pick(rng)];
    if (p.evaluate(point).v != 0) return true;
  }
  return false;
}

namespace {

// Coefficient vectors (low degree first) of the Lagrange basis on `nodes`.
std::vector<std::vector<Felt>> lagrange_basis(const FieldCtx& f,
                                              const std::vector<Felt>& nodes) {
  const std::size_t m = nodes.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (nodes[a] == nodes[b]) {
        throw Error(Errc::kDuplicateNode, "repeated interpolation node " +
                                              std::to_string(nodes[a].v));
      }
    }
  }
  std::vector<std::vector<Felt>> basis(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<Felt> num{f.one()};
    Felt denom = f.one();
    for (std::size_t l = 0; l < m; ++l) {
      if (l == k) continue;
      // num *= (t - nodes[l])
      std::vector<Felt> next(num.size() + 1, f.zero());
      for (std::size_t e = 0; e < num.size(); ++e) {
        next[e + 1] = f.add(next[e + 1], num[e]);
        next[e] = f.sub(next[e], f.mul(num[e], nodes[l]));
      }
      num = std::move(next);
      denom = f.mul(denom, f.sub(nodes[k], nodes[l]));
    }
    Felt scale = f.inv(denom);
    for (Felt& c : num) c = f.mul(c, scale);
    basis[k] = std::move(num);
  }
  return basis;
}

}  // namespace

MPoly interpolate_trivariate(const FieldCtx& ctx, const TrivariateGrid& grid) {
  const std::size_t n0 = grid.axes[0].size();
  const std::size_t n1 = grid.axes[1].size();
  const std::size_t n2 = grid.axes[2].size();
  if (n0 == 0 || n1 == 0 || n2 == 0 || grid.values.size() != n0 * n1 * n2) {
    throw Error(Errc::kIncompleteGrid, "sample count does not match the grid");
  }
  std::array<std::vector<std::vector<Felt>>, 3> basis;
  for (std::size_t t = 0; t < 3; ++t) basis[t] = lagrange_basis(ctx, grid.axes[t]);

  // Mode products: values[k0][k1][k2] -> coeffs[e0][e1][e2], one axis at a time.
  std::vector<Felt> cur = grid.values;
  std::array<std::size_t, 3> dims{n0, n1, n2};
  for (std::size_t axis = 0; axis < 3; ++axis) {
    std::vector<Felt> next(cur.size(), ctx.zero());
    std::size_t inner = 1;
    for (std::size_t t = axis + 1; t < 3; ++t) inner *= dims[t];
    std::size_t outer = cur.size() / (inner * dims[axis]);
    const std::size_t m = dims[axis];
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t in = 0; in < inner; ++in) {
        for (std::size_t k = 0; k < m; ++k) {
          Felt v = cur[(o * m + k) * inner + in];
          if (v.v == 0) continue;
          const auto& lk = basis[axis][k];
          for (std::size_t e = 0; e < m; ++e) {
            Felt& dst = next[(o * m + e) * inner + in];
            dst = ctx.add(dst, ctx.mul(v, lk[e]));
          }
        }
      }
    }
    cur = std::move(next);
  }

  std::vector<Term> terms;
  for (std::size_t e0 = 0; e0 < n0; ++e0) {
    for (std::size_t e1 = 0; e1 < n1; ++e1) {
      for (std::size_t e2 = 0; e2 < n2; ++e2) {
        Felt c = cur[(e0 * n1 + e1) * n2 + e2];
        if (c.v == 0) continue;
        Monomial m;
        m.set_exponent(0, static_cast<unsigned>(e0));
        m.set_exponent(1, static_cast<unsigned>(e1));
        m.set_exponent(2, static_cast<unsigned>(e2));
        terms.push_back({m, c});
      }
    }
  }
  return MPoly::from_terms(ctx, 3, std::move(terms));
}

MPoly interpolate_trivariate(
    const FieldCtx& ctx, const std::map<std::array<Felt, 3>, Felt>& samples,
    const std::array<std::vector<Felt>, 3>& axes) {
  TrivariateGrid grid{axes, {}};
  grid.values.reserve(axes[0].size() * axes[1].size() * axes[2].size());
  for (Felt a : axes[0]) {
    for (Felt b : axes[1]) {
      for (Felt c : axes[2]) {
        auto it = samples.find({a, b, c});
        if (it == samples.end()) {
          throw Error(Errc::kIncompleteGrid,
                      "missing sample at (" + std::to_string(a.v) + "," +
                          std::to_string(b.v) + "," + std::to_string(c.v) + ")");
        }
        grid.values.push_back(it->second);
      }
    }
  }
  return interpolate_trivariate(ctx, grid);
}

}  // namespace rop
