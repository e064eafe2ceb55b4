#include "rop/rof.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace rop {

namespace {

using NodePtr = std::shared_ptr<const Rof::Node>;

Felt eval_node(const FieldCtx& f, const Rof::Node& n,
               std::span<const Felt> point) {
  switch (n.kind) {
    case Rof::Node::Kind::kLeaf:
      return f.add(f.mul(n.alpha, point[n.var]), n.beta);
    case Rof::Node::Kind::kConst:
      return n.beta;
    case Rof::Node::Kind::kGate: {
      Felt l = eval_node(f, *n.left, point);
      Felt r = eval_node(f, *n.right, point);
      return n.op == GateOp::kPlus ? f.add(l, r) : f.mul(l, r);
    }
  }
  return f.zero();
}

MPoly expand_node(const FieldCtx& f, std::size_t arity, const Rof::Node& n) {
  switch (n.kind) {
    case Rof::Node::Kind::kLeaf:
      return MPoly::variable(f, arity, n.var).scale(n.alpha).add_constant(n.beta);
    case Rof::Node::Kind::kConst:
      return MPoly::constant(f, arity, n.beta);
    case Rof::Node::Kind::kGate: {
      MPoly l = expand_node(f, arity, *n.left);
      MPoly r = expand_node(f, arity, *n.right);
      return n.op == GateOp::kPlus ? l + r : l * r;
    }
  }
  return MPoly(f, arity);
}

void print_node(std::ostream& os, const Rof::Node& n) {
  switch (n.kind) {
    case Rof::Node::Kind::kLeaf:
      os << "(leaf " << (n.var + 1) << ' ' << n.alpha.v << ' ' << n.beta.v
         << ')';
      break;
    case Rof::Node::Kind::kConst:
      os << "(const " << n.beta.v << ')';
      break;
    case Rof::Node::Kind::kGate:
      os << '(' << (n.op == GateOp::kPlus ? '+' : '*') << ' ';
      print_node(os, *n.left);
      os << ' ';
      print_node(os, *n.right);
      os << ')';
      break;
  }
}

// Catalan-weighted split so that shapes are uniform over full binary trees.
std::size_t draw_left_leaves(std::size_t leaves, Rng& rng) {
  static const std::vector<long double> catalan = [] {
    std::vector<long double> c(64, 0.0L);
    c[0] = 1.0L;
    for (std::size_t k = 1; k < c.size(); ++k) {
      for (std::size_t i = 0; i < k; ++i) c[k] += c[i] * c[k - 1 - i];
    }
    return c;
  }();
  std::vector<long double> w(leaves - 1);
  for (std::size_t l = 1; l < leaves; ++l) {
    w[l - 1] = catalan[l - 1] * catalan[leaves - l - 1];
  }
  std::discrete_distribution<std::size_t> dist(w.begin(), w.end());
  return dist(rng) + 1;
}

Rof build_random(const FieldCtx& f, std::size_t arity,
                 std::span<const std::size_t> vars, Rng& rng) {
  if (vars.size() == 1) {
    Felt alpha = f.sample_nonzero(rng);
    Felt beta = f.sample(rng);
    return Rof::leaf(f, arity, vars[0], alpha, beta);
  }
  std::size_t left = draw_left_leaves(vars.size(), rng);
  GateOp op = std::bernoulli_distribution(0.5)(rng) ? GateOp::kPlus
                                                    : GateOp::kTimes;
  Rof l = build_random(f, arity, vars.first(left), rng);
  Rof r = build_random(f, arity, vars.subspan(left), rng);
  return Rof::gate(op, l, r);
}

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rof Rof::leaf(const FieldCtx& ctx, std::size_t arity, std::size_t var,
              Felt alpha, Felt beta) {
  if (var >= arity) {
    throw Error(Errc::kArityMismatch, "leaf variable beyond arity");
  }
  if (ctx.from_u64(alpha.v).v == 0) {
    throw Error(Errc::kPreconditionFailure, "leaf coefficient alpha is 0");
  }
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kLeaf;
  n->var = var;
  n->alpha = ctx.from_u64(alpha.v);
  n->beta = ctx.from_u64(beta.v);
  n->vars = {var};
  return Rof(ctx, arity, std::move(n));
}

Rof Rof::constant(const FieldCtx& ctx, std::size_t arity, Felt c) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kConst;
  n->beta = ctx.from_u64(c.v);
  return Rof(ctx, arity, std::move(n));
}

Rof Rof::gate(GateOp op, const Rof& left, const Rof& right) {
  if (!(left.ctx_ == right.ctx_)) {
    throw Error(Errc::kFieldMismatch, "gate inputs over different fields");
  }
  if (left.arity_ != right.arity_) {
    throw Error(Errc::kArityMismatch, "gate inputs with different arities");
  }
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kGate;
  n->op = op;
  n->left = left.root_;
  n->right = right.root_;
  std::set_union(left.root_->vars.begin(), left.root_->vars.end(),
                 right.root_->vars.begin(), right.root_->vars.end(),
                 std::back_inserter(n->vars));
  if (n->vars.size() != left.root_->vars.size() + right.root_->vars.size()) {
    throw Error(Errc::kReadOnceViolation,
                "a variable labels more than one leaf");
  }
  return Rof(left.ctx_, left.arity_, std::move(n));
}

const std::vector<std::size_t>& Rof::variables() const { return root_->vars; }

Felt Rof::eval(std::span<const Felt> point) const {
  if (point.size() != arity_) {
    throw Error(Errc::kArityMismatch, "assignment length differs from arity");
  }
  return eval_node(ctx_, *root_, point);
}

MPoly Rof::expand() const { return expand_node(ctx_, arity_, *root_); }

std::string Rof::to_string() const {
  std::ostringstream os;
  print_node(os, *root_);
  return os.str();
}

Rof random_rof(const FieldCtx& ctx, std::size_t n, std::size_t vars_used,
               Rng& rng) {
  if (vars_used > n) {
    throw Error(Errc::kInvalidParams, "vars_used exceeds arity");
  }
  if (vars_used == 0) return Rof::constant(ctx, n, ctx.sample(rng));
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(vars_used);
  return build_random(ctx, n, all, rng);
}

Felt Oracle::query(std::span<const Felt> point) {
  if (point.size() != arity_) {
    throw Error(Errc::kArityMismatch,
                "query of length " + std::to_string(point.size()) +
                    " for oracle arity " + std::to_string(arity_));
  }
  ++queries_;
  return fn_(point);
}

Oracle as_oracle(const Rof& formula) {
  return Oracle(formula.ctx(), formula.arity(),
                [formula](std::span<const Felt> a) { return formula.eval(a); });
}

Oracle as_oracle(const MPoly& poly) {
  return Oracle(poly.ctx(), poly.arity(),
                [poly](std::span<const Felt> a) { return poly.evaluate(a); });
}

Oracle corrupt_oracle(const Oracle& base, double fraction, Rng& rng) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw Error(Errc::kInvalidParams, "corruption fraction outside [0,1]");
  }
  const u64 key = rng();
  FieldCtx f = base.ctx();
  Oracle::Fn inner = base.function();
  auto fn = [f, inner, key, fraction](std::span<const Felt> a) {
    u64 h = splitmix64(key);
    for (Felt v : a) h = splitmix64(h ^ v.v);
    double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    Felt y = inner(a);
    return u < fraction ? f.add(y, f.one()) : y;
  };
  return Oracle(f, base.arity(), std::move(fn), base.thread_safe());
}

}  // namespace rop
