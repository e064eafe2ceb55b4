#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rop/field.hpp"
#include "rop/mpoly.hpp"

namespace rop {

enum class GateOp { kPlus, kTimes };

// Read-once formula. Leaves compute alpha * x_var + beta (alpha != 0); every
// variable labels at most one leaf. Shares immutable subtrees on copy.
class Rof {
 public:
  static Rof leaf(const FieldCtx& ctx, std::size_t arity, std::size_t var,
                  Felt alpha, Felt beta);
  static Rof constant(const FieldCtx& ctx, std::size_t arity, Felt c);
  // Throws kReadOnceViolation if the subtrees share a variable.
  static Rof gate(GateOp op, const Rof& left, const Rof& right);

  const FieldCtx& ctx() const { return ctx_; }
  std::size_t arity() const { return arity_; }
  // Leaf variables, ascending.
  const std::vector<std::size_t>& variables() const;

  Felt eval(std::span<const Felt> point) const;
  MPoly expand() const;

  // S-expression, e.g. "(* (+ (leaf 1 1 1) (leaf 2 1 2)) (leaf 3 2 0))".
  // Leaf variables print 1-based.
  std::string to_string() const;

  struct Node;

 private:
  Rof(const FieldCtx& ctx, std::size_t arity, std::shared_ptr<const Node> root)
      : ctx_(ctx), arity_(arity), root_(std::move(root)) {}

  FieldCtx ctx_;
  std::size_t arity_;
  std::shared_ptr<const Node> root_;
};

struct Rof::Node {
  enum class Kind { kLeaf, kConst, kGate } kind;
  std::size_t var = 0;
  Felt alpha{}, beta{};  // leaf: alpha * x + beta; const: beta
  GateOp op = GateOp::kPlus;
  std::shared_ptr<const Node> left, right;
  std::vector<std::size_t> vars;
};

// `vars_used` distinct variables chosen uniformly from [0, n); tree shape
// uniform over full binary trees with that many leaves; random gate labels,
// leaf coefficients with alpha != 0. vars_used == 0 yields a constant.
Rof random_rof(const FieldCtx& ctx, std::size_t n, std::size_t vars_used,
               Rng& rng);

// Black-box access to a function F^n -> F with a query counter. Single-owner:
// the counter is a plain field.
class Oracle {
 public:
  using Fn = std::function<Felt(std::span<const Felt>)>;

  Oracle(const FieldCtx& ctx, std::size_t arity, Fn fn,
         bool thread_safe = true)
      : ctx_(ctx), arity_(arity), fn_(std::move(fn)), thread_safe_(thread_safe) {}

  const FieldCtx& ctx() const { return ctx_; }
  std::size_t arity() const { return arity_; }
  bool thread_safe() const { return thread_safe_; }

  Felt query(std::span<const Felt> point);

  std::size_t query_count() const { return queries_; }
  void reset_count() { queries_ = 0; }

  // Underlying function without touching the counter; used to layer oracles.
  const Fn& function() const { return fn_; }

 private:
  FieldCtx ctx_;
  std::size_t arity_;
  Fn fn_;
  bool thread_safe_;
  std::size_t queries_ = 0;
};

Oracle as_oracle(const Rof& formula);
Oracle as_oracle(const MPoly& poly);

// Answers base(a) + 1 on a keyed-hash-selected `fraction` of the domain and
// base(a) elsewhere. The key is drawn from `rng`; answers are deterministic
// per point.
Oracle corrupt_oracle(const Oracle& base, double fraction, Rng& rng);

}  // namespace rop
