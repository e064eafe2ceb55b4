#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rop/field.hpp"

namespace rop {

// Upper bound on variable slots per polynomial. B-polynomials use two
// blocks of slots, so ambient arities up to 16 are supported for them.
inline constexpr std::size_t kMaxArity = 32;

using Assignment = std::vector<Felt>;

class Monomial {
 public:
  Monomial() = default;

  static Monomial var(std::size_t i, unsigned e = 1);

  unsigned exponent(std::size_t i) const { return exp_[i]; }
  void set_exponent(std::size_t i, unsigned e);
  unsigned degree() const { return degree_; }
  bool is_constant() const { return degree_ == 0; }

  // Exponent-wise sum; throws kOutOfRange past 255 per variable.
  Monomial operator*(const Monomial& o) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  // Graded lex: total degree first, then exponents of x0, x1, ... in turn.
  friend std::strong_ordering operator<=>(const Monomial& a,
                                          const Monomial& b);

 private:
  std::array<std::uint8_t, kMaxArity> exp_{};
  std::uint16_t degree_ = 0;
};

struct Term {
  Monomial mono;
  Felt coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

// Sparse polynomial over GF(p) with a fixed number of variable slots.
// Terms are kept sorted ascending in graded lex with no zero coefficients,
// so structural equality is polynomial equality. Values are immutable: every
// operation returns a new polynomial.
class MPoly {
 public:
  MPoly(const FieldCtx& ctx, std::size_t arity);

  static MPoly constant(const FieldCtx& ctx, std::size_t arity, Felt c);
  static MPoly variable(const FieldCtx& ctx, std::size_t arity, std::size_t i);
  // Normalizes: sorts, merges duplicate monomials, drops zeros.
  static MPoly from_terms(const FieldCtx& ctx, std::size_t arity,
                          std::vector<Term> terms);

  const FieldCtx& ctx() const { return ctx_; }
  std::size_t arity() const { return arity_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Coefficient of the empty monomial.
  Felt constant_term() const;
  // Highest term under graded lex; zero polynomial has none.
  const Term& leading_term() const;
  Felt coefficient(const Monomial& m) const;

  bool is_multilinear() const;
  unsigned degree_in(std::size_t i) const;
  unsigned total_degree() const;
  // Indices of variables occurring in some term, ascending.
  std::vector<std::size_t> variables() const;

  Felt evaluate(std::span<const Felt> point) const;

  MPoly restrict(std::size_t i, Felt value) const;
  // Sets x_i := point[i] for every i in `vars`.
  MPoly restrict_many(std::span<const std::size_t> vars,
                      std::span<const Felt> point) const;

  // P|x_i=1 - P|x_i=0. Requires deg_i(P) <= 1.
  MPoly partial(std::size_t i) const;
  MPoly partial2(std::size_t i, std::size_t j) const;

  // Moves variable k to slot slot_of[k] in a polynomial of `new_arity`
  // slots. Several variables may share a slot (their exponents add).
  MPoly remap(std::size_t new_arity,
              std::span<const std::size_t> slot_of) const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator-() const;
  MPoly scale(Felt c) const;
  MPoly add_constant(Felt c) const;

  bool operator==(const MPoly& o) const {
    return ctx_ == o.ctx_ && arity_ == o.arity_ && terms_ == o.terms_;
  }

  // Canonical text, highest term first, e.g. "2*x1*x2 + 100*x3 + 1".
  // Variables print 1-based.
  std::string to_string() const;

 private:
  void check_compatible(const MPoly& o) const;
  void check_var(std::size_t i) const;

  FieldCtx ctx_;
  std::size_t arity_;
  std::vector<Term> terms_;
};

// Randomized nonzero test: true iff one of `reps` uniform points of V^n is
// a non-root of P.
bool sz_test(const MPoly& p, std::span<const Felt> sample_set,
             std::size_t reps, Rng& rng);

// Axis nodes and values on the full Cartesian grid; values are indexed
// row-major: ((k0 * |axis1|) + k1) * |axis2| + k2.
struct TrivariateGrid {
  std::array<std::vector<Felt>, 3> axes;
  std::vector<Felt> values;
};

// Unique polynomial in slots 0,1,2 of a 3-ary ring with deg_t <= |axis t|-1
// that matches every sample.
MPoly interpolate_trivariate(const FieldCtx& ctx, const TrivariateGrid& grid);
MPoly interpolate_trivariate(
    const FieldCtx& ctx, const std::map<std::array<Felt, 3>, Felt>& samples,
    const std::array<std::vector<Felt>, 3>& axes);

}  // namespace rop
