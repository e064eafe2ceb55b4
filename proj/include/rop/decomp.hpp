#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rop/mpoly.hpp"

namespace rop {

// Delta_ij P = P * d2P/dx_i dx_j - dP/dx_i * dP/dx_j. Free of x_i and x_j;
// degree <= 2 in every other variable.
MPoly commutator(const MPoly& p, std::size_t i, std::size_t j);

struct DecompResult {
  bool decomposable = false;
  std::optional<Felt> c;    // set iff decomposable
  bool degenerate = false;  // d2P/dx_i dx_j == 0
};

// Decides whether P = h * g + c with x_i only in h and x_j only in g, and
// recovers c. Requires i, j in var(P) and P multilinear.
DecompResult decompose(const MPoly& p, std::size_t i, std::size_t j);

// If P|x_k=a_t is (i,j,c)-decomposable with one common c for three distinct
// a_t, then P is (i,j,c)-decomposable; the result is checked against P.
DecompResult restriction_vote_decompose(const MPoly& p, std::size_t i,
                                        std::size_t j, std::size_t k,
                                        std::array<Felt, 3> values);

// Two-copy determinant
//   Delta(x) * S(y) - S(x) * Delta(y),  S = d2P/dx_i dx_j,
// with y_k identified with x_k for k in `shared`. Slots 0..n-1 hold x,
// n..2n-1 hold y (a shared y_k stays in slot k).
struct BPoly {
  std::size_t i = 0, j = 0;
  std::vector<std::size_t> shared;
  MPoly value;
};

BPoly b_poly(const MPoly& p, std::size_t i, std::size_t j,
             std::span<const std::size_t> shared);

enum class ZeroTestMode { kExact, kRandomized };

struct ZeroTestOptions {
  ZeroTestMode mode = ZeroTestMode::kExact;
  std::size_t reps = 40;
  Rng* rng = nullptr;  // required for kRandomized
};

// B^J(P) == 0 as a formal polynomial. For J empty this uses
// "d2P == 0 or P is (i,j,F)-decomposable" instead of materializing.
bool b_is_zero(const MPoly& p, std::size_t i, std::size_t j,
               std::span<const std::size_t> shared,
               const ZeroTestOptions& opts = {});

class GateGraph {
 public:
  GateGraph() = default;
  GateGraph(std::vector<std::size_t> vertices, std::size_t arity);

  const std::vector<std::size_t>& vertices() const { return vertices_; }
  bool has_vertex(std::size_t v) const;
  bool adjacent(std::size_t a, std::size_t b) const;
  void add_edge(std::size_t a, std::size_t b);
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  // Connected components as sorted vertex lists, ordered by least vertex.
  std::vector<std::vector<std::size_t>> components() const;
  bool connected() const { return components().size() <= 1; }

  // Copy with vertex v and its edges removed.
  GateGraph without(std::size_t v) const;

  bool operator==(const GateGraph& o) const;

 private:
  std::vector<std::size_t> vertices_;
  std::size_t arity_ = 0;
  std::vector<bool> adj_;  // arity_ x arity_
};

// Vertices var(P); (i,j) adjacent iff d2P/dx_i dx_j != 0.
GateGraph gate_graph(const MPoly& p);

// Requires |var(P)| >= 2.
bool is_additively_separable(const MPoly& p);

// P = P1 + P2 with P1 over `component`, P2 over the rest and P2(0) = 0.
std::pair<MPoly, MPoly> additive_split(const MPoly& p,
                                       std::span<const std::size_t> component);

struct MultiplicativeSplit {
  MPoly h;  // contains x_i, leading coefficient 1
  MPoly g;  // contains x_j
  Felt c;
};

// P = h * g + c; throws kNotDecomposable if no such split separates i, j.
MultiplicativeSplit multiplicative_split(const MPoly& p, std::size_t i,
                                         std::size_t j);

// Read-once test for polynomials with at most three live variables: true
// iff at least two of B_12, B_13, B_23 vanish.
bool trivariate_is_rop(const MPoly& p);

// Independent decider straight from the structural definition: a ROP with
// two or more variables is a sum or a (product + constant) of
// variable-disjoint ROPs. Searches every bipartition of the live
// variables; no commutators or gate graphs are involved.
inline constexpr std::size_t kBruteForceMaxVars = 12;
bool brute_force_is_rop(const MPoly& p);

}  // namespace rop
