#pragma once

// Test-side reference computations that avoid the library's commutator and
// gate-graph code paths.

#include <cstddef>
#include <optional>
#include <vector>

#include "rop/mpoly.hpp"
#include "test_util.hpp"

namespace rop::testing {

// Splits every support mask into its L-part and R-part and checks that
// t - c*[mask 0] is an outer product. Returns the constant c for the
// first bipartition with i in L and j in R that works.
inline std::optional<Felt> decomposable_by_cuts(const MPoly& p, std::size_t i,
                                                std::size_t j) {
  const FieldCtx& f = p.ctx();
  const std::size_t n = p.arity();
  const std::vector<Felt> t = coeff_table(p);
  const std::size_t full = (std::size_t{1} << n) - 1;
  const std::size_t bi = std::size_t{1} << i, bj = std::size_t{1} << j;
  for (std::size_t left = 0; left <= full; ++left) {
    if (!(left & bi) || (left & bj)) continue;
    const std::size_t right = full ^ left;
    // Some a within L containing x_i and b within R containing x_j must
    // carry a nonzero coefficient for a product h*g with x_i | h, x_j | g.
    std::optional<std::pair<std::size_t, std::size_t>> pivot;
    for (std::size_t a = left; a && !pivot; a = (a - 1) & left) {
      for (std::size_t b = right; b && !pivot; b = (b - 1) & right) {
        if (t[a | b].v != 0) pivot = {a, b};
      }
    }
    if (!pivot) continue;
    auto [r, s] = *pivot;
    // Entry (0,0) of a rank-1 matrix is M[0][s] * M[r][0] / M[r][s].
    Felt c = f.sub(t[0], f.div(f.mul(t[s], t[r]), t[r | s]));
    auto m = [&](std::size_t a, std::size_t b) {
      Felt v = t[a | b];
      return (a | b) == 0 ? f.sub(v, c) : v;
    };
    bool rank_one = true;
    for (std::size_t a = left;; a = (a - 1) & left) {
      for (std::size_t b = right;; b = (b - 1) & right) {
        if (f.mul(m(a, b), m(r, s)) != f.mul(m(a, s), m(r, b))) rank_one = false;
        if (!rank_one || b == 0) break;
      }
      if (!rank_one || a == 0) break;
    }
    if (rank_one) return c;
  }
  return std::nullopt;
}

}  // namespace rop::testing
