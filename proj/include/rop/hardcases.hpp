#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rop/mpoly.hpp"

namespace rop {

// Q_n = prod (x_i - 1) + prod x_i, expanded. Read-many for n >= 3.
MPoly q_n(std::size_t n, const FieldCtx& ctx);

// |a|_S: number of coordinates of a that lie in S.
std::size_t size_wrt(std::span<const Felt> a, std::span<const Felt> s);

struct SweepRow {
  u64 p = 0;
  std::size_t n = 0;
  std::size_t samples = 0;
  double good_fraction = 0.0;
  double stderr_ = 0.0;
  bool exhaustive = false;
};

inline constexpr double kExhaustiveSweepLimit = 2e6;

// Fraction of assignments a at which P is 3-locally read-once. Enumerates
// F^n exactly when p^n <= 2e6, otherwise samples `samples` points. Points
// are drawn before the work is split over `threads`, so the result does not
// depend on the thread count.
SweepRow local_rop_fraction(const MPoly& p, std::size_t samples, u64 seed,
                            std::size_t threads = 1);

std::string sweep_csv_header();
std::string to_csv_row(const SweepRow& row);

// Truth table over {0,1}^n; bit t of the row index is x_{t+1}.
class BoolFn {
 public:
  BoolFn(std::size_t n, std::vector<std::uint8_t> table);

  std::size_t arity() const { return n_; }
  bool operator()(std::size_t row) const { return table_[row] != 0; }
  const std::vector<std::uint8_t>& table() const { return table_; }

  bool depends_on(std::size_t var) const;
  bool is_monotone() const;
  // Same arity; `var` becomes a dummy.
  BoolFn restrict(std::size_t var, bool value) const;

  bool operator==(const BoolFn&) const = default;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> table_;
};

// x1 & ... & xn  |  ~x1 & ... & ~xn
BoolFn boolean_f(std::size_t n);
// y & (x1 | ... | xn)  |  x1 & ... & xn, with y the last variable.
BoolFn boolean_g(std::size_t n);

inline constexpr std::size_t kBooleanMaxVars = 10;

// Read-once over {and, or} with negated literals allowed: a constant, a
// literal, or g op h with variable-disjoint read-once g, h.
bool boolean_is_read_once(const BoolFn& f);

}  // namespace rop
