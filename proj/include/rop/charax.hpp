#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rop/decomp.hpp"
#include "rop/mpoly.hpp"

namespace rop {

enum class MultiplicandKind { kFirstPartial, kSecondPartial, kBTerm };

// One factor of the certificate product. For kFirstPartial only `i` is
// used. For kBTerm the y-variables outside `shared` and {i, j} stay free.
struct Multiplicand {
  MultiplicandKind kind = MultiplicandKind::kFirstPartial;
  std::size_t i = 0, j = 0;
  std::vector<std::size_t> shared;
  bool identically_zero = false;

  std::string describe() const;
};

// kLocal: B-terms share a single variable {k}. kGlobal: B-terms share
// n - 3 variables, i.e. all but one index m outside {i, j}.
enum class PhiMode { kLocal, kGlobal };

struct Violation {
  Multiplicand factor;
  std::string witness;
};

struct GoodnessReport {
  bool good = true;
  std::vector<Violation> violations;
  std::size_t skipped_zero = 0;
};

// Enumerates the multiplicands once and caches the commutators and second
// partials they need, so many assignments can be checked against one P.
class PhiCertificate {
 public:
  // kExact materializes B-terms symbolically; kRandomized uses `opts.reps`
  // random evaluations per term.
  PhiCertificate(const MPoly& p, PhiMode mode,
                 const ZeroTestOptions& opts = {});

  const MPoly& poly() const { return p_; }
  PhiMode mode() const { return mode_; }
  const std::vector<Multiplicand>& multiplicands() const { return factors_; }

  // Checks every non-identically-zero multiplicand at `a`. B-terms are
  // decided exactly on a 3-point grid per free y-variable (degree <= 2).
  // Requires p >= 3.
  GoodnessReport check(std::span<const Felt> a, bool stop_at_first = false) const;

 private:
  std::size_t pair_index(std::size_t i, std::size_t j) const;

  MPoly p_;
  PhiMode mode_;
  std::vector<Multiplicand> factors_;
  std::vector<MPoly> first_;   // dP/dx_t
  std::vector<MPoly> second_;  // by pair_index
  std::vector<MPoly> delta_;   // by pair_index
};

std::vector<Multiplicand> phi_multiplicands(const MPoly& p, PhiMode mode);

GoodnessReport is_good_assignment(const MPoly& p, std::span<const Felt> a,
                                  PhiMode mode);

struct LocalResult {
  bool locally_rop = true;
  std::optional<std::array<std::size_t, 3>> witness;  // first failing I
};

// Every restriction of P to three variables, the rest fixed to a, is a ROP.
// Subsets are visited in lexicographic order.
LocalResult is_locally_rop(const MPoly& p, std::span<const Felt> a);

enum class RopVerdict { kRop, kReadMany, kIndeterminate };

std::string_view verdict_name(RopVerdict v);

enum class CharacterizeMode {
  kAuto,        // exact zero tags up to 10 variables, randomized above
  kExact,       // exact only; INDETERMINATE when that is not affordable
  kRandomized,  // randomized zero tags always
};

struct CharacterizeOptions {
  std::size_t max_retries = 16;
  CharacterizeMode mode = CharacterizeMode::kAuto;
  std::size_t randomized_reps = 40;
};

inline constexpr std::size_t kExactTagMaxArity = 10;

struct Characterization {
  RopVerdict verdict = RopVerdict::kIndeterminate;
  std::optional<Assignment> good_assignment;
  std::optional<std::array<std::size_t, 3>> witness;
  std::size_t attempts = 0;
  bool randomized_tags = false;
  // Last rejected goodness report when no good assignment was found.
  std::optional<GoodnessReport> last_rejection;
};

// Draws assignments until one is certified good, then decides by
// three-variable restrictions at that assignment.
Characterization characterize(const MPoly& p, Rng& rng,
                              const CharacterizeOptions& opts = {});

}  // namespace rop
