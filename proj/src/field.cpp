#include "rop/field.hpp"

#include <array>
#include <string>

namespace rop {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kNotPrime: return "NotPrime";
    case Errc::kOutOfRange: return "OutOfRange";
    case Errc::kDivisionByZero: return "DivisionByZero";
    case Errc::kArityMismatch: return "ArityMismatch";
    case Errc::kFieldMismatch: return "FieldMismatch";
    case Errc::kNotMultilinearInVar: return "NotMultilinearInVar";
    case Errc::kNotMultilinear: return "NotMultilinear";
    case Errc::kSameVariable: return "SameVariable";
    case Errc::kVariableNotPresent: return "VariableNotPresent";
    case Errc::kIndexOverlap: return "IndexOverlap";
    case Errc::kEmptySampleSet: return "EmptySampleSet";
    case Errc::kIncompleteGrid: return "IncompleteGrid";
    case Errc::kDuplicateNode: return "DuplicateNode";
    case Errc::kTooFewVariables: return "TooFewVariables";
    case Errc::kTooManyVariables: return "TooManyVariables";
    case Errc::kNotSeparableAlongCut: return "NotSeparableAlongCut";
    case Errc::kNotDecomposable: return "NotDecomposable";
    case Errc::kPreconditionFailure: return "PreconditionFailure";
    case Errc::kFieldTooSmall: return "FieldTooSmall";
    case Errc::kDegreeTooSmall: return "DegreeTooSmall";
    case Errc::kReadOnceViolation: return "ReadOnceViolation";
    case Errc::kParseError: return "ParseError";
    case Errc::kInvalidParams: return "InvalidParams";
    case Errc::kScaleGuardExceeded: return "ScaleGuardExceeded";
  }
  return "Unknown";
}

namespace {

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kBases = {2,  3,  5,  7,  11, 13,
                                                 17, 19, 23, 29, 31, 37};
  for (u64 q : kBases) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kBases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldCtx::FieldCtx(u64 p) : p_(p) {
  if (p < 2 || p > kMaxModulus) {
    throw Error(Errc::kOutOfRange,
                "modulus " + std::to_string(p) + " outside [2, 2^61-1]");
  }
  if (!is_prime_u64(p)) {
    throw Error(Errc::kNotPrime, std::to_string(p) + " is not prime");
  }
}

Felt FieldCtx::from_i64(std::int64_t x) const noexcept {
  if (x >= 0) return from_u64(static_cast<u64>(x));
  // -(x) may overflow for INT64_MIN; go through unsigned negation.
  u64 mag = u64{0} - static_cast<u64>(x);
  return neg(from_u64(mag));
}

Felt FieldCtx::pow(Felt a, u64 e) const noexcept {
  return {powmod(a.v, e, p_)};
}

Felt FieldCtx::inv(Felt a) const {
  if (a.v == 0) throw Error(Errc::kDivisionByZero, "inverse of 0");
  // Extended Euclid over signed 128-bit to stay exact near 2^61.
  __int128 t = 0, new_t = 1;
  __int128 r = p_, new_r = a.v;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p_;
  return {static_cast<u64>(t)};
}

Felt FieldCtx::sample(Rng& rng) const {
  std::uniform_int_distribution<u64> dist(0, p_ - 1);
  return {dist(rng)};
}

Felt FieldCtx::sample_nonzero(Rng& rng) const {
  std::uniform_int_distribution<u64> dist(1, p_ - 1);
  return {dist(rng)};
}

}  // namespace rop
