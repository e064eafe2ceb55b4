#pragma once

#include <compare>
#include <cstdint>
#include <random>

#include "rop/error.hpp"

namespace rop {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Seeded stream injected into every randomized routine.
using Rng = std::mt19937_64;

// A residue in [0, p). Arithmetic goes through the owning FieldCtx.
struct Felt {
  u64 v = 0;

  friend constexpr bool operator==(Felt, Felt) = default;
  friend constexpr auto operator<=>(Felt, Felt) = default;
};

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(u64 n);

// GF(p) for a prime 2 <= p <= 2^61 - 1. Immutable once built.
class FieldCtx {
 public:
  static constexpr u64 kMaxModulus = (u64{1} << 61) - 1;

  explicit FieldCtx(u64 p);

  u64 modulus() const noexcept { return p_; }

  Felt zero() const noexcept { return {0}; }
  Felt one() const noexcept { return {1 % p_}; }

  // Reduces an arbitrary integer into [0, p).
  Felt from_u64(u64 x) const noexcept { return {x % p_}; }
  Felt from_i64(std::int64_t x) const noexcept;

  Felt add(Felt a, Felt b) const noexcept {
    u64 s = a.v + b.v;
    return {s >= p_ ? s - p_ : s};
  }
  Felt sub(Felt a, Felt b) const noexcept {
    return {a.v >= b.v ? a.v - b.v : a.v + p_ - b.v};
  }
  Felt neg(Felt a) const noexcept { return {a.v == 0 ? 0 : p_ - a.v}; }
  Felt mul(Felt a, Felt b) const noexcept {
    return {static_cast<u64>(static_cast<u128>(a.v) * b.v % p_)};
  }
  Felt pow(Felt a, u64 e) const noexcept;

  // Throws Errc::kDivisionByZero for a == 0.
  Felt inv(Felt a) const;
  Felt div(Felt a, Felt b) const { return mul(a, inv(b)); }

  // Uniform over [0, p); consumes the stream deterministically.
  Felt sample(Rng& rng) const;
  Felt sample_nonzero(Rng& rng) const;

  bool operator==(const FieldCtx& o) const noexcept { return p_ == o.p_; }

 private:
  u64 p_;
};

}  // namespace rop
