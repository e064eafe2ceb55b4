#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>
#include <string_view>

#include "json.hpp"

#include "rop/rof.hpp"

namespace rop {

enum class FailureKind { kNotMultilinear, kNotRop };

std::string_view failure_kind_name(FailureKind k);

struct TestReport {
  bool yes = true;
  // 0-based; holds min(n, 3) indices.
  std::optional<std::vector<std::size_t>> failing_set;
  std::optional<FailureKind> failure_kind;
  std::size_t queries = 0;
  u64 seed = 0;
  std::size_t repeats = 1;

  friend bool operator==(const TestReport&, const TestReport&) = default;
};

// {verdict, failing_I, failure_kind, queries, seed, repeats}; failing_I is
// 1-based, and null together with failure_kind on YES.
nlohmann::json to_json(const TestReport& r);

struct TesterOptions {
  // Repeated grid points are answered from a per-run cache. Disable to get
  // exact query accounting.
  bool cache_queries = true;
};

// Smallest field the soundness analysis of read_once_test covers:
// max(1.5 n^4, d) / epsilon.
double read_once_test_field_bound(std::size_t n, std::size_t degree,
                                  double epsilon);

// One random base point; every 3-subset I (lexicographic) is interpolated
// on the grid {0..d}^3 with the other coordinates fixed, then checked for
// multilinearity and read-once-ness. Never rejects a ROP.
TestReport read_once_test(Oracle& oracle, std::size_t degree, double epsilon,
                          u64 seed, const TesterOptions& opts = {});

// One run of the 27-point property tester: base points a, b, c distinct per
// coordinate; each I is interpolated over prod_{i in I} {a_i, b_i, c_i}.
TestReport property_test_once(Oracle& oracle, u64 seed,
                              const TesterOptions& opts = {});

inline constexpr double kPropertyRepeatConstant = 3.0;

// ceil(K / (delta + n^-4)).
std::size_t property_test_repeats(std::size_t n, double delta,
                                  double k = kPropertyRepeatConstant);

// Repeats property_test_once until a NO or the repeat budget is spent; all
// repeats draw from one stream seeded with `seed`.
TestReport property_test(Oracle& oracle, double delta, u64 seed,
                         const TesterOptions& opts = {},
                         double k = kPropertyRepeatConstant);

struct TauEstimate {
  double fraction = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;
};

// Fraction of random aligned triples whose axis interpolant has degree 2.
// `coordinate` pins the axis; otherwise it is drawn uniformly.
TauEstimate tau_estimate(Oracle& oracle, std::size_t samples, u64 seed,
                         std::optional<std::size_t> coordinate = std::nullopt);

}  // namespace rop
