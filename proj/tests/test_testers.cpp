#include <gtest/gtest.h>

#include "rop/charax.hpp"
#include "rop/decomp.hpp"
#include "rop/hardcases.hpp"
#include "rop/testers.hpp"
#include "test_util.hpp"

namespace rop {
namespace {

using testing::P;

std::size_t choose3(std::size_t n) { return n * (n - 1) * (n - 2) / 6; }

TEST(ReadOnceTest, AcceptsRops) {
  FieldCtx f(1009);
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 3 + t % 6;
    Oracle o = as_oracle(random_rof(f, n, n, rng));
    TestReport r = read_once_test(o, n, 0.25, rng());
    ASSERT_TRUE(r.yes);
    ASSERT_FALSE(r.failing_set.has_value());
  }
}

TEST(ReadOnceTest, RejectsSquare) {
  FieldCtx f(1009);
  Oracle o = as_oracle(P(f, 3, "x1^2 + x2"));
  int rejected = 0;
  for (u64 seed = 0; seed < 200; ++seed) {
    TestReport r = read_once_test(o, 2, 0.25, seed);
    if (!r.yes) {
      ++rejected;
      EXPECT_EQ(r.failure_kind, FailureKind::kNotMultilinear);
    }
  }
  EXPECT_GE(rejected, 150);
}

TEST(ReadOnceTest, RejectsQ6) {
  FieldCtx f(11677);
  Oracle o = as_oracle(q_n(6, f));
  int rejected = 0;
  for (u64 seed = 0; seed < 50; ++seed) rejected += !read_once_test(o, 6, 0.25, seed).yes;
  EXPECT_GE(rejected, 40);
}

TEST(ReadOnceTest, ExactQueryCount) {
  FieldCtx f(1009);
  Rng rng(3);
  for (std::size_t n : {3u, 4u, 6u}) {
    for (std::size_t d : {1u, 2u, 4u}) {
      Oracle o = as_oracle(random_rof(f, n, n, rng));
      TestReport r = read_once_test(o, d, 0.5, 7, TesterOptions{false});
      ASSERT_EQ(r.queries, choose3(n) * (d + 1) * (d + 1) * (d + 1));
      ASSERT_EQ(o.query_count(), r.queries);
    }
  }
}

TEST(ReadOnceTest, Preconditions) {
  FieldCtx f(5);
  Oracle o = as_oracle(P(f, 3, "x1"));
  auto code = [&](std::size_t d, double eps) {
    try {
      read_once_test(o, d, eps, 1);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::kParseError;
  };
  EXPECT_EQ(code(0, 0.5), Errc::kDegreeTooSmall);
  EXPECT_EQ(code(5, 0.5), Errc::kFieldTooSmall);
  EXPECT_EQ(code(1, 0.0), Errc::kInvalidParams);
}

TEST(ReadOnceTest, Deterministic) {
  FieldCtx f(11677);
  Oracle o = as_oracle(q_n(5, f));
  for (u64 seed = 0; seed < 10; ++seed) {
    TestReport a = read_once_test(o, 5, 0.25, seed);
    TestReport b = read_once_test(o, 5, 0.25, seed);
    ASSERT_EQ(a, b);
    ASSERT_EQ(to_json(a).dump(), to_json(b).dump());
  }
}

TEST(ReadOnceTest, MatchesBruteForceAtGoodBasePoint) {
  FieldCtx f(1009);
  Rng rng(41);
  for (int t = 0; t < 60; ++t) {
    MPoly p = t % 2 ? random_rof(f, 4, 4, rng).expand()
                    : testing::random_multilinear(f, 4, 4, 0.5, rng);
    Oracle o = as_oracle(p);
    u64 seed = rng();
    TestReport r = read_once_test(o, 1, 0.5, seed);
    // Replay the base point the tester drew.
    Rng replay(seed);
    Assignment a(4);
    for (Felt& v : a) v = f.sample(replay);
    if (!is_good_assignment(p, a, PhiMode::kGlobal).good) continue;
    ASSERT_EQ(r.yes, brute_force_is_rop(p)) << p.to_string();
  }
}

TEST(PropertyTest, AcceptsRops) {
  FieldCtx f(1009);
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 3 + t % 5;
    Oracle o = as_oracle(random_rof(f, n, n, rng));
    ASSERT_TRUE(property_test_once(o, rng()).yes);
  }
  Oracle o = as_oracle(random_rof(f, 5, 5, rng));
  TestReport r = property_test(o, 0.1, 3);
  EXPECT_TRUE(r.yes);
  EXPECT_EQ(r.repeats, property_test_repeats(5, 0.1));
}

TEST(PropertyTest, RepeatCount) {
  // ceil(3 / (0.1 + 5^-4)) = ceil(29.81...) = 30.
  EXPECT_EQ(property_test_repeats(5, 0.1), 30u);
  // ceil(3 / (0.5 + 4^-4)) = ceil(5.95...) = 6.
  EXPECT_EQ(property_test_repeats(4, 0.5), 6u);
  try {
    property_test_repeats(4, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kInvalidParams);
  }
}

TEST(PropertyTest, QueryBudget) {
  FieldCtx f(1009);
  Rng rng(6);
  for (std::size_t n : {3u, 5u, 7u}) {
    Oracle o = as_oracle(random_rof(f, n, n, rng));
    TestReport r = property_test_once(o, 11, TesterOptions{false});
    ASSERT_EQ(r.queries, choose3(n) * 27);
  }
}

TEST(PropertyTest, RejectsQ5) {
  FieldCtx f(100003);
  Oracle o = as_oracle(q_n(5, f));
  int rejected = 0;
  for (u64 seed = 0; seed < 200; ++seed) rejected += !property_test_once(o, seed).yes;
  EXPECT_GE(rejected, 180);
}

TEST(PropertyTest, RejectsCorruptedOracle) {
  FieldCtx f(100003);
  Rng rng(8);
  int rejected = 0;
  for (u64 seed = 0; seed < 100; ++seed) {
    Oracle base = as_oracle(random_rof(f, 5, 5, rng));
    Oracle bad = corrupt_oracle(base, 0.4, rng);
    rejected += !property_test(bad, 0.4, seed).yes;
  }
  EXPECT_GE(rejected, 80);
}

TEST(PropertyTest, TooSmallField) {
  FieldCtx f(2);
  Oracle o = as_oracle(P(f, 3, "x1"));
  try {
    property_test_once(o, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kFieldTooSmall);
  }
}

TEST(Tau, Examples) {
  FieldCtx f(101);
  Rng rng(2);
  Oracle ml = as_oracle(testing::random_multilinear(f, 4, 4, 0.8, rng));
  EXPECT_EQ(tau_estimate(ml, 2000, 1).fraction, 0.0);
  Oracle sq = as_oracle(P(f, 3, "x1^2"));
  TauEstimate t = tau_estimate(sq, 2000, 1, 0);
  EXPECT_EQ(t.fraction, 1.0);
  EXPECT_EQ(t.samples, 2000u);
}

// x1*x2*x3 corrupted on a keyed 20% of the domain sits about 0.2 away from
// every multilinear function; tau should clear 0.2 / (30 * 3).
TEST(Tau, FarFunctionLowerBound) {
  FieldCtx f(1009);
  Rng rng(4);
  Oracle base = as_oracle(P(f, 3, "x1*x2*x3"));
  Oracle far = corrupt_oracle(base, 0.2, rng);
  TauEstimate t = tau_estimate(far, 5000, 9);
  EXPECT_GE(t.fraction + 3 * t.stderr_, 0.2 / 90);
}

TEST(Report, JsonShape) {
  TestReport r;
  r.yes = false;
  r.failing_set = std::vector<std::size_t>{0, 2, 3};
  r.failure_kind = FailureKind::kNotRop;
  r.queries = 64;
  r.seed = 7;
  auto j = to_json(r);
  EXPECT_EQ(j.dump(),
            R"({"failing_I":[1,3,4],"failure_kind":"NOT_ROP","queries":64,"repeats":1,"seed":7,"verdict":"NO"})");
  EXPECT_TRUE(to_json(TestReport{}).at("failing_I").is_null());
}

}  // namespace
}  // namespace rop
