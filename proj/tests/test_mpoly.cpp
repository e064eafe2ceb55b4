#include <gtest/gtest.h>

#include <map>

#include "rop/hardcases.hpp"
#include "rop/mpoly.hpp"
#include "test_util.hpp"

namespace rop {
namespace {

using testing::P;
using testing::pt;

TEST(MPoly, Evaluate) {
  FieldCtx f(101);
  EXPECT_EQ(P(f, 2, "x1*x2 + 3").evaluate(pt(f, {2, 5})).v, 13u);
  EXPECT_EQ(MPoly(f, 3).evaluate(pt(f, {4, 5, 6})).v, 0u);
  EXPECT_EQ(q_n(3, f).evaluate(pt(f, {1, 1, 1})).v, 1u);
}

TEST(MPoly, EvaluateArityMismatch) {
  FieldCtx f(101);
  try {
    P(f, 2, "x1").evaluate(pt(f, {1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kArityMismatch);
  }
}

TEST(MPoly, Restrict) {
  FieldCtx f(101);
  MPoly p = P(f, 3, "x1*x2 + x3");
  EXPECT_EQ(p.restrict(0, f.zero()), P(f, 3, "x3"));
  EXPECT_EQ(p.restrict(0, f.one()), P(f, 3, "x2 + x3"));
  EXPECT_EQ(q_n(3, f).restrict(2, f.one()), P(f, 3, "x1*x2"));
}

TEST(MPoly, RestrictMany) {
  FieldCtx f(101);
  MPoly q = q_n(4, f);
  Assignment a = pt(f, {3, 9, 27, 81});
  std::vector<std::size_t> all = {0, 1, 2, 3};
  MPoly c = q.restrict_many(all, a);
  EXPECT_TRUE(c.is_constant());
  EXPECT_EQ(c.constant_term(), q.evaluate(a));
  EXPECT_EQ(q.restrict_many({}, a), q);
  std::vector<std::size_t> first = {0};
  EXPECT_EQ(q.restrict_many(first, a), q.restrict(0, a[0]));
}

TEST(MPoly, RestrictCommutes) {
  FieldCtx f(31);
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    MPoly p = testing::random_multilinear(f, 4, 4, 0.6, rng);
    Felt a = f.sample(rng), b = f.sample(rng);
    ASSERT_EQ(p.restrict(0, a).restrict(2, b), p.restrict(2, b).restrict(0, a));
  }
}

TEST(MPoly, Partial) {
  FieldCtx f(101);
  EXPECT_EQ(P(f, 3, "x1*x2 + x3").partial(0), P(f, 3, "x2"));
  EXPECT_TRUE(P(f, 3, "7").partial(1).is_zero());
  EXPECT_EQ(q_n(3, f).partial(0), P(f, 3, "2*x2*x3 - x2 - x3 + 1"));
  try {
    P(f, 2, "x1^2").partial(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kNotMultilinearInVar);
  }
}

TEST(MPoly, SecondPartial) {
  FieldCtx f(101);
  EXPECT_EQ(P(f, 2, "x1*x2").partial2(0, 1), P(f, 2, "1"));
  EXPECT_TRUE(P(f, 2, "x1 + x2").partial2(0, 1).is_zero());
  EXPECT_EQ(q_n(3, f).partial2(0, 1), P(f, 3, "2*x3 - 1"));
  EXPECT_EQ(q_n(4, f).partial2(0, 1), q_n(4, f).partial2(1, 0));
  try {
    P(f, 2, "x1*x2").partial2(1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kSameVariable);
  }
}

TEST(MPoly, Variables) {
  FieldCtx f(101);
  EXPECT_EQ(P(f, 3, "x1*x2 + 3").variables(), (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(MPoly(f, 3).variables().empty());
  EXPECT_EQ(q_n(5, f).variables().size(), 5u);
  EXPECT_EQ(q_n(4, FieldCtx(2)).variables().size(), 4u);
}

TEST(MPoly, PartialVanishesIffVariableAbsent) {
  FieldCtx f(7);
  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    MPoly p = testing::random_multilinear(f, 4, 4, 0.3, rng);
    auto vars = p.variables();
    for (std::size_t i = 0; i < 4; ++i) {
      bool present = std::find(vars.begin(), vars.end(), i) != vars.end();
      ASSERT_EQ(p.partial(i).is_zero(), !present);
    }
  }
}

TEST(MPoly, RingOperations) {
  FieldCtx f(101);
  MPoly p = q_n(3, f);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(P(f, 1, "x1 + 1") * P(f, 1, "x1 - 1"), P(f, 1, "x1^2 - 1"));
  EXPECT_EQ(p.scale(f.from_u64(2)), p + p);
  EXPECT_EQ(-p + p, MPoly(f, 3));
  EXPECT_EQ(p.add_constant(f.one()) - p, P(f, 3, "1"));
}

TEST(MPoly, MixedContextsRejected) {
  FieldCtx f(101), g(103);
  try {
    (void)(P(f, 2, "x1") + P(g, 2, "x1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kFieldMismatch);
  }
  try {
    (void)(P(f, 2, "x1") * P(f, 3, "x1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kArityMismatch);
  }
}

TEST(MPoly, ProductDegreesAdd) {
  FieldCtx f(1009);
  Rng rng(5);
  std::uniform_int_distribution<unsigned> e(0, 3);
  for (int t = 0; t < 200; ++t) {
    auto sparse = [&] {
      std::vector<Term> ts;
      for (int k = 0; k < 4; ++k) {
        Monomial m;
        for (std::size_t v = 0; v < 3; ++v) m.set_exponent(v, e(rng));
        ts.push_back({m, f.sample_nonzero(rng)});
      }
      return MPoly::from_terms(f, 3, ts);
    };
    MPoly a = sparse(), b = sparse();
    if (a.is_zero() || b.is_zero()) continue;
    MPoly ab = a * b;
    for (std::size_t v = 0; v < 3; ++v) {
      ASSERT_EQ(ab.degree_in(v), a.degree_in(v) + b.degree_in(v));
    }
  }
}

TEST(MPoly, ProductRuleOnDisjointMultilinear) {
  FieldCtx f(101);
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    // a over x1,x2 and b over x3,x4 keep the product multilinear.
    MPoly a = testing::random_multilinear(f, 4, 2, 0.7, rng);
    std::vector<std::size_t> shift = {2, 3, 0, 1};
    MPoly b = testing::random_multilinear(f, 4, 2, 0.7, rng).remap(4, shift);
    for (std::size_t i = 0; i < 4; ++i) {
      ASSERT_EQ((a * b).partial(i), a * b.partial(i) + b * a.partial(i));
      ASSERT_EQ((a + b).partial(i), a.partial(i) + b.partial(i));
    }
  }
}

TEST(MPoly, FormalVersusFunctionalZero) {
  FieldCtx f2(2);
  MPoly p = P(f2, 1, "x1^2 + 1*x1");  // x^2 - x over GF(2)
  EXPECT_FALSE(p.is_zero());
  EXPECT_FALSE(p.is_multilinear());
  for (u64 v : {0, 1}) EXPECT_EQ(p.evaluate(pt(f2, {static_cast<int>(v)})).v, 0u);
  EXPECT_TRUE((P(f2, 1, "x1") - P(f2, 1, "x1")).is_zero());
}

// Individual degree <= 2 over GF(5): zero iff it vanishes on {0,1,2}^3.
TEST(MPoly, ZeroAgreesWithGridEvaluation) {
  FieldCtx f(5);
  Rng rng(17);
  std::uniform_int_distribution<unsigned> e(0, 2);
  for (int t = 0; t < 2000; ++t) {
    std::vector<Term> ts;
    std::size_t k = rng() % 4;
    for (std::size_t s = 0; s < k; ++s) {
      Monomial m;
      for (std::size_t v = 0; v < 3; ++v) m.set_exponent(v, e(rng));
      ts.push_back({m, f.sample(rng)});
    }
    MPoly p = MPoly::from_terms(f, 3, ts);
    bool vanish = true;
    for (u64 a = 0; a < 3 && vanish; ++a)
      for (u64 b = 0; b < 3 && vanish; ++b)
        for (u64 c = 0; c < 3 && vanish; ++c)
          vanish = p.evaluate(Assignment{{a}, {b}, {c}}).v == 0;
    ASSERT_EQ(p.is_zero(), vanish) << p.to_string();
  }
}

TEST(MPoly, SzTest) {
  FieldCtx f(101);
  Rng rng(1);
  std::vector<Felt> all, nonzero;
  for (u64 v = 0; v < 101; ++v) {
    all.push_back({v});
    if (v) nonzero.push_back({v});
  }
  EXPECT_FALSE(sz_test(MPoly(f, 2), all, 10, rng));
  EXPECT_TRUE(sz_test(P(f, 2, "x1"), nonzero, 1, rng));
  try {
    sz_test(P(f, 2, "x1"), {}, 1, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kEmptySampleSet);
  }
}

TEST(MPoly, SzTestFalseNegativeRate) {
  FieldCtx f(101);
  Rng rng(2);
  // Degree 4 with many roots in V = {1..100}.
  MPoly p = P(f, 2, "x1*x2*x1*x2 - 1");
  std::vector<Felt> v;
  for (u64 x = 1; x <= 100; ++x) v.push_back({x});
  int misses = 0;
  for (int t = 0; t < 10000; ++t) misses += !sz_test(p, v, 3, rng);
  // Bound (4/100)^3 = 6.4e-5 gives an expected 0.64 misses.
  EXPECT_LE(misses, 5);
}

TEST(MPoly, InterpolateConstantAndProduct) {
  FieldCtx f(101);
  TrivariateGrid g;
  for (auto& ax : g.axes) ax = {{0}, {1}, {2}};
  g.values.assign(27, f.from_u64(5));
  EXPECT_EQ(interpolate_trivariate(f, g), P(f, 3, "5"));

  std::map<std::array<Felt, 3>, Felt> samples;
  MPoly xyz = P(f, 3, "x1*x2*x3"), sq = P(f, 3, "x1^2");
  for (u64 a = 0; a < 3; ++a)
    for (u64 b = 0; b < 3; ++b)
      for (u64 c = 0; c < 3; ++c) {
        samples[{Felt{a}, Felt{b}, Felt{c}}] = xyz.evaluate(Assignment{{a}, {b}, {c}});
      }
  EXPECT_EQ(interpolate_trivariate(f, samples, g.axes), xyz);
  for (auto& [k, v] : samples) v = sq.evaluate(Assignment{k[0], k[1], k[2]});
  MPoly back = interpolate_trivariate(f, samples, g.axes);
  EXPECT_EQ(back, sq);
  EXPECT_FALSE(back.is_multilinear());
}

TEST(MPoly, InterpolateErrors) {
  FieldCtx f(101);
  TrivariateGrid g;
  g.axes = {std::vector<Felt>{{0}, {0}}, {{0}}, {{0}}};
  g.values.assign(2, f.one());
  try {
    interpolate_trivariate(f, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDuplicateNode);
  }
  std::map<std::array<Felt, 3>, Felt> samples;
  samples[{Felt{0}, Felt{0}, Felt{0}}] = f.one();
  std::array<std::vector<Felt>, 3> axes = {std::vector<Felt>{{0}, {1}}, {{0}}, {{0}}};
  try {
    interpolate_trivariate(f, samples, axes);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kIncompleteGrid);
  }
}

TEST(MPoly, InterpolationRoundTrip) {
  FieldCtx f(1009);
  Rng rng(23);
  for (int t = 0; t < 1000; ++t) {
    std::array<unsigned, 3> d = {unsigned(rng() % 4), unsigned(rng() % 4),
                                 unsigned(rng() % 4)};
    std::vector<Term> ts;
    for (int k = 0; k < 6; ++k) {
      Monomial m;
      for (std::size_t v = 0; v < 3; ++v) m.set_exponent(v, rng() % (d[v] + 1));
      ts.push_back({m, f.sample(rng)});
    }
    MPoly p = MPoly::from_terms(f, 3, ts);
    TrivariateGrid g;
    for (std::size_t v = 0; v < 3; ++v) {
      while (g.axes[v].size() < d[v] + 1) {
        Felt x = f.sample(rng);
        if (std::find(g.axes[v].begin(), g.axes[v].end(), x) == g.axes[v].end())
          g.axes[v].push_back(x);
      }
    }
    for (Felt a : g.axes[0])
      for (Felt b : g.axes[1])
        for (Felt c : g.axes[2]) g.values.push_back(p.evaluate(Assignment{a, b, c}));
    ASSERT_EQ(interpolate_trivariate(f, g), p);
  }
}

TEST(MPoly, ToStringIsCanonical) {
  FieldCtx f(101);
  EXPECT_EQ(P(f, 3, "1 + 100*x3 + 2*x2*x1").to_string(), "2*x1*x2 + 100*x3 + 1");
  EXPECT_EQ(MPoly(f, 2).to_string(), "0");
}

}  // namespace
}  // namespace rop
