#include "rop/testers.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rop/decomp.hpp"

namespace rop {

std::string_view failure_kind_name(FailureKind k) {
  return k == FailureKind::kNotMultilinear ? "NOT_MULTILINEAR" : "NOT_ROP";
}

nlohmann::json to_json(const TestReport& r) {
  nlohmann::json j;
  j["verdict"] = r.yes ? "YES" : "NO";
  if (r.failing_set) {
    std::vector<std::size_t> one_based;
    for (std::size_t i : *r.failing_set) one_based.push_back(i + 1);
    j["failing_I"] = one_based;
  } else {
    j["failing_I"] = nullptr;
  }
  if (r.failure_kind) {
    j["failure_kind"] = failure_kind_name(*r.failure_kind);
  } else {
    j["failure_kind"] = nullptr;
  }
  j["queries"] = r.queries;
  j["seed"] = r.seed;
  j["repeats"] = r.repeats;
  return j;
}

namespace {

class QueryCache {
 public:
  QueryCache(Oracle& oracle, bool enabled) : oracle_(oracle), enabled_(enabled) {}

  Felt operator()(const Assignment& point) {
    if (!enabled_) return oracle_.query(point);
    auto it = cache_.find(point);
    if (it != cache_.end()) return it->second;
    Felt v = oracle_.query(point);
    cache_.emplace(point, v);
    return v;
  }

 private:
  Oracle& oracle_;
  bool enabled_;
  std::map<Assignment, Felt> cache_;
};

// Calls fn(I) for every min(n,3)-subset of [0, n) in lexicographic order;
// stops when fn returns false.
template <typename Fn>
void for_each_triple(std::size_t n, Fn&& fn) {
  if (n < 3) {
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < n; ++i) all.push_back(i);
    fn(all);
    return;
  }
  std::vector<std::size_t> set(3);
  for (set[0] = 0; set[0] < n; ++set[0]) {
    for (set[1] = set[0] + 1; set[1] < n; ++set[1]) {
      for (set[2] = set[1] + 1; set[2] < n; ++set[2]) {
        if (!fn(set)) return;
      }
    }
  }
}

// Interpolates the restriction of the oracle to the coordinates in `set`
// (others at `base`) over the Cartesian product of `nodes[t]` and applies the
// multilinearity and read-once checks. Returns the failure, if any.
std::optional<FailureKind> check_restriction(
    const FieldCtx& f, QueryCache& ask, const Assignment& base,
    const std::vector<std::size_t>& set,
    const std::array<std::vector<Felt>, 3>& nodes) {
  TrivariateGrid grid;
  for (std::size_t t = 0; t < 3; ++t) {
    grid.axes[t] = t < set.size() ? nodes[t] : std::vector<Felt>{f.zero()};
  }
  Assignment point = base;
  for (Felt u : grid.axes[0]) {
    for (Felt v : grid.axes[1]) {
      for (Felt w : grid.axes[2]) {
        const std::array<Felt, 3> coords{u, v, w};
        for (std::size_t t = 0; t < set.size(); ++t) point[set[t]] = coords[t];
        grid.values.push_back(ask(point));
      }
    }
  }
  MPoly local = interpolate_trivariate(f, grid);
  if (!local.is_multilinear()) return FailureKind::kNotMultilinear;
  if (!trivariate_is_rop(local)) return FailureKind::kNotRop;
  return std::nullopt;
}

void require_arity(const Oracle& oracle) {
  if (oracle.arity() == 0) {
    throw Error(Errc::kPreconditionFailure, "oracle has no variables");
  }
}

// Draws a, b, c with pairwise distinct entries in every coordinate.
std::array<Assignment, 3> draw_distinct_bases(const FieldCtx& f,
                                              std::size_t n, Rng& rng) {
  std::array<Assignment, 3> abc{Assignment(n), Assignment(n), Assignment(n)};
  for (std::size_t i = 0; i < n; ++i) {
    abc[0][i] = f.sample(rng);
    do {
      abc[1][i] = f.sample(rng);
    } while (abc[1][i] == abc[0][i]);
    do {
      abc[2][i] = f.sample(rng);
    } while (abc[2][i] == abc[0][i] || abc[2][i] == abc[1][i]);
  }
  return abc;
}

bool property_round(Oracle& oracle, Rng& rng, const TesterOptions& opts,
                    TestReport& rep) {
  const FieldCtx& f = oracle.ctx();
  const std::size_t n = oracle.arity();
  auto abc = draw_distinct_bases(f, n, rng);
  QueryCache ask(oracle, opts.cache_queries);
  bool pass = true;
  for_each_triple(n, [&](const std::vector<std::size_t>& set) {
    std::array<std::vector<Felt>, 3> nodes;
    for (std::size_t t = 0; t < set.size(); ++t) {
      nodes[t] = {abc[0][set[t]], abc[1][set[t]], abc[2][set[t]]};
    }
    if (auto fail = check_restriction(f, ask, abc[0], set, nodes)) {
      rep.yes = false;
      rep.failing_set = set;
      rep.failure_kind = *fail;
      pass = false;
    }
    return pass;
  });
  return pass;
}

}  // namespace

double read_once_test_field_bound(std::size_t n, std::size_t degree,
                                  double epsilon) {
  double n4 = std::pow(static_cast<double>(n), 4.0);
  return std::max(1.5 * n4, static_cast<double>(degree)) / epsilon;
}

TestReport read_once_test(Oracle& oracle, std::size_t degree, double epsilon,
                          u64 seed, const TesterOptions& opts) {
  require_arity(oracle);
  if (degree < 1) throw Error(Errc::kDegreeTooSmall, "degree bound must be >= 1");
  if (!(epsilon > 0.0)) throw Error(Errc::kInvalidParams, "epsilon must be > 0");
  const FieldCtx& f = oracle.ctx();
  if (f.modulus() < degree + 1) {
    throw Error(Errc::kFieldTooSmall,
                "interpolation needs p >= d + 1 = " + std::to_string(degree + 1));
  }
  const std::size_t n = oracle.arity();
  TestReport rep;
  rep.seed = seed;
  const std::size_t before = oracle.query_count();

  Rng rng(seed);
  Assignment base(n);
  for (Felt& v : base) v = f.sample(rng);

  std::vector<Felt> axis;
  for (std::size_t k = 0; k <= degree; ++k) axis.push_back(f.from_u64(k));
  const std::array<std::vector<Felt>, 3> nodes{axis, axis, axis};
  QueryCache ask(oracle, opts.cache_queries);
  for_each_triple(n, [&](const std::vector<std::size_t>& set) {
    if (auto fail = check_restriction(f, ask, base, set, nodes)) {
      rep.yes = false;
      rep.failing_set = set;
      rep.failure_kind = *fail;
      return false;
    }
    return true;
  });
  rep.queries = oracle.query_count() - before;
  return rep;
}

TestReport property_test_once(Oracle& oracle, u64 seed,
                              const TesterOptions& opts) {
  require_arity(oracle);
  if (oracle.ctx().modulus() < 3) {
    throw Error(Errc::kFieldTooSmall, "property test needs p >= 3");
  }
  TestReport rep;
  rep.seed = seed;
  const std::size_t before = oracle.query_count();
  Rng rng(seed);
  property_round(oracle, rng, opts, rep);
  rep.queries = oracle.query_count() - before;
  return rep;
}

std::size_t property_test_repeats(std::size_t n, double delta, double k) {
  if (!(delta > 0.0)) throw Error(Errc::kInvalidParams, "delta must be > 0");
  double n4 = std::pow(static_cast<double>(n), 4.0);
  return static_cast<std::size_t>(std::ceil(k / (delta + 1.0 / n4)));
}

TestReport property_test(Oracle& oracle, double delta, u64 seed,
                         const TesterOptions& opts, double k) {
  require_arity(oracle);
  if (oracle.ctx().modulus() < 3) {
    throw Error(Errc::kFieldTooSmall, "property test needs p >= 3");
  }
  const std::size_t budget = property_test_repeats(oracle.arity(), delta, k);
  TestReport rep;
  rep.seed = seed;
  rep.repeats = 0;
  const std::size_t before = oracle.query_count();
  Rng rng(seed);
  for (std::size_t r = 0; r < budget; ++r) {
    ++rep.repeats;
    if (!property_round(oracle, rng, opts, rep)) break;
  }
  rep.queries = oracle.query_count() - before;
  return rep;
}

TauEstimate tau_estimate(Oracle& oracle, std::size_t samples, u64 seed,
                         std::optional<std::size_t> coordinate) {
  require_arity(oracle);
  const FieldCtx& f = oracle.ctx();
  if (f.modulus() < 3) throw Error(Errc::kFieldTooSmall, "tau needs p >= 3");
  if (samples == 0) throw Error(Errc::kInvalidParams, "samples must be >= 1");
  const std::size_t n = oracle.arity();
  if (coordinate && *coordinate >= n) {
    throw Error(Errc::kArityMismatch, "coordinate beyond oracle arity");
  }
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::size_t nonlinear = 0;
  Assignment point(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (Felt& v : point) v = f.sample(rng);
    const std::size_t i = coordinate ? *coordinate : pick(rng);
    Felt u = f.sample(rng), v, w;
    do {
      v = f.sample(rng);
    } while (v == u);
    do {
      w = f.sample(rng);
    } while (w == u || w == v);
    point[i] = u;
    Felt fu = oracle.query(point);
    point[i] = v;
    Felt fv = oracle.query(point);
    point[i] = w;
    Felt fw = oracle.query(point);
    // Degree <= 1 iff the two secant slopes agree.
    Felt s1 = f.div(f.sub(fv, fu), f.sub(v, u));
    Felt s2 = f.div(f.sub(fw, fv), f.sub(w, v));
    if (!(s1 == s2)) ++nonlinear;
  }
  TauEstimate est;
  est.samples = samples;
  est.fraction = static_cast<double>(nonlinear) / static_cast<double>(samples);
  est.stderr_ = std::sqrt(est.fraction * (1.0 - est.fraction) /
                          static_cast<double>(samples));
  return est;
}

}  // namespace rop
