// ropcheck: command-line front end for the read-once library.
//
// Exit codes: 0 YES/ROP, 1 NO/READ_MANY, 2 parse or configuration error,
// 3 precondition violation, 4 INDETERMINATE.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rop/charax.hpp"
#include "rop/decomp.hpp"
#include "rop/error.hpp"
#include "rop/hardcases.hpp"
#include "rop/io.hpp"
#include "rop/rof.hpp"
#include "rop/testers.hpp"

namespace {

using namespace rop;
using nlohmann::json;

enum Exit { kYes = 0, kNo = 1, kConfig = 2, kPrecondition = 3, kIndeterminate = 4 };

int exit_for(Errc c) {
  switch (c) {
    case Errc::kParseError:
    case Errc::kInvalidParams:
    case Errc::kNotPrime:
    case Errc::kOutOfRange:
      return kConfig;
    default:
      return kPrecondition;
  }
}

struct Common {
  std::optional<u64> p;
  u64 seed = 1;
  bool json = false;
  std::size_t threads = 1;
};

void add_common(CLI::App* cmd, Common& c, bool with_p = true) {
  if (with_p) cmd->add_option("--p", c.p, "field modulus; must match the input header");
  cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
  cmd->add_flag("--json", c.json, "machine-readable output");
  cmd->add_option("--threads", c.threads, "worker cap")->check(CLI::PositiveNumber);
}

std::string read_all(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), {}};
  }
  std::ifstream in(path);
  if (!in) throw Error(Errc::kInvalidParams, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A loaded input file: either a formula or a polynomial.
struct Input {
  std::variant<MPoly, Rof> value;

  std::size_t arity() const {
    return std::visit([](const auto& v) { return v.arity(); }, value);
  }
  u64 modulus() const {
    return std::visit([](const auto& v) { return v.ctx().modulus(); }, value);
  }
  MPoly poly() const {
    if (auto* r = std::get_if<Rof>(&value)) return r->expand();
    return std::get<MPoly>(value);
  }
  Oracle oracle() const {
    return std::visit([](const auto& v) { return as_oracle(v); }, value);
  }
};

Input load(const std::string& path, const Common& c) {
  std::string text = read_all(path);
  Input in = detect_input_kind(text) == InputKind::kFormula ? Input{parse_rof(text)}
                                                            : Input{parse_poly(text)};
  if (c.p && *c.p != in.modulus()) {
    throw Error(Errc::kInvalidParams, "--p " + std::to_string(*c.p) +
                                          " does not match header p=" +
                                          std::to_string(in.modulus()));
  }
  return in;
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

json index_set(const std::array<std::size_t, 3>& I) {
  return json::array({I[0] + 1, I[1] + 1, I[2] + 1});
}

std::string index_text(std::span<const std::size_t> I) {
  std::string s = "{";
  for (std::size_t k = 0; k < I.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(I[k] + 1);
  }
  return s + "}";
}

// --- check ---------------------------------------------------------------

struct CheckArgs {
  std::string file;
  std::string mode = "auto";
};

int cmd_check(const CheckArgs& a, const Common& c) {
  Input in = load(a.file, c);
  MPoly p = in.poly();
  if (!p.is_multilinear()) throw Error(Errc::kNotMultilinear, "input is not multilinear");
  const std::size_t n = p.arity();
  const double bound = 1.5 * std::pow(static_cast<double>(n), 3);
  if (static_cast<double>(p.ctx().modulus()) < bound) {
    warn("p=" + std::to_string(p.ctx().modulus()) + " is below 1.5n^3=" +
         std::to_string(static_cast<u64>(std::ceil(bound))) +
         "; good assignments may be rare");
  }
  CharacterizeOptions opts;
  if (a.mode == "exact") {
    opts.mode = CharacterizeMode::kExact;
  } else if (a.mode == "fast") {
    opts.mode = CharacterizeMode::kRandomized;
  }
  Rng rng(c.seed);
  Characterization r = characterize(p, rng, opts);

  if (c.json) {
    json j;
    j["verdict"] = verdict_name(r.verdict);
    j["witness_I"] = r.witness ? index_set(*r.witness) : json(nullptr);
    j["attempts"] = r.attempts;
    j["randomized_tags"] = r.randomized_tags;
    j["seed"] = c.seed;
    if (r.good_assignment) {
      json pt = json::array();
      for (Felt v : *r.good_assignment) pt.push_back(v.v);
      j["good_assignment"] = pt;
    } else {
      j["good_assignment"] = nullptr;
    }
    json bad = json::array();
    if (r.last_rejection) {
      for (const Violation& v : r.last_rejection->violations) {
        bad.push_back({{"factor", v.factor.describe()}, {"witness", v.witness}});
      }
    }
    j["violations"] = bad;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << verdict_name(r.verdict);
    if (r.witness) std::cout << " I=" << index_text(*r.witness);
    std::cout << " attempts=" << r.attempts << "\n";
    if (r.verdict == RopVerdict::kIndeterminate && r.last_rejection) {
      for (const Violation& v : r.last_rejection->violations) {
        std::cout << "  " << v.factor.describe() << ": " << v.witness << "\n";
      }
    }
  }
  switch (r.verdict) {
    case RopVerdict::kRop: return kYes;
    case RopVerdict::kReadMany: return kNo;
    default: return kIndeterminate;
  }
}

// --- blackbox / property -------------------------------------------------

void print_report(const TestReport& r) {
  std::cout << (r.yes ? "YES" : "NO");
  if (r.failing_set) std::cout << " I=" << index_text(*r.failing_set);
  if (r.failure_kind) std::cout << " kind=" << failure_kind_name(*r.failure_kind);
  std::cout << " queries=" << r.queries << " seed=" << r.seed;
  if (r.repeats != 1) std::cout << " repeats=" << r.repeats;
  std::cout << "\n";
}

// Runs `one(seed)` for seed, seed+1, ..., and reports each (or the batch
// rate). Exit 1 if any run said NO.
template <typename Run>
int run_batch(std::size_t repeat, const Common& c, Run one) {
  if (repeat <= 1) {
    TestReport r = one(c.seed);
    if (c.json) {
      std::cout << to_json(r).dump() << "\n";
    } else {
      print_report(r);
    }
    return r.yes ? kYes : kNo;
  }
  std::size_t rejected = 0;
  json runs = json::array();
  for (std::size_t k = 0; k < repeat; ++k) {
    TestReport r = one(c.seed + k);
    rejected += !r.yes;
    if (c.json) runs.push_back(to_json(r));
  }
  const double rate = static_cast<double>(rejected) / static_cast<double>(repeat);
  if (c.json) {
    std::cout << json{{"runs", repeat}, {"rejected", rejected}, {"rate", rate},
                      {"reports", runs}}.dump()
              << "\n";
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", rate);
    std::cout << "rejected " << rejected << "/" << repeat << " (rate " << buf << ")\n";
  }
  return rejected ? kNo : kYes;
}

struct BlackboxArgs {
  std::string file;
  std::optional<std::size_t> degree;
  double epsilon = 0.25;
  std::size_t repeat = 1;
};

int cmd_blackbox(const BlackboxArgs& a, const Common& c) {
  Input in = load(a.file, c);
  const std::size_t n = in.arity();
  const std::size_t d = a.degree.value_or(n);
  if (a.epsilon > 0 && d > 0) {
    const double bound = read_once_test_field_bound(n, d, a.epsilon);
    if (static_cast<double>(in.modulus()) < bound) {
      warn("p=" + std::to_string(in.modulus()) + " is below max(1.5n^4, d)/epsilon=" +
           std::to_string(static_cast<u64>(std::ceil(bound))) +
           "; rejection guarantees do not apply");
    }
  }
  Oracle o = in.oracle();
  return run_batch(a.repeat, c, [&](u64 seed) {
    return read_once_test(o, d, a.epsilon, seed);
  });
}

struct PropertyArgs {
  std::string file;
  double delta = 0.1;
  std::optional<double> corrupt;
  std::size_t repeat = 1;
};

int cmd_property(const PropertyArgs& a, const Common& c) {
  Input in = load(a.file, c);
  Oracle o = in.oracle();
  if (a.corrupt) {
    if (*a.corrupt < 0 || *a.corrupt > 1) {
      throw Error(Errc::kInvalidParams, "--corrupt must lie in [0, 1]");
    }
    // The corruption key comes from its own stream so it does not shift
    // with the tester seed.
    Rng key(c.seed ^ 0x636f7272u);
    o = corrupt_oracle(o, *a.corrupt, key);
  }
  return run_batch(a.repeat, c, [&](u64 seed) { return property_test(o, a.delta, seed); });
}

// --- gen -----------------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::size_t n = 0;
  u64 p = 1009;
  std::optional<std::size_t> vars;
  double density = 0.5;
  std::string out;
};

inline constexpr std::size_t kGenDenseMaxArity = 16;

MPoly random_multilinear(const FieldCtx& f, std::size_t n, double density, Rng& rng) {
  if (n > kGenDenseMaxArity) {
    throw Error(Errc::kScaleGuardExceeded,
                "random-multilinear enumerates 2^n monomials; n <= " +
                    std::to_string(kGenDenseMaxArity));
  }
  std::bernoulli_distribution keep(density);
  std::vector<Term> ts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    if (!keep(rng)) continue;
    Monomial m;
    for (std::size_t v = 0; v < n; ++v) {
      if (mask >> v & 1) m.set_exponent(v, 1);
    }
    ts.push_back({m, f.sample_nonzero(rng)});
  }
  return MPoly::from_terms(f, n, ts);
}

int cmd_gen(const GenArgs& a, const Common& c) {
  if (a.n == 0 || a.n > kMaxArity) {
    throw Error(Errc::kInvalidParams, "--n must lie in [1, " + std::to_string(kMaxArity) + "]");
  }
  if (a.density < 0 || a.density > 1) {
    throw Error(Errc::kInvalidParams, "--density must lie in [0, 1]");
  }
  FieldCtx f(a.p);
  Rng rng(c.seed);
  std::string text;
  if (a.kind == "rof") {
    const std::size_t vars = a.vars.value_or(a.n);
    if (vars > a.n) throw Error(Errc::kInvalidParams, "--vars exceeds --n");
    text = format_rof(random_rof(f, a.n, vars, rng));
  } else if (a.kind == "qn") {
    text = format_poly(q_n(a.n, f));
  } else {
    text = format_poly(random_multilinear(f, a.n, a.density, rng));
  }
  if (a.out.empty() || a.out == "-") {
    std::cout << text;
  } else {
    std::ofstream o(a.out);
    if (!o) throw Error(Errc::kInvalidParams, "cannot write " + a.out);
    o << text;
  }
  return kYes;
}

// --- experiment ----------------------------------------------------------

struct ExperimentArgs {
  std::string name;
  std::vector<u64> primes;
  std::vector<std::size_t> arities;
  std::size_t samples = 0;
  std::string input;
  std::optional<std::size_t> coordinate;
};

inline constexpr double kTrivariateEnumLimit = 1e7;

int experiment_qn_fraction(const ExperimentArgs& a, const Common& c) {
  std::vector<u64> primes = a.primes.empty() ? std::vector<u64>{2} : a.primes;
  std::vector<std::size_t> arities =
      a.arities.empty() ? std::vector<std::size_t>{4} : a.arities;
  const std::size_t samples = a.samples ? a.samples : 10000;
  std::vector<SweepRow> rows;
  for (u64 p : primes) {
    FieldCtx f(p);
    for (std::size_t n : arities) {
      if (n == 0 || n > kMaxArity) throw Error(Errc::kInvalidParams, "bad --n");
      rows.push_back(local_rop_fraction(q_n(n, f), samples, c.seed, c.threads));
    }
  }
  if (c.json) {
    json out = json::array();
    for (const SweepRow& r : rows) {
      out.push_back({{"p", r.p}, {"n", r.n}, {"samples", r.samples},
                     {"good_fraction", r.good_fraction}, {"stderr", r.stderr_},
                     {"exhaustive", r.exhaustive}});
    }
    std::cout << out.dump() << "\n";
  } else {
    std::cout << sweep_csv_header() << "\n";
    for (const SweepRow& r : rows) std::cout << to_csv_row(r) << "\n";
  }
  return kYes;
}

int experiment_tau(const ExperimentArgs& a, const Common& c) {
  if (a.input.empty()) throw Error(Errc::kInvalidParams, "tau needs --input");
  Input in = load(a.input, c);
  Oracle o = in.oracle();
  std::optional<std::size_t> coord;
  if (a.coordinate) {
    if (*a.coordinate == 0 || *a.coordinate > in.arity()) {
      throw Error(Errc::kInvalidParams, "--coordinate out of range");
    }
    coord = *a.coordinate - 1;
  }
  const std::size_t samples = a.samples ? a.samples : 2000;
  TauEstimate t = tau_estimate(o, samples, c.seed, coord);
  if (c.json) {
    std::cout << json{{"p", in.modulus()}, {"n", in.arity()}, {"samples", t.samples},
                      {"tau", t.fraction}, {"stderr", t.stderr_}}.dump()
              << "\n";
  } else {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%llu,%zu,%zu,%.6f,%.6f",
                  static_cast<unsigned long long>(in.modulus()), in.arity(), t.samples,
                  t.fraction, t.stderr_);
    std::cout << "p,n,samples,tau,stderr\n" << buf << "\n";
  }
  return kYes;
}

// Every multilinear polynomial in three variables over GF(p), decided by
// the trivariate criterion and by the brute-force decider.
int experiment_trivariate_enum(const ExperimentArgs& a, const Common& c) {
  const u64 p = a.primes.empty() ? 5 : a.primes.front();
  const double total_d = std::pow(static_cast<double>(p), 8);
  if (total_d > kTrivariateEnumLimit) {
    throw Error(Errc::kScaleGuardExceeded,
                "p^8 exceeds " + std::to_string(static_cast<u64>(kTrivariateEnumLimit)));
  }
  FieldCtx f(p);
  const std::size_t total = static_cast<std::size_t>(total_d);
  const std::size_t workers = std::max<std::size_t>(1, std::min(c.threads, total));
  std::vector<std::size_t> bad(workers), rops(workers);
  auto work = [&](std::size_t w) {
    std::vector<Term> ts(8);
    for (std::size_t m = 0; m < 8; ++m) {
      for (std::size_t v = 0; v < 3; ++v) {
        if (m >> v & 1) ts[m].mono.set_exponent(v, 1);
      }
    }
    const std::size_t lo = total * w / workers, hi = total * (w + 1) / workers;
    for (std::size_t code = lo; code < hi; ++code) {
      std::size_t rest = code;
      for (Term& t : ts) {
        t.coeff = Felt{rest % p};
        rest /= p;
      }
      MPoly poly = MPoly::from_terms(f, 3, ts);
      const bool truth = brute_force_is_rop(poly);
      bad[w] += trivariate_is_rop(poly) != truth;
      rops[w] += truth;
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  for (std::thread& t : pool) t.join();
  std::size_t disagreements = 0, rop_count = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    disagreements += bad[w];
    rop_count += rops[w];
  }
  if (c.json) {
    std::cout << json{{"p", p}, {"cases", total}, {"disagreements", disagreements},
                      {"rops", rop_count}}.dump()
              << "\n";
  } else {
    std::cout << total << " cases, " << disagreements << " disagreements, " << rop_count
              << " ROPs\n";
  }
  return disagreements ? kNo : kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ropcheck: read-once polynomial checks over prime fields"};
  app.require_subcommand(1);

  Common common;

  CheckArgs check;
  auto* c_check = app.add_subcommand("check", "decide whether a polynomial is read-once");
  c_check->add_option("file", check.file, "polynomial or formula file ('-' for stdin)")
      ->required();
  c_check->add_option("--mode", check.mode, "zero tagging: auto, exact, fast")
      ->check(CLI::IsMember({"auto", "exact", "fast"}))
      ->capture_default_str();
  add_common(c_check, common);

  BlackboxArgs bb;
  auto* c_bb = app.add_subcommand("blackbox", "run the grid read-once tester on a file oracle");
  c_bb->add_option("file", bb.file, "polynomial or formula file")->required();
  c_bb->add_option("--degree", bb.degree, "individual degree bound (default n)");
  c_bb->add_option("--epsilon", bb.epsilon, "error parameter")->capture_default_str();
  c_bb->add_option("--repeat", bb.repeat, "runs with seeds seed, seed+1, ...")
      ->check(CLI::PositiveNumber);
  add_common(c_bb, common);

  PropertyArgs prop;
  auto* c_prop = app.add_subcommand("property", "run the property tester on a file oracle");
  c_prop->add_option("file", prop.file, "polynomial or formula file")->required();
  c_prop->add_option("--delta", prop.delta, "distance parameter")->capture_default_str();
  c_prop->add_option("--corrupt", prop.corrupt, "perturb this fraction of the domain");
  c_prop->add_option("--repeat", prop.repeat, "runs with seeds seed, seed+1, ...")
      ->check(CLI::PositiveNumber);
  add_common(c_prop, common);

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "write a generated instance");
  c_gen->add_option("kind", gen.kind, "rof, qn, random-multilinear")
      ->required()
      ->check(CLI::IsMember({"rof", "qn", "random-multilinear"}));
  c_gen->add_option("--n", gen.n, "arity")->required();
  c_gen->add_option("--p", gen.p, "field modulus")->capture_default_str();
  c_gen->add_option("--vars", gen.vars, "variables used by a formula (default n)");
  c_gen->add_option("--density", gen.density, "monomial keep rate")->capture_default_str();
  c_gen->add_option("-o,--output", gen.out, "output file (default stdout)");
  add_common(c_gen, common, false);

  ExperimentArgs ex;
  auto* c_ex = app.add_subcommand("experiment", "seeded experiments with CSV output");
  c_ex->add_option("name", ex.name, "qn-fraction, tau, trivariate-enum")
      ->required()
      ->check(CLI::IsMember({"qn-fraction", "tau", "trivariate-enum"}));
  c_ex->add_option("--p", ex.primes, "field moduli (comma separated)")->delimiter(',');
  c_ex->add_option("--n", ex.arities, "arities (comma separated)")->delimiter(',');
  c_ex->add_option("--samples", ex.samples, "samples per row");
  c_ex->add_option("--input", ex.input, "oracle file for tau");
  c_ex->add_option("--coordinate", ex.coordinate, "pin the tau axis (1-based)");
  add_common(c_ex, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kConfig;
  }

  try {
    if (c_check->parsed()) return cmd_check(check, common);
    if (c_bb->parsed()) return cmd_blackbox(bb, common);
    if (c_prop->parsed()) return cmd_property(prop, common);
    if (c_gen->parsed()) return cmd_gen(gen, common);
    if (ex.name == "qn-fraction") return experiment_qn_fraction(ex, common);
    if (ex.name == "tau") return experiment_tau(ex, common);
    return experiment_trivariate_enum(ex, common);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
}
