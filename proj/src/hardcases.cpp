#include "rop/hardcases.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "rop/charax.hpp"

namespace rop {

MPoly q_n(std::size_t n, const FieldCtx& ctx) {
  if (n < 1) throw Error(Errc::kInvalidParams, "Q_n needs n >= 1");
  MPoly shifted = MPoly::constant(ctx, n, ctx.one());
  MPoly plain = MPoly::constant(ctx, n, ctx.one());
  for (std::size_t i = 0; i < n; ++i) {
    MPoly x = MPoly::variable(ctx, n, i);
    shifted = shifted * x.add_constant(ctx.neg(ctx.one()));
    plain = plain * x;
  }
  return shifted + plain;
}

std::size_t size_wrt(std::span<const Felt> a, std::span<const Felt> s) {
  std::size_t count = 0;
  for (Felt v : a) {
    for (Felt t : s) {
      if (v == t) {
        ++count;
        break;
      }
    }
  }
  return count;
}

namespace {

// Counts locally read-once points among `count` points produced by
// point_at(idx, out), split into contiguous chunks over worker threads.
template <typename PointAt>
std::size_t count_local(const MPoly& p, std::size_t count, std::size_t threads,
                        PointAt point_at) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  std::vector<std::size_t> good(threads, 0);
  auto work = [&](std::size_t w) {
    Assignment a(p.arity());
    const std::size_t lo = count * w / threads, hi = count * (w + 1) / threads;
    for (std::size_t idx = lo; idx < hi; ++idx) {
      point_at(idx, a);
      if (is_locally_rop(p, a).locally_rop) ++good[w];
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  std::size_t total = 0;
  for (std::size_t g : good) total += g;
  return total;
}

}  // namespace

SweepRow local_rop_fraction(const MPoly& p, std::size_t samples, u64 seed,
                            std::size_t threads) {
  const FieldCtx& f = p.ctx();
  const std::size_t n = p.arity();
  SweepRow row;
  row.p = f.modulus();
  row.n = n;
  const double domain = std::pow(static_cast<double>(f.modulus()),
                                 static_cast<double>(n));
  if (domain <= kExhaustiveSweepLimit) {
    row.exhaustive = true;
    const std::size_t total = static_cast<std::size_t>(std::llround(domain));
    const u64 q = f.modulus();
    std::size_t good = count_local(p, total, threads, [&](std::size_t idx, Assignment& a) {
      for (std::size_t t = 0; t < n; ++t) {
        a[t].v = idx % q;
        idx /= q;
      }
    });
    row.samples = total;
    row.good_fraction = static_cast<double>(good) / static_cast<double>(total);
    row.stderr_ = 0.0;
    return row;
  }
  if (samples == 0) throw Error(Errc::kInvalidParams, "samples must be >= 1");
  Rng rng(seed);
  std::vector<Felt> points(samples * n);
  for (Felt& v : points) v = f.sample(rng);
  std::size_t good = count_local(p, samples, threads, [&](std::size_t idx, Assignment& a) {
    std::copy_n(points.begin() + idx * n, n, a.begin());
  });
  row.samples = samples;
  row.good_fraction = static_cast<double>(good) / static_cast<double>(samples);
  row.stderr_ = std::sqrt(row.good_fraction * (1.0 - row.good_fraction) /
                          static_cast<double>(samples));
  return row;
}

std::string sweep_csv_header() { return "p,n,samples,good_fraction,stderr"; }

std::string to_csv_row(const SweepRow& row) {
  std::ostringstream os;
  os.precision(6);
  os << row.p << ',' << row.n << ',' << row.samples << ',' << std::fixed
     << row.good_fraction << ',' << row.stderr_;
  return os.str();
}

BoolFn::BoolFn(std::size_t n, std::vector<std::uint8_t> table)
    : n_(n), table_(std::move(table)) {
  if (n >= 8 * sizeof(std::size_t) || table_.size() != (std::size_t{1} << n)) {
    throw Error(Errc::kInvalidParams, "truth table length must be 2^n");
  }
  for (auto& b : table_) b = b ? 1 : 0;
}

bool BoolFn::depends_on(std::size_t var) const {
  const std::size_t bit = std::size_t{1} << var;
  for (std::size_t r = 0; r < table_.size(); ++r) {
    if (!(r & bit) && table_[r] != table_[r | bit]) return true;
  }
  return false;
}

bool BoolFn::is_monotone() const {
  for (std::size_t r = 0; r < table_.size(); ++r) {
    for (std::size_t v = 0; v < n_; ++v) {
      const std::size_t bit = std::size_t{1} << v;
      if (!(r & bit) && table_[r] > table_[r | bit]) return false;
    }
  }
  return true;
}

BoolFn BoolFn::restrict(std::size_t var, bool value) const {
  if (var >= n_) throw Error(Errc::kArityMismatch, "variable beyond arity");
  const std::size_t bit = std::size_t{1} << var;
  std::vector<std::uint8_t> out(table_.size());
  for (std::size_t r = 0; r < table_.size(); ++r) {
    out[r] = table_[value ? (r | bit) : (r & ~bit)];
  }
  return BoolFn(n_, std::move(out));
}

BoolFn boolean_f(std::size_t n) {
  if (n < 2) throw Error(Errc::kInvalidParams, "f_n needs n >= 2");
  const std::size_t all = (std::size_t{1} << n) - 1;
  std::vector<std::uint8_t> t(all + 1, 0);
  t[0] = 1;
  t[all] = 1;
  return BoolFn(n, std::move(t));
}

BoolFn boolean_g(std::size_t n) {
  if (n < 2) throw Error(Errc::kInvalidParams, "g_n needs n >= 2");
  const std::size_t xs = (std::size_t{1} << n) - 1;
  const std::size_t y = std::size_t{1} << n;
  std::vector<std::uint8_t> t(std::size_t{1} << (n + 1), 0);
  for (std::size_t r = 0; r < t.size(); ++r) {
    bool any_x = (r & xs) != 0;
    bool all_x = (r & xs) == xs;
    t[r] = ((r & y) && any_x) || all_x;
  }
  return BoolFn(n + 1, std::move(t));
}

namespace {

class BoolReadOnce {
 public:
  // Works on tables compacted to the support of the function.
  bool decide(std::size_t m, const std::vector<std::uint8_t>& t) {
    if (m <= 1) return true;
    std::string key(t.begin(), t.end());
    key += static_cast<char>(m);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = search(m, t);
    memo_.emplace(std::move(key), r);
    return r;
  }

  bool decide_any(const BoolFn& f) {
    std::vector<std::size_t> support;
    for (std::size_t v = 0; v < f.arity(); ++v) {
      if (f.depends_on(v)) support.push_back(v);
    }
    std::vector<std::uint8_t> t(std::size_t{1} << support.size());
    for (std::size_t r = 0; r < t.size(); ++r) {
      std::size_t full = 0;
      for (std::size_t s = 0; s < support.size(); ++s) {
        if (r >> s & 1) full |= std::size_t{1} << support[s];
      }
      t[r] = f(full) ? 1 : 0;
    }
    return decide(support.size(), t);
  }

 private:
  // Projects the table onto the bits of `mask` by `combine` over the rest.
  static std::vector<std::uint8_t> project(std::size_t m, std::size_t mask,
                                           const std::vector<std::uint8_t>& t,
                                           bool use_or) {
    std::vector<std::size_t> bits;
    for (std::size_t b = 0; b < m; ++b) {
      if (mask >> b & 1) bits.push_back(b);
    }
    std::vector<std::uint8_t> out(std::size_t{1} << bits.size(), use_or ? 0 : 1);
    for (std::size_t r = 0; r < t.size(); ++r) {
      std::size_t packed = 0;
      for (std::size_t s = 0; s < bits.size(); ++s) {
        if (r >> bits[s] & 1) packed |= std::size_t{1} << s;
      }
      if (use_or) {
        out[packed] |= t[r];
      } else {
        out[packed] &= t[r];
      }
    }
    return out;
  }

  static std::size_t pack(std::size_t r, std::size_t m, std::size_t mask) {
    std::size_t packed = 0, s = 0;
    for (std::size_t b = 0; b < m; ++b) {
      if (mask >> b & 1) {
        if (r >> b & 1) packed |= std::size_t{1} << s;
        ++s;
      }
    }
    return packed;
  }

  bool search(std::size_t m, const std::vector<std::uint8_t>& t) {
    const std::size_t full = (std::size_t{1} << m) - 1;
    for (std::size_t left = 1; left < full; left += 2) {
      const std::size_t right = full ^ left;
      for (bool use_and : {true, false}) {
        // f = g & h  =>  g = exists_R f, h = exists_L f.
        // f = g | h  =>  g = forall_R f, h = forall_L f.
        auto g = project(m, left, t, use_and);
        auto h = project(m, right, t, use_and);
        bool match = true;
        for (std::size_t r = 0; r <= full && match; ++r) {
          std::uint8_t gv = g[pack(r, m, left)], hv = h[pack(r, m, right)];
          std::uint8_t v = use_and ? (gv & hv) : (gv | hv);
          match = v == t[r];
        }
        if (!match) continue;
        if (decide_any(BoolFn(std::popcount(left), g)) &&
            decide_any(BoolFn(std::popcount(right), h))) {
          return true;
        }
      }
    }
    return false;
  }

  std::unordered_map<std::string, bool> memo_;
};

}  // namespace

bool boolean_is_read_once(const BoolFn& f) {
  if (f.arity() > kBooleanMaxVars) {
    throw Error(Errc::kTooManyVariables,
                "truth-table read-once check limited to " +
                    std::to_string(kBooleanMaxVars) + " variables");
  }
  BoolReadOnce d;
  return d.decide_any(f);
}

}  // namespace rop
