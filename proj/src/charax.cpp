#include "rop/charax.hpp"

#include <algorithm>
#include <sstream>

namespace rop {

std::string Multiplicand::describe() const {
  std::ostringstream os;
  switch (kind) {
    case MultiplicandKind::kFirstPartial:
      os << "dP/dx" << (i + 1);
      break;
    case MultiplicandKind::kSecondPartial:
      os << "d2P/dx" << (i + 1) << "dx" << (j + 1);
      break;
    case MultiplicandKind::kBTerm:
      os << "B[" << (i + 1) << ',' << (j + 1) << "]^{";
      for (std::size_t t = 0; t < shared.size(); ++t) {
        os << (t ? "," : "") << (shared[t] + 1);
      }
      os << '}';
      break;
  }
  return os.str();
}

std::string_view verdict_name(RopVerdict v) {
  switch (v) {
    case RopVerdict::kRop: return "ROP";
    case RopVerdict::kReadMany: return "READ_MANY";
    case RopVerdict::kIndeterminate: return "INDETERMINATE";
  }
  return "INDETERMINATE";
}

std::size_t PhiCertificate::pair_index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  return i * p_.arity() + j;
}

PhiCertificate::PhiCertificate(const MPoly& p, PhiMode mode,
                               const ZeroTestOptions& opts)
    : p_(p), mode_(mode) {
  if (!p.is_multilinear()) {
    throw Error(Errc::kNotMultilinear, "certificate needs a multilinear P");
  }
  const std::size_t n = p.arity();
  first_.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    first_.push_back(p.partial(t));
    Multiplicand m;
    m.kind = MultiplicandKind::kFirstPartial;
    m.i = t;
    m.identically_zero = first_.back().is_zero();
    factors_.push_back(std::move(m));
  }
  second_.assign(n * n, MPoly(p.ctx(), n));
  delta_.assign(n * n, MPoly(p.ctx(), n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      MPoly s = p.partial2(i, j);
      Multiplicand m;
      m.kind = MultiplicandKind::kSecondPartial;
      m.i = i;
      m.j = j;
      m.identically_zero = s.is_zero();
      factors_.push_back(std::move(m));
      if (!s.is_zero()) delta_[pair_index(i, j)] = commutator(p, i, j);
      second_[pair_index(i, j)] = std::move(s);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool second_zero = second_[pair_index(i, j)].is_zero();
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        Multiplicand m;
        m.kind = MultiplicandKind::kBTerm;
        m.i = i;
        m.j = j;
        if (mode == PhiMode::kLocal) {
          m.shared = {k};
        } else {
          for (std::size_t t = 0; t < n; ++t) {
            if (t != i && t != j && t != k) m.shared.push_back(t);
          }
        }
        m.identically_zero =
            second_zero || b_is_zero(p, i, j, m.shared, opts);
        factors_.push_back(std::move(m));
      }
    }
  }
}

GoodnessReport PhiCertificate::check(std::span<const Felt> a,
                                     bool stop_at_first) const {
  const FieldCtx& f = p_.ctx();
  if (f.modulus() < 3) {
    throw Error(Errc::kFieldTooSmall, "goodness check needs p >= 3");
  }
  if (a.size() != p_.arity()) {
    throw Error(Errc::kArityMismatch, "assignment length differs from arity");
  }
  const std::size_t n = p_.arity();
  GoodnessReport rep;
  auto fail = [&](const Multiplicand& m, std::string why) {
    rep.good = false;
    rep.violations.push_back({m, std::move(why)});
  };
  for (const Multiplicand& m : factors_) {
    if (!rep.good && stop_at_first) break;
    if (m.identically_zero) {
      ++rep.skipped_zero;
      continue;
    }
    switch (m.kind) {
      case MultiplicandKind::kFirstPartial:
        if (first_[m.i].evaluate(a).v == 0) fail(m, "vanishes at a");
        break;
      case MultiplicandKind::kSecondPartial:
        if (second_[pair_index(m.i, m.j)].evaluate(a).v == 0) {
          fail(m, "vanishes at a");
        }
        break;
      case MultiplicandKind::kBTerm: {
        const MPoly& s = second_[pair_index(m.i, m.j)];
        const MPoly& d = delta_[pair_index(m.i, m.j)];
        const Felt sa = s.evaluate(a);
        const Felt da = d.evaluate(a);
        // B(a, y) = Delta(a) S(y) - S(a) Delta(y); neither Delta nor S
        // involves y_i, y_j, so only the remaining free y's are gridded.
        std::vector<std::size_t> free_vars;
        for (std::size_t t = 0; t < n; ++t) {
          if (t != m.i && t != m.j &&
              !std::binary_search(m.shared.begin(), m.shared.end(), t)) {
            free_vars.push_back(t);
          }
        }
        bool nonzero = false;
        if (sa.v != 0 || da.v != 0) {
          Assignment y(a.begin(), a.end());
          std::vector<unsigned> digit(free_vars.size(), 0);
          while (!nonzero) {
            for (std::size_t t = 0; t < free_vars.size(); ++t) {
              y[free_vars[t]] = f.from_u64(digit[t]);
            }
            Felt v = f.sub(f.mul(da, s.evaluate(y)), f.mul(sa, d.evaluate(y)));
            if (v.v != 0) nonzero = true;
            std::size_t t = 0;
            while (t < digit.size() && ++digit[t] == 3) digit[t++] = 0;
            if (t == digit.size()) break;
          }
        }
        if (!nonzero) fail(m, "B(a, y) vanishes identically in y");
        break;
      }
    }
  }
  return rep;
}

std::vector<Multiplicand> phi_multiplicands(const MPoly& p, PhiMode mode) {
  return PhiCertificate(p, mode).multiplicands();
}

GoodnessReport is_good_assignment(const MPoly& p, std::span<const Felt> a,
                                  PhiMode mode) {
  if (p.ctx().modulus() < 3) {
    throw Error(Errc::kFieldTooSmall, "goodness check needs p >= 3");
  }
  return PhiCertificate(p, mode).check(a);
}

LocalResult is_locally_rop(const MPoly& p, std::span<const Felt> a) {
  if (!p.is_multilinear()) {
    throw Error(Errc::kNotMultilinear, "locality check needs a multilinear P");
  }
  if (a.size() != p.arity()) {
    throw Error(Errc::kArityMismatch, "assignment length differs from arity");
  }
  const std::size_t n = p.arity();
  LocalResult res;
  if (n < 3) return res;
  std::vector<std::size_t> others;
  others.reserve(n);
  for (std::size_t i0 = 0; i0 < n; ++i0) {
    for (std::size_t i1 = i0 + 1; i1 < n; ++i1) {
      for (std::size_t i2 = i1 + 1; i2 < n; ++i2) {
        others.clear();
        for (std::size_t t = 0; t < n; ++t) {
          if (t != i0 && t != i1 && t != i2) others.push_back(t);
        }
        if (!trivariate_is_rop(p.restrict_many(others, a))) {
          res.locally_rop = false;
          res.witness = std::array{i0, i1, i2};
          return res;
        }
      }
    }
  }
  return res;
}

Characterization characterize(const MPoly& p, Rng& rng,
                              const CharacterizeOptions& opts) {
  if (!p.is_multilinear()) {
    throw Error(Errc::kNotMultilinear, "characterize needs a multilinear P");
  }
  Characterization out;
  const std::size_t n = p.arity();
  if (n < 3) {
    out.verdict = RopVerdict::kRop;
    return out;
  }
  if (p.ctx().modulus() < 3) {
    throw Error(Errc::kFieldTooSmall, "characterize needs p >= 3");
  }
  ZeroTestOptions zopts;
  bool exact = opts.mode == CharacterizeMode::kExact ||
               (opts.mode == CharacterizeMode::kAuto && n <= kExactTagMaxArity);
  if (exact && 2 * n > kMaxArity) {
    return out;  // exact tags unaffordable: surface INDETERMINATE
  }
  if (opts.mode == CharacterizeMode::kExact && n > kExactTagMaxArity) {
    return out;
  }
  if (!exact) {
    zopts.mode = ZeroTestMode::kRandomized;
    zopts.reps = opts.randomized_reps;
    zopts.rng = &rng;
    out.randomized_tags = true;
  }
  PhiCertificate cert(p, PhiMode::kGlobal, zopts);
  const FieldCtx& f = p.ctx();
  Assignment a(n);
  for (std::size_t attempt = 0; attempt < opts.max_retries; ++attempt) {
    for (Felt& v : a) v = f.sample(rng);
    ++out.attempts;
    GoodnessReport rep = cert.check(a, /*stop_at_first=*/true);
    if (!rep.good) {
      out.last_rejection = std::move(rep);
      continue;
    }
    out.last_rejection.reset();
    out.good_assignment = a;
    LocalResult local = is_locally_rop(p, a);
    out.verdict = local.locally_rop ? RopVerdict::kRop : RopVerdict::kReadMany;
    out.witness = local.witness;
    return out;
  }
  return out;
}

}  // namespace rop
