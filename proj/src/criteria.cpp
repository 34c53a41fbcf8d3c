#include "qfs/criteria.hpp"

#include <algorithm>
#include <chrono>

#include "qfs/modmath.hpp"

namespace qfs {

const char* to_string(LevelVariant v) {
  return v == LevelVariant::DeltaOfF ? "delta-f" : "delta-fpow";
}
const char* to_string(FnVariant v) {
  return v == FnVariant::DeltaPowPMinus1 ? "delta-fpow" : "delta-literal";
}
const char* to_string(Backend b) {
  switch (b) {
    case Backend::Poly: return "poly";
    case Backend::Combinatorial: return "combinatorial";
    case Backend::CombinatorialPrescreen: return "combinatorial-prescreen";
  }
  return "?";
}
const char* to_string(LevelStatus s) {
  switch (s) {
    case LevelStatus::Member: return "member";
    case LevelStatus::NonMember: return "non-member";
    case LevelStatus::MemberSound: return "member-sound";
    case LevelStatus::Unknown: return "unknown";
  }
  return "?";
}

LevelVariant level_variant_from_string(const std::string& s) {
  if (s == "delta-f") return LevelVariant::DeltaOfF;
  if (s == "delta-fpow") return LevelVariant::DeltaOfFPow;
  throw Error(Errc::BadArgument, "unknown variant '" + s + "'");
}
FnVariant fn_variant_from_string(const std::string& s) {
  if (s == "delta-fpow") return FnVariant::DeltaPowPMinus1;
  if (s == "delta-literal") return FnVariant::DeltaPowPMinus2;
  throw Error(Errc::BadArgument, "unknown fn-variant '" + s + "'");
}
Backend backend_from_string(const std::string& s) {
  if (s == "poly") return Backend::Poly;
  if (s == "combinatorial") return Backend::Combinatorial;
  if (s == "combinatorial-prescreen") return Backend::CombinatorialPrescreen;
  throw Error(Errc::BadArgument, "unknown backend '" + s + "'");
}

WorkBudget Budget::work() const {
  WorkBudget wb;
  wb.pair_work_left = max_term_pairs;
  if (max_seconds > 0) {
    wb.deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(max_seconds));
  }
  return wb;
}

namespace {

using i128 = __int128;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int64_t checked_p_pow(uint64_t p, int r) {
  i128 v = 1;
  for (int i = 0; i < r; ++i) {
    v *= static_cast<i128>(p);
    if (v > (static_cast<i128>(1) << 62)) {
      throw Error(Errc::TooLarge, "p^r exceeds 2^62");
    }
  }
  return static_cast<int64_t>(v);
}

// (p^(r-1) - 1)/(p - 1) = 1 + p + ... + p^(r-2)
uint64_t level_exponent(uint64_t p, int r) {
  i128 k = 0, pw = 1;
  for (int i = 0; i <= r - 2; ++i) {
    k += pw;
    pw *= static_cast<i128>(p);
    if (k > (static_cast<i128>(1) << 62)) throw Error(Errc::TooLarge, "level exponent overflow");
  }
  return static_cast<uint64_t>(k);
}

void require_in_maximal_ideal(const Poly& f) {
  if (f.is_zero()) throw Error(Errc::BadArgument, "zero polynomial");
  Mono constant{std::vector<int64_t>(f.ring()->arity(), 0)};
  if (f.coeff(constant)) throw Error(Errc::ConstantTerm, "polynomial has a constant term");
}

Poly delta_argument(const Poly& f, LevelVariant variant, const WorkBudget* wb) {
  uint64_t p = f.ring()->field().p();
  if (variant == LevelVariant::DeltaOfF || p == 2) return delta(f, wb);
  return delta(poly_pow(f, p - 1, wb), wb);
}

LevelResult level_poly(const Poly& f, int r, LevelVariant variant, const WorkBudget* wb) {
  auto t0 = Clock::now();
  const RingPtr& ring = f.ring();
  uint64_t p = ring->field().p();
  FrobIdeal I = FrobIdeal::make(ring, checked_p_pow(p, r));
  Poly L = poly_trunc_pow(f, p - 1, I, wb);
  if (r >= 2 && !L.is_zero()) {
    Poly d = delta_argument(f, variant, wb);
    Poly dk = poly_trunc_pow(d, level_exponent(p, r), I, wb);
    L = poly_trunc_mul(L, dk, I, wb);
  }
  LevelResult res;
  res.record = LevelRecord{r, "poly",
                           L.is_zero() ? LevelStatus::Member : LevelStatus::NonMember,
                           ms_since(t0)};
  if (!L.is_zero()) res.residual = std::move(L);
  return res;
}

LevelResult level_combinatorial(const Poly& f, int r, LevelVariant variant,
                                const SearchBudget& sb) {
  uint64_t p = f.ring()->field().p();
  if (variant == LevelVariant::DeltaOfFPow && p != 2) {
    throw Error(Errc::BackendUnavailable,
                "combinatorial backend needs monomial-product semantics; use variant delta-f "
                "(or p = 2, where the variants coincide)");
  }
  auto t0 = Clock::now();
  int64_t q = checked_p_pow(p, r);
  uint64_t K = level_exponent(p, r);
  i128 count = static_cast<i128>(p - 1) + static_cast<i128>(p) * K;
  if (count > (static_cast<i128>(1) << 62)) throw Error(Errc::TooLarge, "product count overflow");
  ProductMembership pm = product_membership_oracle(f, static_cast<int64_t>(count), q, sb);
  LevelResult res;
  res.record = LevelRecord{r, "combinatorial",
                           pm.member_sound ? LevelStatus::MemberSound : LevelStatus::Unknown,
                           ms_since(t0)};
  res.witness = std::move(pm.witness);
  return res;
}

LevelResult run_level(const Poly& f, int r, LevelVariant variant, Backend backend,
                      const WorkBudget* wb, const SearchBudget& sb) {
  switch (backend) {
    case Backend::Poly:
      return level_poly(f, r, variant, wb);
    case Backend::Combinatorial:
      return level_combinatorial(f, r, variant, sb);
    case Backend::CombinatorialPrescreen: {
      LevelResult pre = level_combinatorial(f, r, variant, sb);
      if (pre.record.status == LevelStatus::MemberSound) return pre;
      LevelResult exact = level_poly(f, r, variant, wb);
      exact.record.wall_ms += pre.record.wall_ms;
      return exact;
    }
  }
  throw Error(Errc::BadArgument, "unknown backend");
}

}  // namespace

bool fedder_fpure(const Poly& f, const Budget& budget) {
  require_in_maximal_ideal(f);
  uint64_t p = f.ring()->field().p();
  FrobIdeal I = FrobIdeal::make(f.ring(), static_cast<int64_t>(p));
  WorkBudget wb = budget.work();
  return !poly_trunc_pow(f, p - 1, I, &wb).is_zero();
}

LevelResult qfs_level(const Poly& f, int r, LevelVariant variant, Backend backend,
                      const Budget& budget) {
  if (r < 1) throw Error(Errc::BadLevel, "level r must be >= 1");
  require_in_maximal_ideal(f);
  WorkBudget wb = budget.work();
  return run_level(f, r, variant, backend, &wb, budget.search());
}

HeightReport qfs_height_search(const Poly& f, int cap, LevelVariant variant, Backend backend,
                               const Budget& budget) {
  if (cap < 1) throw Error(Errc::BadLevel, "cap must be >= 1");
  require_in_maximal_ideal(f);
  WorkBudget wb = budget.work();
  HeightReport report{f, variant, backend, cap, {}, HeightReport::Verdict::AtLeast, cap + 1,
                      std::nullopt, false};
  for (int r = 1; r <= cap; ++r) {
    LevelResult res;
    try {
      res = run_level(f, r, variant, backend, &wb, budget.search());
    } catch (const Error& err) {
      if (err.code() != Errc::BudgetExceeded) throw;
      report.budget_exhausted = true;
      report.verdict = HeightReport::Verdict::Undecided;
      report.value = r;
      return report;
    }
    report.levels.push_back(res.record);
    switch (res.record.status) {
      case LevelStatus::Member:
      case LevelStatus::MemberSound:
        continue;
      case LevelStatus::NonMember:
        report.verdict = HeightReport::Verdict::Height;
        report.value = r;
        report.residual = std::move(res.residual);
        return report;
      case LevelStatus::Unknown:
        // pure combinatorial backend cannot certify non-membership
        report.verdict = HeightReport::Verdict::Undecided;
        report.value = r;
        return report;
    }
  }
  return report;
}

ChainReport chain_verify(const Poly& g, const Poly& a, int n, const Budget& budget) {
  if (n < 1) throw Error(Errc::BadArgument, "chain length n must be >= 1");
  if (a.is_zero()) throw Error(Errc::ZeroMultiplier, "multiplier a must be nonzero");
  if (!g.ring()->same_ring(*a.ring())) throw Error(Errc::RingMismatch, "g and a in different rings");
  const RingPtr& ring = g.ring();
  uint64_t p = ring->field().p();
  FrobIdeal Ip = FrobIdeal::make(ring, static_cast<int64_t>(p));
  WorkBudget wb = budget.work();
  DeltaCache cache = DeltaCache::make(g);

  ChainReport report{g, a, n, {}, {}, false, false};
  report.chain.reserve(n);
  report.chain.push_back(poly_mul(a, g, &wb));
  for (int i = 2; i <= n; ++i) {
    report.chain.push_back(trace_u(poly_mul(cache.dg, report.chain.back(), &wb)));
  }
  bool all_kernel = true;
  for (int i = 0; i + 1 < n; ++i) {
    bool in_kernel = ker_u(report.chain[i]);
    report.kernel_flags.push_back(in_kernel);
    all_kernel = all_kernel && in_kernel;
  }
  report.terminus_outside = !poly_in_frobideal(report.chain.back(), Ip);
  report.certified = all_kernel && report.terminus_outside;
  return report;
}

std::optional<ChainSearchHit> chain_search(const Poly& g, int n_max,
                                           const std::vector<int64_t>& bounds,
                                           const Budget& budget) {
  if (n_max < 1) throw Error(Errc::BadArgument, "n_max must be >= 1");
  const RingPtr& ring = g.ring();
  if (bounds.size() != ring->arity()) throw Error(Errc::BadArgument, "bounds arity mismatch");
  for (int64_t b : bounds) {
    if (b < 0) throw Error(Errc::BadArgument, "bounds must be >= 0");
  }
  i128 candidates = 1;
  for (int64_t b : bounds) {
    candidates *= static_cast<i128>(b) + 1;
    if (candidates > static_cast<i128>(budget.max_candidates)) {
      throw Error(Errc::BudgetExceeded, "chain search space exceeds candidate budget");
    }
  }

  std::vector<Mono> monos;
  monos.reserve(static_cast<size_t>(candidates));
  Mono cur{std::vector<int64_t>(ring->arity(), 0)};
  auto gen = [&](auto&& self, size_t i) -> void {
    if (i == bounds.size()) {
      monos.push_back(cur);
      return;
    }
    for (int64_t v = 0; v <= bounds[i]; ++v) {
      cur.e[i] = v;
      self(self, i + 1);
    }
    cur.e[i] = 0;
  };
  gen(gen, 0);
  std::sort(monos.begin(), monos.end(),
            [](const Mono& a, const Mono& b) { return canonical_cmp(a, b) < 0; });

  uint64_t p = ring->field().p();
  FrobIdeal Ip = FrobIdeal::make(ring, static_cast<int64_t>(p));
  WorkBudget wb = budget.work();
  DeltaCache cache = DeltaCache::make(g);
  const Scalar one = ring->field().one();

  for (const Mono& a : monos) {
    Poly walk = poly_mul(Poly::monomial(ring, a, one), g, &wb);
    for (int i = 1; i <= n_max; ++i) {
      if (!poly_in_frobideal(walk, Ip)) {
        // all earlier steps were in Ker(u), so this is a minimal-n certificate
        ChainReport report = chain_verify(g, Poly::monomial(ring, a, one), i, budget);
        return ChainSearchHit{a, i, std::move(report)};
      }
      if (walk.is_zero() || !ker_u(walk) || i == n_max) break;
      walk = trace_u(poly_mul(cache.dg, walk, &wb));
    }
  }
  return std::nullopt;
}

ExtensionReport extension_check(const Poly& f, int n, int64_t l, LevelVariant variant,
                                FnVariant fn_variant, Backend backend, const Budget& budget) {
  if (n < 1) throw Error(Errc::BadArgument, "n must be >= 1");
  if (l < 1) throw Error(Errc::BadArgument, "l must be >= 1");
  require_in_maximal_ideal(f);
  auto deg = poly_is_homogeneous(f);
  if (!deg) throw Error(Errc::NotHomogeneous, "f must be homogeneous");
  if (static_cast<uint64_t>(*deg) != f.ring()->arity()) {
    throw Error(Errc::DegreeMismatch, "deg f must equal the number of variables");
  }

  ExtensionReport report{f, n, l, variant, fn_variant, false, false, false, false, {}, {}};

  uint64_t p = f.ring()->field().p();
  WorkBudget wb = budget.work();
  report.hypothesis_sht = true;
  for (int r = 1; r <= n - 1; ++r) {
    LevelResult res = run_level(f, r, variant, backend, &wb, budget.search());
    report.levels.push_back(res.record);
    bool member = res.record.status == LevelStatus::Member ||
                  res.record.status == LevelStatus::MemberSound;
    if (!member) {
      report.hypothesis_sht = false;
      break;
    }
  }

  // f_n = f^(p-2) * D^((p^(n-1)-1)/(p-1)) with D per fn_variant
  int64_t qn = checked_p_pow(p, n);
  uint64_t K = level_exponent(p, n);
  auto t0 = Clock::now();
  bool fn_member = false;
  std::string fn_backend = "poly";
  if (backend != Backend::Poly) {
    // sound oracle: support monomials of f_n are products of this many
    // support monomials of f (for the pm2 reading at p = 2 the count
    // degenerates and the oracle stays Unknown; the exact path decides)
    uint64_t per_delta = fn_variant == FnVariant::DeltaPowPMinus1 ? p - 1 : p - 2;
    i128 count = static_cast<i128>(p - 2) + static_cast<i128>(p) * per_delta * K;
    if (count <= (static_cast<i128>(1) << 62)) {
      ProductMembership pm =
          product_membership_oracle(f, static_cast<int64_t>(count), qn, budget.search());
      if (pm.member_sound) {
        fn_member = true;
        fn_backend = "combinatorial";
      }
    }
  }
  if (fn_backend == "poly") {
    if (backend == Backend::Combinatorial) {
      throw Error(Errc::BackendUnavailable,
                  "combinatorial backend cannot certify the f_n hypothesis here");
    }
    FrobIdeal I = FrobIdeal::make(f.ring(), qn);
    Poly fn = poly_trunc_pow(f, p - 2, I, &wb);
    if (!fn.is_zero()) {
      uint64_t dpow = fn_variant == FnVariant::DeltaPowPMinus1 ? p - 1 : p - 2;
      Poly d = delta(poly_pow(f, dpow, &wb), &wb);
      Poly dk = poly_trunc_pow(d, K, I, &wb);
      fn = poly_trunc_mul(fn, dk, I, &wb);
    }
    fn_member = fn.is_zero();
  }
  report.fn_record = LevelRecord{n, fn_backend,
                                 fn_member ? (fn_backend == "poly" ? LevelStatus::Member
                                                                   : LevelStatus::MemberSound)
                                           : LevelStatus::NonMember,
                                 ms_since(t0)};
  report.hypothesis_fn = fn_member;
  report.l_large_enough = static_cast<i128>(l) >= static_cast<i128>(qn);
  report.concluded = report.hypothesis_sht && report.hypothesis_fn && report.l_large_enough;
  return report;
}

LambdaResult lambda_search(uint64_t p, const Budget& budget) {
  if (!is_prime_u64(p) || p % 4 != 1 || p <= 5) {
    throw Error(Errc::BadPrime, "lambda search needs a prime p > 5 with p = 1 mod 4");
  }
  auto field = FieldCtx::make(p);
  auto ring = RingCtx::make(field, {"x", "y", "z", "w"});
  FrobIdeal Ip = FrobIdeal::make(ring, static_cast<int64_t>(p));
  WorkBudget wb = budget.work();

  std::vector<uint64_t> fact(p);
  fact[0] = 1 % p;
  for (uint64_t k = 1; k < p; ++k) fact[k] = mulmod(fact[k - 1], k, p);
  auto multinom = [&](uint64_t n, std::initializer_list<uint64_t> parts) {
    uint64_t denom = 1 % p;
    for (uint64_t q : parts) denom = mulmod(denom, fact[q], p);
    return mulmod(fact[n], invmod_p(denom, p), p);
  };

  LambdaResult result;
  result.p = p;
  for (uint64_t lam = 0; lam < p; ++lam) {
    ++result.scanned;
    if (powmod(lam, 4, p) == 256 % p) continue;
    // corner coefficient of (xyzw)^(p-1) in f^(p-1); membership in m^[p]
    // fails exactly when it is nonzero, since every other degree-4(p-1)
    // monomial has some exponent >= p
    uint64_t corner = 0;
    for (uint64_t g4 = 0; g4 <= p - 1; g4 += 4) {
      uint64_t k = (p - 1 - g4) / 4;
      uint64_t term = mulmod(multinom(p - 1, {k, k, k, k, g4}), powmod(lam, g4, p), p);
      corner = (corner + term) % p;
    }
    if (corner != 0) continue;
    Poly f = poly_parse(ring, "x^4 + y^4 + z^4 + w^4");
    f.add_term(Mono{{1, 1, 1, 1}}, field->from_uint(lam));
    if (!poly_trunc_pow(f, p - 2, Ip, &wb).is_zero()) continue;
    result.lambda = lam;
    result.check_lambda4 = true;
    result.check_pm1 = true;
    result.check_pm2 = true;
    return result;
  }
  return result;
}

std::vector<ProjectivePoint> singular_scan(const Poly& f, uint32_t e_max, const Budget& budget) {
  (void)budget;
  const RingPtr& ring = f.ring();
  if (ring->field().e() != 1) {
    throw Error(Errc::BadArgument, "singular scan expects a prime-field polynomial");
  }
  if (f.is_zero()) throw Error(Errc::BadArgument, "zero polynomial");
  if (!poly_is_homogeneous(f)) throw Error(Errc::NotHomogeneous, "f must be homogeneous");
  if (e_max < 1) throw Error(Errc::BadArgument, "e_max must be >= 1");
  uint64_t p = ring->field().p();
  i128 space = 1;
  for (uint32_t i = 0; i < 4 * e_max; ++i) {
    space *= static_cast<i128>(p);
    if (space > 100'000'000) {
      throw Error(Errc::BudgetExceeded, "scan space p^(4*e_max) exceeds 10^8");
    }
  }

  size_t N = ring->arity();
  std::vector<Poly> polys;  // f and its partials
  polys.push_back(f);
  for (size_t i = 0; i < N; ++i) polys.push_back(poly_partial(f, i));

  std::vector<ProjectivePoint> found;
  for (uint32_t e = 1; e <= e_max; ++e) {
    FieldPtr K = e == 1 ? ring->field_ptr() : FieldCtx::make(p, e, find_irreducible(p, e));
    uint64_t q = K->order();
    auto eval = [&](const Poly& poly, const std::vector<Scalar>& coords) {
      Scalar acc = K->zero();
      for (const auto& [m, c] : poly.terms()) {
        Scalar term = K->from_uint(c.c[0]);  // prime-subfield coefficient
        for (size_t i = 0; i < N; ++i) {
          if (m.e[i] > 0) term = K->mul(term, K->pow(coords[i], static_cast<uint64_t>(m.e[i])));
        }
        acc = K->add(acc, term);
      }
      return acc;
    };
    // projective points: leading coordinate normalized to 1
    for (size_t lead = 0; lead < N; ++lead) {
      size_t free_vars = N - 1 - lead;
      uint64_t total = 1;
      for (size_t i = 0; i < free_vars; ++i) total *= q;
      for (uint64_t idx = 0; idx < total; ++idx) {
        std::vector<Scalar> coords(N, K->zero());
        coords[lead] = K->one();
        uint64_t v = idx;
        for (size_t i = lead + 1; i < N; ++i) {
          coords[i] = K->from_index(v % q);
          v /= q;
        }
        bool all_zero = true;
        for (const Poly& poly : polys) {
          if (!K->is_zero(eval(poly, coords))) {
            all_zero = false;
            break;
          }
        }
        if (all_zero) {
          std::string text = "(";
          for (size_t i = 0; i < N; ++i) {
            if (i) text += " : ";
            text += K->print_scalar(coords[i]);
          }
          text += ") over GF(" + std::to_string(q) + ")";
          found.push_back(ProjectivePoint{e, coords, text});
        }
      }
    }
  }
  return found;
}

}  // namespace qfs
