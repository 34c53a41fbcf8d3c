#include "qfs/runner.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "qfs/version.hpp"

namespace qfs {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int64_t to_i64(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::BadArgument, "bad integer '" + s + "' for " + what);
  }
}

uint64_t to_u64(const std::string& s, const std::string& what) {
  int64_t v = to_i64(s, what);
  if (v < 0) throw Error(Errc::BadArgument, what + " must be >= 0");
  return static_cast<uint64_t>(v);
}

std::pair<int64_t, int64_t> parse_range(const std::string& s) {
  size_t dots = s.find("..");
  if (dots == std::string::npos) {
    int64_t v = to_i64(s, "range");
    return {v, v};
  }
  int64_t lo = to_i64(s.substr(0, dots), "range low");
  int64_t hi = to_i64(s.substr(dots + 2), "range high");
  if (lo > hi) throw Error(Errc::BadArgument, "empty range " + s);
  return {lo, hi};
}

RingPtr make_ring(const CheckSpec& spec) {
  uint64_t p = to_u64(spec.get("p"), "p");
  uint32_t e = static_cast<uint32_t>(to_u64(spec.get_or("e", "1"), "e"));
  std::vector<uint64_t> modulus;
  if (spec.has("modulus")) {
    for (const auto& part : split(spec.get("modulus"), ',')) {
      modulus.push_back(to_u64(part, "modulus"));
    }
  }
  auto field = FieldCtx::make(p, e, modulus);
  std::vector<std::string> vars = split(spec.get("vars"), ',');
  return RingCtx::make(field, vars);
}

Json poly_detail(const Poly& f, size_t print_cap = 64) {
  Json j;
  j["terms"] = f.term_count();
  if (f.term_count() <= print_cap) j["text"] = poly_print(f);
  return j;
}

Json level_record_json(const LevelRecord& rec) {
  Json j;
  j["r"] = rec.r;
  j["backend"] = rec.backend;
  j["status"] = to_string(rec.status);
  j["member"] = rec.status == LevelStatus::Member || rec.status == LevelStatus::MemberSound;
  j["wall_ms"] = rec.wall_ms;
  return j;
}

struct ExecOutcome {
  Json detail;
  std::optional<bool> ok;
  bool budget_skipped = false;
};

void expect_one_of(const std::string& expect, const std::string& actual, ExecOutcome& out) {
  if (!expect.empty()) out.ok = expect == actual;
}

ExecOutcome exec_membership(const CheckSpec& spec, const Budget& budget) {
  RingPtr ring = make_ring(spec);
  Poly f = poly_parse(ring, spec.get("poly"));
  uint64_t power = to_u64(spec.get("power"), "power");
  int64_t q = to_i64(spec.get("q"), "q");
  FrobIdeal I = FrobIdeal::make(ring, q);
  WorkBudget wb = budget.work();
  Poly residual = poly_trunc_pow(f, power, I, &wb);
  ExecOutcome out;
  out.detail["power"] = power;
  out.detail["q"] = q;
  out.detail["member"] = residual.is_zero();
  out.detail["residual"] = poly_detail(residual);
  expect_one_of(spec.get_or("expect", ""), residual.is_zero() ? "member" : "nonmember", out);
  return out;
}

ExecOutcome exec_fedder(const CheckSpec& spec, const Budget& budget) {
  RingPtr ring = make_ring(spec);
  Poly f = poly_parse(ring, spec.get("poly"));
  bool fpure = fedder_fpure(f, budget);
  ExecOutcome out;
  out.detail["f_pure"] = fpure;
  expect_one_of(spec.get_or("expect", ""), fpure ? "f-pure" : "not-f-pure", out);
  return out;
}

ExecOutcome exec_level(const CheckSpec& spec, const Budget& budget) {
  RingPtr ring = make_ring(spec);
  Poly f = poly_parse(ring, spec.get("poly"));
  int r = static_cast<int>(to_i64(spec.get("r"), "r"));
  LevelVariant variant = level_variant_from_string(spec.get_or("variant", "delta-fpow"));
  Backend backend = backend_from_string(spec.get_or("backend", "combinatorial-prescreen"));
  LevelResult res = qfs_level(f, r, variant, backend, budget);
  ExecOutcome out;
  out.detail["level"] = level_record_json(res.record);
  if (res.residual) out.detail["residual"] = poly_detail(*res.residual);
  if (res.witness) out.detail["witness_gamma"] = res.witness->gamma;
  std::string expect = spec.get_or("expect", "");
  if (!expect.empty()) {
    std::string status = to_string(res.record.status);
    if (expect == "member") {
      out.ok = res.record.status == LevelStatus::Member ||
               res.record.status == LevelStatus::MemberSound;
    } else {
      out.ok = expect == status;
    }
  }
  return out;
}

ExecOutcome exec_height(const CheckSpec& spec, const Budget& budget) {
  RingPtr ring = make_ring(spec);
  Poly f = poly_parse(ring, spec.get("poly"));
  int cap = static_cast<int>(to_i64(spec.get("cap"), "cap"));
  LevelVariant variant = level_variant_from_string(spec.get_or("variant", "delta-fpow"));
  Backend backend = backend_from_string(spec.get_or("backend", "combinatorial-prescreen"));
  HeightReport report = qfs_height_search(f, cap, variant, backend, budget);
  ExecOutcome out;
  out.detail["cap"] = cap;
  out.detail["variant"] = to_string(variant);
  out.detail["backend"] = to_string(backend);
  std::string verdict;
  switch (report.verdict) {
    case HeightReport::Verdict::Height: verdict = "height"; break;
    case HeightReport::Verdict::AtLeast: verdict = "at-least"; break;
    case HeightReport::Verdict::Undecided: verdict = "undecided"; break;
  }
  out.detail["verdict"] = verdict;
  out.detail["value"] = report.value;
  Json levels = Json::array();
  for (const auto& rec : report.levels) levels.push_back(level_record_json(rec));
  out.detail["levels"] = std::move(levels);
  if (report.residual) out.detail["residual"] = poly_detail(*report.residual);
  out.budget_skipped = report.budget_exhausted;
  std::string expect = spec.get_or("expect", "");
  if (!expect.empty() && !out.budget_skipped) {
    out.ok = expect == verdict + ":" + std::to_string(report.value);
  }
  return out;
}

int64_t chain_t_exponent(const CheckSpec& spec, int64_t m) {
  int64_t base = to_i64(spec.get_or("a-t-base", "1023"), "a-t-base");
  int64_t slope = to_i64(spec.get_or("a-t-slope", "-2"), "a-t-slope");
  __int128 t = static_cast<__int128>(base) + static_cast<__int128>(slope) * m;
  if (t > INT64_MAX || t < INT64_MIN) {
    throw Error(Errc::ExponentOverflow, "multiplier t-exponent overflows");
  }
  return static_cast<int64_t>(t);
}

// multiplier a for the chain families: explicit exponents on the non-t
// variables plus an affine-in-m exponent on t
Poly family_multiplier(const RingPtr& ring, const CheckSpec& spec, size_t t_index, int64_t m) {
  std::vector<std::string> exps = split(spec.get_or("a-exps", "2,1,2,3"), ',');
  if (exps.size() != ring->arity() - 1) {
    throw Error(Errc::BadArgument, "a-exps must list every variable except t");
  }
  Mono a{std::vector<int64_t>(ring->arity(), 0)};
  size_t k = 0;
  for (size_t i = 0; i < ring->arity(); ++i) {
    if (i == t_index) continue;
    a.e[i] = to_i64(exps[k++], "a-exps");
  }
  int64_t t_exp = chain_t_exponent(spec, m);
  if (t_exp < 0) throw Error(Errc::BadArgument, "multiplier t-exponent is negative");
  a.e[t_index] = t_exp;
  return Poly::monomial(ring, a, ring->field().one());
}

size_t t_var_index(const RingPtr& ring, const CheckSpec& spec) {
  std::string t_name = spec.get_or("t-var", "t");
  auto idx = ring->var_index(t_name);
  if (!idx) throw Error(Errc::UnknownVariable, "deformation variable '" + t_name + "'");
  return *idx;
}

Poly deformed(const RingPtr& ring, const Poly& f, size_t t_index, int64_t m) {
  Mono tm{std::vector<int64_t>(ring->arity(), 0)};
  tm.e[t_index] = m;
  return poly_add(f, Poly::monomial(ring, tm, ring->field().one()));
}

ExecOutcome exec_chain(const CheckSpec& spec, const Budget& budget) {
  RingPtr ring = make_ring(spec);
  Poly g = poly_parse(ring, spec.get("g"));
  Poly a = poly_parse(ring, spec.get("a"));
  int n = static_cast<int>(to_i64(spec.get("n"), "n"));
  ChainReport report = chain_verify(g, a, n, budget);
  ExecOutcome out;
  out.detail["n"] = n;
  out.detail["certified"] = report.certified;
  out.detail["kernel_flags"] = report.kernel_flags;
  out.detail["terminus_outside"] = report.terminus_outside;
  Json chain = Json::array();
  for (const auto& ai : report.chain) chain.push_back(poly_print(ai));
  out.detail["chain"] = std::move(chain);
  expect_one_of(spec.get_or("expect", ""), report.certified ? "certified" : "not-certified", out);
  return out;
}

ExecOutcome exec_chain_family(const CheckSpec& spec, const Budget& budget) {
  RingPtr ring = make_ring(spec);
  Poly f = poly_parse(ring, spec.get("f"));
  size_t t_index = t_var_index(ring, spec);
  auto [m_lo, m_hi] = parse_range(spec.get("m"));
  int n = static_cast<int>(to_i64(spec.get("n"), "n"));
  ExecOutcome out;
  int64_t certified_count = 0;
  Json failures = Json::array();
  for (int64_t m = m_lo; m <= m_hi; ++m) {
    Poly g = deformed(ring, f, t_index, m);
    Poly a = family_multiplier(ring, spec, t_index, m);
    ChainReport report = chain_verify(g, a, n, budget);
    if (report.certified) {
      ++certified_count;
    } else if (failures.size() < 20) {
      failures.push_back(m);
    }
  }
  int64_t total = m_hi - m_lo + 1;
  out.detail["m"] = spec.get("m");
  out.detail["n"] = n;
  out.detail["certified_count"] = certified_count;
  out.detail["total"] = total;
  bool all = certified_count == total;
  out.detail["all_certified"] = all;
  if (!failures.empty()) out.detail["failures"] = std::move(failures);
  expect_one_of(spec.get_or("expect", ""), all ? "certified-all" : "not-certified-all", out);
  return out;
}

ExecOutcome exec_chain_search(const CheckSpec& spec, const Budget& budget) {
  RingPtr ring = make_ring(spec);
  Poly g = poly_parse(ring, spec.get("g"));
  int n_max = static_cast<int>(to_i64(spec.get("n-max"), "n-max"));
  std::vector<int64_t> bounds;
  for (const auto& part : split(spec.get("bounds"), ',')) {
    bounds.push_back(to_i64(part, "bounds"));
  }
  auto hit = chain_search(g, n_max, bounds, budget);
  ExecOutcome out;
  out.detail["found"] = hit.has_value();
  if (hit) {
    out.detail["a"] = poly_print(Poly::monomial(ring, hit->a, ring->field().one()));
    out.detail["n"] = hit->n;
    Json chain = Json::array();
    for (const auto& ai : hit->report.chain) chain.push_back(poly_print(ai));
    out.detail["chain"] = std::move(chain);
  }
  expect_one_of(spec.get_or("expect", ""), hit ? "found" : "none", out);
  return out;
}

ExecOutcome exec_claims_sweep(const CheckSpec& spec, const Budget& budget) {
  RingPtr ring = make_ring(spec);
  Poly f = poly_parse(ring, spec.get("f"));
  ExponentMatrix E = ExponentMatrix::from_poly(f);
  int64_t q_min = to_i64(spec.get("q-min"), "q-min");
  int64_t q_max = to_i64(spec.get("q-max"), "q-max");
  int64_t mod = to_i64(spec.get("mod"), "mod");
  int64_t residue = to_i64(spec.get("residue"), "residue");
  std::string op = spec.get_or("residue-op", "eq");
  std::string s_rule = spec.get_or("s-rule", "q-1");
  if (q_min < 1 || mod < 1) throw Error(Errc::BadArgument, "q-min and mod must be >= 1");
  std::vector<int64_t> qs;
  for (int64_t q = q_min; q <= q_max; ++q) {
    bool matches = (q % mod) == residue;
    if (op == "eq" ? matches : !matches) qs.push_back(q);
  }
  SweepReport sweep = claim_sweep(E, qs, s_rule == "q-2" ? SumRule::QMinus2 : SumRule::QMinus1,
                                  [](int64_t) { return true; }, budget.search());
  ExecOutcome out;
  out.detail["q_count"] = qs.size();
  out.detail["s_rule"] = s_rule;
  out.detail["contradictions"] = sweep.contradictions;
  Json bad = Json::array();
  for (const auto& row : sweep.rows) {
    if (row.contradiction && bad.size() < 20) {
      Json j;
      j["q"] = row.q;
      j["gamma"] = row.witness->gamma;
      bad.push_back(std::move(j));
    }
  }
  if (!bad.empty()) out.detail["contradiction_witnesses"] = std::move(bad);
  expect_one_of(spec.get_or("expect", ""),
                sweep.contradictions == 0 ? "no-contradictions" : "contradictions", out);
  return out;
}

ExecOutcome exec_gamma(const CheckSpec& spec, const Budget& budget) {
  RingPtr ring = make_ring(spec);
  Poly f = poly_parse(ring, spec.get("f"));
  ExponentMatrix E = ExponentMatrix::from_poly(f);
  int64_t q = to_i64(spec.get("q"), "q");
  int64_t s = to_i64(spec.get("s"), "s");
  auto witness = gamma_feasible(E, q, s, budget.search());
  ExecOutcome out;
  out.detail["q"] = q;
  out.detail["s"] = s;
  out.detail["feasible"] = witness.has_value();
  std::string actual = "none";
  if (witness) {
    out.detail["gamma"] = witness->gamma;
    Mono m = witness_monomial(E, *witness);
    out.detail["monomial"] = poly_print(Poly::monomial(ring, m, ring->field().one()));
    actual = "witness:";
    for (size_t i = 0; i < witness->gamma.size(); ++i) {
      if (i) actual += ",";
      actual += std::to_string(witness->gamma[i]);
    }
  }
  expect_one_of(spec.get_or("expect", ""), actual, out);
  return out;
}

ExecOutcome exec_powers_mod(const CheckSpec& spec, const Budget&) {
  uint64_t base = to_u64(spec.get("base"), "base");
  uint64_t modulus = to_u64(spec.get("modulus"), "modulus");
  uint64_t k = to_u64(spec.get("k"), "k");
  auto values = powers_mod(base, modulus, k);
  ExecOutcome out;
  out.detail["values"] = values;
  std::string actual;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) actual += ",";
    actual += std::to_string(values[i]);
  }
  expect_one_of(spec.get_or("expect", ""), actual, out);
  return out;
}

ExecOutcome exec_lambda(const CheckSpec& spec, const Budget& budget) {
  uint64_t p = to_u64(spec.get("p"), "p");
  LambdaResult res = lambda_search(p, budget);
  ExecOutcome out;
  out.detail["p"] = p;
  out.detail["found"] = res.lambda.has_value();
  out.detail["scanned"] = res.scanned;
  if (res.lambda) {
    out.detail["lambda"] = *res.lambda;
    Json checks;
    checks["lambda4_not_256"] = res.check_lambda4;
    checks["pm1_member"] = res.check_pm1;
    checks["pm2_member"] = res.check_pm2;
    out.detail["checks"] = std::move(checks);
  }
  std::string expect = spec.get_or("expect", "");
  if (!expect.empty()) {
    std::string actual = res.lambda ? "found:" + std::to_string(*res.lambda) : "not-found";
    out.ok = expect == actual || (expect == "found" && res.lambda.has_value());
  }
  return out;
}

ExecOutcome exec_extension(const CheckSpec& spec, const Budget& budget) {
  RingPtr ring = make_ring(spec);
  Poly f = poly_parse(ring, spec.get("f"));
  int n = static_cast<int>(to_i64(spec.get("n"), "n"));
  int64_t l = to_i64(spec.get("l"), "l");
  LevelVariant variant = level_variant_from_string(spec.get_or("variant", "delta-fpow"));
  FnVariant fn_variant = fn_variant_from_string(spec.get_or("fn-variant", "delta-fpow"));
  Backend backend = backend_from_string(spec.get_or("backend", "combinatorial-prescreen"));
  ExtensionReport report = extension_check(f, n, l, variant, fn_variant, backend, budget);
  ExecOutcome out;
  out.detail["n"] = n;
  out.detail["l"] = l;
  out.detail["fn_variant"] = to_string(fn_variant);
  out.detail["hypothesis_sht"] = report.hypothesis_sht;
  out.detail["hypothesis_fn"] = report.hypothesis_fn;
  out.detail["l_large_enough"] = report.l_large_enough;
  out.detail["concluded"] = report.concluded;
  out.detail["conclusion"] =
      report.concluded ? "quotient by f + t^l is not quasi-F-split" : "no conclusion";
  Json levels = Json::array();
  for (const auto& rec : report.levels) levels.push_back(level_record_json(rec));
  out.detail["levels"] = std::move(levels);
  out.detail["fn_record"] = level_record_json(report.fn_record);
  expect_one_of(spec.get_or("expect", ""), report.concluded ? "concluded" : "not-concluded", out);
  return out;
}

ExecOutcome exec_singular_scan(const CheckSpec& spec, const Budget& budget) {
  RingPtr ring = make_ring(spec);
  Poly f = poly_parse(ring, spec.get("poly"));
  uint32_t e_max = static_cast<uint32_t>(to_u64(spec.get("emax"), "emax"));
  auto points = singular_scan(f, e_max, budget);
  ExecOutcome out;
  out.detail["emax"] = e_max;
  out.detail["count"] = points.size();
  Json pts = Json::array();
  for (const auto& pt : points) {
    if (pts.size() >= 50) break;
    pts.push_back(pt.text);
  }
  out.detail["points"] = std::move(pts);
  expect_one_of(spec.get_or("expect", ""), points.empty() ? "empty" : "nonempty", out);
  return out;
}

ExecOutcome exec_operator(const CheckSpec& spec, const Budget& budget, bool is_delta) {
  RingPtr ring = make_ring(spec);
  Poly f = poly_parse(ring, spec.get("poly"));
  WorkBudget wb = budget.work();
  Poly result = is_delta ? delta(f, &wb) : trace_u(f);
  ExecOutcome out;
  out.detail["result"] = poly_print(result);
  out.detail["terms"] = result.term_count();
  std::string expect = spec.get_or("expect", "");
  if (!expect.empty()) out.ok = result == poly_parse(ring, expect);
  return out;
}

ExecOutcome exec_scan_family(const CheckSpec& spec, const Budget& budget) {
  RingPtr ring = make_ring(spec);
  Poly f = poly_parse(ring, spec.get("f"));
  size_t t_index = t_var_index(ring, spec);
  auto [m_lo, m_hi] = parse_range(spec.get("m"));
  int cap = static_cast<int>(to_i64(spec.get_or("cap", "9"), "cap"));
  int n_max = static_cast<int>(to_i64(spec.get_or("n-max", "10"), "n-max"));
  ExecOutcome out;
  Json rows = Json::array();
  for (int64_t m = m_lo; m <= m_hi; ++m) {
    Json row;
    row["m"] = m;
    Poly g = deformed(ring, f, t_index, m);
    // minimal chain length for the family multiplier, when it exists
    if (chain_t_exponent(spec, m) >= 0) {
      Poly a = family_multiplier(ring, spec, t_index, m);
      ChainReport report = chain_verify(g, a, n_max, budget);
      FrobIdeal Ip = FrobIdeal::make(ring, static_cast<int64_t>(ring->field().p()));
      int minimal = 0;
      bool kernels_ok = true;
      for (int i = 1; i <= n_max && kernels_ok; ++i) {
        if (!poly_in_frobideal(report.chain[i - 1], Ip)) {
          minimal = i;
          break;
        }
        if (i <= n_max - 1) kernels_ok = report.kernel_flags[i - 1];
      }
      if (minimal > 0) {
        row["chain_n"] = minimal;
      } else {
        row["chain_n"] = nullptr;
      }
    } else {
      row["chain_n"] = nullptr;
      row["note"] = "family multiplier does not exist for this m";
    }
    HeightReport height =
        qfs_height_search(g, cap, LevelVariant::DeltaOfFPow, Backend::CombinatorialPrescreen,
                          budget);
    std::string verdict;
    switch (height.verdict) {
      case HeightReport::Verdict::Height: verdict = "height"; break;
      case HeightReport::Verdict::AtLeast: verdict = "at-least"; break;
      case HeightReport::Verdict::Undecided: verdict = "undecided"; break;
    }
    row["levels_verdict"] = verdict;
    row["levels_value"] = height.value;
    Json levels = Json::array();
    for (const auto& rec : height.levels) levels.push_back(to_string(rec.status));
    row["levels"] = std::move(levels);
    rows.push_back(std::move(row));
  }
  out.detail["rows"] = std::move(rows);
  return out;
}

ExecOutcome dispatch(const CheckSpec& spec, const Budget& budget) {
  if (spec.kind == "membership") return exec_membership(spec, budget);
  if (spec.kind == "fedder") return exec_fedder(spec, budget);
  if (spec.kind == "level") return exec_level(spec, budget);
  if (spec.kind == "height") return exec_height(spec, budget);
  if (spec.kind == "chain") return exec_chain(spec, budget);
  if (spec.kind == "chain-family") return exec_chain_family(spec, budget);
  if (spec.kind == "chain-search") return exec_chain_search(spec, budget);
  if (spec.kind == "claims-sweep") return exec_claims_sweep(spec, budget);
  if (spec.kind == "gamma") return exec_gamma(spec, budget);
  if (spec.kind == "powers-mod") return exec_powers_mod(spec, budget);
  if (spec.kind == "lambda") return exec_lambda(spec, budget);
  if (spec.kind == "extension") return exec_extension(spec, budget);
  if (spec.kind == "singular-scan") return exec_singular_scan(spec, budget);
  if (spec.kind == "delta") return exec_operator(spec, budget, true);
  if (spec.kind == "trace") return exec_operator(spec, budget, false);
  if (spec.kind == "scan-family") return exec_scan_family(spec, budget);
  throw Error(Errc::BadArgument, "unknown check kind '" + spec.kind + "'");
}

}  // namespace

CheckResult run_check(const CheckSpec& spec, const Budget& budget) {
  CheckResult result;
  result.name = spec.name;
  result.kind = spec.kind;
  auto t0 = Clock::now();
  try {
    ExecOutcome out = dispatch(spec, budget);
    result.detail = std::move(out.detail);
    if (out.budget_skipped) {
      result.status = "skipped-budget";
    } else if (!out.ok.has_value() || *out.ok) {
      result.status = "pass";
    } else {
      result.status = "fail";
      result.detail["expected"] = spec.get_or("expect", "");
    }
  } catch (const Error& err) {
    result.status = err.code() == Errc::BudgetExceeded ? "skipped-budget" : "error";
    result.detail = Json{{"error", errc_name(err.code())}, {"message", err.what()}};
  } catch (const std::exception& ex) {
    result.status = "error";
    result.detail = Json{{"error", "Exception"}, {"message", ex.what()}};
  }
  result.wall_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return result;
}

Report run_scenario(const Scenario& scenario, const RunOptions& options) {
  std::vector<const CheckSpec*> selected;
  for (const auto& spec : scenario.checks) {
    if (!options.section.empty() && spec.section != options.section) continue;
    if (options.tier != "full" && spec.tier == "slow") continue;
    selected.push_back(&spec);
  }

  Report report;
  report.scenario = scenario.name;
  report.config["threads"] = options.threads;
  report.config["section"] = options.section;
  report.config["tier"] = options.tier;
  report.config["budget_term_pairs"] = options.budget.max_term_pairs;
  report.config["budget_seconds"] = options.budget.max_seconds;
  report.checks.resize(selected.size());

  int threads = std::max(1, options.threads);
  threads = static_cast<int>(std::min<size_t>(threads, std::max<size_t>(1, selected.size())));
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= selected.size()) break;
      report.checks[i] = run_check(*selected[i], options.budget);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return report;
}

}  // namespace qfs
