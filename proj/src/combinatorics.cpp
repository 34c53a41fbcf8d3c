#include "qfs/combinatorics.hpp"

#include <algorithm>

#include "qfs/modmath.hpp"

namespace qfs {

ExponentMatrix ExponentMatrix::from_poly(const Poly& f) {
  if (f.is_zero()) throw Error(Errc::BadArgument, "exponent matrix of the zero polynomial");
  ExponentMatrix E;
  E.arity = f.ring()->arity();
  for (const auto& [m, c] : f.sorted_terms()) E.rows.push_back(m.e);
  return E;
}

Mono witness_monomial(const ExponentMatrix& E, const GammaWitness& w) {
  Mono m{std::vector<int64_t>(E.arity, 0)};
  for (size_t j = 0; j < E.rows.size(); ++j) {
    for (size_t i = 0; i < E.arity; ++i) {
      m.e[i] += w.gamma[j] * E.rows[j][i];
    }
  }
  return m;
}

namespace {

using i128 = __int128;

struct Searcher {
  const ExponentMatrix& E;
  int64_t Q;  // per-variable bound q-1
  uint64_t nodes = 0;
  uint64_t max_nodes;

  size_t r, N;
  std::vector<int64_t> row_weight;  // total degree of each row
  std::vector<int64_t> gamma;       // prefix; holds the witness on success
  std::vector<int64_t> residual;    // Q - consumed, per variable

  // Suffix rows j..r-1 that share one weight and admit a variable-by-variable
  // elimination order can be solved exactly: a feasible tail with sum s has
  // slack vector sigma = residual - A*gamma, sigma >= 0, with
  // sum(sigma over touched vars) = sum(residual) - weight*s fixed, so
  // enumerating the sigma compositions enumerates every feasible tail.
  struct SuffixPlan {
    bool usable = false;
    int64_t weight = 0;
    std::vector<size_t> touched;
    std::vector<std::pair<size_t, size_t>> pivots;  // (variable, row), solve order
  };
  std::vector<SuffixPlan> plans;

  static constexpr uint64_t kSlackEnumCap = 200'000;

  Searcher(const ExponentMatrix& e, int64_t q, const SearchBudget& b)
      : E(e), Q(q - 1), max_nodes(b.max_nodes), r(e.rows.size()), N(e.arity) {
    row_weight.resize(r);
    for (size_t j = 0; j < r; ++j) {
      int64_t w = 0;
      for (int64_t v : E.rows[j]) w += v;
      row_weight[j] = w;
    }
    residual.assign(N, Q);
    build_plans();
  }

  void build_plans() {
    plans.resize(r);
    for (size_t j = 0; j < r; ++j) {
      SuffixPlan plan;
      plan.weight = row_weight[j];
      if (plan.weight < 1) continue;
      bool equal = true;
      for (size_t k = j + 1; k < r && equal; ++k) equal = row_weight[k] == plan.weight;
      if (!equal) continue;
      std::vector<bool> touched(N, false);
      for (size_t k = j; k < r; ++k) {
        for (size_t i = 0; i < N; ++i) {
          if (E.rows[k][i] > 0) touched[i] = true;
        }
      }
      for (size_t i = 0; i < N; ++i) {
        if (touched[i]) plan.touched.push_back(i);
      }
      std::vector<bool> resolved(r, false);
      std::vector<bool> var_used(N, false);
      size_t remaining = r - j;
      while (remaining > 0) {
        bool progress = false;
        for (size_t i : plan.touched) {
          if (var_used[i]) continue;
          size_t hit = r, hits = 0;
          for (size_t k = j; k < r; ++k) {
            if (!resolved[k] && E.rows[k][i] > 0) {
              ++hits;
              hit = k;
            }
          }
          if (hits == 1) {
            plan.pivots.emplace_back(i, hit);
            resolved[hit] = true;
            var_used[i] = true;
            --remaining;
            progress = true;
            break;
          }
        }
        if (!progress) break;
      }
      plan.usable = remaining == 0;
      plans[j] = std::move(plan);
    }
  }

  void count_node() {
    if (++nodes > max_nodes) {
      throw Error(Errc::BudgetExceeded,
                  "gamma search exceeded " + std::to_string(max_nodes) + " nodes");
    }
  }

  int64_t row_cap(size_t j, int64_t s_rest) const {
    int64_t cap = s_rest;
    for (size_t i = 0; i < N; ++i) {
      int64_t e = E.rows[j][i];
      if (e > 0) cap = std::min(cap, residual[i] / e);
    }
    return cap;
  }

  bool fits(size_t j, int64_t g) const {
    for (size_t i = 0; i < N; ++i) {
      if (static_cast<i128>(E.rows[j][i]) * g > residual[i]) return false;
    }
    return true;
  }

  void consume(size_t j, int64_t g, int64_t sign) {
    for (size_t i = 0; i < N; ++i) residual[i] -= sign * g * E.rows[j][i];
  }

  struct SuffixOutcome {
    bool decided = false;
    std::optional<std::vector<int64_t>> tail;
  };

  SuffixOutcome solve_suffix(size_t j, int64_t s_rest) {
    const SuffixPlan& plan = plans[j];
    i128 slack_total = 0;
    for (size_t i : plan.touched) slack_total += residual[i];
    slack_total -= static_cast<i128>(plan.weight) * s_rest;
    if (slack_total < 0) return {true, std::nullopt};
    size_t k = plan.touched.size();
    i128 combos = 1;
    for (size_t i = 1; i < k; ++i) {
      combos = combos * (slack_total + static_cast<i128>(i)) / static_cast<i128>(i);
      if (combos > static_cast<i128>(kSlackEnumCap)) return {false, std::nullopt};
    }

    std::optional<std::vector<int64_t>> best;
    std::vector<int64_t> sigma(k, 0);
    std::vector<int64_t> b(N, 0);
    std::vector<int64_t> tail(r - j, 0);

    auto try_sigma = [&]() {
      count_node();
      for (size_t i = 0; i < k; ++i) b[plan.touched[i]] = residual[plan.touched[i]] - sigma[i];
      std::fill(tail.begin(), tail.end(), 0);
      std::vector<bool> solved(r - j, false);
      for (const auto& [var, row] : plan.pivots) {
        i128 rhs = b[var];
        for (size_t kk = j; kk < r; ++kk) {
          if (solved[kk - j] && E.rows[kk][var] > 0) {
            rhs -= static_cast<i128>(tail[kk - j]) * E.rows[kk][var];
          }
        }
        int64_t coef = E.rows[row][var];
        if (rhs < 0 || rhs % coef != 0) return;
        i128 val = rhs / coef;
        if (val > s_rest) return;
        tail[row - j] = static_cast<int64_t>(val);
        solved[row - j] = true;
      }
      i128 total = 0;
      for (int64_t v : tail) total += v;
      if (total != s_rest) return;
      for (size_t i : plan.touched) {
        i128 lhs = 0;
        for (size_t kk = j; kk < r; ++kk) lhs += static_cast<i128>(tail[kk - j]) * E.rows[kk][i];
        if (lhs != b[i]) return;
      }
      if (!best || tail < *best) best = tail;
    };

    auto rec = [&](auto&& self, size_t idx, int64_t remaining) -> void {
      if (idx + 1 == k) {
        sigma[idx] = remaining;
        try_sigma();
        return;
      }
      for (int64_t v = 0; v <= remaining; ++v) {
        sigma[idx] = v;
        self(self, idx + 1, remaining - v);
      }
    };
    rec(rec, 0, static_cast<int64_t>(slack_total));
    return {true, std::move(best)};
  }

  bool dfs(size_t j, int64_t s_rest) {
    count_node();
    if (j == r) return s_rest == 0;
    if (plans[j].usable) {
      SuffixOutcome out = solve_suffix(j, s_rest);
      if (out.decided) {
        if (!out.tail) return false;
        for (int64_t v : *out.tail) gamma.push_back(v);
        return true;
      }
      // enumeration too large; fall through to the plain search
    }
    if (r - j == 1) {
      if (fits(j, s_rest)) {
        gamma.push_back(s_rest);
        return true;
      }
      return false;
    }
    if (r - j == 2) {
      int64_t cap_b = row_cap(j + 1, s_rest);
      int64_t lo = std::max<int64_t>(0, s_rest - cap_b);
      int64_t hi = std::min(row_cap(j, s_rest), s_rest);
      for (int64_t ga = lo; ga <= hi; ++ga) {
        count_node();
        int64_t gb = s_rest - ga;
        bool ok = true;
        for (size_t i = 0; i < N && ok; ++i) {
          i128 used = static_cast<i128>(E.rows[j][i]) * ga +
                      static_cast<i128>(E.rows[j + 1][i]) * gb;
          ok = used <= residual[i];
        }
        if (ok) {
          gamma.push_back(ga);
          gamma.push_back(gb);
          return true;
        }
      }
      return false;
    }
    int64_t cap = std::min(row_cap(j, s_rest), s_rest);
    for (int64_t g = 0; g <= cap; ++g) {
      consume(j, g, +1);
      i128 ub = 0;
      bool reachable = false;
      for (size_t k = j + 1; k < r && !reachable; ++k) {
        ub += row_cap(k, s_rest - g);
        reachable = ub >= s_rest - g;
      }
      if (reachable) {
        gamma.push_back(g);
        if (dfs(j + 1, s_rest - g)) return true;
        gamma.pop_back();
      }
      consume(j, g, -1);
    }
    return false;
  }
};

}  // namespace

std::optional<GammaWitness> gamma_feasible(const ExponentMatrix& E, int64_t q, int64_t s,
                                           const SearchBudget& budget) {
  if (q < 1) throw Error(Errc::BadArgument, "q must be >= 1");
  if (s < 0) throw Error(Errc::BadArgument, "s must be >= 0");
  for (const auto& row : E.rows) {
    if (row.size() != E.arity) throw Error(Errc::BadArgument, "row arity mismatch");
    for (int64_t v : row) {
      if (v < 0) throw Error(Errc::BadArgument, "negative exponent in matrix");
    }
  }
  if (E.rows.empty()) {
    if (s == 0) return GammaWitness{{}, q, s};
    return std::nullopt;
  }
  Searcher searcher(E, q, budget);
  if (searcher.dfs(0, s)) {
    return GammaWitness{std::move(searcher.gamma), q, s};
  }
  return std::nullopt;
}

SweepReport claim_sweep(const ExponentMatrix& E, const std::vector<int64_t>& q_values,
                        SumRule s_of_q, const std::function<bool(int64_t)>& claim_applies,
                        const SearchBudget& budget) {
  SweepReport report;
  for (int64_t q : q_values) {
    SweepRow row;
    row.q = q;
    row.s = s_of_q == SumRule::QMinus1 ? q - 1 : q - 2;
    row.claim_applies = claim_applies(q);
    if (row.s < 0) {
      row.feasible = false;  // no multiset has a negative size
    } else {
      row.witness = gamma_feasible(E, q, row.s, budget);
      row.feasible = row.witness.has_value();
    }
    row.contradiction = row.claim_applies && row.feasible;
    if (row.contradiction) ++report.contradictions;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<uint64_t> powers_mod(uint64_t b, uint64_t modulus, uint64_t k) {
  if (modulus < 2) throw Error(Errc::BadArgument, "modulus must be >= 2");
  if (k < 1) throw Error(Errc::BadArgument, "k must be >= 1");
  std::vector<uint64_t> out;
  out.reserve(k);
  uint64_t v = 1 % modulus;
  for (uint64_t i = 0; i < k; ++i) {
    v = mulmod(v, b % modulus, modulus);
    out.push_back(v);
  }
  return out;
}

ProductMembership product_membership_oracle(const Poly& f, int64_t count, int64_t q,
                                            const SearchBudget& budget) {
  if (count < 0) throw Error(Errc::BadArgument, "count must be >= 0");
  ExponentMatrix E = ExponentMatrix::from_poly(f);
  auto witness = gamma_feasible(E, q, count, budget);
  ProductMembership out;
  out.member_sound = !witness.has_value();
  if (witness) {
    out.witness_mono = witness_monomial(E, *witness);
    out.witness = std::move(witness);
  }
  return out;
}

}  // namespace qfs
