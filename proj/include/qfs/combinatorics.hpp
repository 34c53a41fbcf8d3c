#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qfs/poly.hpp"

namespace qfs {

/// Exponent vectors of a polynomial's support monomials, one row per
/// monomial, in canonical order. Rows are pairwise distinct.
struct ExponentMatrix {
  size_t arity = 0;
  std::vector<std::vector<int64_t>> rows;

  static ExponentMatrix from_poly(const Poly& f);
};

/// A multiplicity vector gamma with sum(gamma) = s whose weighted column
/// sums all stay <= q-1, i.e. the product prod M_j^{gamma_j} avoids the
/// Frobenius power ideal with threshold q.
struct GammaWitness {
  std::vector<int64_t> gamma;
  int64_t q = 0;
  int64_t s = 0;
};

struct SearchBudget {
  uint64_t max_nodes = 200'000'000;
};

/// Exhaustive feasibility search: the lexicographically least witness, or
/// nullopt when no gamma with sum s satisfies every column bound. Pruned by
/// per-coordinate residual caps; when the remaining rows form an
/// equal-weight triangularizable system the finitely many slack vectors are
/// enumerated and back-solved instead, which is witness-for-witness
/// equivalent to the plain enumeration.
std::optional<GammaWitness> gamma_feasible(const ExponentMatrix& E, int64_t q, int64_t s,
                                           const SearchBudget& budget = {});

/// The monomial prod M_j^{gamma_j} named by a witness.
Mono witness_monomial(const ExponentMatrix& E, const GammaWitness& w);

enum class SumRule { QMinus1, QMinus2 };

struct SweepRow {
  int64_t q = 0;
  int64_t s = 0;
  bool feasible = false;
  std::optional<GammaWitness> witness;
  bool claim_applies = false;
  bool contradiction = false;  // claim says infeasible but a witness exists
};

struct SweepReport {
  std::vector<SweepRow> rows;
  uint64_t contradictions = 0;
};

/// Runs gamma_feasible over a q set and flags every q where feasibility
/// contradicts the claim predicate. Contradictions are reported, not thrown.
SweepReport claim_sweep(const ExponentMatrix& E, const std::vector<int64_t>& q_values,
                        SumRule s_of_q, const std::function<bool(int64_t)>& claim_applies,
                        const SearchBudget& budget = {});

/// (b, b^2, ..., b^k) mod modulus.
std::vector<uint64_t> powers_mod(uint64_t b, uint64_t modulus, uint64_t k);

struct ProductMembership {
  bool member_sound = false;                 // every product of `count` support
                                             // monomials lies in the ideal
  std::optional<GammaWitness> witness;       // otherwise: a surviving pattern
  std::optional<Mono> witness_mono;
};

/// Coefficient-free membership oracle: sound "member" verdicts for
/// f-support products of a given count against the threshold-q ideal;
/// cancellation is not analyzable here, so the other direction is Unknown.
ProductMembership product_membership_oracle(const Poly& f, int64_t count, int64_t q,
                                            const SearchBudget& budget = {});

}  // namespace qfs
