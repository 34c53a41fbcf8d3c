#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qfs/poly.hpp"

namespace qfs {

/// The monomial ideal ({x_i^q : i in S}) for a threshold q >= 1 and a
/// nonempty variable subset S (default: all). A monomial is a member iff
/// some i in S has exponent >= q. q is not restricted to powers of p.
struct FrobIdeal {
  RingPtr ring;
  int64_t q = 1;
  std::vector<size_t> support;  // sorted variable indices, nonempty

  static FrobIdeal make(RingPtr ring, int64_t q);
  static FrobIdeal make(RingPtr ring, int64_t q, std::vector<size_t> support);
};

bool mono_in_frobideal(const Mono& m, const FrobIdeal& I);
/// True iff every support monomial is a member; true for the zero polynomial.
bool poly_in_frobideal(const Poly& a, const FrobIdeal& I);
/// Drops every I-member monomial; idempotent, and a - reduce(a) lies in I.
Poly poly_reduce(const Poly& a, const FrobIdeal& I);

/// Coefficients (1/p)*multinomial(p; alpha) mod p for compositions alpha of
/// p with parts in [0, p-1], where the division by p is exact over Z. The
/// closed form -(prod alpha_i!)^{-1} mod p is used; precomputed factorial
/// tables make every query pure and read-concurrent.
class DeltaCoeffTable {
 public:
  explicit DeltaCoeffTable(uint64_t p);
  uint64_t p() const { return p_; }
  uint64_t coeff(std::span<const uint64_t> alpha) const;

 private:
  uint64_t p_;
  std::vector<uint64_t> factorial_;  // k! mod p for k < p
};

uint64_t delta_coeff(uint64_t p, std::span<const uint64_t> alpha);
/// Process-wide table per p, built once and shared.
const DeltaCoeffTable& delta_coeff_table(uint64_t p);

/// The carry operator: for g = sum of monomials M_j with pairwise distinct
/// exponent vectors (the stored form),
///   delta(g) = sum over compositions alpha of p (parts in [0,p-1]) of
///              (1/p)*multinomial(p; alpha) * prod_j M_j^{alpha_j}.
/// delta of a single monomial (or zero) is zero.
Poly delta(const Poly& g, const WorkBudget* budget = nullptr);

/// The trace generator u: F_*A -> A. A term c*x^a maps to
/// frob_inv(c)*x^{(a-(p-1)*1)/p} when every a_i is p-1 mod p, else to zero.
/// All ring variables participate.
Poly trace_u(const Poly& a);
bool ker_u(const Poly& a);

/// Precomputed delta(g) paired with the g it came from, so theta calls can
/// skip recomputation without accepting a mismatched cache.
struct DeltaCache {
  Poly g;
  Poly dg;
  static DeltaCache make(const Poly& g);
};

/// theta(h) = u(delta(g) * h). When a cache is supplied its g must equal
/// the g argument (CacheMismatch otherwise).
Poly theta(const Poly& g, const Poly& h, const DeltaCache* cache = nullptr,
           const WorkBudget* budget = nullptr);

}  // namespace qfs
