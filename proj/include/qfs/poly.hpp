#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qfs/field.hpp"

namespace qfs {

/// Exponent vector. Entries are non-negative and bounded by 2^63-1;
/// arithmetic that would overflow raises ExponentOverflow, never wraps.
struct Mono {
  std::vector<int64_t> e;
  bool operator==(const Mono&) const = default;
};

struct MonoHash {
  size_t operator()(const Mono& m) const {
    // FNV-1a over the raw exponents; deterministic across runs
    uint64_t h = 1469598103934665603ull;
    for (int64_t v : m.e) {
      uint64_t x = static_cast<uint64_t>(v);
      for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
      }
    }
    return static_cast<size_t>(h);
  }
};

int64_t mono_degree(const Mono& m);

/// Canonical order: total degree descending, then lexicographically
/// descending in ring variable order. Negative when a prints before b.
int canonical_cmp(const Mono& a, const Mono& b);

class RingCtx;
using RingPtr = std::shared_ptr<const RingCtx>;

/// A polynomial ring: a coefficient field plus an ordered list of variable
/// names, fixed for the ring's lifetime. Immutable and shareable.
class RingCtx {
 public:
  static RingPtr make(FieldPtr field, std::vector<std::string> vars);

  const FieldCtx& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  size_t arity() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  std::optional<size_t> var_index(std::string_view name) const;
  bool same_ring(const RingCtx& other) const;

 private:
  RingCtx(FieldPtr field, std::vector<std::string> vars)
      : field_(std::move(field)), vars_(std::move(vars)) {}
  FieldPtr field_;
  std::vector<std::string> vars_;
};

/// Cumulative work cap threaded through the heavy polynomial operations:
/// charge() is called with the number of term-pair products about to be
/// formed and throws BudgetExceeded when the allowance runs out or the
/// deadline passes.
struct WorkBudget {
  mutable uint64_t pair_work_left = UINT64_MAX;
  std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();
  void charge(uint64_t pairs) const;
};

/// Sparse multivariate polynomial: a map from exponent vectors to nonzero
/// coefficients. No zero coefficients and no duplicate exponent vectors are
/// ever stored; canonical term order is imposed at iteration/printing time.
class Poly {
 public:
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
  static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
  static Poly one(RingPtr ring);
  static Poly monomial(RingPtr ring, Mono m, Scalar c);

  const RingPtr& ring() const { return ring_; }
  size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const std::unordered_map<Mono, Scalar, MonoHash>& terms() const { return terms_; }
  /// Terms in canonical order.
  std::vector<std::pair<Mono, Scalar>> sorted_terms() const;
  std::optional<Scalar> coeff(const Mono& m) const;

  /// Accumulates c onto the coefficient of m, dropping the term when it
  /// cancels to zero.
  void add_term(const Mono& m, const Scalar& c);

  bool operator==(const Poly& other) const;
  bool operator!=(const Poly& other) const { return !(*this == other); }

 private:
  RingPtr ring_;
  std::unordered_map<Mono, Scalar, MonoHash> terms_;
};

struct FrobIdeal;  // frobops.hpp

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_scale(const Poly& a, const Scalar& c);
Poly poly_mul(const Poly& a, const Poly& b, const WorkBudget* budget = nullptr);
Poly poly_pow(const Poly& a, uint64_t n, const WorkBudget* budget = nullptr);

/// Ideal-truncated variants: identical to reducing the exact result by I,
/// but monomials entering I are dropped eagerly at every intermediate step.
Poly poly_trunc_mul(const Poly& a, const Poly& b, const FrobIdeal& I,
                    const WorkBudget* budget = nullptr);
Poly poly_trunc_pow(const Poly& a, uint64_t n, const FrobIdeal& I,
                    const WorkBudget* budget = nullptr);

/// Common total degree of all terms, or nullopt when mixed. The zero
/// polynomial counts as homogeneous of degree 0.
std::optional<int64_t> poly_is_homogeneous(const Poly& a);
int64_t poly_total_degree(const Poly& a);  // 0 for the zero polynomial
Poly poly_partial(const Poly& a, size_t var_index);

/// Grammar (whitespace insignificant):
///   poly   := ['-'] term (('+'|'-') term)*
///   term   := coeff ['*' mono] | mono
///   mono   := factor ('*' factor)*
///   factor := var ['^' nat]
///   coeff  := nat | '(' scalar ')'      e.g. "(g^2+1)" in extension fields
Poly poly_parse(const RingPtr& ring, std::string_view text);
std::string poly_print(const Poly& a);

}  // namespace qfs
