#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qfs/errors.hpp"

namespace qfs {

/// Element of F_{p^e}: e residues in [0, p), least-significant first in the
/// modulus basis. Kept fully reduced at all times, so equality and hashing
/// are structural.
struct Scalar {
  std::vector<uint64_t> c;
  bool operator==(const Scalar&) const = default;
};

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

/// Description of a finite field F_{p^e}. Immutable after construction and
/// freely shareable across threads; all element operations are pure.
///
/// For e > 1 a monic irreducible modulus of degree e over F_p is required
/// (coefficients constant-term first, length e+1). Irreducibility is checked
/// exhaustively; inputs with e*p^e > 10^6 are rejected rather than trusted.
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
 public:
  static FieldPtr make(uint64_t p, uint32_t e = 1, const std::vector<uint64_t>& modulus = {});

  uint64_t p() const { return p_; }
  uint32_t e() const { return e_; }
  const std::vector<uint64_t>& modulus() const { return modulus_; }
  bool same_field(const FieldCtx& other) const;
  /// p^e; the construction budget keeps this below 2^63.
  uint64_t order() const { return order_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(int64_t v) const;
  Scalar from_uint(uint64_t v) const;
  /// Element with the given basis coordinates (length e, each < p).
  Scalar from_coeffs(std::vector<uint64_t> coeffs) const;
  /// Element number idx in base-p coordinate order; idx < order(). Intended
  /// for exhaustive enumeration.
  Scalar from_index(uint64_t idx) const;
  /// The extension generator g (the class of x). Requires e > 1.
  Scalar generator() const;

  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;
  /// True when a lies in the prime subfield (all higher coordinates zero).
  bool in_prime_subfield(const Scalar& a) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar inv(const Scalar& a) const;
  Scalar pow(const Scalar& a, uint64_t n) const;
  /// Frobenius a -> a^p.
  Scalar frob(const Scalar& a) const;
  /// Unique p-th root: the b with b^p = a. Equals a^(p^(e-1)).
  Scalar frob_inv(const Scalar& a) const;

  /// Literal syntax: integers for prime-subfield elements, `g` for the
  /// extension generator, e.g. "g^2+g+1" or "2*g^2+1".
  Scalar parse_scalar(std::string_view text) const;
  std::string print_scalar(const Scalar& a) const;

  /// Throws ContextMismatch if a does not have this field's shape.
  void check(const Scalar& a) const;

 private:
  FieldCtx(uint64_t p, uint32_t e, std::vector<uint64_t> modulus, uint64_t order);

  uint64_t p_;
  uint32_t e_;
  std::vector<uint64_t> modulus_;  // length e+1 and monic when e > 1, else empty
  uint64_t order_;
};

/// Smallest monic irreducible of degree e over F_p, in base-p coefficient
/// order (constant term first). Deterministic, so contexts built from it are
/// reproducible. Requires e >= 2 and e*p^e <= 10^6.
std::vector<uint64_t> find_irreducible(uint64_t p, uint32_t e);

}  // namespace qfs
