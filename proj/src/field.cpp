#include "qfs/field.hpp"

#include <algorithm>
#include <cctype>

#include "qfs/modmath.hpp"

namespace qfs {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::BadModulus: return "BadModulus";
    case Errc::TooLarge: return "TooLarge";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::ExponentOverflow: return "ExponentOverflow";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::BadComposition: return "BadComposition";
    case Errc::CacheMismatch: return "CacheMismatch";
    case Errc::BadLevel: return "BadLevel";
    case Errc::BackendUnavailable: return "BackendUnavailable";
    case Errc::ConstantTerm: return "ConstantTerm";
    case Errc::ZeroMultiplier: return "ZeroMultiplier";
    case Errc::NotHomogeneous: return "NotHomogeneous";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::BadPrime: return "BadPrime";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::BadArgument: return "BadArgument";
  }
  return "Error";
}

namespace {

// Dense F_p[x] helpers for the modulus checks. Coefficients are
// constant-term first; the invariant is no trailing zeros.

using FpPoly = std::vector<uint64_t>;

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b, b monic-normalized on the fly (leading coefficient inverted).
FpPoly fp_mod(FpPoly a, const FpPoly& b, uint64_t p) {
  uint64_t lead_inv = invmod_p(b.back(), p);
  while (a.size() >= b.size()) {
    uint64_t factor = mulmod(a.back(), lead_inv, p);
    size_t shift = a.size() - b.size();
    if (factor != 0) {
      for (size_t i = 0; i < b.size(); ++i) {
        uint64_t sub = mulmod(factor, b[i], p);
        a[shift + i] = (a[shift + i] + p - sub) % p;
      }
    }
    a.pop_back();
    fp_trim(a);
    if (a.empty()) break;
  }
  return a;
}

// Exhaustive trial division by every monic polynomial of degree 1..deg/2.
// Only called when e*p^e <= 10^6, so the candidate count stays tiny.
bool fp_irreducible(const FpPoly& m, uint64_t p) {
  uint32_t deg = static_cast<uint32_t>(m.size()) - 1;
  for (uint32_t d = 1; 2 * d <= deg; ++d) {
    // candidates x^d + c_{d-1} x^{d-1} + ... + c_0, counted in base p
    uint64_t count = 1;
    for (uint32_t i = 0; i < d; ++i) count *= p;
    FpPoly divisor(d + 1, 0);
    divisor[d] = 1;
    for (uint64_t idx = 0; idx < count; ++idx) {
      uint64_t v = idx;
      for (uint32_t i = 0; i < d; ++i) {
        divisor[i] = v % p;
        v /= p;
      }
      if (fp_mod(m, divisor, p).empty()) return false;
    }
  }
  return true;
}

constexpr uint64_t kIrreducibilityBudget = 1'000'000;

uint64_t checked_order(uint64_t p, uint32_t e) {
  unsigned __int128 o = 1;
  for (uint32_t i = 0; i < e; ++i) {
    o *= p;
    if (o > (static_cast<unsigned __int128>(1) << 62)) {
      throw Error(Errc::TooLarge, "field order p^e exceeds 2^62");
    }
  }
  return static_cast<uint64_t>(o);
}

}  // namespace

FieldCtx::FieldCtx(uint64_t p, uint32_t e, std::vector<uint64_t> modulus, uint64_t order)
    : p_(p), e_(e), modulus_(std::move(modulus)), order_(order) {}

FieldPtr FieldCtx::make(uint64_t p, uint32_t e, const std::vector<uint64_t>& modulus) {
  if (!is_prime_u64(p)) throw Error(Errc::NotPrime, "p = " + std::to_string(p) + " is not prime");
  if (e < 1) throw Error(Errc::BadArgument, "extension degree must be >= 1");
  if (e == 1) {
    if (!modulus.empty()) throw Error(Errc::BadModulus, "prime field takes no modulus");
    return FieldPtr(new FieldCtx(p, 1, {}, p));
  }
  if (modulus.empty()) throw Error(Errc::BadModulus, "extension field requires a modulus");
  if (modulus.size() != static_cast<size_t>(e) + 1) {
    throw Error(Errc::BadModulus, "modulus must have degree e = " + std::to_string(e));
  }
  std::vector<uint64_t> m(modulus);
  for (auto& c : m) c %= p;
  if (m.back() != 1) throw Error(Errc::BadModulus, "modulus must be monic");
  uint64_t order = checked_order(p, e);
  if (static_cast<unsigned __int128>(e) * order > kIrreducibilityBudget) {
    throw Error(Errc::TooLarge, "irreducibility check budget exceeded (e*p^e > 10^6)");
  }
  if (!fp_irreducible(m, p)) throw Error(Errc::BadModulus, "modulus is reducible over F_p");
  return FieldPtr(new FieldCtx(p, e, std::move(m), order));
}

bool FieldCtx::same_field(const FieldCtx& other) const {
  return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
}

Scalar FieldCtx::zero() const { return Scalar{std::vector<uint64_t>(e_, 0)}; }

Scalar FieldCtx::one() const {
  Scalar a = zero();
  a.c[0] = 1 % p_;
  return a;
}

Scalar FieldCtx::from_uint(uint64_t v) const {
  Scalar a = zero();
  a.c[0] = v % p_;
  return a;
}

Scalar FieldCtx::from_int(int64_t v) const {
  int64_t r = v % static_cast<int64_t>(p_);
  if (r < 0) r += static_cast<int64_t>(p_);
  return from_uint(static_cast<uint64_t>(r));
}

Scalar FieldCtx::from_coeffs(std::vector<uint64_t> coeffs) const {
  if (coeffs.size() != e_) throw Error(Errc::ContextMismatch, "coordinate count != e");
  for (auto& c : coeffs) c %= p_;
  return Scalar{std::move(coeffs)};
}

Scalar FieldCtx::from_index(uint64_t idx) const {
  if (idx >= order_) throw Error(Errc::BadArgument, "element index out of range");
  Scalar a = zero();
  for (uint32_t i = 0; i < e_; ++i) {
    a.c[i] = idx % p_;
    idx /= p_;
  }
  return a;
}

Scalar FieldCtx::generator() const {
  if (e_ < 2) throw Error(Errc::BadArgument, "prime field has no extension generator");
  Scalar a = zero();
  a.c[1] = 1;
  return a;
}

void FieldCtx::check(const Scalar& a) const {
  if (a.c.size() != e_) throw Error(Errc::ContextMismatch, "scalar has wrong coordinate count");
  for (uint64_t c : a.c) {
    if (c >= p_) throw Error(Errc::ContextMismatch, "scalar residue out of range");
  }
}

bool FieldCtx::is_zero(const Scalar& a) const {
  return std::all_of(a.c.begin(), a.c.end(), [](uint64_t c) { return c == 0; });
}

bool FieldCtx::is_one(const Scalar& a) const {
  if (a.c[0] != 1 % p_) return false;
  for (size_t i = 1; i < a.c.size(); ++i) {
    if (a.c[i] != 0) return false;
  }
  return true;
}

bool FieldCtx::in_prime_subfield(const Scalar& a) const {
  for (size_t i = 1; i < a.c.size(); ++i) {
    if (a.c[i] != 0) return false;
  }
  return true;
}

Scalar FieldCtx::add(const Scalar& a, const Scalar& b) const {
  check(a);
  check(b);
  Scalar r = a;
  for (uint32_t i = 0; i < e_; ++i) r.c[i] = (r.c[i] + b.c[i]) % p_;
  return r;
}

Scalar FieldCtx::sub(const Scalar& a, const Scalar& b) const {
  check(a);
  check(b);
  Scalar r = a;
  for (uint32_t i = 0; i < e_; ++i) r.c[i] = (r.c[i] + p_ - b.c[i]) % p_;
  return r;
}

Scalar FieldCtx::neg(const Scalar& a) const {
  check(a);
  Scalar r = a;
  for (uint32_t i = 0; i < e_; ++i) r.c[i] = (p_ - r.c[i]) % p_;
  return r;
}

Scalar FieldCtx::mul(const Scalar& a, const Scalar& b) const {
  check(a);
  check(b);
  if (e_ == 1) return Scalar{{mulmod(a.c[0], b.c[0], p_)}};
  // schoolbook product then reduction by the monic modulus
  std::vector<uint64_t> t(2 * e_ - 1, 0);
  for (uint32_t i = 0; i < e_; ++i) {
    if (a.c[i] == 0) continue;
    for (uint32_t j = 0; j < e_; ++j) {
      t[i + j] = (t[i + j] + mulmod(a.c[i], b.c[j], p_)) % p_;
    }
  }
  for (size_t i = t.size(); i-- > e_;) {
    uint64_t c = t[i];
    if (c == 0) continue;
    t[i] = 0;
    for (uint32_t j = 0; j < e_; ++j) {
      uint64_t sub = mulmod(c, modulus_[j], p_);
      t[i - e_ + j] = (t[i - e_ + j] + p_ - sub) % p_;
    }
  }
  t.resize(e_);
  return Scalar{std::move(t)};
}

Scalar FieldCtx::pow(const Scalar& a, uint64_t n) const {
  check(a);
  Scalar r = one();
  Scalar base = a;
  while (n) {
    if (n & 1) r = mul(r, base);
    base = mul(base, base);
    n >>= 1;
  }
  return r;
}

Scalar FieldCtx::inv(const Scalar& a) const {
  if (is_zero(a)) throw Error(Errc::DivisionByZero, "inverse of zero");
  return pow(a, order_ - 2);
}

Scalar FieldCtx::frob(const Scalar& a) const { return pow(a, p_); }

Scalar FieldCtx::frob_inv(const Scalar& a) const {
  Scalar r = a;
  for (uint32_t i = 0; i + 1 < e_; ++i) r = frob(r);
  check(r);
  return r;
}

namespace {

struct ScalarParser {
  std::string_view s;
  size_t pos = 0;
  const FieldCtx& field;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  uint64_t parse_nat() {
    skip_ws();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) {
      throw SyntaxError(pos, "expected a number");
    }
    uint64_t v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      uint64_t d = static_cast<uint64_t>(s[pos] - '0');
      if (v > (UINT64_MAX - d) / 10) throw SyntaxError(pos, "number too large");
      v = v * 10 + d;
      ++pos;
    }
    return v;
  }

  // sterm := nat ['*' gfactor] | gfactor ; gfactor := 'g' ['^' nat]
  Scalar parse_sterm() {
    skip_ws();
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      uint64_t n = parse_nat();
      Scalar c = field.from_uint(n);
      if (eat('*')) return field.mul(c, parse_gfactor());
      return c;
    }
    return parse_gfactor();
  }

  Scalar parse_gfactor() {
    skip_ws();
    if (pos >= s.size() || s[pos] != 'g') throw SyntaxError(pos, "expected 'g' or a number");
    if (field.e() == 1) throw SyntaxError(pos, "generator 'g' used in a prime field");
    ++pos;
    uint64_t k = 1;
    if (eat('^')) k = parse_nat();
    return field.pow(field.generator(), k);
  }

  Scalar parse() {
    Scalar acc = field.zero();
    bool negate = eat('-');
    Scalar t = parse_sterm();
    acc = negate ? field.neg(t) : t;
    for (;;) {
      skip_ws();
      if (pos >= s.size()) break;
      if (eat('+')) {
        acc = field.add(acc, parse_sterm());
      } else if (eat('-')) {
        acc = field.sub(acc, parse_sterm());
      } else {
        throw SyntaxError(pos, "expected '+' or '-'");
      }
    }
    return acc;
  }
};

}  // namespace

Scalar FieldCtx::parse_scalar(std::string_view text) const {
  ScalarParser parser{text, 0, *this};
  return parser.parse();
}

std::string FieldCtx::print_scalar(const Scalar& a) const {
  check(a);
  if (e_ == 1) return std::to_string(a.c[0]);
  std::string out;
  for (uint32_t i = e_; i-- > 0;) {
    uint64_t c = a.c[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += "g";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::vector<uint64_t> find_irreducible(uint64_t p, uint32_t e) {
  if (!is_prime_u64(p)) throw Error(Errc::NotPrime, "p is not prime");
  if (e < 2) throw Error(Errc::BadArgument, "irreducible search needs degree >= 2");
  uint64_t order = checked_order(p, e);
  if (static_cast<unsigned __int128>(e) * order > kIrreducibilityBudget) {
    throw Error(Errc::TooLarge, "irreducible search budget exceeded (e*p^e > 10^6)");
  }
  FpPoly m(e + 1, 0);
  m[e] = 1;
  for (uint64_t idx = 0; idx < order; ++idx) {
    uint64_t v = idx;
    for (uint32_t i = 0; i < e; ++i) {
      m[i] = v % p;
      v /= p;
    }
    if (m[0] == 0) continue;  // divisible by x
    if (fp_irreducible(m, p)) return m;
  }
  // every degree has irreducibles over F_p, so this is unreachable
  throw Error(Errc::BadArgument, "no irreducible polynomial found");
}

}  // namespace qfs
