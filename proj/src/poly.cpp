#include "qfs/poly.hpp"

#include <algorithm>
#include <cctype>

#include "qfs/frobops.hpp"

namespace qfs {

int64_t mono_degree(const Mono& m) {
  unsigned __int128 d = 0;
  for (int64_t v : m.e) d += static_cast<uint64_t>(v);
  if (d > static_cast<unsigned __int128>(INT64_MAX)) {
    throw Error(Errc::ExponentOverflow, "total degree exceeds 2^63-1");
  }
  return static_cast<int64_t>(d);
}

int canonical_cmp(const Mono& a, const Mono& b) {
  int64_t da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da > db ? -1 : 1;
  for (size_t i = 0; i < a.e.size(); ++i) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
  }
  return 0;
}

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

int64_t checked_exp_add(int64_t a, int64_t b) {
  if (a > INT64_MAX - b) throw Error(Errc::ExponentOverflow, "exponent addition overflow");
  return a + b;
}

int64_t checked_exp_mul(int64_t a, uint64_t k) {
  if (a == 0 || k == 0) return 0;
  unsigned __int128 r = static_cast<unsigned __int128>(a) * k;
  if (r > static_cast<unsigned __int128>(INT64_MAX)) {
    throw Error(Errc::ExponentOverflow, "exponent multiplication overflow");
  }
  return static_cast<int64_t>(r);
}

}  // namespace

RingPtr RingCtx::make(FieldPtr field, std::vector<std::string> vars) {
  if (!field) throw Error(Errc::BadArgument, "ring requires a field");
  if (vars.empty()) throw Error(Errc::BadArgument, "ring requires at least one variable");
  for (const auto& v : vars) {
    if (!valid_identifier(v)) throw Error(Errc::BadArgument, "bad variable name '" + v + "'");
    if (v == "g" && field->e() > 1) {
      throw Error(Errc::BadArgument, "variable 'g' collides with the extension generator");
    }
  }
  auto sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(Errc::BadArgument, "duplicate variable name");
  }
  return RingPtr(new RingCtx(std::move(field), std::move(vars)));
}

std::optional<size_t> RingCtx::var_index(std::string_view name) const {
  for (size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return i;
  }
  return std::nullopt;
}

bool RingCtx::same_ring(const RingCtx& other) const {
  return field_->same_field(other.field()) && vars_ == other.vars_;
}

void WorkBudget::charge(uint64_t pairs) const {
  if (pairs > pair_work_left) throw Error(Errc::BudgetExceeded, "term-work budget exhausted");
  pair_work_left -= pairs;
  if (deadline != std::chrono::steady_clock::time_point::max() &&
      std::chrono::steady_clock::now() > deadline) {
    throw Error(Errc::BudgetExceeded, "time budget exhausted");
  }
}

Poly Poly::one(RingPtr ring) {
  Poly p(ring);
  p.add_term(Mono{std::vector<int64_t>(ring->arity(), 0)}, ring->field().one());
  return p;
}

Poly Poly::monomial(RingPtr ring, Mono m, Scalar c) {
  if (m.e.size() != ring->arity()) throw Error(Errc::RingMismatch, "monomial arity mismatch");
  for (int64_t v : m.e) {
    if (v < 0) throw Error(Errc::BadArgument, "negative exponent");
  }
  ring->field().check(c);
  Poly p(ring);
  p.add_term(m, c);
  return p;
}

std::vector<std::pair<Mono, Scalar>> Poly::sorted_terms() const {
  std::vector<std::pair<Mono, Scalar>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return canonical_cmp(a.first, b.first) < 0; });
  return out;
}

std::optional<Scalar> Poly::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  if (it == terms_.end()) return std::nullopt;
  return it->second;
}

void Poly::add_term(const Mono& m, const Scalar& c) {
  const FieldCtx& k = ring_->field();
  if (k.is_zero(c)) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second = k.add(it->second, c);
    if (k.is_zero(it->second)) terms_.erase(it);
  }
}

bool Poly::operator==(const Poly& other) const {
  return ring_->same_ring(*other.ring_) && terms_ == other.terms_;
}

namespace {

void require_same_ring(const Poly& a, const Poly& b) {
  if (!a.ring()->same_ring(*b.ring())) throw Error(Errc::RingMismatch, "operands in different rings");
}

Poly mul_impl(const Poly& a, const Poly& b, const FrobIdeal* I, const WorkBudget* budget) {
  require_same_ring(a, b);
  if (budget) budget->charge(static_cast<uint64_t>(a.term_count()) * b.term_count());
  const FieldCtx& k = a.ring()->field();
  Poly out(a.ring());
  // iterate the smaller operand outermost; the result is order-independent
  const Poly& outer = a.term_count() <= b.term_count() ? a : b;
  const Poly& inner = a.term_count() <= b.term_count() ? b : a;
  Mono m;
  m.e.resize(a.ring()->arity());
  for (const auto& [m1, c1] : outer.terms()) {
    for (const auto& [m2, c2] : inner.terms()) {
      bool dead = false;
      for (size_t i = 0; i < m.e.size(); ++i) m.e[i] = checked_exp_add(m1.e[i], m2.e[i]);
      if (I && mono_in_frobideal(m, *I)) dead = true;
      if (!dead) out.add_term(m, k.mul(c1, c2));
    }
  }
  return out;
}

// Exact Frobenius twist a^(p^i): exponents scale by p^i, coefficients go to
// their p^i-th power. A ring homomorphism in characteristic p, so this is
// the whole power, not an approximation.
Poly frobenius_twist(const Poly& a, uint64_t p_power_exp, uint32_t iterations) {
  const FieldCtx& k = a.ring()->field();
  Poly out(a.ring());
  for (const auto& [m, c] : a.terms()) {
    Mono t;
    t.e.reserve(m.e.size());
    for (int64_t v : m.e) t.e.push_back(checked_exp_mul(v, p_power_exp));
    Scalar cc = c;
    for (uint32_t i = 0; i < iterations; ++i) cc = k.frob(cc);
    out.add_term(t, cc);
  }
  return out;
}

Poly small_pow(Poly base, uint64_t n, const FrobIdeal* I, const WorkBudget* budget) {
  Poly result = Poly::one(base.ring());
  while (n) {
    if (n & 1) result = mul_impl(result, base, I, budget);
    n >>= 1;
    if (n) base = mul_impl(base, base, I, budget);
  }
  return result;
}

// a^n by base-p digits: a^n = prod_i (a^(p^i))^{d_i} with each a^(p^i) a
// Frobenius twist of a. Multiplying highest twist first lets truncation
// discard large exponents as early as possible.
Poly pow_impl(const Poly& a, uint64_t n, const FrobIdeal* I, const WorkBudget* budget) {
  if (n == 0) return Poly::one(a.ring());
  if (a.is_zero()) return Poly::zero(a.ring());
  uint64_t p = a.ring()->field().p();
  std::vector<uint64_t> digits;
  for (uint64_t v = n; v; v /= p) digits.push_back(v % p);
  std::optional<Poly> acc;
  uint64_t p_power = 1;
  std::vector<uint64_t> p_powers(digits.size());
  for (size_t i = 0; i < digits.size(); ++i) {
    p_powers[i] = p_power;
    if (i + 1 < digits.size()) {
      if (p_power > UINT64_MAX / p) throw Error(Errc::ExponentOverflow, "p^i overflow");
      p_power *= p;
    }
  }
  for (size_t i = digits.size(); i-- > 0;) {
    if (digits[i] == 0) continue;
    Poly twisted = frobenius_twist(a, p_powers[i], static_cast<uint32_t>(i));
    if (I) twisted = poly_reduce(twisted, *I);
    Poly contrib = digits[i] == 1 ? std::move(twisted)
                                  : small_pow(std::move(twisted), digits[i], I, budget);
    acc = acc ? mul_impl(*acc, contrib, I, budget) : std::move(contrib);
  }
  return std::move(*acc);
}

}  // namespace

Poly poly_add(const Poly& a, const Poly& b) {
  require_same_ring(a, b);
  Poly out = a;
  for (const auto& [m, c] : b.terms()) out.add_term(m, c);
  return out;
}

Poly poly_neg(const Poly& a) {
  const FieldCtx& k = a.ring()->field();
  Poly out(a.ring());
  for (const auto& [m, c] : a.terms()) out.add_term(m, k.neg(c));
  return out;
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_neg(b)); }

Poly poly_scale(const Poly& a, const Scalar& c) {
  const FieldCtx& k = a.ring()->field();
  k.check(c);
  Poly out(a.ring());
  for (const auto& [m, cc] : a.terms()) out.add_term(m, k.mul(cc, c));
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b, const WorkBudget* budget) {
  return mul_impl(a, b, nullptr, budget);
}

Poly poly_pow(const Poly& a, uint64_t n, const WorkBudget* budget) {
  return pow_impl(a, n, nullptr, budget);
}

Poly poly_trunc_mul(const Poly& a, const Poly& b, const FrobIdeal& I, const WorkBudget* budget) {
  if (!a.ring()->same_ring(*I.ring)) throw Error(Errc::RingMismatch, "ideal in a different ring");
  return mul_impl(poly_reduce(a, I), poly_reduce(b, I), &I, budget);
}

Poly poly_trunc_pow(const Poly& a, uint64_t n, const FrobIdeal& I, const WorkBudget* budget) {
  if (!a.ring()->same_ring(*I.ring)) throw Error(Errc::RingMismatch, "ideal in a different ring");
  return pow_impl(a, n, &I, budget);
}

std::optional<int64_t> poly_is_homogeneous(const Poly& a) {
  if (a.is_zero()) return 0;  // by convention
  std::optional<int64_t> deg;
  for (const auto& [m, c] : a.terms()) {
    int64_t d = mono_degree(m);
    if (!deg) {
      deg = d;
    } else if (*deg != d) {
      return std::nullopt;
    }
  }
  return deg;
}

int64_t poly_total_degree(const Poly& a) {
  int64_t deg = 0;
  for (const auto& [m, c] : a.terms()) deg = std::max(deg, mono_degree(m));
  return deg;
}

Poly poly_partial(const Poly& a, size_t var_index) {
  if (var_index >= a.ring()->arity()) throw Error(Errc::BadArgument, "variable index out of range");
  const FieldCtx& k = a.ring()->field();
  Poly out(a.ring());
  for (const auto& [m, c] : a.terms()) {
    if (m.e[var_index] == 0) continue;
    Scalar factor = k.from_int(m.e[var_index] % static_cast<int64_t>(k.p()));
    if (k.is_zero(factor)) continue;
    Mono d = m;
    d.e[var_index] -= 1;
    out.add_term(d, k.mul(c, factor));
  }
  return out;
}

namespace {

struct PolyParser {
  std::string_view s;
  size_t pos = 0;
  const RingCtx& ring;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek_is(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (peek_is(c)) {
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
  std::string parse_identifier() {
    skip_ws();
    size_t start = pos;
    if (pos >= s.size() || (!std::isalpha(static_cast<unsigned char>(s[pos])) && s[pos] != '_')) {
      throw SyntaxError(pos, "expected a variable name");
    }
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
      ++pos;
    }
    return std::string(s.substr(start, pos - start));
  }

  // factor := var ['^' nat]; accumulates into exps
  void parse_factor(Mono& m) {
    size_t at = pos;
    std::string name = parse_identifier();
    auto idx = ring.var_index(name);
    if (!idx) {
      if (name == "g" && ring.field().e() == 1) {
        throw SyntaxError(at, "generator 'g' used in a prime field");
      }
      throw Error(Errc::UnknownVariable, "'" + name + "' is not a ring variable");
    }
    int64_t k = 1;
    if (eat('^')) {
      uint64_t n = parse_nat();
      if (n > static_cast<uint64_t>(INT64_MAX)) {
        throw Error(Errc::ExponentOverflow, "exponent exceeds 2^63-1");
      }
      k = static_cast<int64_t>(n);
    }
    m.e[*idx] = checked_exp_add(m.e[*idx], k);
  }

  // term := coeff ['*' mono] | mono
  std::pair<Mono, Scalar> parse_term() {
    const FieldCtx& field = ring.field();
    Mono m{std::vector<int64_t>(ring.arity(), 0)};
    Scalar c = field.one();
    skip_ws();
    if (pos >= s.size()) throw SyntaxError(pos, "expected a term");
    char first = s[pos];
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(first))) {
      c = field.from_uint(parse_nat());
      have_coeff = true;
    } else if (first == '(') {
      size_t open = pos;
      ++pos;
      size_t depth = 1, end = pos;
      while (end < s.size() && depth > 0) {
        if (s[end] == '(') ++depth;
        if (s[end] == ')') --depth;
        ++end;
      }
      if (depth != 0) throw SyntaxError(open, "unbalanced parenthesis");
      std::string inner(s.substr(pos, end - 1 - pos));
      try {
        c = field.parse_scalar(inner);
      } catch (const SyntaxError& err) {
        throw SyntaxError(pos + err.position(), err.brief());
      }
      pos = end;
      have_coeff = true;
    }
    if (have_coeff) {
      if (eat('*')) {
        parse_factor(m);
        while (eat('*')) parse_factor(m);
      }
      return {m, c};
    }
    parse_factor(m);
    while (eat('*')) parse_factor(m);
    return {m, c};
  }
};

std::string print_coeff(const FieldCtx& field, const Scalar& c) {
  if (field.e() == 1 || field.in_prime_subfield(c)) return std::to_string(c.c[0]);
  return "(" + field.print_scalar(c) + ")";
}

}  // namespace

Poly poly_parse(const RingPtr& ring, std::string_view text) {
  PolyParser parser{text, 0, *ring};
  const FieldCtx& field = ring->field();
  Poly out(ring);
  parser.skip_ws();
  if (parser.pos >= text.size()) throw SyntaxError(0, "empty polynomial");
  bool negate = parser.eat('-');
  auto [m, c] = parser.parse_term();
  out.add_term(m, negate ? field.neg(c) : c);
  for (;;) {
    parser.skip_ws();
    if (parser.pos >= text.size()) break;
    if (parser.eat('+')) {
      auto [m2, c2] = parser.parse_term();
      out.add_term(m2, c2);
    } else if (parser.eat('-')) {
      auto [m2, c2] = parser.parse_term();
      out.add_term(m2, field.neg(c2));
    } else {
      throw SyntaxError(parser.pos, "expected '+' or '-'");
    }
  }
  return out;
}

std::string poly_print(const Poly& a) {
  if (a.is_zero()) return "0";
  const RingCtx& ring = *a.ring();
  const FieldCtx& field = ring.field();
  std::string out;
  for (const auto& [m, c] : a.sorted_terms()) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (size_t i = 0; i < m.e.size(); ++i) {
      if (m.e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring.vars()[i];
      if (m.e[i] > 1) mono += "^" + std::to_string(m.e[i]);
    }
    if (mono.empty()) {
      out += print_coeff(field, c);
    } else if (field.is_one(c)) {
      out += mono;
    } else {
      out += print_coeff(field, c) + "*" + mono;
    }
  }
  return out;
}

}  // namespace qfs
