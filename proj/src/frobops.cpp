#include "qfs/frobops.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "qfs/modmath.hpp"

namespace qfs {

FrobIdeal FrobIdeal::make(RingPtr ring, int64_t q) {
  std::vector<size_t> all(ring->arity());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  return make(std::move(ring), q, std::move(all));
}

FrobIdeal FrobIdeal::make(RingPtr ring, int64_t q, std::vector<size_t> support) {
  if (q < 1) throw Error(Errc::BadArgument, "ideal exponent q must be >= 1");
  if (support.empty()) throw Error(Errc::BadArgument, "ideal support must be nonempty");
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  if (support.back() >= ring->arity()) {
    throw Error(Errc::BadArgument, "ideal support index out of range");
  }
  return FrobIdeal{std::move(ring), q, std::move(support)};
}

bool mono_in_frobideal(const Mono& m, const FrobIdeal& I) {
  for (size_t i : I.support) {
    if (m.e[i] >= I.q) return true;
  }
  return false;
}

bool poly_in_frobideal(const Poly& a, const FrobIdeal& I) {
  if (!a.ring()->same_ring(*I.ring)) throw Error(Errc::RingMismatch, "ideal in a different ring");
  for (const auto& [m, c] : a.terms()) {
    if (!mono_in_frobideal(m, I)) return false;
  }
  return true;
}

Poly poly_reduce(const Poly& a, const FrobIdeal& I) {
  if (!a.ring()->same_ring(*I.ring)) throw Error(Errc::RingMismatch, "ideal in a different ring");
  Poly out(a.ring());
  for (const auto& [m, c] : a.terms()) {
    if (!mono_in_frobideal(m, I)) out.add_term(m, c);
  }
  return out;
}

DeltaCoeffTable::DeltaCoeffTable(uint64_t p) : p_(p) {
  if (!is_prime_u64(p)) throw Error(Errc::NotPrime, "delta coefficients need a prime p");
  factorial_.resize(p);
  factorial_[0] = 1 % p;
  for (uint64_t k = 1; k < p; ++k) factorial_[k] = mulmod(factorial_[k - 1], k, p);
}

uint64_t DeltaCoeffTable::coeff(std::span<const uint64_t> alpha) const {
  uint64_t sum = 0;
  uint64_t denom = 1 % p_;
  for (uint64_t a : alpha) {
    if (a >= p_) throw Error(Errc::BadComposition, "part >= p");
    sum += a;
    if (sum > p_) throw Error(Errc::BadComposition, "parts sum past p");
    denom = mulmod(denom, factorial_[a], p_);
  }
  if (sum != p_) throw Error(Errc::BadComposition, "parts must sum to p");
  // (1/p)*multinomial(p; alpha) = (p-1)!/prod(alpha_i!) = -(prod alpha_i!)^{-1} mod p
  return (p_ - invmod_p(denom, p_)) % p_;
}

uint64_t delta_coeff(uint64_t p, std::span<const uint64_t> alpha) {
  return delta_coeff_table(p).coeff(alpha);
}

const DeltaCoeffTable& delta_coeff_table(uint64_t p) {
  static std::mutex mu;
  static std::map<uint64_t, std::unique_ptr<DeltaCoeffTable>> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = tables[p];
  if (!slot) slot = std::make_unique<DeltaCoeffTable>(p);
  return *slot;
}

namespace {

int64_t checked_scaled_add(int64_t acc, int64_t e, uint64_t mult) {
  unsigned __int128 r = static_cast<unsigned __int128>(acc) +
                        static_cast<unsigned __int128>(e) * mult;
  if (r > static_cast<unsigned __int128>(INT64_MAX)) {
    throw Error(Errc::ExponentOverflow, "exponent overflow in delta");
  }
  return static_cast<int64_t>(r);
}

}  // namespace

Poly delta(const Poly& g, const WorkBudget* budget) {
  const FieldCtx& k = g.ring()->field();
  uint64_t p = k.p();
  const DeltaCoeffTable& table = delta_coeff_table(p);
  auto terms = g.sorted_terms();
  size_t r = terms.size();
  Poly out(g.ring());
  if (r < 2) return out;  // a single monomial (or zero) carries nothing

  size_t arity = g.ring()->arity();
  std::vector<uint64_t> parts;
  // chosen[i] = index into terms for parts[i]; parts are >= 1, sum to p
  std::vector<size_t> chosen;
  uint64_t emitted = 0;

  auto emit = [&]() {
    if (budget) {
      if (++emitted % 4096 == 0) budget->charge(4096);
    }
    Scalar c = k.from_uint(table.coeff(parts));
    Mono m{std::vector<int64_t>(arity, 0)};
    for (size_t i = 0; i < chosen.size(); ++i) {
      const auto& [me, ce] = terms[chosen[i]];
      for (size_t v = 0; v < arity; ++v) m.e[v] = checked_scaled_add(m.e[v], me.e[v], parts[i]);
      c = k.mul(c, k.pow(ce, parts[i]));
    }
    out.add_term(m, c);
  };

  // Enumerate the support terms taking a positive part alpha_j <= p-1 each,
  // total p. At most p of them are ever active, independent of r.
  auto rec = [&](auto&& self, size_t start, uint64_t remaining) -> void {
    if (remaining == 0) {
      emit();
      return;
    }
    for (size_t j = start; j < r; ++j) {
      // even taking p-1 from every remaining term cannot close the gap
      if (static_cast<unsigned __int128>(p - 1) * (r - j) < remaining) break;
      uint64_t cap = std::min<uint64_t>(p - 1, remaining);
      chosen.push_back(j);
      for (uint64_t a = 1; a <= cap; ++a) {
        parts.push_back(a);
        self(self, j + 1, remaining - a);
        parts.pop_back();
      }
      chosen.pop_back();
    }
  };
  rec(rec, 0, p);
  return out;
}

Poly trace_u(const Poly& a) {
  const FieldCtx& k = a.ring()->field();
  int64_t p = static_cast<int64_t>(k.p());
  Poly out(a.ring());
  for (const auto& [m, c] : a.terms()) {
    bool keep = true;
    for (int64_t e : m.e) {
      if (e % p != p - 1) {
        keep = false;
        break;
      }
    }
    if (!keep) continue;
    Mono t;
    t.e.reserve(m.e.size());
    for (int64_t e : m.e) t.e.push_back((e - (p - 1)) / p);
    out.add_term(t, k.frob_inv(c));
  }
  return out;
}

bool ker_u(const Poly& a) { return trace_u(a).is_zero(); }

DeltaCache DeltaCache::make(const Poly& g) { return DeltaCache{g, delta(g)}; }

Poly theta(const Poly& g, const Poly& h, const DeltaCache* cache, const WorkBudget* budget) {
  if (!g.ring()->same_ring(*h.ring())) throw Error(Errc::RingMismatch, "theta operands differ");
  if (cache) {
    if (!(cache->g == g)) throw Error(Errc::CacheMismatch, "delta cache built from a different g");
    return trace_u(poly_mul(cache->dg, h, budget));
  }
  return trace_u(poly_mul(delta(g, budget), h, budget));
}

}  // namespace qfs
