#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfs/combinatorics.hpp"
#include "qfs/frobops.hpp"

namespace qfs {

/// Which carry argument enters the level elements: D = delta(f) or
/// D = delta(f^(p-1)). For p = 2 the two coincide (f^(p-1) = f).
enum class LevelVariant { DeltaOfF, DeltaOfFPow };

/// Which carry argument enters f_n in extension_check: delta(f^(p-1))
/// (default; at p = 2 this is the level-element computation) or the literal
/// delta(f^(p-2)).
enum class FnVariant { DeltaPowPMinus1, DeltaPowPMinus2 };

enum class Backend { Poly, Combinatorial, CombinatorialPrescreen };

const char* to_string(LevelVariant v);
const char* to_string(FnVariant v);
const char* to_string(Backend b);
LevelVariant level_variant_from_string(const std::string& s);
FnVariant fn_variant_from_string(const std::string& s);
Backend backend_from_string(const std::string& s);

/// Resource caps. Level elements grow quickly with r, so every expensive
/// operation takes explicit caps and fails loudly instead of thrashing.
struct Budget {
  uint64_t max_term_pairs = 4'000'000'000ull;  // cumulative term-pair products
  double max_seconds = 0;                      // 0 = unlimited
  uint64_t max_search_nodes = 200'000'000;     // gamma search
  uint64_t max_candidates = 50'000'000;        // chain_search enumeration

  WorkBudget work() const;
  SearchBudget search() const { return SearchBudget{max_search_nodes}; }
};

enum class LevelStatus { Member, NonMember, MemberSound, Unknown };
const char* to_string(LevelStatus s);

struct LevelRecord {
  int r = 0;
  std::string backend;  // "poly" or "combinatorial"
  LevelStatus status = LevelStatus::Unknown;
  double wall_ms = 0;
};

struct LevelResult {
  LevelRecord record;
  std::optional<Poly> residual;         // poly backend, non-member
  std::optional<GammaWitness> witness;  // combinatorial, Unknown
};

/// Fedder's criterion at the homogeneous maximal ideal: A/f is F-pure
/// iff f^(p-1) stays out of m^[p].
bool fedder_fpure(const Poly& f, const Budget& budget = {});

/// Membership of the level-r element in m^[p^r], where
///   L_1 = f^(p-1)  and  L_r = f^(p-1) * D^((p^(r-1)-1)/(p-1)) for r >= 2.
/// The poly backend computes L_r mod m^[p^r] exactly and returns the
/// residual; the combinatorial backend returns MemberSound when no product
/// of the matching count of f-support monomials avoids the ideal (sound,
/// cancellation-free), else Unknown with the surviving pattern.
LevelResult qfs_level(const Poly& f, int r, LevelVariant variant, Backend backend,
                      const Budget& budget = {});

struct HeightReport {
  Poly f;
  LevelVariant variant = LevelVariant::DeltaOfFPow;
  Backend backend = Backend::CombinatorialPrescreen;
  int cap = 0;
  std::vector<LevelRecord> levels;
  enum class Verdict { Height, AtLeast, Undecided } verdict = Verdict::Undecided;
  int value = 0;  // Height r; AtLeast cap+1; Undecided at level r
  std::optional<Poly> residual;
  bool budget_exhausted = false;
};

/// Walks r = 1..cap and stops at the first non-member level. With the
/// prescreen backend, sound combinatorial "member" verdicts skip the exact
/// computation and the poly backend certifies any non-membership. Budget
/// exhaustion yields a partial report with budget_exhausted set.
HeightReport qfs_height_search(const Poly& f, int cap, LevelVariant variant,
                               Backend backend = Backend::CombinatorialPrescreen,
                               const Budget& budget = {});

struct ChainReport {
  Poly g;
  Poly a;
  int n = 0;
  std::vector<Poly> chain;         // a_1 .. a_n
  std::vector<bool> kernel_flags;  // a_i in Ker(u) for i = 1..n-1
  bool terminus_outside = false;   // a_n not in m^[p]
  bool certified = false;
};

/// Builds a_1 = a*g, a_{i+1} = theta(g, a_i) and certifies when every
/// intermediate lies in Ker(u) and the terminus escapes m^[p]. A certificate
/// witnesses n-quasi-F-splitting per the element criterion.
ChainReport chain_verify(const Poly& g, const Poly& a, int n, const Budget& budget = {});

struct ChainSearchHit {
  Mono a;
  int n = 0;
  ChainReport report;
};

/// First monomial multiplier (canonical order, unit coefficient, exponents
/// within bounds) and minimal n <= n_max with a certified chain.
std::optional<ChainSearchHit> chain_search(const Poly& g, int n_max,
                                           const std::vector<int64_t>& bounds,
                                           const Budget& budget = {});

struct ExtensionReport {
  Poly f;
  int n = 0;
  int64_t l = 0;
  LevelVariant variant = LevelVariant::DeltaOfFPow;
  FnVariant fn_variant = FnVariant::DeltaPowPMinus1;
  bool hypothesis_sht = false;  // levels 1..n-1 of f all member
  bool hypothesis_fn = false;   // f_n in m^[p^n]
  bool l_large_enough = false;  // l >= p^n
  bool concluded = false;       // all three: A[t]/(f+t^l) is not quasi-F-split
  std::vector<LevelRecord> levels;
  LevelRecord fn_record;
};

/// Deformation analysis for g = f + t^l: when the first n-1 levels of f are
/// members, f_n = f^(p-2) * D^((p^(n-1)-1)/(p-1)) lies in m^[p^n] for the
/// selected reading of D, and l >= p^n, the quotient by f + t^l is not
/// quasi-F-split. Requires f homogeneous of degree = arity.
ExtensionReport extension_check(const Poly& f, int n, int64_t l,
                                LevelVariant variant = LevelVariant::DeltaOfFPow,
                                FnVariant fn_variant = FnVariant::DeltaPowPMinus1,
                                Backend backend = Backend::CombinatorialPrescreen,
                                const Budget& budget = {});

struct LambdaResult {
  uint64_t p = 0;
  std::optional<uint64_t> lambda;  // first success scanning 0..p-1
  bool check_lambda4 = false;      // lambda^4 != 256
  bool check_pm1 = false;          // f^(p-1) in m^[p]
  bool check_pm2 = false;          // f^(p-2) in m^[p]
  uint64_t scanned = 0;
};

/// Scans lambda in F_p for f = x^4+y^4+z^4+w^4+lambda*xyzw with
/// lambda^4 != 256, f^(p-1) in m^[p] (corner-coefficient shortcut: the only
/// surviving degree-4(p-1) monomial under the per-variable bound is
/// (xyzw)^(p-1)), and f^(p-2) in m^[p] by truncated powering.
/// Requires p prime, p = 1 mod 4, p > 5.
LambdaResult lambda_search(uint64_t p, const Budget& budget = {});

struct ProjectivePoint {
  uint32_t ext_degree = 1;
  std::vector<Scalar> coords;  // normalized: first nonzero coordinate is 1
  std::string text;
};

/// Evidence scan, not a proof: all points of P^(N-1)(F_{p^e}), e <= e_max,
/// where f and every partial derivative vanish. Empty means no singular
/// point over the scanned fields. f must be homogeneous over a prime field;
/// the search space is capped at p^(4*e_max) <= 10^8.
std::vector<ProjectivePoint> singular_scan(const Poly& f, uint32_t e_max,
                                           const Budget& budget = {});

}  // namespace qfs
