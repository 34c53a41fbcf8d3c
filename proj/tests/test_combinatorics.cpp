#include <doctest.h>

#include <random>

#include "qfs/combinatorics.hpp"
#include "qfs/frobops.hpp"
#include "support/oracles.hpp"

using namespace qfs;

namespace {

RingPtr ring_over(uint64_t p, std::vector<std::string> vars) {
  return RingCtx::make(FieldCtx::make(p), std::move(vars));
}

ExponentMatrix k3_matrix() {
  auto r = ring_over(2, {"x", "y", "z", "w"});
  return ExponentMatrix::from_poly(poly_parse(r, "x^4+x*y^3+y*z^3+z*w^3"));
}

ExponentMatrix matrix_of(std::vector<std::vector<int64_t>> rows) {
  ExponentMatrix E;
  E.arity = rows.empty() ? 0 : rows[0].size();
  E.rows = std::move(rows);
  return E;
}

}  // namespace

TEST_CASE("exponent matrix rows come out in canonical order") {
  ExponentMatrix E = k3_matrix();
  REQUIRE(E.rows.size() == 4);
  CHECK(E.rows[0] == std::vector<int64_t>{4, 0, 0, 0});
  CHECK(E.rows[1] == std::vector<int64_t>{1, 3, 0, 0});
  CHECK(E.rows[2] == std::vector<int64_t>{0, 1, 3, 0});
  CHECK(E.rows[3] == std::vector<int64_t>{0, 0, 1, 3});
}

TEST_CASE("gamma feasibility fixtures") {
  ExponentMatrix E = k3_matrix();
  CHECK_FALSE(gamma_feasible(E, 512, 510).has_value());
  auto w = gamma_feasible(E, 28, 27);
  REQUIRE(w.has_value());
  CHECK(w->gamma == std::vector<int64_t>{5, 7, 6, 9});
  CHECK_FALSE(gamma_feasible(E, 2, 1).has_value());
  // s = 0 always has the empty-product witness
  auto zero = gamma_feasible(E, 2, 0);
  REQUIRE(zero.has_value());
  CHECK(zero->gamma == std::vector<int64_t>{0, 0, 0, 0});
}

TEST_CASE("gamma search matches the naive enumeration, witness for witness") {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int iter = 0; iter < 400; ++iter) {
    size_t r = 2 + rng() % 4;       // 2..5 rows
    size_t arity = 2 + rng() % 3;   // 2..4 variables
    std::vector<std::vector<int64_t>> rows;
    for (size_t j = 0; j < r; ++j) {
      std::vector<int64_t> row(arity, 0);
      for (auto& v : row) v = static_cast<int64_t>(rng() % 5);
      if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
    }
    ExponentMatrix E = matrix_of(rows);
    int64_t q = 1 + static_cast<int64_t>(rng() % 25);
    int64_t s = static_cast<int64_t>(rng() % 22);
    // keep the naive search space small by construction
    double space = 1;
    for (size_t j = 0; j < E.rows.size(); ++j) space *= s + 1;
    if (space > 1e6) continue;
    ++checked;
    auto fast = gamma_feasible(E, q, s);
    auto naive = testing::gamma_naive(E, q, s);
    REQUIRE(fast.has_value() == naive.has_value());
    if (fast) CHECK(fast->gamma == naive->gamma);
  }
  CHECK(checked > 200);
}

TEST_CASE("gamma search matches naive on equal-weight systems") {
  std::mt19937_64 rng(43);
  int checked = 0;
  for (int iter = 0; iter < 400; ++iter) {
    size_t arity = 3 + rng() % 2;
    size_t r = 3 + rng() % 2;
    int64_t weight = 3 + static_cast<int64_t>(rng() % 4);
    std::vector<std::vector<int64_t>> rows;
    for (size_t j = 0; j < r; ++j) {
      // random composition of `weight` over the variables
      std::vector<int64_t> row(arity, 0);
      for (int64_t u = 0; u < weight; ++u) row[rng() % arity] += 1;
      if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
    }
    ExponentMatrix E = matrix_of(rows);
    int64_t q = 4 + static_cast<int64_t>(rng() % 22);
    // sums near the tight regime exercise the slack path
    for (int64_t s : {(4 * (q - 1)) / (3 * weight), (q - 1) / 1, (q - 2) / 1}) {
      if (s < 0 || s > 20) continue;
      ++checked;
      auto fast = gamma_feasible(E, q, s);
      auto naive = testing::gamma_naive(E, q, s);
      REQUIRE(fast.has_value() == naive.has_value());
      if (fast) CHECK(fast->gamma == naive->gamma);
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("fast search equals naive on the quartic matrix for every small q and s") {
  ExponentMatrix E = k3_matrix();
  for (int64_t q = 1; q <= 40; ++q) {
    for (int64_t s = 0; s <= q; ++s) {
      auto fast = gamma_feasible(E, q, s);
      auto naive = testing::gamma_naive(E, q, s);
      REQUIRE(fast.has_value() == naive.has_value());
      if (fast) CHECK(fast->gamma == naive->gamma);
    }
  }
}

TEST_CASE("fast search equals naive on deformed matrices with a t-row") {
  auto r = ring_over(2, {"x", "y", "z", "w", "t"});
  Poly f = poly_parse(r, "x^4+x*y^3+y*z^3+z*w^3");
  for (int64_t m : {1, 2, 3, 4, 5, 7, 9, 12, 16}) {
    Poly g = poly_add(f, Poly::monomial(r, Mono{{0, 0, 0, 0, m}}, r->field().one()));
    ExponentMatrix E = ExponentMatrix::from_poly(g);
    for (int64_t q = 2; q <= 20; ++q) {
      for (int64_t s : {q - 2, q - 1, q, q + 3}) {
        if (s < 0) continue;
        auto fast = gamma_feasible(E, q, s);
        auto naive = testing::gamma_naive(E, q, s);
        REQUIRE(fast.has_value() == naive.has_value());
        if (fast) CHECK(fast->gamma == naive->gamma);
      }
    }
  }
}

TEST_CASE("claim sweeps: residues 26 mod 27 with sum q-2, and q not 1 mod 27 with sum q-1") {
  ExponentMatrix E = k3_matrix();
  std::vector<int64_t> qs_26;
  for (int64_t q = 2; q <= 2000; ++q) {
    if (q % 27 == 26) qs_26.push_back(q);
  }
  SweepReport sweep1 =
      claim_sweep(E, qs_26, SumRule::QMinus2, [](int64_t) { return true; });
  CHECK(sweep1.contradictions == 0);
  CHECK(sweep1.rows.size() == 74);
  for (const auto& row : sweep1.rows) CHECK_FALSE(row.feasible);

  std::vector<int64_t> qs_not1;
  for (int64_t q = 2; q <= 1500; ++q) {
    if (q % 27 != 1) qs_not1.push_back(q);
  }
  SweepReport sweep2 =
      claim_sweep(E, qs_not1, SumRule::QMinus1, [](int64_t) { return true; });
  CHECK(sweep2.contradictions == 0);
  for (const auto& row : sweep2.rows) CHECK_FALSE(row.feasible);

  // positive control: q = 28 is 1 mod 27 and the witness exists
  SweepReport control = claim_sweep(E, {28}, SumRule::QMinus1, [](int64_t) { return false; });
  CHECK(control.contradictions == 0);
  REQUIRE(control.rows[0].feasible);
  CHECK(control.rows[0].witness->gamma == std::vector<int64_t>{5, 7, 6, 9});
}

TEST_CASE("witnesses at q = 1 mod 27 follow the tight-solution shape") {
  ExponentMatrix E = k3_matrix();
  for (int64_t q = 28; q <= 1500; q += 27) {
    auto w = gamma_feasible(E, q, q - 1);
    REQUIRE(w.has_value());
    int64_t base = q - 1;
    CHECK(w->gamma == std::vector<int64_t>{5 * base / 27, 7 * base / 27, 2 * base / 9, base / 3});
  }
}

TEST_CASE("powers_mod") {
  CHECK(powers_mod(2, 27, 9) == std::vector<uint64_t>{2, 4, 8, 16, 5, 10, 20, 13, 26});
  CHECK(powers_mod(2, 27, 1) == std::vector<uint64_t>{2});
  CHECK(powers_mod(10, 7, 3) == std::vector<uint64_t>{3, 2, 6});
  CHECK_THROWS_AS(powers_mod(2, 1, 3), Error);
  CHECK_THROWS_AS(powers_mod(2, 27, 0), Error);
}

TEST_CASE("product membership oracle fixtures") {
  auto r = ring_over(2, {"x", "y", "z", "w"});
  Poly f = poly_parse(r, "x^4+x*y^3+y*z^3+z*w^3");
  CHECK(product_membership_oracle(f, 510, 512).member_sound);
  for (int n = 1; n <= 9; ++n) {
    CHECK(product_membership_oracle(f, (1 << n) - 1, 1 << n).member_sound);
  }
  auto r2 = ring_over(2, {"x", "y"});
  auto res = product_membership_oracle(poly_parse(r2, "x*y"), 1, 2);
  CHECK_FALSE(res.member_sound);
  REQUIRE(res.witness_mono.has_value());
  CHECK(res.witness_mono->e == std::vector<int64_t>{1, 1});
}

TEST_CASE("sound verdicts imply exact membership of the actual power") {
  std::mt19937_64 rng(47);
  for (int iter = 0; iter < 300; ++iter) {
    uint64_t p = iter % 2 ? 2 : 3;
    auto ring = ring_over(p, {"x", "y", "z"});
    Poly f(ring);
    int terms = 1 + rng() % 5;
    for (int t = 0; t < terms; ++t) {
      Mono m{{static_cast<int64_t>(rng() % 5), static_cast<int64_t>(rng() % 5),
              static_cast<int64_t>(rng() % 5)}};
      f.add_term(m, ring->field().from_uint(1 + rng() % (p - 1)));
    }
    if (f.is_zero()) continue;
    int64_t count = static_cast<int64_t>(rng() % 13);
    int64_t q = 1 + static_cast<int64_t>(rng() % 16);
    auto res = product_membership_oracle(f, count, q);
    if (res.member_sound) {
      FrobIdeal I = FrobIdeal::make(ring, q);
      CHECK(poly_trunc_pow(f, static_cast<uint64_t>(count), I).is_zero());
    }
  }
}
