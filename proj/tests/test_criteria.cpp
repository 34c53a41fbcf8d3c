#include <doctest.h>

#include <random>

#include "qfs/criteria.hpp"
#include "support/oracles.hpp"
#include "support/reference_chains.hpp"

using namespace qfs;

namespace {

RingPtr ring_over(uint64_t p, std::vector<std::string> vars) {
  return RingCtx::make(FieldCtx::make(p), std::move(vars));
}

Poly k3_quartic(const RingPtr& r) { return poly_parse(r, "x^4+x*y^3+y*z^3+z*w^3"); }

// random nonzero polynomial with no constant term
Poly random_hypersurface(const RingPtr& ring, std::mt19937_64& rng, int max_terms,
                         int64_t max_exp) {
  Poly out(ring);
  while (out.is_zero()) {
    out = Poly(ring);
    int terms = 1 + static_cast<int>(rng() % max_terms);
    for (int t = 0; t < terms; ++t) {
      Mono m{std::vector<int64_t>(ring->arity(), 0)};
      int64_t total = 0;
      for (auto& e : m.e) {
        e = static_cast<int64_t>(rng() % (max_exp + 1));
        total += e;
      }
      if (total == 0) continue;
      out.add_term(m, ring->field().from_index(1 + rng() % (ring->field().order() - 1)));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("fedder criterion") {
  for (uint64_t p : {2ull, 3ull, 5ull}) {
    auto r = ring_over(p, {"x", "y"});
    CHECK(fedder_fpure(poly_parse(r, "x*y")));
  }
  auto r3v = ring_over(2, {"x", "y", "z"});
  CHECK_FALSE(fedder_fpure(poly_parse(r3v, "x^3+y^3+z^3")));
  auto r4 = ring_over(3, {"x", "y", "z", "w"});
  CHECK_FALSE(fedder_fpure(poly_parse(r4, "x^4+y^4+z^4+w^4")));
  CHECK_THROWS_WITH_AS(fedder_fpure(poly_parse(r4, "x+1")), doctest::Contains("ConstantTerm"),
                       Error);
}

TEST_CASE("level fixtures") {
  auto r4 = ring_over(2, {"x", "y", "z", "w"});
  Poly f = k3_quartic(r4);
  LevelResult comb = qfs_level(f, 9, LevelVariant::DeltaOfFPow, Backend::Combinatorial);
  CHECK(comb.record.status == LevelStatus::MemberSound);

  auto r3v = ring_over(2, {"x", "y", "z"});
  Poly cone = poly_parse(r3v, "x^3+y^3+z^3");
  LevelResult lvl2 = qfs_level(cone, 2, LevelVariant::DeltaOfFPow, Backend::Poly);
  CHECK(lvl2.record.status == LevelStatus::NonMember);
  REQUIRE(lvl2.residual.has_value());
  CHECK(poly_print(*lvl2.residual) == "x^3*y^3*z^3");

  // level 1 is exactly the negated Fedder verdict
  std::mt19937_64 rng(53);
  auto ring = ring_over(3, {"x", "y"});
  for (int iter = 0; iter < 100; ++iter) {
    Poly h = random_hypersurface(ring, rng, 5, 4);
    LevelResult l1 = qfs_level(h, 1, LevelVariant::DeltaOfFPow, Backend::Poly);
    CHECK((l1.record.status == LevelStatus::Member) == !fedder_fpure(h));
  }

  CHECK_THROWS_WITH_AS(qfs_level(f, 0, LevelVariant::DeltaOfFPow, Backend::Poly),
                       doctest::Contains("BadLevel"), Error);
  CHECK_THROWS_WITH_AS(
      qfs_level(poly_parse(ring_over(3, {"x", "y"}), "x*y"), 2, LevelVariant::DeltaOfFPow,
                Backend::Combinatorial),
      doctest::Contains("BackendUnavailable"), Error);
}

TEST_CASE("height fixtures") {
  auto r2 = ring_over(2, {"x", "y"});
  HeightReport h1 = qfs_height_search(poly_parse(r2, "x*y"), 1, LevelVariant::DeltaOfFPow,
                                      Backend::Poly);
  CHECK(h1.verdict == HeightReport::Verdict::Height);
  CHECK(h1.value == 1);

  auto r3v = ring_over(2, {"x", "y", "z"});
  HeightReport h2 = qfs_height_search(poly_parse(r3v, "x^3+y^3+z^3"), 4,
                                      LevelVariant::DeltaOfFPow, Backend::Poly);
  CHECK(h2.verdict == HeightReport::Verdict::Height);
  CHECK(h2.value == 2);
  REQUIRE(h2.residual.has_value());
  CHECK(poly_print(*h2.residual) == "x^3*y^3*z^3");

  auto r4 = ring_over(2, {"x", "y", "z", "w"});
  HeightReport h3 = qfs_height_search(k3_quartic(r4), 9, LevelVariant::DeltaOfFPow,
                                      Backend::CombinatorialPrescreen);
  CHECK(h3.verdict == HeightReport::Verdict::AtLeast);
  CHECK(h3.value == 10);
}

TEST_CASE("height 1 iff F-pure on a random corpus") {
  std::mt19937_64 rng(59);
  for (uint64_t p : {2ull, 3ull}) {
    auto ring = ring_over(p, {"x", "y", "z"});
    for (int iter = 0; iter < 120; ++iter) {
      Poly h = random_hypersurface(ring, rng, 4, 4);
      HeightReport report =
          qfs_height_search(h, 2, LevelVariant::DeltaOfFPow, Backend::Poly);
      bool height_one = report.verdict == HeightReport::Verdict::Height && report.value == 1;
      CHECK(height_one == fedder_fpure(h));
    }
  }
}

TEST_CASE("variants coincide at p = 2") {
  std::mt19937_64 rng(61);
  auto ring = ring_over(2, {"x", "y", "z"});
  for (int iter = 0; iter < 60; ++iter) {
    Poly h = random_hypersurface(ring, rng, 4, 3);
    for (int r = 1; r <= 6; ++r) {
      LevelResult a = qfs_level(h, r, LevelVariant::DeltaOfF, Backend::Poly);
      LevelResult b = qfs_level(h, r, LevelVariant::DeltaOfFPow, Backend::Poly);
      CHECK(a.record.status == b.record.status);
      CHECK(a.residual.has_value() == b.residual.has_value());
      if (a.residual) CHECK(*a.residual == *b.residual);
      if (a.record.status == LevelStatus::NonMember) break;
    }
  }
}

TEST_CASE("combinatorial member verdicts are sound against the poly backend") {
  std::mt19937_64 rng(67);
  for (uint64_t p : {2ull, 3ull}) {
    auto ring = ring_over(p, {"x", "y", "z"});
    for (int iter = 0; iter < 80; ++iter) {
      Poly h = random_hypersurface(ring, rng, 4, 3);
      for (int r = 1; r <= 4; ++r) {
        LevelResult comb = qfs_level(h, r, LevelVariant::DeltaOfF, Backend::Combinatorial);
        if (comb.record.status != LevelStatus::MemberSound) continue;
        LevelResult exact = qfs_level(h, r, LevelVariant::DeltaOfF, Backend::Poly);
        CHECK(exact.record.status == LevelStatus::Member);
      }
    }
  }
}

TEST_CASE("chain verification: the three worked cases") {
  auto r5 = ring_over(2, {"x", "y", "z", "w", "t"});
  Poly f = k3_quartic(r5);

  auto run_m = [&](int64_t m) {
    Poly g = poly_add(f, poly_parse(r5, "t^" + std::to_string(m)));
    Poly a = poly_parse(r5, "x^2*y*z^2*w^3*t^" + std::to_string(1023 - 2 * m));
    return chain_verify(g, a, 10);
  };

  ChainReport m511 = run_m(511);
  CHECK(m511.certified);
  CHECK(poly_print(m511.chain[1]) == "x^3*y^2*z^2*w");
  CHECK(poly_print(m511.chain[2]) == "x*y*z^2*t^255");
  CHECK(poly_print(m511.chain[9]) == "x*y*z*w*t");

  ChainReport m510 = run_m(510);  // r = 255; canonical order puts the
                                  // t-heavy term first (total degree 262)
  CHECK(m510.certified);
  CHECK(poly_print(m510.chain[1]) == "x*y^2*z^2*w*t^256 + x^3*y^2*z^2*w*t");

  ChainReport m4 = run_m(4);  // s = 1
  CHECK(m4.certified);
  CHECK(poly_print(m4.chain[9]) == "x*y*z*w*t + y*z*w*t^2");

  // expected tails from the closed-form tables
  for (int64_t m : {1, 2, 4, 8, 12, 101, 254, 255, 256, 317, 500, 510, 511}) {
    ChainReport rep = run_m(m);
    CHECK(rep.certified);
    auto expected = testing::reference_chain_tail(r5, m);
    REQUIRE(expected.size() == 9);
    for (size_t i = 0; i < 9; ++i) CHECK(rep.chain[i + 1] == expected[i]);
  }

  // a non-kernel opener is not certified
  auto r2 = ring_over(2, {"x", "y"});
  ChainReport bad = chain_verify(poly_parse(r2, "x+y"), poly_parse(r2, "x"), 2);
  CHECK_FALSE(bad.kernel_flags[0]);
  CHECK_FALSE(bad.certified);

  CHECK_THROWS_WITH_AS(chain_verify(f, Poly::zero(r5), 2), doctest::Contains("ZeroMultiplier"),
                       Error);
  CHECK_THROWS_AS(chain_verify(f, Poly::one(r5), 0), Error);
}

TEST_CASE("chain determinism") {
  auto r5 = ring_over(2, {"x", "y", "z", "w", "t"});
  Poly g = poly_add(k3_quartic(r5), poly_parse(r5, "t^100"));
  Poly a = poly_parse(r5, "x^2*y*z^2*w^3*t^823");
  ChainReport first = chain_verify(g, a, 10);
  ChainReport second = chain_verify(g, a, 10);
  REQUIRE(first.chain.size() == second.chain.size());
  for (size_t i = 0; i < first.chain.size(); ++i) {
    CHECK(first.chain[i] == second.chain[i]);
    CHECK(poly_print(first.chain[i]) == poly_print(second.chain[i]));
  }
}

TEST_CASE("chain search") {
  auto r2 = ring_over(2, {"x", "y"});
  auto hit2 = chain_search(poly_parse(r2, "x*y"), 1, {2, 2});
  REQUIRE(hit2.has_value());
  CHECK(hit2->a.e == std::vector<int64_t>{0, 0});  // a = 1
  CHECK(hit2->n == 1);
  CHECK(hit2->report.certified);

  auto r3 = ring_over(3, {"x", "y"});
  auto hit3 = chain_search(poly_parse(r3, "x*y"), 1, {2, 2});
  REQUIRE(hit3.has_value());
  CHECK(hit3->a.e == std::vector<int64_t>{1, 1});  // a = (xy)^(p-2)
  CHECK(hit3->n == 1);

  // exhaustion: bounds all zero and g with no unit certificate at a = 1
  auto r1 = ring_over(2, {"x"});
  CHECK_FALSE(chain_search(poly_parse(r1, "x^2"), 2, {0}).has_value());
}

TEST_CASE("chain search finds a certificate for the deformed quartic") {
  auto r5 = ring_over(2, {"x", "y", "z", "w", "t"});
  Poly g = poly_add(k3_quartic(r5), poly_parse(r5, "t^511"));
  auto hit = chain_search(g, 10, {3, 3, 3, 3, 1023});
  REQUIRE(hit.has_value());
  CHECK(hit->n <= 10);
  CHECK(hit->report.certified);
}

TEST_CASE("extension check") {
  auto r4 = ring_over(2, {"x", "y", "z", "w"});
  Poly f = k3_quartic(r4);
  ExtensionReport ok = extension_check(f, 9, 512);
  CHECK(ok.hypothesis_sht);
  CHECK(ok.hypothesis_fn);
  CHECK(ok.l_large_enough);
  CHECK(ok.concluded);

  ExtensionReport short_l = extension_check(f, 9, 511);
  CHECK(short_l.hypothesis_sht);
  CHECK(short_l.hypothesis_fn);
  CHECK_FALSE(short_l.l_large_enough);
  CHECK_FALSE(short_l.concluded);

  // degenerate n = 1: the carry power is empty, so f_1 = f^(p-2) = 1 at
  // p = 2, which never lies in m^[2]; both readings agree
  auto r2 = ring_over(2, {"x", "y"});
  Poly small = poly_parse(r2, "x^2+x*y");
  for (FnVariant v : {FnVariant::DeltaPowPMinus1, FnVariant::DeltaPowPMinus2}) {
    ExtensionReport deg = extension_check(small, 1, 2, LevelVariant::DeltaOfFPow, v);
    CHECK(deg.hypothesis_sht);  // vacuous
    CHECK_FALSE(deg.hypothesis_fn);
    CHECK_FALSE(deg.concluded);
  }

  // the two fn readings also agree on the main instance at p = 2
  ExtensionReport literal =
      extension_check(f, 9, 512, LevelVariant::DeltaOfFPow, FnVariant::DeltaPowPMinus2,
                      Backend::CombinatorialPrescreen);
  CHECK(literal.hypothesis_fn);  // delta(f^0) = 0, and 0 is a member
  CHECK(literal.concluded);

  CHECK_THROWS_WITH_AS(extension_check(poly_parse(r4, "x^4+x*y^3+y*z^3+z*w^3+x^2"), 2, 4),
                       doctest::Contains("NotHomogeneous"), Error);
  CHECK_THROWS_WITH_AS(extension_check(poly_parse(r4, "x^3+y^3+z^3+w^3"), 2, 4),
                       doctest::Contains("DegreeMismatch"), Error);
}

TEST_CASE("the direct height search agrees with the deformation conclusion") {
  auto r5 = ring_over(2, {"x", "y", "z", "w", "t"});
  Poly g = poly_add(k3_quartic(r5), poly_parse(r5, "t^512"));
  HeightReport report =
      qfs_height_search(g, 9, LevelVariant::DeltaOfFPow, Backend::CombinatorialPrescreen);
  CHECK(report.verdict == HeightReport::Verdict::AtLeast);
  CHECK(report.value == 10);
}

TEST_CASE("level 9 of the deformed quartic is member-sound for every m >= 256") {
  // at most one t^m factor fits under the threshold 512, so both sweeps
  // cover the products and the verdict is coefficient-free
  auto r5 = ring_over(2, {"x", "y", "z", "w", "t"});
  for (int64_t m : {256, 300, 380, 500, 511}) {
    Poly g = poly_add(k3_quartic(r5), poly_parse(r5, "t^" + std::to_string(m)));
    LevelResult lvl = qfs_level(g, 9, LevelVariant::DeltaOfFPow, Backend::Combinatorial);
    CHECK(lvl.record.status == LevelStatus::MemberSound);
  }
}

TEST_CASE("lambda search") {
  LambdaResult r13 = lambda_search(13);
  REQUIRE(r13.lambda.has_value());
  CHECK(*r13.lambda == 2);
  CHECK(r13.check_lambda4);
  CHECK(r13.check_pm1);
  CHECK(r13.check_pm2);
  CHECK_THROWS_WITH_AS(lambda_search(7), doctest::Contains("BadPrime"), Error);
  CHECK_THROWS_AS(lambda_search(5), Error);
  CHECK_THROWS_AS(lambda_search(15), Error);
}

TEST_CASE("lambda corner shortcut equals full truncated powering") {
  for (uint64_t p : {13ull, 17ull, 29ull, 37ull}) {
    auto ring = ring_over(p, {"x", "y", "z", "w"});
    FrobIdeal Ip = FrobIdeal::make(ring, static_cast<int64_t>(p));
    std::vector<uint64_t> fact(p);
    fact[0] = 1;
    for (uint64_t k = 1; k < p; ++k) fact[k] = fact[k - 1] * k % p;
    for (uint64_t lam = 0; lam < p; ++lam) {
      uint64_t corner = 0;
      for (uint64_t g4 = 0; g4 <= p - 1; g4 += 4) {
        uint64_t k = (p - 1 - g4) / 4;
        uint64_t denom = fact[k] * fact[k] % p * fact[k] % p * fact[k] % p * fact[g4] % p;
        uint64_t inv = 1, b = denom, ex = p - 2;
        while (ex) {
          if (ex & 1) inv = inv * b % p;
          b = b * b % p;
          ex >>= 1;
        }
        uint64_t lam_pow = 1;
        for (uint64_t i = 0; i < g4; ++i) lam_pow = lam_pow * lam % p;
        corner = (corner + fact[p - 1] * inv % p * lam_pow) % p;
      }
      Poly f = poly_parse(ring, "x^4+y^4+z^4+w^4");
      f.add_term(Mono{{1, 1, 1, 1}}, ring->field().from_uint(lam));
      bool full_member = poly_trunc_pow(f, p - 1, Ip).is_zero();
      CHECK((corner == 0) == full_member);
    }
  }
}

TEST_CASE("singular scans") {
  auto r4 = ring_over(2, {"x", "y", "z", "w"});
  CHECK(singular_scan(k3_quartic(r4), 3).empty());

  auto r3v = ring_over(3, {"x", "y", "z"});
  auto cubic_points = singular_scan(poly_parse(r3v, "x^3+y^3+z^3"), 1);
  CHECK_FALSE(cubic_points.empty());  // (x+y+z)^3 in characteristic 3

  auto r5 = ring_over(5, {"x", "y", "z", "w"});
  CHECK(singular_scan(poly_parse(r5, "x^4+x*y^3+z^4+z*w^3"), 2).empty());

  CHECK_THROWS_WITH_AS(singular_scan(poly_parse(r4, "x^4+y"), 1),
                       doctest::Contains("NotHomogeneous"), Error);
  auto r101 = ring_over(101, {"x", "y"});
  CHECK_THROWS_WITH_AS(singular_scan(poly_parse(r101, "x^2+y^2"), 2),
                       doctest::Contains("BudgetExceeded"), Error);
}

TEST_CASE("dense-arithmetic oracle agrees on the anchor computations") {
  // height(xy) = 1: f^(p-1) itself survives mod m^[2]
  auto r2 = ring_over(2, {"x", "y"});
  Poly xy = poly_parse(r2, "x*y");
  testing::DensePoly dense_xy = testing::DensePoly::from_sparse(xy, 2);
  CHECK_FALSE(dense_xy.pow(1).is_zero());

  // cone level 2: f * delta(f) mod m^[4] has exactly the residual x^3y^3z^3,
  // with delta supplied by the independent big-integer lift
  auto r3v = ring_over(2, {"x", "y", "z"});
  Poly cone = poly_parse(r3v, "x^3+y^3+z^3");
  Poly dcone = testing::delta_lift_oracle(cone);
  testing::DensePoly lvl2 =
      testing::DensePoly::from_sparse(cone, 4).mul(testing::DensePoly::from_sparse(dcone, 4));
  CHECK_FALSE(lvl2.is_zero());
  LevelResult sparse = qfs_level(cone, 2, LevelVariant::DeltaOfFPow, Backend::Poly);
  REQUIRE(sparse.residual.has_value());
  CHECK(lvl2.equals_sparse(*sparse.residual));
  // and level 1 is a member both ways
  CHECK(testing::DensePoly::from_sparse(cone, 2).pow(1).is_zero());
}

TEST_CASE("dense oracle confirms the quartic level elements up to r = 4") {
  auto r4 = ring_over(2, {"x", "y", "z", "w"});
  Poly f = k3_quartic(r4);
  Poly df = testing::delta_lift_oracle(f);
  for (int r = 1; r <= 4; ++r) {
    int64_t q = int64_t(1) << r;
    testing::DensePoly dense_f = testing::DensePoly::from_sparse(f, q);
    testing::DensePoly level = dense_f;
    if (r >= 2) {
      uint64_t K = (uint64_t(1) << (r - 1)) - 1;
      level = dense_f.mul(testing::DensePoly::from_sparse(df, q).pow(K));
    }
    CHECK(level.is_zero());
    LevelResult sparse = qfs_level(f, r, LevelVariant::DeltaOfFPow, Backend::Poly);
    CHECK(sparse.record.status == LevelStatus::Member);
  }
}

TEST_CASE("dense oracle agrees with poly levels at p = 3 on random surfaces") {
  std::mt19937_64 rng(71);
  auto ring = ring_over(3, {"x", "y", "z"});
  for (int iter = 0; iter < 200; ++iter) {
    Poly h = random_hypersurface(ring, rng, 4, 3);
    Poly dh = testing::delta_lift_oracle(h);
    // L_2 = h^2 * delta(h) mod m^[9]
    testing::DensePoly dense =
        testing::DensePoly::from_sparse(h, 9).pow(2).mul(testing::DensePoly::from_sparse(dh, 9));
    LevelResult sparse = qfs_level(h, 2, LevelVariant::DeltaOfF, Backend::Poly);
    CHECK(dense.is_zero() == (sparse.record.status == LevelStatus::Member));
    if (sparse.residual) CHECK(dense.equals_sparse(*sparse.residual));
  }
}

TEST_CASE("budgets cut off loudly with a partial report") {
  auto r4 = ring_over(2, {"x", "y", "z", "w"});
  Budget tiny;
  tiny.max_term_pairs = 10;
  HeightReport report =
      qfs_height_search(k3_quartic(r4), 9, LevelVariant::DeltaOfFPow, Backend::Poly, tiny);
  CHECK(report.budget_exhausted);
  CHECK(report.verdict == HeightReport::Verdict::Undecided);

  Budget tiny_search;
  tiny_search.max_search_nodes = 1;
  CHECK_THROWS_WITH_AS(
      qfs_level(k3_quartic(r4), 9, LevelVariant::DeltaOfFPow, Backend::Combinatorial,
                tiny_search),
      doctest::Contains("BudgetExceeded"), Error);

  auto r2 = ring_over(2, {"x", "y"});
  Budget tiny_candidates;
  tiny_candidates.max_candidates = 10;
  CHECK_THROWS_WITH_AS(chain_search(poly_parse(r2, "x*y"), 1, {3, 3}, tiny_candidates),
                       doctest::Contains("BudgetExceeded"), Error);
}
