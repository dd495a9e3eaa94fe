#include <doctest.h>

#include "mwcycles/algebra/finite_field.hpp"
#include "mwcycles/algebra/fq_poly.hpp"
#include "mwcycles/core/rng.hpp"

using namespace mw;

TEST_CASE("F_9 is presented by t^2 + 1") {
  FqPtr F = make_finite_field(3, 2);
  REQUIRE(F->q == 9);
  CHECK(F->modulus == std::vector<i64>{1, 0, 1});
}

TEST_CASE("field construction validates input") {
  CHECK_THROWS_WITH_AS(make_finite_field(6, 1), doctest::Contains("NotPrime"), MwError);
  CHECK_THROWS_AS(make_finite_field(1000003, 2), MwError);  // over the q cap
  CHECK(make_finite_field(2, 1)->q == 2);
  CHECK(make_finite_field(5, 1) == make_finite_field(5, 1));  // cached identity
}

TEST_CASE("field axioms hold on random samples") {
  Rng rng(42);
  for (i64 q : {9, 8, 27, 25}) {
    i64 p = (q == 9 || q == 27) ? 3 : (q == 8 ? 2 : 5);
    int f = (q == 8 || q == 27) ? 3 : 2;
    FqPtr F = make_finite_field(p, f);
    REQUIRE(F->q == q);
    for (int iter = 0; iter < 60; ++iter) {
      FFElem a = F->from_index(static_cast<i64>(rng.below(static_cast<u64>(q))));
      FFElem b = F->from_index(static_cast<i64>(rng.below(static_cast<u64>(q))));
      FFElem c = F->from_index(static_cast<i64>(rng.below(static_cast<u64>(q))));
      CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      CHECK(F->mul(a, b) == F->mul(b, a));
      if (!a.is_zero()) {
        CHECK(F->mul(a, F->inv(a)) == F->one());
        CHECK(F->pow(a, Int(q - 1)) == F->one());  // Fermat for the unit group
      }
    }
  }
}

TEST_CASE("square classes partition the unit group in half (odd q)") {
  for (i64 q : {3, 5, 7, 9, 27, 25}) {
    i64 p = (q == 9 || q == 27) ? 3 : (q == 25 ? 5 : q);
    int f = (q == 9 || q == 25) ? 2 : (q == 27 ? 3 : 1);
    FqPtr F = make_finite_field(p, f);
    int squares = 0, non = 0;
    for (i64 i = 1; i < q; ++i)
      (F->is_square(F->from_index(i)) ? squares : non)++;
    CHECK(squares == (q - 1) / 2);
    CHECK(non == (q - 1) / 2);
    // multiplicativity of the square class character
    Rng rng(7);
    for (int iter = 0; iter < 40; ++iter) {
      FFElem a = F->from_index(static_cast<i64>(1 + rng.below(static_cast<u64>(q - 1))));
      FFElem b = F->from_index(static_cast<i64>(1 + rng.below(static_cast<u64>(q - 1))));
      CHECK(F->chi(F->mul(a, b)) == (F->chi(a) + F->chi(b)) % 2);
    }
  }
}

TEST_CASE("char 2: every element is a square") {
  for (auto [p, f] : {std::pair<i64, int>{2, 1}, {2, 2}, {2, 3}}) {
    FqPtr F = make_finite_field(p, f);
    for (i64 i = 1; i < F->q; ++i) CHECK(F->is_square(F->from_index(i)));
  }
}

TEST_CASE("embeddings are ring maps with working preimages") {
  FqPtr F3 = make_finite_field(3, 1);
  FqPtr F9 = make_finite_field(3, 2);
  FqPtr F81 = make_finite_field(3, 4);
  auto e = embed(F9, F81);
  Rng rng(99);
  for (int iter = 0; iter < 50; ++iter) {
    FFElem a = F9->from_index(static_cast<i64>(rng.below(9)));
    FFElem b = F9->from_index(static_cast<i64>(rng.below(9)));
    CHECK(e->apply(F9->mul(a, b)) == F81->mul(e->apply(a), e->apply(b)));
    CHECK(e->apply(F9->add(a, b)) == F81->add(e->apply(a), e->apply(b)));
    CHECK(e->preimage(e->apply(a)) == a);
  }
  // the subfield criterion: x is in F_9 iff x^9 = x
  for (i64 i = 0; i < 81; ++i) {
    FFElem x = F81->from_index(i);
    bool fixed = F81->pow(x, Int(9)) == x;
    CHECK(e->in_image(x) == fixed);
  }
  // tower compatibility on the base
  auto e39 = embed(F3, F9);
  auto e381 = embed(F3, F81);
  for (i64 i = 0; i < 3; ++i) {
    FFElem x = F3->from_index(i);
    CHECK(e->apply(e39->apply(x)) == e381->apply(x));
  }
}

TEST_CASE("relative trace and norm against sums over conjugates") {
  FqPtr F3 = make_finite_field(3, 1);
  FqPtr F27 = make_finite_field(3, 3);
  auto e = embed(F3, F27);
  for (i64 i = 0; i < 27; ++i) {
    FFElem z = F27->from_index(i);
    // trace = z + z^3 + z^9; norm = z^{1+3+9}
    FFElem tr = F27->add(z, F27->add(F27->pow(z, Int(3)), F27->pow(z, Int(9))));
    CHECK(e->apply(rel_trace(*e, z)) == tr);
    if (!z.is_zero()) {
      FFElem nm = F27->pow(z, Int(13));
      CHECK(e->apply(rel_norm(*e, z)) == nm);
    }
  }
}

TEST_CASE("polynomial arithmetic and factorization") {
  FqPtr F2 = make_finite_field(2, 1);
  auto irr1 = monic_irreducibles(F2, 1);
  auto irr2 = monic_irreducibles(F2, 2);
  REQUIRE(irr1.size() == 2);  // t, t+1
  REQUIRE(irr2.size() == 1);  // t^2+t+1
  CHECK(poly_to_string(irr2[0]) == "t^2+t+1");

  FqPtr F5 = make_finite_field(5, 1);
  Rng rng(314);
  for (int iter = 0; iter < 40; ++iter) {
    // build a random product, factor it, compare
    std::vector<FqPoly> parts;
    FqPoly prod = FqPoly::constant(F5->from_int(1 + static_cast<i64>(rng.below(4))));
    for (int k = 0; k < 3; ++k) {
      int d = 1 + static_cast<int>(rng.below(2));
      auto irr = monic_irreducibles(F5, d);
      FqPoly g = irr[rng.below(irr.size())];
      prod = prod * g;
      parts.push_back(g);
    }
    FqFactorization fac = factor(prod);
    FqPoly rebuilt = FqPoly::constant(fac.lead);
    int total = 0;
    for (auto& [g, e] : fac.factors) {
      CHECK(is_irreducible(g));
      for (int i = 0; i < e; ++i) rebuilt = rebuilt * g;
      total += e * g.deg();
    }
    CHECK(rebuilt == prod);
    CHECK(total == prod.deg());
  }
}

TEST_CASE("divmod is exact division with remainder") {
  FqPtr F7 = make_finite_field(7, 1);
  Rng rng(2718);
  for (int iter = 0; iter < 60; ++iter) {
    std::vector<FFElem> ac, bc;
    int da = static_cast<int>(rng.below(5)), db = static_cast<int>(rng.below(3));
    for (int i = 0; i <= da; ++i) ac.push_back(F7->from_index(static_cast<i64>(rng.below(7))));
    for (int i = 0; i <= db; ++i) bc.push_back(F7->from_index(static_cast<i64>(rng.below(7))));
    FqPoly a = FqPoly::from_coeffs(F7, ac), b = FqPoly::from_coeffs(F7, bc);
    if (b.is_zero()) continue;
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.deg() < b.deg());
  }
}
