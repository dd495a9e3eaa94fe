#include <doctest.h>

#include <functional>

#include "mwcycles/core/rng.hpp"
#include "mwcycles/gw/gw.hpp"

using namespace mw;

namespace {

FqPtr field_of(i64 q) {
  for (i64 p = 2; p <= q; ++p) {
    if (!is_prime_i64(p)) continue;
    i64 n = q;
    int f = 0;
    while (n % p == 0) {
      n /= p;
      ++f;
    }
    if (n == 1) return make_finite_field(p, f);
  }
  throw MwError("NotPrimePower", "not a prime power");
}

// Rank/disc of an explicit diagonal form, computed straight from the
// definition of the discriminant as the square class of the product.
GwFin diag_sum(const FqPtr& F, const std::vector<FFElem>& ds) {
  GwFin acc = gw_zero(F);
  for (const auto& d : ds) acc = acc + gw_diag(d);
  return acc;
}

}  // namespace

TEST_CASE("group structure of GW(F_q) across the required table") {
  for (i64 q : {2, 3, 4, 5, 7, 8, 9, 27}) {
    FqPtr F = field_of(q);
    AbGroup g = gw_group_structure(F);
    if (q % 2 == 0) {
      CHECK(g.free_rank == 1);
      CHECK(g.invariants.empty());
    } else {
      CHECK(g.free_rank == 1);
      CHECK(g.invariants == std::vector<Int>{Int(2)});
    }
  }
}

TEST_CASE("rank and discriminant classify forms: random diagonal forms") {
  Rng rng(11);
  for (i64 q : {3, 5, 9, 27}) {
    FqPtr F = field_of(q);
    for (int iter = 0; iter < 50; ++iter) {
      std::vector<FFElem> ds;
      int n = 1 + static_cast<int>(rng.below(5));
      int chi_sum = 0;
      for (int i = 0; i < n; ++i) {
        FFElem d = F->from_index(static_cast<i64>(1 + rng.below(static_cast<u64>(q - 1))));
        chi_sum += F->chi(d);
        ds.push_back(d);
      }
      GwFin g = diag_sum(F, ds);
      CHECK(g.rank == n);
      CHECK(g.disc == chi_sum % 2);
    }
  }
}

TEST_CASE("product rule matches term-by-term expansion of diagonal forms") {
  Rng rng(12);
  for (i64 q : {3, 5, 9}) {
    FqPtr F = field_of(q);
    for (int iter = 0; iter < 40; ++iter) {
      int n = 1 + static_cast<int>(rng.below(3));
      int m = 1 + static_cast<int>(rng.below(3));
      std::vector<FFElem> da, db;
      for (int i = 0; i < n; ++i)
        da.push_back(F->from_index(static_cast<i64>(1 + rng.below(static_cast<u64>(q - 1)))));
      for (int i = 0; i < m; ++i)
        db.push_back(F->from_index(static_cast<i64>(1 + rng.below(static_cast<u64>(q - 1)))));
      // <a_i> tensor <b_j> = <a_i b_j>
      std::vector<FFElem> prod;
      for (const auto& a : da)
        for (const auto& b : db) prod.push_back(F->mul(a, b));
      CHECK(diag_sum(F, da) * diag_sum(F, db) == diag_sum(F, prod));
    }
  }
}

TEST_CASE("h is absorbing: h * <a> = h") {
  for (i64 q : {3, 5, 7, 9, 2, 4, 8}) {
    FqPtr F = field_of(q);
    GwFin h = gw_hyperbolic(F);
    for (i64 i = 1; i < F->q; ++i) CHECK(h * gw_diag(F->from_index(i)) == h);
  }
}

TEST_CASE("n_eps: multiplicativity (nm)_eps = n_eps m_eps, exhaustively") {
  for (i64 q : {3, 5, 7, 9}) {
    FqPtr F = field_of(q);
    for (long long n = -20; n <= 20; ++n)
      for (long long m = -20; m <= 20; ++m)
        CHECK(n_epsilon(F, n * m) == n_epsilon(F, n) * n_epsilon(F, m));
  }
}

TEST_CASE("n_eps against its defining alternating sum, and absorption") {
  for (i64 q : {3, 5, 9}) {
    FqPtr F = field_of(q);
    GwFin one = gw_one(F), m1 = gw_diag(F->from_int(-1));
    for (long long n = 0; n <= 20; ++n) {
      GwFin acc = gw_zero(F);
      for (long long i = 1; i <= n; ++i) acc = acc + (i % 2 == 1 ? one : m1);
      CHECK(n_epsilon(F, n) == acc);
    }
    // even n: n_eps <a> = n_eps; odd n: <a^n> = <a>
    for (i64 a = 1; a < F->q; ++a) {
      FFElem u = F->from_index(a);
      CHECK(n_epsilon(F, 6) * gw_diag(u) == n_epsilon(F, 6));
      CHECK(gw_diag(F->pow(u, Int(5))) == gw_diag(u));
    }
  }
}

TEST_CASE("n_eps(3) over F_5 is (3, 0)") {
  FqPtr F = field_of(5);
  GwFin g = n_epsilon(F, 3);
  CHECK(g.rank == 3);
  // 2<1> + <-1>: disc = chi(-1) = 0 since -1 = 4 is a square mod 5
  CHECK(g.disc == 0);
}

TEST_CASE("Witt groups follow the classical pattern") {
  // q = 1 mod 4 -> Z/2 + Z/2; q = 3 mod 4 -> Z/4; even q -> Z/2
  for (i64 q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49}) {
    FqPtr F = field_of(q);
    AbGroup w = witt_group(F);
    if (q % 2 == 0) {
      CHECK(w == AbGroup{0, {Int(2)}});
    } else if (q % 4 == 1) {
      CHECK(w == (AbGroup{0, {Int(2), Int(2)}}));
    } else {
      CHECK(w == AbGroup{0, {Int(4)}});
    }
  }
}

TEST_CASE("witt q=5 is Z/2+Z/2, q=3 is Z/4, q=2 is Z/2") {
  CHECK(witt_group(field_of(5)) == (AbGroup{0, {Int(2), Int(2)}}));
  CHECK(witt_group(field_of(3)) == AbGroup{0, {Int(4)}});
  CHECK(witt_group(field_of(2)) == AbGroup{0, {Int(2)}});
}

TEST_CASE("witt_class is additive and kills h") {
  Rng rng(13);
  for (i64 q : {3, 5, 9}) {
    FqPtr F = field_of(q);
    CHECK(witt_class(gw_hyperbolic(F)) == std::pair<int, int>{0, 0});
    for (int iter = 0; iter < 30; ++iter) {
      GwFin x{F, rng.range(-5, 5), static_cast<int>(rng.below(2))};
      GwFin h = gw_hyperbolic(F);
      CHECK(witt_class(x + h) == witt_class(x));
    }
  }
}

TEST_CASE("transfer F_9/F_3 of <1> has Gram diag (2, 1)") {
  FqPtr F3 = make_finite_field(3, 1);
  FqPtr F9 = make_finite_field(3, 2);
  auto e = embed(F3, F9);
  auto diag = transfer_gram_diagonal(*e, F9->one());
  REQUIRE(diag.size() == 2);
  CHECK(diag[0] == F3->from_int(2));
  CHECK(diag[1] == F3->from_int(1));
  GwFin t = gw_transfer(*e, gw_one(F9), TransferMode::Trace);
  CHECK(t.rank == 2);
  CHECK(t.disc == 1);  // disc of <2> + <1> = chi(2) = 1 mod 3
}

TEST_CASE("transfer F_4/F_2 of <1> has rank 2 and Gram [[0,1],[1,1]]") {
  FqPtr F2 = make_finite_field(2, 1);
  FqPtr F4 = make_finite_field(2, 2);
  auto e = embed(F2, F4);
  auto gram = transfer_gram(*e, F4->one());
  CHECK(gram[0][0] == F2->from_int(0));
  CHECK(gram[0][1] == F2->from_int(1));
  CHECK(gram[1][0] == F2->from_int(1));
  CHECK(gram[1][1] == F2->from_int(1));
  GwFin t = gw_transfer(*e, gw_one(F4), TransferMode::Trace);
  CHECK(t.rank == 2);
}

TEST_CASE("pullback F_3 -> F_9 of <2> is <1> (2 becomes a square)") {
  FqPtr F3 = make_finite_field(3, 1);
  FqPtr F9 = make_finite_field(3, 2);
  auto e = embed(F3, F9);
  GwFin x = gw_diag(F3->from_int(2));
  GwFin y = gw_pullback(*e, x);
  CHECK(y.rank == 1);
  CHECK(y.disc == 0);
}

TEST_CASE("transfer oracle: Gram diagonalization preserves rank and disc") {
  // The congruence diagonalization must reproduce the determinant's square
  // class: det(P G P^T) = det(G) * square.
  Rng rng(14);
  for (auto [pp, fs, fd] : {std::tuple<i64, int, int>{3, 1, 2}, {3, 1, 4}, {5, 1, 2}, {3, 2, 4}, {7, 1, 2}}) {
    FqPtr Fs = make_finite_field(pp, fs);
    FqPtr Fd = make_finite_field(pp, fd);
    auto e = embed(Fs, Fd);
    for (int iter = 0; iter < 10; ++iter) {
      FFElem c = Fd->from_index(static_cast<i64>(1 + rng.below(static_cast<u64>(Fd->q - 1))));
      auto gram = transfer_gram(*e, c);
      auto diag = transfer_gram_diagonal(*e, c);
      int m = static_cast<int>(gram.size());
      // determinant of gram by expansion
      std::function<FFElem(std::vector<std::vector<FFElem>>)> det =
          [&](std::vector<std::vector<FFElem>> a) -> FFElem {
        int n = static_cast<int>(a.size());
        if (n == 1) return a[0][0];
        FFElem acc = Fs->zero();
        for (int j = 0; j < n; ++j) {
          if (a[0][static_cast<size_t>(j)].is_zero()) continue;
          std::vector<std::vector<FFElem>> sub;
          for (int i = 1; i < n; ++i) {
            std::vector<FFElem> row;
            for (int k = 0; k < n; ++k)
              if (k != j) row.push_back(a[static_cast<size_t>(i)][static_cast<size_t>(k)]);
            sub.push_back(row);
          }
          FFElem term = Fs->mul(a[0][static_cast<size_t>(j)], det(sub));
          if (j % 2 == 1) term = Fs->neg(term);
          acc = Fs->add(acc, term);
        }
        return acc;
      };
      FFElem dg = det(gram);
      FFElem dd = Fs->one();
      for (const auto& d : diag) dd = Fs->mul(dd, d);
      REQUIRE(static_cast<int>(diag.size()) == m);
      CHECK(Fs->chi(dg) == Fs->chi(dd));
      for (const auto& d : diag) CHECK(!d.is_zero());
    }
  }
}

TEST_CASE("transfer is transitive along towers") {
  FqPtr F3 = make_finite_field(3, 1);
  FqPtr F9 = make_finite_field(3, 2);
  FqPtr F81 = make_finite_field(3, 4);
  auto e39 = embed(F3, F9);
  auto e981 = embed(F9, F81);
  auto e381 = embed(F3, F81);
  Rng rng(15);
  for (int iter = 0; iter < 20; ++iter) {
    GwFin x{F81, rng.range(-4, 4), static_cast<int>(rng.below(2))};
    GwFin two_step = gw_transfer(*e39, gw_transfer(*e981, x, TransferMode::Trace), TransferMode::Trace);
    GwFin one_step = gw_transfer(*e381, x, TransferMode::Trace);
    CHECK(two_step == one_step);
  }
}

TEST_CASE("tensor decomposition of composite extensions") {
  auto d = tensor_decompose(2, 3);
  CHECK(d.copies == 1);
  CHECK(d.lcm_degree == 6);
  d = tensor_decompose(2, 2);
  CHECK(d.copies == 2);
  CHECK(d.lcm_degree == 2);
  d = tensor_decompose(4, 6);
  CHECK(d.copies == 2);
  CHECK(d.lcm_degree == 12);
}
