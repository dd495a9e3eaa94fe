#include <doctest.h>

#include "mwcycles/abelian/matrix.hpp"
#include "mwcycles/core/rng.hpp"

using namespace mw;

namespace {

IntMatrix random_matrix(Rng& rng, int maxdim, long lo, long hi) {
  int r = static_cast<int>(rng.range(1, maxdim));
  int c = static_cast<int>(rng.range(1, maxdim));
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = Int(rng.range(lo, hi));
  return m;
}

bool is_diagonal_chain(const IntMatrix& d) {
  for (int i = 0; i < d.rows; ++i)
    for (int j = 0; j < d.cols; ++j)
      if (i != j && d.at(i, j) != 0) return false;
  int n = std::min(d.rows, d.cols);
  for (int i = 0; i + 1 < n; ++i) {
    if (d.at(i, i) < 0) return false;
    if (d.at(i + 1, i + 1) != 0 && d.at(i, i) != 0 && d.at(i + 1, i + 1) % d.at(i, i) != 0)
      return false;
    if (d.at(i, i) == 0 && d.at(i + 1, i + 1) != 0) return false;
  }
  return true;
}

Int det_slow(const IntMatrix& m) {
  // expansion by first row; oracle-only
  if (m.rows == 1) return m.at(0, 0);
  Int acc = 0;
  for (int j = 0; j < m.cols; ++j) {
    if (m.at(0, j) == 0) continue;
    IntMatrix sub(m.rows - 1, m.cols - 1);
    for (int i = 1; i < m.rows; ++i) {
      int cc = 0;
      for (int k = 0; k < m.cols; ++k) {
        if (k == j) continue;
        sub.at(i - 1, cc++) = m.at(i, k);
      }
    }
    Int term = m.at(0, j) * det_slow(sub);
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

}  // namespace

TEST_CASE("snf transforms are unimodular and reproduce d") {
  Rng rng(20240811);
  for (int iter = 0; iter < 200; ++iter) {
    IntMatrix m = random_matrix(rng, 4, -10, 10);
    SnfResult s = snf(m);
    CHECK(is_diagonal_chain(s.d));
    IntMatrix umv = s.u.mul(m).mul(s.v);
    CHECK(umv == s.d);
    Int du = det_slow(s.u), dv = det_slow(s.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
  }
}

TEST_CASE("snf invariant factors match the gcd-of-minors characterization") {
  Rng rng(987654321);
  for (int iter = 0; iter < 150; ++iter) {
    IntMatrix m = random_matrix(rng, 4, -10, 10);
    SnfResult s = snf(m);
    std::vector<Int> from_snf;
    int n = std::min(m.rows, m.cols);
    for (int i = 0; i < n; ++i)
      if (s.d.at(i, i) != 0) from_snf.push_back(s.d.at(i, i));
    CHECK(from_snf == invariants_by_minors(m));
  }
}

TEST_CASE("snf of [[2,4],[0,6]] is diag(2,6)") {
  IntMatrix m = IntMatrix::from_rows({{2, 4}, {0, 6}});
  SnfResult s = snf(m);
  CHECK(s.d.at(0, 0) == 2);
  CHECK(s.d.at(1, 1) == 6);
  CHECK(s.d.at(0, 1) == 0);
  CHECK(s.d.at(1, 0) == 0);
}

TEST_CASE("cokernel with torsion target: (2,1) into Z + Z/2 gives Z/4") {
  IntMatrix m(2, 1);
  m.at(0, 0) = 2;
  m.at(1, 0) = 1;
  AbGroup g = cokernel(m, {Int(2)});
  CHECK(g.free_rank == 0);
  CHECK(g.invariants == std::vector<Int>{Int(4)});
}

TEST_CASE("membership certificate: 1 in the span of columns 2 and 3") {
  IntMatrix l(1, 2);
  l.at(0, 0) = 2;
  l.at(0, 1) = 3;
  auto x = membership(l, {Int(1)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] * 2 + (*x)[1] * 3 == 1);
  CHECK((*x) == std::vector<Int>{Int(-1), Int(1)});
}

TEST_CASE("membership detects non-members") {
  IntMatrix l(2, 1);
  l.at(0, 0) = 2;
  l.at(1, 0) = 4;
  CHECK(!membership(l, {Int(1), Int(2)}).has_value());
  CHECK(!membership(l, {Int(3), Int(6)}).has_value());  // 1.5x the generator
  CHECK(membership(l, {Int(6), Int(12)}).has_value());
}

TEST_CASE("membership solutions verify over random lattices") {
  Rng rng(5150);
  int solved = 0;
  for (int iter = 0; iter < 200; ++iter) {
    IntMatrix l = random_matrix(rng, 4, -8, 8);
    std::vector<Int> v(static_cast<size_t>(l.rows));
    for (auto& x : v) x = Int(rng.range(-20, 20));
    auto sol = membership(l, v);
    if (!sol.has_value()) continue;
    ++solved;
    for (int i = 0; i < l.rows; ++i) {
      Int acc = 0;
      for (int j = 0; j < l.cols; ++j) acc += l.at(i, j) * (*sol)[static_cast<size_t>(j)];
      CHECK(acc == v[static_cast<size_t>(i)]);
    }
  }
  CHECK(solved > 10);  // the sample is not degenerate
}

TEST_CASE("normalize_cyclics renormalizes to a divisibility chain") {
  AbGroup g = normalize_cyclics({Int(3), Int(4)});
  CHECK(g.free_rank == 0);
  CHECK(g.invariants == std::vector<Int>{Int(12)});
  AbGroup h = normalize_cyclics({Int(2), Int(2), Int(0)});
  CHECK(h.free_rank == 1);
  CHECK(h.invariants == std::vector<Int>{Int(2), Int(2)});
}

TEST_CASE("cokernel of a full-rank square map is the product of invariants") {
  Rng rng(777);
  for (int iter = 0; iter < 100; ++iter) {
    IntMatrix m = random_matrix(rng, 3, -6, 6);
    if (m.rows != m.cols) continue;
    Int d = det_slow(m);
    if (d == 0) continue;
    AbGroup g = cokernel(m);
    CHECK(g.free_rank == 0);
    CHECK(g.order() == abs(d));
  }
}
