#include "mwcycles/abelian/matrix.hpp"

#include <algorithm>
#include <cstdlib>

namespace mw {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows_in) {
  int r = static_cast<int>(rows_in.size());
  int c = r == 0 ? 0 : static_cast<int>(rows_in[0].size());
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    require(static_cast<int>(rows_in[i].size()) == c, "DimensionMismatch", "ragged row list");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows_in[i][j];
  }
  return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
  require(cols == o.rows, "DimensionMismatch", "matrix product shape");
  IntMatrix r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

namespace {

void swap_rows(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
}

// row a += q * row b
void add_row(IntMatrix& m, int a, int b, const Int& q) {
  if (q == 0) return;
  for (int j = 0; j < m.cols; ++j) m.at(a, j) += q * m.at(b, j);
}

void add_col(IntMatrix& m, int a, int b, const Int& q) {
  if (q == 0) return;
  for (int i = 0; i < m.rows; ++i) m.at(i, a) += q * m.at(i, b);
}

void negate_row(IntMatrix& m, int a) {
  for (int j = 0; j < m.cols; ++j) m.at(a, j) = -m.at(a, j);
}

}  // namespace

SnfResult snf(const IntMatrix& input) {
  SnfResult r{input, IntMatrix::identity(input.rows), IntMatrix::identity(input.cols)};
  IntMatrix& d = r.d;
  int n = std::min(d.rows, d.cols);

  for (int t = 0; t < n; ++t) {
    // Deterministic pivot: smallest nonzero |entry| in the trailing block,
    // ties broken row-major.
    int pi = -1, pj = -1;
    Int best;
    for (int i = t; i < d.rows; ++i)
      for (int j = t; j < d.cols; ++j) {
        if (d.at(i, j) == 0) continue;
        Int a = abs(d.at(i, j));
        if (pi < 0 || a < best) {
          best = a;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing block is zero
    swap_rows(d, t, pi);
    swap_rows(r.u, t, pi);
    swap_cols(d, t, pj);
    swap_cols(r.v, t, pj);

    for (bool settled = false; !settled;) {
      // Euclidean reduction of column t then row t against the pivot.
      bool touched = true;
      while (touched) {
        touched = false;
        for (int i = t + 1; i < d.rows; ++i) {
          if (d.at(i, t) == 0) continue;
          Int q = d.at(i, t) / d.at(t, t);
          add_row(d, i, t, -q);
          add_row(r.u, i, t, -q);
          if (d.at(i, t) != 0) {
            // remainder strictly smaller than the pivot: promote it
            swap_rows(d, t, i);
            swap_rows(r.u, t, i);
            touched = true;
          }
        }
        for (int j = t + 1; j < d.cols; ++j) {
          if (d.at(t, j) == 0) continue;
          Int q = d.at(t, j) / d.at(t, t);
          add_col(d, j, t, -q);
          add_col(r.v, j, t, -q);
          if (d.at(t, j) != 0) {
            swap_cols(d, t, j);
            swap_cols(r.v, t, j);
            touched = true;
          }
        }
      }
      // Pivot must divide every entry of the trailing block for the
      // invariant-factor chain; if not, fold the offending row in and redo.
      settled = true;
      for (int i = t + 1; i < d.rows && settled; ++i)
        for (int j = t + 1; j < d.cols && settled; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            add_row(d, t, i, Int(1));
            add_row(r.u, t, i, Int(1));
            settled = false;
          }
    }
    if (d.at(t, t) < 0) {
      negate_row(d, t);
      negate_row(r.u, t);
    }
  }
  return r;
}

AbGroup normalize_cyclics(const std::vector<Int>& moduli) {
  // Diagonal matrix with the given moduli; its cokernel is the direct sum.
  IntMatrix m(static_cast<int>(moduli.size()), static_cast<int>(moduli.size()));
  for (size_t i = 0; i < moduli.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = moduli[i];
  return cokernel(m);
}

AbGroup cokernel(const IntMatrix& m, const std::vector<Int>& target_torsion) {
  int r_free = m.rows - static_cast<int>(target_torsion.size());
  require(r_free >= 0, "DimensionMismatch", "more torsion moduli than rows");
  // Append one relation column per torsion summand.
  IntMatrix rel(m.rows, m.cols + static_cast<int>(target_torsion.size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) rel.at(i, j) = m.at(i, j);
  for (size_t k = 0; k < target_torsion.size(); ++k)
    rel.at(r_free + static_cast<int>(k), m.cols + static_cast<int>(k)) = target_torsion[k];

  SnfResult s = snf(rel);
  AbGroup g;
  int n = std::min(rel.rows, rel.cols);
  int rank = 0;
  for (int t = 0; t < n; ++t) {
    const Int& dt = s.d.at(t, t);
    if (dt == 0) continue;
    ++rank;
    if (dt > 1) g.invariants.push_back(dt);
  }
  g.free_rank = rel.rows - rank;
  return g;
}

bool iso_eq(const AbGroup& a, const AbGroup& b) { return a == b; }

std::optional<std::vector<Int>> membership(const IntMatrix& l, const std::vector<Int>& v) {
  require(static_cast<int>(v.size()) == l.rows, "DimensionMismatch", "membership vector length");
  SnfResult s = snf(l);
  // l = u^-1 d v^-1, so l x = v  <=>  d (v^-1 x) = u v; solve for z = v^-1 x.
  std::vector<Int> uv(l.rows, Int(0));
  for (int i = 0; i < l.rows; ++i)
    for (int j = 0; j < l.rows; ++j) uv[i] += s.u.at(i, j) * v[j];
  std::vector<Int> z(l.cols, Int(0));
  int n = std::min(l.rows, l.cols);
  for (int i = 0; i < l.rows; ++i) {
    const Int& di = (i < n) ? s.d.at(i, i) : Int(0);
    if (di != 0) {
      if (uv[i] % di != 0) return std::nullopt;
      z[i] = uv[i] / di;
    } else if (uv[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Int> x(l.cols, Int(0));
  for (int i = 0; i < l.cols; ++i)
    for (int j = 0; j < l.cols; ++j) x[i] += s.v.at(i, j) * z[j];
  return x;
}

namespace {

Int det_recursive(const IntMatrix& m, std::vector<int>& cols, int row) {
  if (cols.empty()) return 1;
  Int acc = 0;
  for (size_t k = 0; k < cols.size(); ++k) {
    const Int& a = m.at(row, cols[k]);
    if (a == 0) continue;
    int c = cols[k];
    cols.erase(cols.begin() + static_cast<long>(k));
    Int sub = det_recursive(m, cols, row + 1);
    cols.insert(cols.begin() + static_cast<long>(k), c);
    if (k % 2 == 0)
      acc += a * sub;
    else
      acc -= a * sub;
  }
  return acc;
}

void choose(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Int> invariants_by_minors(const IntMatrix& m) {
  int n = std::min(m.rows, m.cols);
  std::vector<Int> g(static_cast<size_t>(n) + 1, Int(0));
  g[0] = 1;
  for (int k = 1; k <= n; ++k) {
    std::vector<std::vector<int>> rsets, csets;
    std::vector<int> cur;
    choose(m.rows, k, 0, cur, rsets);
    cur.clear();
    choose(m.cols, k, 0, cur, csets);
    Int acc = 0;
    for (const auto& rs : rsets)
      for (const auto& cs : csets) {
        IntMatrix sub(k, k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub.at(i, j) = m.at(rs[i], cs[j]);
        std::vector<int> allc(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) allc[i] = i;
        acc = gcdz(acc, det_recursive(sub, allc, 0));
        // keep scanning; gcd only shrinks
      }
    g[k] = abs(acc);
    if (g[k] == 0) break;  // rank reached
  }
  std::vector<Int> inv;
  for (int k = 1; k <= n; ++k) {
    if (g[k] == 0) break;
    inv.push_back(g[k] / g[k - 1]);
  }
  return inv;
}

}  // namespace mw
