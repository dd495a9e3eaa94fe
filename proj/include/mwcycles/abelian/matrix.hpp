#pragma once

#include <optional>
#include <vector>

#include "mwcycles/core/ints.hpp"

namespace mw {

/// Dense integer matrix with arbitrary-precision entries, row-major.
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<Int> e;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), e(static_cast<size_t>(r) * c, Int(0)) {}

  Int& at(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return e[static_cast<size_t>(i) * cols + j]; }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows_in);

  IntMatrix mul(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && e == o.e; }
};

/// Smith normal form: u * m * v = d with u, v unimodular and d diagonal with
/// d_1 | d_2 | ... | d_r, all nonnegative.
struct SnfResult {
  IntMatrix d, u, v;
};

SnfResult snf(const IntMatrix& m);

/// Finitely generated abelian group in canonical form: free rank plus a
/// divisibility chain of invariant factors (each > 1).
struct AbGroup {
  long free_rank = 0;
  std::vector<Int> invariants;

  bool operator==(const AbGroup& o) const {
    return free_rank == o.free_rank && invariants == o.invariants;
  }
  /// Order as an integer; 0 means infinite.
  Int order() const {
    if (free_rank > 0) return 0;
    Int n = 1;
    for (const auto& d : invariants) n *= d;
    return n;
  }
};

/// Canonical form of a direct sum of cyclic groups handed in as a raw list of
/// moduli (0 = infinite cyclic). Renormalizes to a divisibility chain.
AbGroup normalize_cyclics(const std::vector<Int>& moduli);

/// Cokernel of the map given by the columns of m into Z^r (+) Z/m_1 (+) ... ,
/// where r + #target_torsion == m.rows and the last #target_torsion rows of m
/// are coordinates in the torsion summands.
AbGroup cokernel(const IntMatrix& m, const std::vector<Int>& target_torsion = {});

bool iso_eq(const AbGroup& a, const AbGroup& b);

/// Solve L x = v over the integers (columns of L generate the sublattice).
/// Returns the coefficient vector, or nullopt if v is not in the column span.
std::optional<std::vector<Int>> membership(const IntMatrix& l, const std::vector<Int>& v);

/// Independent characterization of the invariant factors via gcds of k x k
/// minors; exponential in size, intended for cross-checking snf on small input.
std::vector<Int> invariants_by_minors(const IntMatrix& m);

}  // namespace mw
