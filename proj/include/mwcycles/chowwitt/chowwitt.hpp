#pragma once

#include <optional>

#include "mwcycles/cycle/ops.hpp"

namespace mw {

/// One doubling stage of a stabilizing presentation.
struct CwStage {
  Int B;         // prime-norm bound (number rings) or point-degree bound (curves)
  long H = 0;    // element height bound; 0 for curves
  long gens = 0; // rows of the stage presentation
  long rels = 0; // distinct nonzero relation columns
  AbGroup group;
};

/// Consistency flags for the sequence CH1 -> CHW1 -> CH1/2 -> 0 checked on
/// the computed presentation.
struct CwFlags {
  bool surjects_mod2 = false;
  bool hyperbolic_kernel_match = false;
  bool finite = false;

  bool all() const { return surjects_mod2 && hyperbolic_kernel_match && finite; }
};

/// Final-stage presentation. Generators are closed points, one integer rank
/// row each plus one order-2 discriminant row per odd-characteristic point in
/// MW mode; rank rows come first so the torsion rows sit last, as the
/// cokernel routine requires. Columns are the harvested relation vectors.
struct CwPresentation {
  std::vector<PointId> points;
  std::vector<int> rank_row;
  std::vector<int> disc_row;  // -1 when the point has no discriminant row
  IntMatrix full;             // all rows
  IntMatrix rank_only;        // rank rows only, same columns
  std::vector<Int> torsion;   // one 2 per discriminant row
};

struct CwResult {
  AbGroup group;
  bool stable = false;
  std::vector<CwStage> stages;
  std::optional<CwFlags> flags;
  CwPresentation pres;
  CurveModel model;
  Mode mode = Mode::MW;
};

/// Group of zero cycles with quadratic-form coefficients of the ring of
/// integers of Q(sqrt d) (d = 1 degenerates to Z): the cokernel of the total
/// residue map, presented on the primes of norm <= B with relation columns
/// tdiv([z]) for every ring element z of height <= H whose divisor is
/// supported on those primes, plus the class-group relation witnesses.
/// B and H double per stage (B0 = 0, H0 = 0 pick defaults); the result is
/// stable once two consecutive stages are isomorphic, every class-group
/// relation is realized, and both square classes appear among the witness
/// residues at every odd prime of the support. Milnor mode drops the
/// discriminant rows and the square-class condition. Stage group orders must
/// not increase while the generator set is unchanged; a configured stage cap
/// ends the loop with stable = false.
CwResult chow_witt_number_ring(const Int& d, Mode mode = Mode::MW, const Int& B0 = Int(0),
                               long H0 = 0);

/// Verifies, on the final presentation of a MW-mode number-ring result, that
/// the computed group fits the sequence CH1 -> CHW1 -> CH1/2 -> 0: the rank
/// part of every relation lies in the mod-2 lattice (the quotient map is
/// defined and onto), dividing out the hyperbolic columns (rank 2, disc of
/// -1) reproduces CH1/2, and the group is finite. Stores the flags on the
/// result and throws InconsistentWithTheorem if any fails.
CwFlags exact_sequence_check(CwResult& res);

/// Zero-cycle group of the affine or projective line over a finite field:
/// cokernel of the residue differential, presented on the points of degree
/// <= B with relation columns harvested from targeted generic symbols.
/// twist_omega multiplies the point entries by the canonical-bundle unit
/// dictionary. B doubles per stage from B0 (0 picks the default 2).
CwResult chow_witt_curve(const CurveModel& m, Mode mode, bool twist_omega, long B0 = 0);

/// The boundary presentation matrix of a line model in Milnor mode assembled
/// twice: once with the homological sign convention over ascending points,
/// once through the cohomological reindexing of the oriented dictionary (raw
/// eta-commuting residues, complement-degree enumeration mapped back). The
/// oriented equivalence predicts entry-wise equality; callers compare.
/// coeff_degree 1 tabulates residue ranks of the symbols [f]; coeff_degree 2
/// tabulates discrete logarithms of the residue units of the symbols [f][g].
std::pair<IntMatrix, IntMatrix> oriented_duality_matrices(const CurveModel& m, long B,
                                                          int coeff_degree = 1);

}  // namespace mw
