#pragma once

#include "mwcycles/cycle/ops.hpp"

namespace mw {

/// Express a residue-field element as a polynomial over the base field
/// evaluated at the presentation root of the place: the returned g has
/// degree < deg(pl) and satisfies eval_mapped(g, *pl.base_embed, pl.theta)
/// == w. This is the slot-lifting step of the homotopy-invariance witness.
FqPoly lift_residue_poly(const FqPtr& F, const FuncPlace& pl, const FFElem& w);

/// Constructive surjectivity of the differential on the affine line: returns
/// a function-field symbol alpha with differential(alpha) == target.
///
/// The witness is built by degree descent: the highest-degree residual point
/// x is cleared with symbols supported on f_x (rank and discriminant parts in
/// coefficient degree 0, a lifted unit slot in degree 1); the recipe only
/// disturbs points of strictly smaller degree, so the loop terminates.
/// Coefficient degrees >= 2 carry no nonzero canonical values, and the
/// clearing recipes below cover coefficient degrees 0 and 1 only, so targets
/// must sit in coefficient degree >= 0.
///
/// Throws NoPreimageFound only on internal failure (the construction is
/// total on its domain), and UnsupportedMorphism when the support exceeds
/// degree_bound or the coefficient degree is negative.
KmwRf h_preimage(const Cycle& target, int degree_bound);

}  // namespace mw
