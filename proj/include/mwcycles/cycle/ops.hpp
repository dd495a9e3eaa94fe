#pragma once

#include "mwcycles/cycle/cycle.hpp"

namespace mw {

/// The Rost-Schmid differential: residues at every closed point of the model
/// in the certified support of the degree-(n >= 1) symbol. With
/// twist_omega the entry at a finite line point x is multiplied by the unit
/// <f_x'(theta_x)> and the entry at infinity by <-1> (the omega
/// trivialization dictionary).
Cycle differential(const CurveModel& m, const KmwRf& a, Mode mode = Mode::MW,
                   bool twist_omega = false);
Cycle differential(const CurveModel& m, const KmwQuad& a, Mode mode = Mode::MW);
Cycle differential(const CurveModel& m, const KmwQ& a, Mode mode = Mode::MW);
/// Dispatch on the dim-1 cycle's generic entry.
Cycle differential(const Cycle& c);

/// tdiv: the number-ring divisor with quadratic weights of a degree-1
/// element; the d = 1 degenerate case (K = Q, model Spec Z) is dispatched by
/// the KmwQ overload of differential. Entries are GW classes over the
/// residue fields; rank-only at residue characteristic 2.
Cycle tdiv(const QfPtr& K, const KmwQuad& a, Mode mode = Mode::MW);
Cycle tdiv_q(const KmwQ& a, Mode mode = Mode::MW);

/// Pushforward along the structure map of a line to its base point:
/// componentwise geometric transfer to GW-coefficients over F; a dim-1
/// (generic) cycle pushes to 0. Returns the single entry over F.
KmwCanon pushforward_to_base(const Cycle& c);

/// Pushforward along the inclusion of a closed point: the class v over
/// kappa(x) placed at x.
Cycle pushforward_point(const CurveModel& m, const PointId& x, const KmwCanon& v);

/// Pullback g~! along the structure map of a line: a class over F viewed as
/// a constant symbol over F(t) (a dim-1 cycle).
Cycle pullback_to_line(const CurveModel& m, const KmwCanon& v);

/// Base extension SpecField(F) -> SpecField(F_{q^m}).
KmwCanon base_extend_field(const KmwCanon& v, const FqPtr& Fbig);

/// Base extension of a line model along F -> Fbig, on dim-0 cycles: each
/// point splits into the irreducible factors of its polynomial over Fbig,
/// with theta-compatible transport and the comparison unit <c_w> given by
/// the cofactor of the chosen factor (so that transfers base-change on the
/// nose). dim-1 cycles map by coefficient extension of the symbol.
Cycle base_extend_line(const Cycle& c, const FqPtr& Fbig);

/// Multiplication with a global unit: componentwise [u-bar(x)] * entry
/// (degree +1). Lines: u must be a nonzero constant; SpecOK: a unit of O_K.
Cycle mult_unit_ff(const Cycle& c, const FFElem& u);
Cycle mult_unit_quad(const Cycle& c, const QElem& u);
/// Multiplication with a degree-0 unit class <a> (no degree shift).
Cycle mult_diag_ff(const Cycle& c, const FFElem& a);

/// Multiplication with eta (degree -1); the zero map in Milnor mode.
Cycle mult_eta(const Cycle& c);

/// Boundary map of the triple (V(t) inside the affine line, its open
/// complement): residue at the origin of the generic entry. A dim-0 input
/// must be supported away from V(t) (error SupportMeetsZ) and maps to zero.
KmwCanon boundary_triple(const Cycle& c);

/// Reciprocity sum over ProjLine: Sum_x tau_x(omega-twisted residue at x),
/// where the twist unit is f_x'(theta_x) at finite x and -1 at infinity, and
/// tau_x is the trace-form transfer to GW(F). Zero for every alpha.
KmwCanon reciprocity_sum(const CurveModel& m, const KmwRf& a, Mode mode = Mode::MW);

}  // namespace mw
