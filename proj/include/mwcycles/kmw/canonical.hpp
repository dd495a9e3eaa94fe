#pragma once

#include "mwcycles/gw/gw.hpp"
#include "mwcycles/kmw/contexts.hpp"

namespace mw {

enum class Mode { MW, Milnor };

/// Decision form for a Milnor-Witt symbol over a finite field. The groups are
/// small in every degree:
///   n <= -1 : isomorphic to the Witt group, coordinates (rank, disc) mod h;
///   n == 0  : GW(F_q), canonical (rank, disc);
///   n == 1  : isomorphic to F_q^x via the product of eta-free slots;
///   n >= 2  : zero.
/// In Milnor mode eta is killed: degree 0 becomes rank only, degree 1 the
/// same unit, negative degrees vanish.
struct KmwCanon {
  FqPtr F;
  Mode mode = Mode::MW;
  int degree = 0;
  // degree 0 payload
  GwFin gw;
  // degree 1 payload
  FFElem unit;
  // negative degree payload (Witt coordinates)
  int w_rank = 0, w_disc = 0;

  bool is_zero() const;
  bool operator==(const KmwCanon& o) const;
  bool operator!=(const KmwCanon& o) const { return !(*this == o); }
  std::string to_string() const;
};

KmwCanon kmw_canonical(const KmwFF& x, Mode mode = Mode::MW);

KmwCanon canon_zero(const FqPtr& F, int degree, Mode mode = Mode::MW);
KmwCanon canon_of_gw(const GwFin& x, Mode mode = Mode::MW);
KmwCanon canon_of_unit(const FFElem& u, Mode mode = Mode::MW);

KmwCanon canon_add(const KmwCanon& a, const KmwCanon& b);
KmwCanon canon_neg(const KmwCanon& a);
/// Multiply by a degree-0 class <a>.
KmwCanon canon_mul_diag(const KmwCanon& x, const FFElem& a);
/// Multiply by the hyperbolic-trace of n, i.e. the integer n acting.
KmwCanon canon_scale(long long n, const KmwCanon& x);

/// Transfer along the canonical embedding: Scharlau form in degree 0
/// (trace or geometric convention), field norm in degree 1, zero above.
KmwCanon canon_transfer(const FqEmbedding& e, const KmwCanon& x, TransferMode tmode);

/// Scalar extension along the canonical embedding.
KmwCanon canon_pullback(const FqEmbedding& e, const KmwCanon& x);

/// Turn a canonical class back into a formal symbol expression.
KmwFF canon_to_kmw(const KmwCanon& x);

}  // namespace mw
