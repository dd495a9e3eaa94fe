#pragma once

#include <memory>

#include "mwcycles/kmw/canonical.hpp"
#include "mwcycles/kmw/contexts.hpp"
#include "mwcycles/kmw/engine.hpp"

namespace mw {

/// Finite place of Q: the p-adic valuation, residue field F_p.
struct RatPlace {
  Int p;
  FqPtr kappa;

  static RatPlace at(const Int& p);

  long val(const Rat& x) const;
  std::pair<long, Rat> split(const Rat& x) const;  // x = p^n w
  FFElem reduce_unit(const Rat& w) const;
  FFElem residue_class(const Rat& x) const { return reduce_unit(split(x).second); }
  Rat pi_elem() const { return Rat(p); }
};

/// Place of F_q(t): either a monic irreducible polynomial or the point at
/// infinity with uniformizer 1/t. The residue field comes with the canonical
/// embedding of the base and a chosen root of the defining polynomial. The
/// uniformizer is stored explicitly so tests can override it.
struct FuncPlace {
  FqPtr F;
  bool at_infinity = false;
  FqPoly g;  // monic irreducible; unused at infinity
  RatFunc pi;

  FqPtr kappa;
  std::shared_ptr<const FqEmbedding> base_embed;  // F -> kappa
  FFElem theta;                                   // root of g in kappa (finite places)

  static FuncPlace finite(const FqPoly& g_monic_irreducible);
  static FuncPlace infinity(const FqPtr& F);
  /// Same place, different uniformizer; u must have valuation 1 here.
  FuncPlace with_uniformizer(const RatFunc& u) const;

  long val(const RatFunc& x) const;
  std::pair<long, RatFunc> split(const RatFunc& x) const;
  FFElem reduce_unit(const RatFunc& w) const;
  RatFunc pi_elem() const { return pi; }

  /// Derivative of the defining polynomial at theta (finite places).
  FFElem fprime_theta() const;
  int degree() const { return at_infinity ? 1 : g.deg(); }
};

// ----- residues and related maps -----

template <class Place, class Ctx>
ThetaParts<FFCtx> theta_at(const Place& pl, const Kmw<Ctx>& x) {
  FFCtx out{pl.kappa};
  return theta_eval(x, out, [&](const typename Ctx::Elem& u) {
    auto [n, w] = pl.split(u);
    return std::pair<long, FFElem>(n, pl.reduce_unit(w));
  });
}

/// Residue (second residue map) at a place, with the homological sign by
/// default. Defined in every degree: below degree one the target groups are
/// the Witt groups of the residue field, and the complexes continue there.
template <class Place, class Ctx>
KmwFF residue_at(const Place& pl, const Kmw<Ctx>& x,
                 ResidueSign sign = ResidueSign::Homological) {
  auto parts = theta_at(pl, x);
  return apply_residue_sign(parts.d, x.degree, sign);
}

/// Specialization (first residue map) at a place: needs a class with no pole
/// or zero interaction, i.e. the d component must vanish for the value to be
/// independent of the uniformizer; here it is returned unconditionally for
/// engine-internal use.
template <class Place, class Ctx>
KmwFF specialize_at(const Place& pl, const Kmw<Ctx>& x) {
  return theta_at(pl, x).s;
}

/// Rewrite x as y0 + [pi] y1 with all slots of y0, y1 units at the place.
/// Returned as a single element; the [pi]-part carries pi as its first slot.
template <class Place, class Ctx>
Kmw<Ctx> normalize_at(const Place& pl, const Kmw<Ctx>& x) {
  auto split_keep = [&](const typename Ctx::Elem& u) {
    auto [n, w] = pl.split(u);
    return std::pair<long, typename Ctx::Elem>(n, w);
  };
  ThetaParts<Ctx> parts = theta_eval(x, x.ctx, split_keep);
  Kmw<Ctx> pi_sym = kmw_symbol(x.ctx, {pl.pi_elem()});
  return parts.s + pi_sym * parts.d;
}

KmwCanon residue_canonical_q(const RatPlace& pl, const KmwQ& x, Mode mode = Mode::MW);
KmwCanon residue_canonical_t(const FuncPlace& pl, const KmwRf& x, Mode mode = Mode::MW);

}  // namespace mw
