#pragma once

#include <functional>
#include <utility>

#include "mwcycles/kmw/kmw.hpp"

namespace mw {

/// Two-component state for evaluating symbols against a discrete valuation:
/// an element s + xi*d of the extended algebra where xi is a formal
/// degree-(+1) class with xi^2 = xi*[-1] and a*xi = xi*eps^{deg a}*a. The
/// d component is the (eta-commuting) residue, the s component the
/// specialization. Working in this algebra sidesteps the non-terminating
/// rewriting that moving the uniformizer through symbols slot by slot causes.
template <class Ctx>
struct ThetaParts {
  Kmw<Ctx> s, d;
};

namespace detail {

template <class Ctx>
ThetaParts<Ctx> theta_mul(const Ctx& ctx, const ThetaParts<Ctx>& a, const ThetaParts<Ctx>& b) {
  // (s1 + xi d1)(s2 + xi d2)
  //   = s1 s2 + xi (eps^{|s1|} s1 d2 + d1 s2 + [-1] eps^{|d1|} d1 d2)
  ThetaParts<Ctx> r{kmw_zero(ctx, a.s.degree + b.s.degree),
                    kmw_zero(ctx, a.s.degree + b.s.degree - 1)};
  r.s = a.s * b.s;
  Kmw<Ctx> term1 = eps_pow_mul(a.s, a.s.degree) * b.d;
  Kmw<Ctx> term2 = a.d * b.s;
  Kmw<Ctx> term3 = kmw_symbol(ctx, {ctx.minus_one()}) * eps_pow_mul(a.d, a.d.degree) * b.d;
  r.d = term1 + term2 + term3;
  return r;
}

}  // namespace detail

/// Evaluate every symbol slot through a valuation split. split(u) must return
/// (n, w) with u = pi^n w and w a unit at the place, w expressed in the output
/// coefficient domain. Terms are processed left to right; eta powers and
/// integer coefficients are applied at the end, which keeps intermediate
/// degrees nonnegative.
///
/// For a degree-n input the s component is the specialization (degree n) and
/// the d component the eta-commuting residue (degree n-1).
template <class CtxIn, class CtxOut, class SplitFn>
ThetaParts<CtxOut> theta_eval(const Kmw<CtxIn>& x, const CtxOut& out, SplitFn split) {
  ThetaParts<CtxOut> acc{kmw_zero(out, x.degree), kmw_zero(out, x.degree - 1)};
  for (const auto& t : x.terms) {
    // start from the multiplicative unit 1 + xi*0
    ThetaParts<CtxOut> prod{kmw_const(out, 1), kmw_zero(out, -1)};
    for (const auto& u : t.sym) {
      auto [n, w] = split(u);
      ThetaParts<CtxOut> slot{kmw_zero(out, 1), kmw_n_eps_diag(out, n, w)};
      if (!out.is_one(w)) slot.s = kmw_symbol(out, {w});
      prod = detail::theta_mul(out, prod, slot);
    }
    Kmw<CtxOut> s_part = kmw_scale(t.coeff, eta_mul(prod.s, t.eta));
    Kmw<CtxOut> d_part = kmw_scale(t.coeff, eta_mul(prod.d, t.eta));
    acc.s = acc.s + s_part;
    acc.d = acc.d + d_part;
  }
  return acc;
}

/// Residue sign convention. EtaCommuting is the raw d component (commutes
/// with eta on the nose); Homological twists by <-1>^{n-1} on degree-n input,
/// the convention under which multiplication by a unit [u] of the base
/// anticommutes with the differential. Over finite residue fields the two
/// agree in canonical form.
enum class ResidueSign { EtaCommuting, Homological };

template <class Ctx>
Kmw<Ctx> apply_residue_sign(const Kmw<Ctx>& d, int input_degree, ResidueSign sign) {
  if (sign == ResidueSign::EtaCommuting) return d;
  int k = input_degree - 1;
  if (((k % 2) + 2) % 2 == 0) return d;
  // multiply by <-1> = 1 + eta[-1]
  return d + eta_mul(kmw_symbol(d.ctx, {d.ctx.minus_one()}) * d, 1);
}

}  // namespace mw
