#include "mwcycles/cycle/ops.hpp"

namespace mw {

namespace {

/// gamma_[w] on a canonical class: left multiplication by the symbol [w].
KmwCanon canon_mul_symbol(const FFElem& w, const KmwCanon& v) {
  KmwFF f = canon_to_kmw(v);
  FFCtx ctx{v.F};
  return kmw_canonical(kmw_symbol(ctx, {w}) * f, v.mode);
}

/// gamma_eta on a canonical class.
KmwCanon canon_mul_eta(const KmwCanon& v) {
  return kmw_canonical(eta_mul(canon_to_kmw(v), 1), v.mode);
}

}  // namespace

// ----- differential -----

Cycle differential(const CurveModel& m, const KmwRf& a, Mode mode, bool twist_omega) {
  require(m.is_line(), "UnsupportedMorphism", "function-field symbols live on line models");
  require(a.ctx.F == m.F, "FieldMismatch", "symbol over the wrong base field");
  Cycle c = cycle_zero(m, a.degree - 1, mode);
  c.twist_omega = twist_omega;
  for (const auto& g : support_polys(a)) {
    FuncPlace pl = FuncPlace::finite(g);
    KmwCanon v = kmw_canonical(residue_at(pl, a), mode);
    if (twist_omega) v = canon_mul_diag(v, pl.fprime_theta());
    if (!v.is_zero()) c.entries.emplace(PointId::finite(g), v);
  }
  if (m.kind == ModelKind::ProjLine && supports_infinity(a)) {
    FuncPlace pl = FuncPlace::infinity(m.F);
    KmwCanon v = kmw_canonical(residue_at(pl, a), mode);
    if (twist_omega) v = canon_mul_diag(v, m.F->from_int(-1));
    if (!v.is_zero()) c.entries.emplace(PointId::infinity(), v);
  }
  return c;
}

Cycle differential(const CurveModel& m, const KmwQuad& a, Mode mode) {
  require(m.kind == ModelKind::SpecOK, "UnsupportedMorphism",
          "number-field symbols live on SpecOK models");
  require(a.ctx.K == m.K, "FieldMismatch", "symbol over the wrong number field");
  Cycle c = cycle_zero(m, a.degree - 1, mode);
  for (const auto& pr : support_primes(m.K, a)) {
    QuadPlace pl = QuadPlace::of(pr);
    KmwCanon v = residue_canonical_k(pl, a, mode);
    if (!v.is_zero()) c.entries.emplace(PointId::prime(pr), v);
  }
  return c;
}

Cycle differential(const CurveModel& m, const KmwQ& a, Mode mode) {
  require(m.kind == ModelKind::SpecZ, "UnsupportedMorphism", "rational symbols live on Spec Z");
  Cycle c = cycle_zero(m, a.degree - 1, mode);
  for (const auto& p : support_primes_q(a)) {
    RatPlace pl = RatPlace::at(p);
    KmwCanon v = residue_canonical_q(pl, a, mode);
    if (!v.is_zero()) c.entries.emplace(PointId::rational_prime(p), v);
  }
  return c;
}

Cycle differential(const Cycle& c) {
  require(c.dim == 1, "DimensionMismatch", "the differential consumes dim-1 cycles");
  if (c.generic_rf) return differential(c.model, *c.generic_rf, c.mode, c.twist_omega);
  if (c.generic_k) return differential(c.model, *c.generic_k, c.mode);
  if (c.generic_q) return differential(c.model, *c.generic_q, c.mode);
  return cycle_zero(c.model, c.coeff_degree - 1, c.mode);
}

Cycle tdiv(const QfPtr& K, const KmwQuad& a, Mode mode) {
  require(a.degree == 1, "DimensionMismatch", "tdiv consumes degree-1 elements");
  return differential(CurveModel::spec_ok(K->d), a, mode);
}

Cycle tdiv_q(const KmwQ& a, Mode mode) {
  require(a.degree == 1, "DimensionMismatch", "tdiv consumes degree-1 elements");
  return differential(CurveModel::spec_z(), a, mode);
}

// ----- pushforward -----

KmwCanon pushforward_to_base(const Cycle& c) {
  require(c.model.is_line(), "UnsupportedMorphism",
          "pushforward to the base is defined for line models");
  const FqPtr& F = c.model.F;
  KmwCanon acc = canon_zero(F, c.coeff_degree, c.mode);
  if (c.dim == 1) return acc;  // generic entries push to zero
  for (const auto& [x, v] : c.entries) {
    auto e = embed(F, v.F);
    acc = canon_add(acc, canon_transfer(*e, v, TransferMode::Geometric));
  }
  return acc;
}

Cycle pushforward_point(const CurveModel& m, const PointId& x, const KmwCanon& v) {
  return cycle_point(m, x, v);
}

// ----- pullback -----

Cycle pullback_to_line(const CurveModel& m, const KmwCanon& v) {
  require(m.is_line(), "UnsupportedMorphism", "pullback to a line model expected");
  require(v.F == m.F, "FieldMismatch", "class over the wrong base field");
  KmwFF f = canon_to_kmw(v);
  RfCtx ctx{m.F};
  KmwRf g = kmw_zero(ctx, f.degree);
  for (const auto& t : f.terms) {
    KmwTerm<RfCtx> nt{t.coeff, t.eta, {}};
    for (const auto& u : t.sym) nt.sym.push_back(RatFunc::of_poly(FqPoly::constant(u)));
    g.terms.push_back(std::move(nt));
  }
  kmw_compress(g);
  Cycle c = cycle_generic(m, g, v.mode);
  c.coeff_degree = v.degree;
  return c;
}

KmwCanon base_extend_field(const KmwCanon& v, const FqPtr& Fbig) {
  auto e = embed(v.F, Fbig);
  return canon_pullback(*e, v);
}

Cycle base_extend_line(const Cycle& c, const FqPtr& Fbig) {
  require(c.model.is_line(), "UnsupportedMorphism", "line model expected");
  const FqPtr& F = c.model.F;
  CurveModel mb = c.model.kind == ModelKind::AffineLine ? CurveModel::affine_line(Fbig)
                                                        : CurveModel::proj_line(Fbig);
  auto eF = embed(F, Fbig);
  if (c.dim == 1) {
    RfCtx ctx{Fbig};
    KmwRf g = kmw_zero(ctx, c.generic_rf->degree);
    for (const auto& t : c.generic_rf->terms) {
      KmwTerm<RfCtx> nt{t.coeff, t.eta, {}};
      for (const auto& u : t.sym)
        nt.sym.push_back(RatFunc::of(map_poly(u.num, *eF), map_poly(u.den, *eF)));
      g.terms.push_back(std::move(nt));
    }
    kmw_compress(g);
    Cycle r = cycle_generic(mb, g, c.mode);
    r.coeff_degree = c.coeff_degree;
    r.twist_omega = c.twist_omega;
    return r;
  }

  Cycle r = cycle_zero(mb, c.coeff_degree, c.mode);
  for (const auto& [x, v] : c.entries) {
    if (x.kind == PointId::Kind::Infinity) {
      cycle_add_entry(r, PointId::infinity(), canon_pullback(*embed(v.F, Fbig), v));
      continue;
    }
    FuncPlace pl_from = FuncPlace::finite(x.poly);
    FFElem base_from = pl_from.base_embed->apply(F->gen());
    FqPoly fbig = map_poly(x.poly, *eF);
    auto fact = factor(fbig);
    for (const auto& [fi, ei] : fact.factors) {
      require(ei == 1, "InternalError", "inseparable factor in a finite-field base change");
      FuncPlace pl_to = FuncPlace::finite(fi);
      FFElem base_to = pl_to.base_embed->apply(eF->apply(F->gen()));
      FqHom h = theta_compatible_hom(F, pl_from.kappa, base_from, pl_from.theta, pl_to.kappa,
                                     base_to, pl_to.theta);
      KmwCanon w = canon_map(v, pl_to.kappa,
                             [&](const FFElem& u) { return h.apply(u); });
      // Comparison unit: the cofactor of f_i at theta_i, so that geometric
      // transfers commute with base change on the nose.
      FFElem cof = pl_to.kappa->one();
      for (const auto& [fj, ej] : fact.factors) {
        if (fj == fi) continue;
        FFElem val = eval_mapped(fj, *pl_to.base_embed, pl_to.theta);
        for (int k = 0; k < ej; ++k) cof = pl_to.kappa->mul(cof, val);
      }
      w = canon_mul_diag(w, cof);
      cycle_add_entry(r, PointId::finite(fi), w);
    }
  }
  return r;
}

// ----- multiplication with units and eta -----

Cycle mult_unit_ff(const Cycle& c, const FFElem& u) {
  require(c.model.is_line() || c.model.kind == ModelKind::SpecField, "UnsupportedMorphism",
          "constant units act on line and point models");
  require(u.F == c.model.F, "FieldMismatch", "unit over the wrong base field");
  require(!u.is_zero(), "NotGlobalUnit", "0 is not a unit");
  if (c.dim == 1) {
    RfCtx ctx{c.model.F};
    KmwRf sym = kmw_symbol(ctx, {RatFunc::of_poly(FqPoly::constant(u))});
    Cycle r = c;
    r.generic_rf = sym * *c.generic_rf;
    r.coeff_degree = c.coeff_degree + 1;
    return r;
  }
  Cycle r = cycle_zero(c.model, c.coeff_degree + 1, c.mode);
  r.twist_omega = c.twist_omega;
  for (const auto& [x, v] : c.entries) {
    ClosedPoint cp = resolve_point(c.model, x);
    FFElem ubar = cp.place ? cp.place->base_embed->apply(u) : u;
    cycle_add_entry(r, x, canon_mul_symbol(ubar, v));
  }
  return r;
}

Cycle mult_unit_quad(const Cycle& c, const QElem& u) {
  require(c.model.kind == ModelKind::SpecOK, "UnsupportedMorphism",
          "number-ring units act on SpecOK models");
  require(u.K == c.model.K, "FieldMismatch", "unit over the wrong number field");
  Rat n = q_norm(u);
  require(u.is_integral() && (n == 1 || n == -1), "NotGlobalUnit",
          "not a unit of the ring of integers: " + q_to_string(u));
  if (c.dim == 1) {
    QuadCtx ctx{c.model.K};
    Cycle r = c;
    r.generic_k = kmw_symbol(ctx, {u}) * *c.generic_k;
    r.coeff_degree = c.coeff_degree + 1;
    return r;
  }
  Cycle r = cycle_zero(c.model, c.coeff_degree + 1, c.mode);
  for (const auto& [x, v] : c.entries) {
    ClosedPoint cp = resolve_point(c.model, x);
    FFElem ubar = q_reduce_unit(cp.qplace->pr, u);
    cycle_add_entry(r, x, canon_mul_symbol(ubar, v));
  }
  return r;
}

Cycle mult_diag_ff(const Cycle& c, const FFElem& a) {
  require(c.model.is_line(), "UnsupportedMorphism", "constant units act on line models");
  require(a.F == c.model.F, "FieldMismatch", "unit over the wrong base field");
  require(!a.is_zero(), "NotGlobalUnit", "0 is not a unit");
  if (c.dim == 1) {
    RfCtx ctx{c.model.F};
    Cycle r = c;
    r.generic_rf = kmw_diag(ctx, RatFunc::of_poly(FqPoly::constant(a))) * *c.generic_rf;
    return r;
  }
  Cycle r = cycle_zero(c.model, c.coeff_degree, c.mode);
  r.twist_omega = c.twist_omega;
  for (const auto& [x, v] : c.entries) {
    ClosedPoint cp = resolve_point(c.model, x);
    FFElem abar = cp.place ? cp.place->base_embed->apply(a) : a;
    cycle_add_entry(r, x, canon_mul_diag(v, abar));
  }
  return r;
}

Cycle mult_eta(const Cycle& c) {
  Cycle r = c;
  r.coeff_degree = c.coeff_degree - 1;
  if (c.dim == 1) {
    if (c.mode == Mode::Milnor) {
      if (r.generic_rf) r.generic_rf = kmw_zero(r.generic_rf->ctx, r.coeff_degree);
      if (r.generic_k) r.generic_k = kmw_zero(r.generic_k->ctx, r.coeff_degree);
      if (r.generic_q) r.generic_q = kmw_zero(r.generic_q->ctx, r.coeff_degree);
      return r;
    }
    if (r.generic_rf) r.generic_rf = eta_mul(*r.generic_rf, 1);
    if (r.generic_k) r.generic_k = eta_mul(*r.generic_k, 1);
    if (r.generic_q) r.generic_q = eta_mul(*r.generic_q, 1);
    return r;
  }
  r.entries.clear();
  for (const auto& [x, v] : c.entries) cycle_add_entry(r, x, canon_mul_eta(v));
  return r;
}

// ----- boundary triple -----

KmwCanon boundary_triple(const Cycle& c) {
  require(c.model.kind == ModelKind::AffineLine, "UnsupportedMorphism",
          "boundary triples are set up for V(t) inside the affine line");
  const FqPtr& F = c.model.F;
  FqPoly t = FqPoly::t(F);
  if (c.dim == 0) {
    for (const auto& [x, v] : c.entries)
      require(!(x.kind == PointId::Kind::Finite && x.poly == t) || v.is_zero(), "SupportMeetsZ",
              "input cycle meets V(t)");
    return canon_zero(F, c.coeff_degree - 1, c.mode);
  }
  FuncPlace pl = FuncPlace::finite(t);
  return kmw_canonical(residue_at(pl, *c.generic_rf), c.mode);
}

// ----- reciprocity -----

KmwCanon reciprocity_sum(const CurveModel& m, const KmwRf& a, Mode mode) {
  require(m.kind == ModelKind::ProjLine, "UnsupportedMorphism",
          "reciprocity sums are taken over the projective line");
  Cycle d = differential(m, a, mode, /*twist_omega=*/true);
  KmwCanon acc = canon_zero(m.F, a.degree - 1, mode);
  for (const auto& [x, v] : d.entries) {
    auto e = embed(m.F, v.F);
    acc = canon_add(acc, canon_transfer(*e, v, TransferMode::Trace));
  }
  return acc;
}

}  // namespace mw
