#include "mwcycles/kmw/places.hpp"

namespace mw {

RatPlace RatPlace::at(const Int& p) {
  require(p >= 2 && is_probable_prime(p), "NotPrime", "place of Q must be a prime");
  require(p.fits_slong_p(), "TooLarge", "prime too large for a residue field");
  RatPlace pl;
  pl.p = p;
  pl.kappa = make_finite_field(p.get_si(), 1);
  return pl;
}

long RatPlace::val(const Rat& x) const {
  require(x != 0, "ZeroElement", "valuation of zero");
  Int num = x.get_num(), den = x.get_den();
  long vn = num == 0 ? 0 : remove_factor(num, p);
  long vd = den == 1 ? 0 : remove_factor(den, p);
  return vn - vd;
}

std::pair<long, Rat> RatPlace::split(const Rat& x) const {
  long n = val(x);
  Rat pw;
  if (n >= 0)
    pw = Rat(powz(p, static_cast<unsigned long>(n)));
  else
    pw = Rat(Int(1), powz(p, static_cast<unsigned long>(-n)));
  Rat w = x / pw;
  w.canonicalize();
  return {n, w};
}

FFElem RatPlace::reduce_unit(const Rat& w) const {
  require(val(w) == 0, "NotAUnit", "reduction of a non-unit at the place");
  i64 pm = p.get_si();
  Int num = w.get_num() % p, den = w.get_den() % p;
  i64 n = ((num.get_si() % pm) + pm) % pm;
  i64 d = ((den.get_si() % pm) + pm) % pm;
  return kappa->mul(kappa->from_int(n), kappa->inv(kappa->from_int(d)));
}

FuncPlace FuncPlace::finite(const FqPoly& g) {
  require(g.is_monic() && is_irreducible(g), "NotPrime",
          "finite places correspond to monic irreducible polynomials");
  FuncPlace pl;
  pl.F = g.F;
  pl.g = g;
  pl.pi = RatFunc::of_poly(g);
  int d = g.deg();
  pl.kappa = make_finite_field(g.F->p, g.F->f * d);
  pl.base_embed = embed(g.F, pl.kappa);
  // First root of g in kappa, enumeration order.
  bool found = false;
  for (i64 idx = 0; idx < pl.kappa->q && !found; ++idx) {
    FFElem cand = pl.kappa->from_index(idx);
    if (eval_mapped(g, *pl.base_embed, cand).is_zero()) {
      pl.theta = cand;
      found = true;
    }
  }
  require(found, "NotPrime", "no root of the defining polynomial (internal)");
  return pl;
}

FuncPlace FuncPlace::infinity(const FqPtr& F) {
  FuncPlace pl;
  pl.F = F;
  pl.at_infinity = true;
  pl.pi = rf_inv(RatFunc::t(F));
  pl.kappa = F;
  pl.base_embed = embed(F, F);
  pl.theta = F->zero();
  return pl;
}

FuncPlace FuncPlace::with_uniformizer(const RatFunc& u) const {
  FuncPlace pl = *this;
  require(val(u) == 1, "NotAUnit", "overridden uniformizer must have valuation 1");
  pl.pi = u;
  return pl;
}

long FuncPlace::val(const RatFunc& x) const {
  require(!x.is_zero(), "ZeroElement", "valuation of zero");
  if (at_infinity) return x.den.deg() - x.num.deg();
  auto mult = [&](FqPoly a) {
    long m = 0;
    for (;;) {
      auto [q, r] = divmod(a, g);
      if (!r.is_zero()) return m;
      a = q;
      ++m;
    }
  };
  return mult(x.num) - mult(x.den);
}

std::pair<long, RatFunc> FuncPlace::split(const RatFunc& x) const {
  long n = val(x);
  RatFunc piw = RatFunc::one(F);
  RatFunc p = pi;
  long k = n >= 0 ? n : -n;
  for (long i = 0; i < k; ++i) piw = piw * p;
  if (n < 0) piw = rf_inv(piw);
  return {n, x / piw};
}

FFElem FuncPlace::reduce_unit(const RatFunc& w) const {
  require(val(w) == 0, "NotAUnit", "reduction of a non-unit at the place");
  if (at_infinity) {
    // value at infinity: ratio of leading coefficients (equal degrees here)
    return F->mul(w.num.lead(), F->inv(w.den.lead()));
  }
  FFElem n = eval_mapped(w.num, *base_embed, theta);
  FFElem d = eval_mapped(w.den, *base_embed, theta);
  return kappa->mul(n, kappa->inv(d));
}

FFElem FuncPlace::fprime_theta() const {
  require(!at_infinity, "UnsupportedMorphism", "derivative data only at finite places");
  return eval_mapped(derivative(g), *base_embed, theta);
}

KmwCanon residue_canonical_q(const RatPlace& pl, const KmwQ& x, Mode mode) {
  return kmw_canonical(residue_at(pl, x), mode);
}

KmwCanon residue_canonical_t(const FuncPlace& pl, const KmwRf& x, Mode mode) {
  return kmw_canonical(residue_at(pl, x), mode);
}

}  // namespace mw
