#include "presentation.hpp"

namespace mw {

using cwdetail::ColumnSet;
using cwdetail::Layout;
using cwdetail::SquareCover;

namespace {

constexpr int kStageCap = 8;

/// Monic polynomials of the given degree in deterministic coefficient order.
std::vector<FqPoly> monic_polys(const FqPtr& F, int deg) {
  std::vector<FqPoly> out;
  long total = 1;
  for (int i = 0; i < deg; ++i) total *= F->q;
  for (long idx = 0; idx < total; ++idx) {
    std::vector<FFElem> cs;
    long rest = idx;
    for (int i = 0; i < deg; ++i) {
      cs.push_back(F->from_index(rest % F->q));
      rest /= F->q;
    }
    cs.push_back(F->one());
    out.push_back(FqPoly::from_coeffs(F, std::move(cs)));
  }
  return out;
}

/// A monic polynomial of degree <= 3 whose value at the point's root is a
/// nonsquare of the residue field; such a value flips the discriminant there.
FqPoly nonsquare_probe(const FqPtr& F, const ClosedPoint& cp) {
  for (int deg = 1; deg <= 3; ++deg) {
    for (const FqPoly& g : monic_polys(F, deg)) {
      FFElem val = eval_mapped(g, *cp.place->base_embed, cp.place->theta);
      if (val.is_zero()) continue;
      if (cp.kappa->chi(val) == 1) return g;
    }
  }
  throw MwError("InternalError",
                "no low-degree nonsquare probe at " + cp.id.to_string());
}

/// Targeted generic symbols whose differentials present the group at this
/// degree bound: divisor classes [f] and [s f], and in MW mode the
/// eta-torsion companions plus per-point discriminant probes.
std::vector<KmwRf> harvest(const CurveModel& m, const Layout& lay, Mode mode, long B) {
  const FqPtr& F = m.F;
  RfCtx ctx{F};
  const bool odd = F->p % 2 == 1;
  std::vector<KmwRf> out;
  auto poly_slot = [&](const FqPoly& f) { return RatFunc::of_poly(f); };
  FqPoly s = odd ? FqPoly::constant(F->smallest_nonsquare()) : FqPoly::constant(F->one());
  FqPoly minus_one = FqPoly::constant(F->neg(F->one()));

  for (int deg = 1; deg <= B; ++deg) {
    for (const FqPoly& f : monic_irreducibles(F, deg)) {
      out.push_back(kmw_symbol(ctx, {poly_slot(f)}));
      if (!odd) continue;
      out.push_back(kmw_symbol(ctx, {poly_slot(s * f)}));
      if (mode == Mode::MW) {
        out.push_back(eta_mul(kmw_symbol(ctx, {poly_slot(s), poly_slot(f)}), 1));
        out.push_back(eta_mul(kmw_symbol(ctx, {poly_slot(minus_one), poly_slot(f)}), 1));
      }
    }
  }
  if (odd && mode == Mode::MW) {
    for (const auto& cp : lay.pts) {
      if (cp.id.kind != PointId::Kind::Finite) continue;
      FqPoly g = nonsquare_probe(F, cp);
      out.push_back(kmw_symbol(ctx, {poly_slot(g * cp.id.poly)}));
      out.push_back(eta_mul(kmw_symbol(ctx, {poly_slot(g), poly_slot(cp.id.poly)}), 1));
    }
  }
  return out;
}

}  // namespace

CwResult chow_witt_curve(const CurveModel& m, Mode mode, bool twist_omega, long B0) {
  require(m.is_line(), "UnsupportedMorphism",
          "the curve presentation is defined for the affine and projective lines");
  CwResult out;
  out.mode = mode;
  out.model = m;

  long B = B0 > 0 ? B0 : 2;
  struct StageOutcome {
    Layout lay;
    ColumnSet cols;
    AbGroup group;
    bool squares_ok = false;
  };
  std::optional<StageOutcome> prev;

  for (int stage = 0; stage < kStageCap; ++stage) {
    StageOutcome cur;
    cur.lay = cwdetail::make_layout(closed_points(m, B), mode);
    SquareCover cover(cur.lay.pts.size());

    for (const KmwRf& alpha : harvest(m, cur.lay, mode, B)) {
      Cycle dcy = differential(m, alpha, mode, twist_omega);
      auto col = cwdetail::extract_column(dcy, cur.lay);
      if (!col) continue;  // support leaves the generator set at this stage
      cover.record(dcy, cur.lay);
      cur.cols.add(*col);
    }

    cur.group = cokernel(cur.cols.matrix(cur.lay.rows), cur.lay.torsion);
    cur.squares_ok = mode != Mode::MW || cover.complete(cur.lay);

    bool same_gens = prev && prev->lay.pts.size() == cur.lay.pts.size();
    cwdetail::check_monotone(out.stages, same_gens, cur.group);
    out.stages.push_back(
        {Int(B), 0, cur.lay.rows, static_cast<long>(cur.cols.cols.size()), cur.group});

    if (prev && iso_eq(prev->group, cur.group) && cur.squares_ok) {
      out.stable = true;
      out.group = cur.group;
      out.pres = cwdetail::build_presentation(cur.lay, cur.cols);
      return out;
    }
    prev = std::move(cur);
    B *= 2;
  }

  out.stable = false;
  out.group = prev->group;
  out.pres = cwdetail::build_presentation(prev->lay, prev->cols);
  return out;
}

namespace {

/// A multiplicative generator of the field's unit group, cached per field.
FFElem primitive_root(const FqPtr& F) {
  static std::map<const FqCtx*, FFElem> cache;
  auto it = cache.find(F.get());
  if (it != cache.end()) return it->second;
  for (i64 i = 1; i < F->q; ++i) {
    FFElem g = F->from_index(i);
    FFElem acc = g;
    long ord = 1;
    while (acc != F->one()) {
      acc = F->mul(acc, g);
      ++ord;
    }
    if (ord == F->q - 1) {
      cache.emplace(F.get(), g);
      return g;
    }
  }
  throw MwError("InternalError", "unit group of " + F->name() + " has no generator");
}

/// Discrete logarithm of u with respect to the cached primitive root.
long dlog(const FqPtr& F, const FFElem& u) {
  FFElem g = primitive_root(F);
  FFElem acc = F->one();
  for (long k = 0; k < F->q - 1; ++k) {
    if (acc == u) return k;
    acc = F->mul(acc, g);
  }
  throw MwError("InternalError", "discrete logarithm of a non-unit");
}

/// Columns for the duality matrices: degree-1 symbols [f], or degree-2
/// symbols [f][g], over the monic irreducibles of degree <= B.
std::vector<KmwRf> duality_columns(const FqPtr& F, long B, int coeff_degree) {
  RfCtx ctx{F};
  std::vector<FqPoly> irred;
  for (int d = 1; d <= B; ++d)
    for (const FqPoly& f : monic_irreducibles(F, d)) irred.push_back(f);
  std::vector<KmwRf> out;
  if (coeff_degree == 1) {
    for (const FqPoly& f : irred) out.push_back(kmw_symbol(ctx, {RatFunc::of_poly(f)}));
    return out;
  }
  require(coeff_degree == 2, "UnsupportedMorphism",
          "duality matrices are tabulated in coefficient degrees 1 and 2");
  for (const FqPoly& f : irred)
    for (const FqPoly& g : irred)
      out.push_back(kmw_symbol(ctx, {RatFunc::of_poly(f), RatFunc::of_poly(g)}));
  return out;
}

/// One matrix entry: the Milnor-canonical residue of the symbol at the point,
/// encoded as a rank (degree 1 input) or a generator exponent (degree 2).
Int duality_entry(const ClosedPoint& cp, const KmwRf& alpha, ResidueSign sign) {
  KmwCanon r = kmw_canonical(residue_at(*cp.place, alpha, sign), Mode::Milnor);
  if (alpha.degree == 1) return Int(static_cast<long>(r.gw.rank));
  if (r.is_zero()) return Int(0);
  return Int(dlog(cp.kappa, r.unit));
}

}  // namespace

std::pair<IntMatrix, IntMatrix> oriented_duality_matrices(const CurveModel& m, long B,
                                                          int coeff_degree) {
  require(m.is_line(), "UnsupportedMorphism",
          "duality matrices are defined for the affine and projective lines");
  std::vector<ClosedPoint> pts = closed_points(m, B);
  std::vector<KmwRf> cols = duality_columns(m.F, B, coeff_degree);
  int nr = static_cast<int>(pts.size());
  int nc = static_cast<int>(cols.size());

  // Homological assembly: ascending points, homological residue sign.
  IntMatrix hom(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j)
      hom.at(i, j) = duality_entry(pts[static_cast<size_t>(i)],
                                   cols[static_cast<size_t>(j)], ResidueSign::Homological);

  // Cohomological assembly: complement-degree enumeration walks points and
  // columns in descending order with the raw eta-commuting residues; the
  // oriented dictionary then maps the result back to the homological layout.
  IntMatrix coh_raw(nr, nc);
  for (int i = nr - 1; i >= 0; --i)
    for (int j = nc - 1; j >= 0; --j)
      coh_raw.at(nr - 1 - i, nc - 1 - j) =
          duality_entry(pts[static_cast<size_t>(i)], cols[static_cast<size_t>(j)],
                        ResidueSign::EtaCommuting);
  IntMatrix coh(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) coh.at(i, j) = coh_raw.at(nr - 1 - i, nc - 1 - j);

  return {hom, coh};
}

}  // namespace mw
