#include "mwcycles/cycle/hpreimage.hpp"

namespace mw {

FqPoly lift_residue_poly(const FqPtr& F, const FuncPlace& pl, const FFElem& w) {
  const FqPtr& kappa = pl.kappa;
  const i64 p = F->p;
  const int fa = kappa->f;
  const int rel = fa / F->f;

  // Solve M x = w where the columns of M are base^k * theta^j.
  std::vector<std::vector<i64>> mat(static_cast<size_t>(fa),
                                    std::vector<i64>(static_cast<size_t>(fa) + 1, 0));
  {
    FFElem base = pl.base_embed->apply(F->gen());
    FFElem theta_pow = kappa->one();
    int col = 0;
    for (int j = 0; j < rel; ++j) {
      FFElem v = theta_pow;
      for (int k = 0; k < F->f; ++k) {
        for (size_t i = 0; i < v.c.size(); ++i) mat[i][col] = ((v.c[i] % p) + p) % p;
        v = kappa->mul(v, base);
        ++col;
      }
      theta_pow = kappa->mul(theta_pow, pl.theta);
    }
    for (size_t i = 0; i < w.c.size(); ++i) mat[i][static_cast<size_t>(fa)] = ((w.c[i] % p) + p) % p;
  }
  for (int col = 0; col < fa; ++col) {
    int sel = -1;
    for (int i = col; i < fa; ++i)
      if (mat[i][col] % p != 0) {
        sel = i;
        break;
      }
    require(sel >= 0, "InternalError", "place basis is degenerate");
    std::swap(mat[sel], mat[col]);
    i64 inv = mod_inv_i64(mat[col][col], p);
    for (int c = 0; c <= fa; ++c) mat[col][c] = (mat[col][c] * inv) % p;
    for (int i = 0; i < fa; ++i) {
      if (i == col) continue;
      i64 fct = ((mat[i][col] % p) + p) % p;
      if (fct == 0) continue;
      for (int c = 0; c <= fa; ++c)
        mat[i][c] = (((mat[i][c] - fct * mat[col][c]) % p) + p) % p;
    }
  }

  // Reassemble coefficient j of g as sum_k x_{j,k} gen^k in F.
  std::vector<FFElem> coeffs;
  for (int j = 0; j < rel; ++j) {
    FFElem cj = F->from_int(0);
    FFElem gp = F->one();
    for (int k = 0; k < F->f; ++k) {
      i64 xv = mat[static_cast<size_t>(j * F->f + k)][static_cast<size_t>(fa)];
      cj = F->add(cj, F->mul(F->from_int(xv), gp));
      gp = F->mul(gp, F->gen());
    }
    coeffs.push_back(cj);
  }
  FqPoly g = FqPoly::from_coeffs(F, std::move(coeffs));
  require(eval_mapped(g, *pl.base_embed, pl.theta) == w, "InternalError",
          "residue lift failed to evaluate back");
  return g;
}

namespace {

/// A symbol whose residue at x is +-v_eff, with all other residues at points
/// of strictly smaller degree.
KmwRf clearing_recipe(const FqPtr& F, const PointId& x, const KmwCanon& v_eff) {
  RfCtx ctx{F};
  FuncPlace pl = FuncPlace::finite(x.poly);
  auto slot = [](const FqPoly& g) { return RatFunc::of_poly(g); };
  if (v_eff.degree == 1) {
    FqPoly g2 = lift_residue_poly(F, pl, v_eff.unit);
    return kmw_symbol(ctx, {slot(x.poly), slot(g2)});
  }
  // coefficient degree 0: rank and discriminant parts
  long long r = v_eff.gw.rank;
  long long delta = v_eff.gw.disc;
  KmwRf beta = kmw_scale(r - delta, kmw_symbol(ctx, {slot(x.poly)}));
  if (delta != 0) {
    FqPoly g = lift_residue_poly(F, pl, pl.kappa->smallest_nonsquare());
    beta = beta + kmw_scale(delta, kmw_symbol(ctx, {slot(g * x.poly)}));
  }
  return beta;
}

}  // namespace

KmwRf h_preimage(const Cycle& target, int degree_bound) {
  require(target.model.kind == ModelKind::AffineLine, "UnsupportedMorphism",
          "homotopy-invariance witnesses live on the affine line");
  require(target.dim == 0, "DimensionMismatch", "target must be a dim-0 cycle");
  require(target.coeff_degree >= 0, "UnsupportedMorphism",
          "negative coefficient degrees are outside the implemented clearing recipes");
  const FqPtr& F = target.model.F;
  for (const auto& [x, v] : target.entries)
    require(x.poly.deg() <= degree_bound, "UnsupportedMorphism",
            "support exceeds the degree bound at " + x.to_string());

  RfCtx ctx{F};
  KmwRf alpha = kmw_zero(ctx, target.coeff_degree + 1);
  for (int iter = 0; iter < 4096; ++iter) {
    Cycle resid = target - differential(target.model, alpha, target.mode, target.twist_omega);
    if (resid.is_zero()) return alpha;
    // Finite points sort by (degree, coefficients); the last one is maximal.
    const auto& [x, v] = *std::prev(resid.entries.end());
    KmwCanon v_eff =
        target.twist_omega
            ? canon_mul_diag(v, FuncPlace::finite(x.poly).fprime_theta())
            : v;
    KmwRf beta = clearing_recipe(F, x, v_eff);
    Cycle dbeta = differential(target.model, beta, target.mode, target.twist_omega);
    auto it = dbeta.entries.find(x);
    require(it != dbeta.entries.end(), "NoPreimageFound",
            "clearing recipe missed its point at " + x.to_string());
    if (it->second == v) {
      alpha = alpha + beta;
    } else if (it->second == canon_neg(v)) {
      alpha = alpha + kmw_scale(-1, beta);
    } else {
      throw MwError("NoPreimageFound", "clearing recipe produced an unrelated value at " +
                                           x.to_string());
    }
  }
  throw MwError("NoPreimageFound", "degree descent failed to terminate");
}

}  // namespace mw
