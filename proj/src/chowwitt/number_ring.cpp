#include "presentation.hpp"

namespace mw {

using cwdetail::ColumnSet;
using cwdetail::Layout;
using cwdetail::SquareCover;

namespace {

constexpr int kStageCap = 8;

/// |N(z)| of an integral element as a nonnegative integer.
Int abs_norm(const QElem& z) {
  Rat n = q_norm(z);
  Int num = n.get_num();
  return abs(num);
}

/// True when the divisor of z is supported on the layout primes, certified by
/// norm accounting: the product of the local norms must exhaust |N(z)|.
bool supported(const Layout& lay, const QElem& z, std::vector<long>& vals) {
  Int acc = 1;
  vals.assign(lay.pts.size(), 0);
  for (size_t i = 0; i < lay.pts.size(); ++i) {
    long v = lay.pts[i].qplace->val(z);
    vals[i] = v;
    if (v != 0) acc *= powz(lay.pts[i].id.norm(), static_cast<unsigned long>(v));
  }
  return acc == abs_norm(z);
}

/// Same certification for an integer over rational primes.
bool supported_z(const Layout& lay, const Int& n) {
  Int rest = abs(n);
  for (const auto& cp : lay.pts) {
    const Int& p = cp.id.p;
    while (rest % p == 0) rest /= p;
  }
  return rest == 1;
}

struct StageOutcome {
  Layout lay;
  ColumnSet cols;
  AbGroup group;
  bool squares_ok = false;
  bool class_ok = false;
};

}  // namespace

CwResult chow_witt_number_ring(const Int& d, Mode mode, const Int& B0, long H0) {
  CwResult out;
  out.mode = mode;
  out.model = d == 1 ? CurveModel::spec_z() : CurveModel::spec_ok(d);

  const bool rational = d == 1;
  QfPtr K;
  ClassGroupResult cg;
  if (!rational) {
    K = QuadField::make(d);
    cg = class_group(K);
    require(cg.stable, "NotStabilized", "the class-group presentation did not stabilize");
  }
  const CurveModel& m = out.model;

  Int B = B0 > 0 ? B0 : Int(2);
  if (!rational && B0 <= 0) {
    Int mb = minkowski_bound(K);
    if (mb > B) B = mb;
  }
  long H = H0 > 0 ? H0 : 12;

  std::optional<StageOutcome> prev;
  for (int stage = 0; stage < kStageCap; ++stage) {
    StageOutcome cur;
    cur.lay = cwdetail::make_layout(closed_points(m, B.get_si()), mode);
    SquareCover cover(cur.lay.pts.size());
    cur.class_ok = true;

    auto consider_quad = [&](const QElem& z) -> bool {
      if (z.is_zero()) return false;
      std::vector<long> vals;
      if (!supported(cur.lay, z, vals)) return false;
      QuadCtx qctx{K};
      Cycle t = tdiv(K, kmw_symbol(qctx, {z}), mode);
      auto col = cwdetail::extract_column(t, cur.lay);
      if (!col) return false;
      cover.record(t, cur.lay);
      cur.cols.add(*col);
      return true;
    };
    auto consider_int = [&](long n) {
      if (n == 0) return;
      if (!supported_z(cur.lay, Int(n))) return;
      RatCtx rctx;
      Cycle t = tdiv_q(kmw_symbol(rctx, {Rat(n)}), mode);
      if (auto col = cwdetail::extract_column(t, cur.lay)) {
        cover.record(t, cur.lay);
        cur.cols.add(*col);
      }
    };

    if (rational) {
      for (long n = -H; n <= H; ++n) consider_int(n);
    } else {
      // Class-group relation witnesses first: each must be realized.
      for (const auto& [w, exps] : cg.relations) {
        (void)exps;
        if (!consider_quad(w)) cur.class_ok = false;
      }
      QBoxScan scan(K);
      for (;;) {
        QElem z = scan.next();
        Rat ha = abs(z.a), hb = abs(z.b);
        if ((ha > hb ? ha : hb) > Rat(H)) break;
        consider_quad(z);
      }
    }

    cur.group = cokernel(cur.cols.matrix(cur.lay.rows), cur.lay.torsion);
    cur.squares_ok = mode != Mode::MW || cover.complete(cur.lay);

    bool same_gens = prev && prev->lay.pts.size() == cur.lay.pts.size();
    cwdetail::check_monotone(out.stages, same_gens, cur.group);
    out.stages.push_back(
        {B, H, cur.lay.rows, static_cast<long>(cur.cols.cols.size()), cur.group});

    if (prev && iso_eq(prev->group, cur.group) && cur.squares_ok && cur.class_ok) {
      out.stable = true;
      out.group = cur.group;
      out.pres = cwdetail::build_presentation(cur.lay, cur.cols);
      return out;
    }
    prev = std::move(cur);
    B *= 2;
    H *= 2;
  }

  out.stable = false;
  out.group = prev->group;
  out.pres = cwdetail::build_presentation(prev->lay, prev->cols);
  return out;
}

CwFlags exact_sequence_check(CwResult& res) {
  require(res.mode == Mode::MW, "UnsupportedMorphism",
          "the sequence check applies to the quadratic-coefficient presentation");
  const CwPresentation& P = res.pres;
  int n = P.rank_only.rows;

  // CH1/2 presented as the rank columns together with 2*identity.
  IntMatrix z2(n, P.rank_only.cols + n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < P.rank_only.cols; ++j) z2.at(i, j) = P.rank_only.at(i, j);
    z2.at(i, P.rank_only.cols + i) = 2;
  }
  AbGroup ch1_mod2 = cokernel(z2);

  CwFlags f;

  // (i) The quotient map is defined on the presentation and onto: every
  // relation's rank part must already be a relation of CH1/2; the generators
  // map onto the generators.
  f.surjects_mod2 = true;
  for (int j = 0; j < P.full.cols; ++j) {
    std::vector<Int> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = P.full.at(i, j);
    if (!membership(z2, v)) {
      f.surjects_mod2 = false;
      break;
    }
  }

  // (ii) Dividing out the hyperbolic image reproduces CH1/2. The hyperbolic
  // class at a point is h = <1> + <-1>: rank 2, disc the class of -1.
  IntMatrix with_hyp(P.full.rows, P.full.cols + n);
  for (int i = 0; i < P.full.rows; ++i)
    for (int j = 0; j < P.full.cols; ++j) with_hyp.at(i, j) = P.full.at(i, j);
  for (size_t k = 0; k < P.points.size(); ++k) {
    int j = P.full.cols + static_cast<int>(k);
    with_hyp.at(P.rank_row[k], j) = 2;
    if (P.disc_row[k] >= 0) {
      ClosedPoint cp = resolve_point(res.model, P.points[k]);
      with_hyp.at(P.disc_row[k], j) = cp.kappa->chi(cp.kappa->from_int(-1));
    }
  }
  f.hyperbolic_kernel_match = iso_eq(cokernel(with_hyp, P.torsion), ch1_mod2);

  f.finite = res.group.free_rank == 0;

  res.flags = f;
  require(f.all(), "InconsistentWithTheorem",
          "the computed group violates the quotient sequence");
  return f;
}

}  // namespace mw
