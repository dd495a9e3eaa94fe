#include "mwcycles/cycle/axioms.hpp"

#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "mwcycles/core/rng.hpp"

namespace mw {

bool Report::ok() const {
  for (const auto& c : checks)
    if (c.failures != 0) return false;
  return true;
}

long Report::total_trials() const {
  long n = 0;
  for (const auto& c : checks) n += c.trials;
  return n;
}

long Report::total_failures() const {
  long n = 0;
  for (const auto& c : checks) n += c.failures;
  return n;
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

namespace {

template <class Fn>
CheckResult run_check(const std::string& name, long trials, Fn&& fn) {
  CheckResult r{name, trials, 0, ""};
  for (long i = 0; i < trials; ++i) {
    std::optional<std::string> bad = fn(i);
    if (bad) {
      ++r.failures;
      if (r.counterexample.empty()) r.counterexample = *bad;
    }
  }
  return r;
}

std::string gw_str(const GwFin& x) {
  return "(rank " + std::to_string(x.rank) + ", disc " + std::to_string(x.disc) + ")";
}

GwFin random_gw(Rng& rng, const FqPtr& F) {
  GwFin x = gw_zero(F);
  long k = rng.range(1, 4);
  for (long i = 0; i < k; ++i) x = x + gw_diag(F->from_index(rng.range(1, F->q - 1)));
  if (rng.coin()) x = -x;
  return x;
}

KmwCanon random_canon(Rng& rng, const FqPtr& F, Mode mode = Mode::MW) {
  if (rng.coin()) return canon_of_gw(random_gw(rng, F), mode);
  return canon_of_unit(F->from_index(rng.range(1, F->q - 1)), mode);
}

FqPoly random_poly(Rng& rng, const FqPtr& F, int maxdeg) {
  for (;;) {
    int d = static_cast<int>(rng.range(0, maxdeg));
    std::vector<FFElem> cs;
    for (int i = 0; i <= d; ++i) cs.push_back(F->from_index(rng.range(0, F->q - 1)));
    FqPoly p = FqPoly::from_coeffs(F, std::move(cs));
    if (!p.is_zero()) return p;
  }
}

FqPoly random_monic_irred(Rng& rng, const FqPtr& F, int maxdeg) {
  int d = static_cast<int>(rng.range(1, maxdeg));
  auto list = monic_irreducibles(F, d);
  return list[static_cast<size_t>(rng.range(0, static_cast<long>(list.size()) - 1))];
}

/// Random symbol over F(t) of the requested degree: up to two terms, each an
/// integer multiple of an optional eta power times a product of polynomial
/// or ratio slots.
KmwRf random_symbol(Rng& rng, const FqPtr& F, int degree, int maxdeg) {
  RfCtx ctx{F};
  KmwRf x = kmw_zero(ctx, degree);
  long terms = rng.range(1, 2);
  for (long tcount = 0; tcount < terms; ++tcount) {
    int eta = degree >= 1 && rng.coin() ? 1 : 0;
    int slots = degree + eta;
    KmwTerm<RfCtx> term{rng.range(1, 3) * (rng.coin() ? 1 : -1), eta, {}};
    for (int i = 0; i < slots; ++i) {
      FqPoly num = random_poly(rng, F, maxdeg);
      if (rng.coin()) {
        term.sym.push_back(RatFunc::of(num, random_poly(rng, F, maxdeg)));
      } else {
        term.sym.push_back(RatFunc::of_poly(num));
      }
    }
    x.terms.push_back(std::move(term));
  }
  kmw_compress(x);
  return x;
}

KmwCanon canon_mul_symbol(const FFElem& w, const KmwCanon& v) {
  KmwFF f = canon_to_kmw(v);
  FFCtx ctx{v.F};
  return kmw_canonical(kmw_symbol(ctx, {w}) * f, v.mode);
}

KmwCanon canon_mul_eta(const KmwCanon& v) {
  return kmw_canonical(eta_mul(canon_to_kmw(v), 1), v.mode);
}

Cycle cycle_neg(const Cycle& c) { return -c; }

FqPoly subst_te(const FqPoly& p, int e) {
  std::vector<FFElem> cs(static_cast<size_t>(p.deg() * e + 1), p.F->zero());
  for (size_t i = 0; i < p.c.size(); ++i) cs[i * static_cast<size_t>(e)] = p.c[i];
  return FqPoly::from_coeffs(p.F, std::move(cs));
}

KmwRf subst_symbol_te(const KmwRf& x, int e) {
  KmwRf y = kmw_zero(x.ctx, x.degree);
  for (const auto& t : x.terms) {
    KmwTerm<RfCtx> nt{t.coeff, t.eta, {}};
    for (const auto& u : t.sym)
      nt.sym.push_back(RatFunc::of(subst_te(u.num, e), subst_te(u.den, e)));
    y.terms.push_back(std::move(nt));
  }
  kmw_compress(y);
  return y;
}

}  // namespace

Report axiom_suite_r1(std::uint64_t seed, long trials) {
  Report rep;
  Rng rng(seed ^ 0x52315231ULL);
  rep.checks.push_back(run_check(
      "R1: res after transfer decomposes through tensor factors", trials,
      [&](long) -> std::optional<std::string> {
        const i64 qpool[] = {3, 4, 5};
        i64 q = qpool[rng.range(0, 2)];
        int base_f = q == 4 ? 2 : 1;
        i64 p = q == 4 ? 2 : q;
        int m = static_cast<int>(rng.range(1, 3));
        int n = static_cast<int>(rng.range(1, 3));
        auto dec = tensor_decompose(m, n);
        auto F = make_finite_field(p, base_f);
        auto Em = make_finite_field(p, base_f * m);
        auto En = make_finite_field(p, base_f * n);
        auto L = make_finite_field(p, base_f * dec.lcm_degree);
        GwFin x = random_gw(rng, Em);
        GwFin lhs = gw_pullback(*embed(F, En), gw_transfer(*embed(F, Em), x, TransferMode::Trace));
        GwFin rhs = gw_scale(
            dec.copies,
            gw_transfer(*embed(En, L), gw_pullback(*embed(Em, L), x), TransferMode::Trace));
        if (lhs == rhs) return std::nullopt;
        std::ostringstream os;
        os << "q=" << q << " m=" << m << " n=" << n << " x=" << gw_str(x)
           << " lhs=" << gw_str(lhs) << " rhs=" << gw_str(rhs);
        return os.str();
      }));
  return rep;
}

Report axiom_suite_r2(std::uint64_t seed, long trials) {
  Report rep;
  Rng rng(seed ^ 0x52325232ULL);
  const i64 qpool[] = {3, 5, 7, 9};

  rep.checks.push_back(run_check(
      "R2a: pullback is multiplicative", trials, [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 3)];
        i64 p = q == 9 ? 3 : q;
        int f = q == 9 ? 2 : 1;
        auto F = make_finite_field(p, f);
        auto E = make_finite_field(p, f * static_cast<int>(rng.range(2, 3)));
        auto e = embed(F, E);
        KmwCanon x = random_canon(rng, F);
        FFElem u = F->from_index(rng.range(1, F->q - 1));
        KmwCanon lhs_d = canon_pullback(*e, canon_mul_diag(x, u));
        KmwCanon rhs_d = canon_mul_diag(canon_pullback(*e, x), e->apply(u));
        if (lhs_d != rhs_d) return "diag: q=" + std::to_string(q) + " x=" + x.to_string();
        KmwCanon lhs_s = canon_pullback(*e, canon_mul_symbol(u, x));
        KmwCanon rhs_s = canon_mul_symbol(e->apply(u), canon_pullback(*e, x));
        if (lhs_s != rhs_s) return "symbol: q=" + std::to_string(q) + " x=" + x.to_string();
        KmwCanon lhs_e = canon_pullback(*e, canon_mul_eta(x));
        KmwCanon rhs_e = canon_mul_eta(canon_pullback(*e, x));
        if (lhs_e != rhs_e) return "eta: q=" + std::to_string(q) + " x=" + x.to_string();
        return std::nullopt;
      }));

  rep.checks.push_back(run_check(
      "R2b: tau(res(a) x) = a tau(x)", trials, [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 3)];
        i64 p = q == 9 ? 3 : q;
        int f = q == 9 ? 2 : 1;
        auto F = make_finite_field(p, f);
        auto E = make_finite_field(p, f * static_cast<int>(rng.range(2, 3)));
        auto e = embed(F, E);
        GwFin a = random_gw(rng, F);
        GwFin x = random_gw(rng, E);
        GwFin lhs = gw_transfer(*e, gw_pullback(*e, a) * x, TransferMode::Trace);
        GwFin rhs = a * gw_transfer(*e, x, TransferMode::Trace);
        if (lhs == rhs) return std::nullopt;
        return "q=" + std::to_string(q) + " a=" + gw_str(a) + " x=" + gw_str(x);
      }));

  rep.checks.push_back(run_check(
      "R2c: tau(b res(x)) = tau(b) x", trials, [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 3)];
        i64 p = q == 9 ? 3 : q;
        int f = q == 9 ? 2 : 1;
        auto F = make_finite_field(p, f);
        auto E = make_finite_field(p, f * static_cast<int>(rng.range(2, 3)));
        auto e = embed(F, E);
        GwFin b = random_gw(rng, E);
        GwFin x = random_gw(rng, F);
        GwFin lhs = gw_transfer(*e, b * gw_pullback(*e, x), TransferMode::Trace);
        GwFin rhs = gw_transfer(*e, b, TransferMode::Trace) * x;
        if (lhs == rhs) return std::nullopt;
        return "q=" + std::to_string(q) + " b=" + gw_str(b) + " x=" + gw_str(x);
      }));
  return rep;
}

Report axiom_suite_r3(std::uint64_t seed, long trials) {
  Report rep;
  Rng rng(seed ^ 0x52335233ULL);
  const i64 qpool[] = {3, 5, 7};

  rep.checks.push_back(run_check(
      "R3a: pushforward of residues off the projective line vanishes", trials,
      [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 2)];
        auto F = make_finite_field(q, 1);
        auto m = CurveModel::proj_line(F);
        KmwRf a = random_symbol(rng, F, static_cast<int>(rng.range(1, 2)), 3);
        KmwCanon s = reciprocity_sum(m, a);
        if (s.is_zero()) return std::nullopt;
        return "q=" + std::to_string(q) + " alpha=" + kmw_to_string(a) + " sum=" + s.to_string();
      }));

  rep.checks.push_back(run_check(
      "R3b: substitution t -> t^e multiplies the residue by e_eps", trials,
      [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 2)];
        auto F = make_finite_field(q, 1);
        int e = static_cast<int>(rng.range(1, 3));
        KmwRf x = random_symbol(rng, F, static_cast<int>(rng.range(1, 2)), 2);
        FuncPlace pl = FuncPlace::finite(FqPoly::t(F));
        KmwFF r_base = residue_at(pl, x);
        KmwFF r_sub = residue_at(pl, subst_symbol_te(x, e));
        FFCtx fctx{pl.kappa};
        KmwFF expected = kmw_n_eps_diag(fctx, e, pl.kappa->one()) * r_base;
        if (kmw_canonical(r_sub, Mode::MW) == kmw_canonical(expected, Mode::MW))
          return std::nullopt;
        return "q=" + std::to_string(q) + " e=" + std::to_string(e) +
               " x=" + kmw_to_string(x);
      }));

  rep.checks.push_back(run_check(
      "R3c: constants have no residues", trials, [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 2)];
        auto F = make_finite_field(q, 1);
        auto m = CurveModel::affine_line(F);
        RfCtx ctx{F};
        int degree = static_cast<int>(rng.range(1, 2));
        KmwRf x = kmw_zero(ctx, degree);
        long terms = rng.range(1, 2);
        for (long i = 0; i < terms; ++i) {
          int eta = rng.coin() ? 1 : 0;
          KmwTerm<RfCtx> term{rng.range(1, 3), eta, {}};
          for (int s = 0; s < degree + eta; ++s)
            term.sym.push_back(
                RatFunc::of_poly(FqPoly::constant(F->from_index(rng.range(1, F->q - 1)))));
          x.terms.push_back(std::move(term));
        }
        kmw_compress(x);
        if (differential(m, x).is_zero()) return std::nullopt;
        return "q=" + std::to_string(q) + " x=" + kmw_to_string(x);
      }));

  rep.checks.push_back(run_check(
      "R3d: specialization commutes with unramified extension", trials,
      [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 1)];
        auto F = make_finite_field(q, 1);
        int d, mdeg;
        do {
          d = static_cast<int>(rng.range(1, 3));
          mdeg = static_cast<int>(rng.range(2, 3));
        } while (std::gcd(d, mdeg) != 1);
        auto list = monic_irreducibles(F, d);
        FqPoly g = list[static_cast<size_t>(rng.range(0, static_cast<long>(list.size()) - 1))];
        KmwRf x = random_symbol(rng, F, 1, 2);
        RfCtx ctx{F};
        KmwRf gx = kmw_symbol(ctx, {RatFunc::of_poly(g)}) * x;
        FuncPlace pl = FuncPlace::finite(g);
        KmwCanon sp_small = kmw_canonical(residue_at(pl, gx), Mode::MW);

        auto E = make_finite_field(q, mdeg);
        auto eF = embed(F, E);
        RfCtx ectx{E};
        FqPoly gE = map_poly(g, *eF);
        KmwRf xE = kmw_zero(ectx, x.degree);
        for (const auto& t : x.terms) {
          KmwTerm<RfCtx> nt{t.coeff, t.eta, {}};
          for (const auto& u : t.sym)
            nt.sym.push_back(RatFunc::of(map_poly(u.num, *eF), map_poly(u.den, *eF)));
          xE.terms.push_back(std::move(nt));
        }
        kmw_compress(xE);
        KmwRf gxE = kmw_symbol(ectx, {RatFunc::of_poly(gE)}) * xE;
        FuncPlace plE = FuncPlace::finite(gE);
        KmwCanon sp_big = kmw_canonical(residue_at(plE, gxE), Mode::MW);

        FFElem base_from = pl.base_embed->apply(F->gen());
        FFElem base_to = plE.base_embed->apply(eF->apply(F->gen()));
        FqHom h = theta_compatible_hom(F, pl.kappa, base_from, pl.theta, plE.kappa, base_to,
                                       plE.theta);
        KmwCanon transported =
            canon_map(sp_small, plE.kappa, [&](const FFElem& u) { return h.apply(u); });
        if (sp_big == transported) return std::nullopt;
        return "q=" + std::to_string(q) + " g=" + poly_to_string(g) +
               " m=" + std::to_string(mdeg) + " x=" + kmw_to_string(x);
      }));

  rep.checks.push_back(run_check(
      "R3e: residue conjugates the unit action", trials,
      [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 2)];
        auto F = make_finite_field(q, 1);
        FqPoly g = random_monic_irred(rng, F, 2);
        FuncPlace pl = FuncPlace::finite(g);
        FqPoly u;
        do {
          u = random_poly(rng, F, 2);
        } while (divmod(u, g).second.is_zero());
        KmwRf x = random_symbol(rng, F, 1, 2);
        RfCtx ctx{F};
        KmwRf lhs_formal = kmw_symbol(ctx, {RatFunc::of_poly(u)}) * x;
        KmwCanon lhs = kmw_canonical(residue_at(pl, lhs_formal), Mode::MW);
        FFElem ubar = eval_mapped(u, *pl.base_embed, pl.theta);
        FFCtx fctx{pl.kappa};
        KmwFF rx = residue_at(pl, x);
        KmwCanon rhs = kmw_canonical(kmw_scale(-1, kmw_symbol(fctx, {ubar}) * rx), Mode::MW);
        if (lhs == rhs) return std::nullopt;
        return "unit: q=" + std::to_string(q) + " g=" + poly_to_string(g) +
               " u=" + poly_to_string(u) + " x=" + kmw_to_string(x);
      }));

  rep.checks.push_back(run_check(
      "R3e: residue anticommutes with eta", trials, [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 2)];
        auto F = make_finite_field(q, 1);
        FqPoly g = random_monic_irred(rng, F, 2);
        FuncPlace pl = FuncPlace::finite(g);
        KmwRf x = random_symbol(rng, F, 2, 2);
        KmwCanon lhs = kmw_canonical(residue_at(pl, eta_mul(x, 1)), Mode::MW);
        KmwCanon rhs = kmw_canonical(kmw_scale(-1, eta_mul(residue_at(pl, x), 1)), Mode::MW);
        if (lhs == rhs) return std::nullopt;
        return "eta: q=" + std::to_string(q) + " g=" + poly_to_string(g) +
               " x=" + kmw_to_string(x);
      }));

  rep.checks.push_back(run_check(
      "R3: uniformizer rescaling twists the residue", trials,
      [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 2)];
        auto F = make_finite_field(q, 1);
        FqPoly g = random_monic_irred(rng, F, 2);
        FuncPlace pl = FuncPlace::finite(g);
        FqPoly a;
        do {
          a = random_poly(rng, F, 2);
        } while (divmod(a, g).second.is_zero());
        FuncPlace pl2 = pl.with_uniformizer(RatFunc::of_poly(a * g));
        KmwRf x = random_symbol(rng, F, 1, 2);
        KmwCanon lhs = kmw_canonical(residue_at(pl2, x), Mode::MW);
        FFElem abar = eval_mapped(a, *pl.base_embed, pl.theta);
        KmwCanon rhs = canon_mul_diag(kmw_canonical(residue_at(pl, x), Mode::MW), abar);
        if (lhs == rhs) return std::nullopt;
        return "q=" + std::to_string(q) + " g=" + poly_to_string(g) +
               " a=" + poly_to_string(a) + " x=" + kmw_to_string(x);
      }));
  return rep;
}

Report axiom_suite_rost45() {
  Report rep;
  CheckResult main_check{"Rost 4.5: boundary of [t] times a pulled-back class is the class", 0, 0,
                         ""};
  CheckResult zero_check{"Rost 4.5: boundary of a pulled-back class vanishes", 0, 0, ""};
  CheckResult eta_check{"Rost 4.5: boundary anticommutes with eta on pulled-back classes", 0, 0,
                        ""};
  for (i64 q : {3, 5, 7, 9}) {
    i64 p = q == 9 ? 3 : q;
    int f = q == 9 ? 2 : 1;
    auto F = make_finite_field(p, f);
    auto m = CurveModel::affine_line(F);
    RfCtx ctx{F};
    for (i64 idx = 1; idx < q; ++idx) {
      FFElem a = F->from_index(idx);
      KmwCanon va = canon_of_gw(gw_diag(a));
      Cycle ga = pullback_to_line(m, va);
      Cycle tga = ga;
      tga.generic_rf = kmw_symbol(ctx, {RatFunc::t(F)}) * *ga.generic_rf;
      tga.coeff_degree = ga.coeff_degree + 1;

      ++main_check.trials;
      if (boundary_triple(tga) != va) {
        ++main_check.failures;
        if (main_check.counterexample.empty())
          main_check.counterexample = "q=" + std::to_string(q) + " a=" + F->to_string(a);
      }

      ++zero_check.trials;
      if (!boundary_triple(ga).is_zero()) {
        ++zero_check.failures;
        if (zero_check.counterexample.empty())
          zero_check.counterexample = "q=" + std::to_string(q) + " a=" + F->to_string(a);
      }

      ++eta_check.trials;
      Cycle etga = mult_eta(tga);
      KmwCanon want = canon_neg(canon_mul_eta(va));
      if (boundary_triple(etga) != want) {
        ++eta_check.failures;
        if (eta_check.counterexample.empty())
          eta_check.counterexample = "q=" + std::to_string(q) + " a=" + F->to_string(a);
      }
    }
  }
  rep.checks.push_back(main_check);
  rep.checks.push_back(zero_check);
  rep.checks.push_back(eta_check);
  return rep;
}

Report axiom_suite_cycle_compat(std::uint64_t seed, long trials) {
  Report rep;
  Rng rng(seed ^ 0x43594343ULL);
  const i64 qpool[] = {3, 5};

  rep.checks.push_back(run_check(
      "4.1: transfers compose along towers", trials, [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 1)];
        int a = static_cast<int>(rng.range(2, 3));
        int b = a == 3 ? 2 : static_cast<int>(rng.range(2, 3));
        auto F = make_finite_field(q, 1);
        auto Mid = make_finite_field(q, a);
        auto Big = make_finite_field(q, a * b);
        KmwCanon x = random_canon(rng, Big);
        for (TransferMode tm : {TransferMode::Trace, TransferMode::Geometric}) {
          KmwCanon direct = canon_transfer(*embed(F, Big), x, tm);
          KmwCanon towered =
              canon_transfer(*embed(F, Mid), canon_transfer(*embed(Mid, Big), x, tm), tm);
          if (direct != towered)
            return "q=" + std::to_string(q) + " tower=(" + std::to_string(a) + "," +
                   std::to_string(b) + ") mode=" +
                   (tm == TransferMode::Trace ? "trace" : "geometric") + " x=" + x.to_string();
        }
        return std::nullopt;
      }));

  rep.checks.push_back(run_check(
      "4.1: base change commutes with pushforward", trials,
      [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 1)];
        auto F = make_finite_field(q, 1);
        auto E = make_finite_field(q, static_cast<int>(rng.range(2, 3)));
        auto m = CurveModel::affine_line(F);
        FqPoly g = random_monic_irred(rng, F, 3);
        auto cp = resolve_point(m, PointId::finite(g));
        KmwCanon v = random_canon(rng, cp.kappa);
        Cycle c = cycle_point(m, PointId::finite(g), v);
        KmwCanon lhs = pushforward_to_base(base_extend_line(c, E));
        KmwCanon rhs = base_extend_field(pushforward_to_base(c), E);
        if (lhs == rhs) return std::nullopt;
        return "q=" + std::to_string(q) + " g=" + poly_to_string(g) + " v=" + v.to_string();
      }));

  rep.checks.push_back(run_check(
      "4.2: projection formula for pushforward", trials,
      [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 1)];
        auto F = make_finite_field(q, 1);
        auto m = CurveModel::affine_line(F);
        Cycle c = cycle_zero(m, 0, Mode::MW);
        long pts = rng.range(1, 3);
        for (long i = 0; i < pts; ++i) {
          FqPoly g = random_monic_irred(rng, F, 3);
          auto cp = resolve_point(m, PointId::finite(g));
          cycle_add_entry(c, PointId::finite(g), canon_of_gw(random_gw(rng, cp.kappa)));
        }
        FFElem a = F->from_index(rng.range(1, F->q - 1));
        KmwCanon lhs = pushforward_to_base(mult_diag_ff(c, a));
        KmwCanon rhs = canon_mul_diag(pushforward_to_base(c), a);
        if (lhs == rhs) return std::nullopt;
        return "q=" + std::to_string(q) + " a=" + F->to_string(a);
      }));

  rep.checks.push_back(run_check(
      "4.3: base change commutes with the unit and eta actions", trials,
      [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 1)];
        auto F = make_finite_field(q, 1);
        auto E = make_finite_field(q, 2);
        auto eF = embed(F, E);
        auto m = CurveModel::affine_line(F);
        FqPoly g = random_monic_irred(rng, F, 3);
        auto cp = resolve_point(m, PointId::finite(g));
        Cycle c = cycle_point(m, PointId::finite(g), random_canon(rng, cp.kappa));
        FFElem u = F->from_index(rng.range(1, F->q - 1));
        Cycle lhs = base_extend_line(mult_unit_ff(c, u), E);
        Cycle rhs = mult_unit_ff(base_extend_line(c, E), eF->apply(u));
        if (!(lhs == rhs))
          return "unit: q=" + std::to_string(q) + " g=" + poly_to_string(g);
        Cycle lhe = base_extend_line(mult_eta(c), E);
        Cycle rhe = mult_eta(base_extend_line(c, E));
        if (!(lhe == rhe)) return "eta: q=" + std::to_string(q) + " g=" + poly_to_string(g);
        return std::nullopt;
      }));

  rep.checks.push_back(run_check(
      "4.6.3: the differential anticommutes with unit symbols", trials,
      [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 1)];
        auto F = make_finite_field(q, 1);
        auto m = CurveModel::affine_line(F);
        RfCtx ctx{F};
        KmwRf alpha = random_symbol(rng, F, 1, 3);
        FFElem a = F->from_index(rng.range(1, F->q - 1));
        KmwRf aalpha = kmw_symbol(ctx, {RatFunc::of_poly(FqPoly::constant(a))}) * alpha;
        Cycle lhs = differential(m, aalpha);
        Cycle rhs = cycle_neg(mult_unit_ff(differential(m, alpha), a));
        if (lhs == rhs) return std::nullopt;
        return "q=" + std::to_string(q) + " a=" + F->to_string(a) +
               " alpha=" + kmw_to_string(alpha);
      }));

  rep.checks.push_back(run_check(
      "4.6: the differential anticommutes with eta", trials,
      [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 1)];
        auto F = make_finite_field(q, 1);
        auto m = CurveModel::affine_line(F);
        KmwRf alpha = random_symbol(rng, F, 2, 2);
        Cycle lhs = differential(m, eta_mul(alpha, 1));
        Cycle rhs = cycle_neg(mult_eta(differential(m, alpha)));
        if (lhs == rhs) return std::nullopt;
        return "q=" + std::to_string(q) + " alpha=" + kmw_to_string(alpha);
      }));

  rep.checks.push_back(run_check(
      "FD: residues vanish outside the certified support", trials,
      [&](long) -> std::optional<std::string> {
        i64 q = qpool[rng.range(0, 1)];
        auto F = make_finite_field(q, 1);
        KmwRf alpha = random_symbol(rng, F, static_cast<int>(rng.range(1, 2)), 3);
        auto support = support_polys(alpha);
        std::set<FqPoly> in_support(support.begin(), support.end());
        long sampled = 0;
        for (int guard = 0; guard < 400 && sampled < 20; ++guard) {
          FqPoly g = random_monic_irred(rng, F, 4);
          if (in_support.count(g)) continue;
          ++sampled;
          KmwCanon r = kmw_canonical(residue_at(FuncPlace::finite(g), alpha), Mode::MW);
          if (!r.is_zero())
            return "q=" + std::to_string(q) + " alpha=" + kmw_to_string(alpha) +
                   " leak at " + poly_to_string(g);
        }
        if (sampled < 20) return std::string("sampler starved");
        return std::nullopt;
      }));
  return rep;
}

Report reciprocity_suite(std::uint64_t seed, long trials, i64 q) {
  Report rep;
  i64 p = q;
  int f = 1;
  if (q == 9) {
    p = 3;
    f = 2;
  } else if (q == 4) {
    p = 2;
    f = 2;
  } else if (q == 8) {
    p = 2;
    f = 3;
  }
  auto F = make_finite_field(p, f);
  auto m = CurveModel::proj_line(F);
  RfCtx ctx{F};

  CheckResult pinned{"reciprocity: pinned symbols", 0, 0, ""};
  std::vector<KmwRf> fixed;
  fixed.push_back(kmw_symbol(ctx, {RatFunc::t(F)}));
  for (i64 idx = 1; idx < q; ++idx)
    fixed.push_back(kmw_symbol(ctx, {RatFunc::of_poly(FqPoly::constant(F->from_index(idx)))}));
  fixed.push_back(kmw_symbol(ctx, {RatFunc::t(F), RatFunc::of_poly(parse_poly(F, "t+1"))}));
  if (q % 2 == 1) {
    FqPoly tsq = FqPoly::t(F) * FqPoly::t(F) - FqPoly::constant(F->smallest_nonsquare());
    fixed.push_back(kmw_symbol(ctx, {RatFunc::of_poly(tsq)}));
  }
  for (const auto& a : fixed) {
    ++pinned.trials;
    KmwCanon s = reciprocity_sum(m, a);
    if (!s.is_zero()) {
      ++pinned.failures;
      if (pinned.counterexample.empty())
        pinned.counterexample = kmw_to_string(a) + " sum=" + s.to_string();
    }
  }
  rep.checks.push_back(pinned);

  Rng rng(seed ^ (0x52435243ULL + static_cast<std::uint64_t>(q)));
  rep.checks.push_back(run_check(
      "reciprocity: seeded random symbols", trials, [&](long) -> std::optional<std::string> {
        int degree = static_cast<int>(rng.range(1, 3));
        KmwRf a = random_symbol(rng, F, degree, 3);
        KmwCanon s = reciprocity_sum(m, a);
        if (s.is_zero()) return std::nullopt;
        return kmw_to_string(a) + " sum=" + s.to_string();
      }));
  return rep;
}

Report axiom_suite_all(std::uint64_t seed, long trials) {
  Report rep = axiom_suite_r1(seed, trials);
  rep.merge(axiom_suite_r2(seed, trials));
  rep.merge(axiom_suite_r3(seed, trials));
  rep.merge(axiom_suite_rost45());
  rep.merge(axiom_suite_cycle_compat(seed, trials));
  return rep;
}

}  // namespace mw
