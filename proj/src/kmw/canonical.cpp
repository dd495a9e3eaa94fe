#include "mwcycles/kmw/canonical.hpp"

#include <sstream>

namespace mw {

bool KmwCanon::is_zero() const {
  if (degree >= 2) return true;
  if (degree == 1) return unit == F->one();
  if (degree == 0) return gw.is_zero();
  if (mode == Mode::Milnor) return true;
  return w_rank == 0 && w_disc == 0;
}

bool KmwCanon::operator==(const KmwCanon& o) const {
  require(F == o.F, "FieldMismatch", "comparing classes over different fields");
  require(mode == o.mode, "DimensionMismatch", "comparing classes across coefficient modes");
  if (degree != o.degree) return false;
  if (degree >= 2) return true;
  if (degree == 1) return unit == o.unit;
  if (degree == 0) return gw == o.gw;
  if (mode == Mode::Milnor) return true;
  return w_rank == o.w_rank && w_disc == o.w_disc;
}

std::string KmwCanon::to_string() const {
  std::ostringstream os;
  if (degree >= 2 || is_zero()) return "0";
  if (degree == 1) return "[" + F->to_string(unit) + "]";
  if (degree == 0) {
    if (mode == Mode::Milnor) return std::to_string(gw.rank);
    return gw_to_string(gw);
  }
  os << "eta^" << -degree << "*(" << w_rank << "," << w_disc << ")";
  return os.str();
}

KmwCanon canon_zero(const FqPtr& F, int degree, Mode mode) {
  KmwCanon r;
  r.F = F;
  r.mode = mode;
  r.degree = degree;
  r.gw = gw_zero(F);
  r.unit = F->one();
  return r;
}

KmwCanon canon_of_gw(const GwFin& x, Mode mode) {
  KmwCanon r = canon_zero(x.F, 0, mode);
  r.gw = x;
  if (mode == Mode::Milnor) r.gw.disc = 0;
  return r;
}

KmwCanon canon_of_unit(const FFElem& u, Mode mode) {
  require(!u.is_zero(), "ZeroSymbolEntry", "unit class of zero");
  KmwCanon r = canon_zero(u.F, 1, mode);
  r.unit = u;
  return r;
}

namespace {

// Image of eta^k [u_1..u_k] in GW coordinates (degree-0 term).
GwFin deg0_term(const FqPtr& F, long long coeff, int k, const std::vector<FFElem>& sym) {
  if (k == 0) return gw_scale(coeff, gw_one(F));
  if (F->p == 2) return gw_zero(F);  // eta[u] = <u> - 1 = 0
  if (k == 1) {
    // eta[u] = <u> - 1 = (0, chi(u))
    return gw_scale(coeff, GwFin{F, 0, F->chi(sym[0])});
  }
  // k >= 2: a product of k factors from the fundamental ideal, and I^2 = 0.
  return gw_zero(F);
}

std::pair<int, int> witt_add(const FqPtr& F, std::pair<int, int> a, std::pair<int, int> b) {
  GwFin x{F, a.first, a.second};
  GwFin y{F, b.first, b.second};
  return witt_class(x + y);
}

}  // namespace

KmwCanon kmw_canonical(const KmwFF& x, Mode mode) {
  const FqPtr& F = x.ctx.F;
  KmwCanon r = canon_zero(F, x.degree, mode);
  if (x.degree >= 2) return r;

  if (x.degree == 1) {
    FFElem acc = F->one();
    for (const auto& t : x.terms) {
      if (t.eta > 0) continue;  // lands in I^2 and in eta * K^M, both zero here
      FFElem u = t.sym[0];
      long long c = t.coeff;
      FFElem base = c >= 0 ? u : F->inv(u);
      long long n = c >= 0 ? c : -c;
      for (long long i = 0; i < n; ++i) acc = F->mul(acc, base);
    }
    r.unit = acc;
    return r;
  }

  if (x.degree == 0) {
    GwFin g = gw_zero(F);
    for (const auto& t : x.terms)
      g = g + deg0_term(F, t.coeff, t.eta, t.sym);
    if (mode == Mode::Milnor) g.disc = 0;
    r.gw = g;
    return r;
  }

  // Negative degree: eta^{-degree} times a degree-0 class, valued in W(F_q).
  if (mode == Mode::Milnor) return r;
  std::pair<int, int> w{0, 0};
  for (const auto& t : x.terms) {
    int k0 = t.eta + x.degree;  // eta exponent left after factoring out eta^{-degree}
    GwFin g = deg0_term(F, t.coeff, k0, t.sym);
    w = witt_add(F, w, witt_class(g));
  }
  r.w_rank = w.first;
  r.w_disc = w.second;
  return r;
}

KmwCanon canon_add(const KmwCanon& a, const KmwCanon& b) {
  require(a.degree == b.degree, "DimensionMismatch", "adding classes of different degrees");
  require(a.mode == b.mode, "DimensionMismatch", "adding classes across coefficient modes");
  KmwCanon r = a;
  if (a.degree >= 2) return r;
  if (a.degree == 1) {
    r.unit = a.F->mul(a.unit, b.unit);
    return r;
  }
  if (a.degree == 0) {
    r.gw = a.gw + b.gw;
    if (a.mode == Mode::Milnor) r.gw.disc = 0;
    return r;
  }
  auto w = witt_add(a.F, {a.w_rank, a.w_disc}, {b.w_rank, b.w_disc});
  r.w_rank = w.first;
  r.w_disc = w.second;
  return r;
}

KmwCanon canon_neg(const KmwCanon& a) {
  KmwCanon r = a;
  if (a.degree >= 2) return r;
  if (a.degree == 1) {
    r.unit = a.F->inv(a.unit);
    return r;
  }
  if (a.degree == 0) {
    r.gw = -a.gw;
    return r;
  }
  auto w = witt_class(GwFin{a.F, -a.w_rank, a.w_disc});
  r.w_rank = w.first;
  r.w_disc = w.second;
  return r;
}

KmwCanon canon_mul_diag(const KmwCanon& x, const FFElem& a) {
  require(!a.is_zero(), "ZeroElement", "<0> acting on a class");
  KmwCanon r = x;
  if (x.mode == Mode::Milnor) return r;  // <a> acts as 1 with eta = 0
  if (x.degree >= 2) return r;
  if (x.degree == 1) return r;  // <a>[u] = [u] + eta[a][u], the eta part dies
  if (x.degree == 0) {
    r.gw = gw_diag(a) * x.gw;
    return r;
  }
  auto w = witt_class(gw_diag(a) * GwFin{x.F, x.w_rank, x.w_disc});
  r.w_rank = w.first;
  r.w_disc = w.second;
  return r;
}

KmwCanon canon_scale(long long n, const KmwCanon& x) {
  KmwCanon r = x;
  if (x.degree >= 2) return r;
  if (x.degree == 1) {
    FFElem base = n >= 0 ? x.unit : x.F->inv(x.unit);
    long long m = n >= 0 ? n : -n;
    FFElem acc = x.F->one();
    for (long long i = 0; i < m; ++i) acc = x.F->mul(acc, base);
    r.unit = acc;
    return r;
  }
  if (x.degree == 0) {
    r.gw = gw_scale(n, x.gw);
    if (x.mode == Mode::Milnor) r.gw.disc = 0;
    return r;
  }
  auto w = witt_class(gw_scale(n, GwFin{x.F, x.w_rank, x.w_disc}));
  r.w_rank = w.first;
  r.w_disc = w.second;
  return r;
}

KmwCanon canon_transfer(const FqEmbedding& e, const KmwCanon& x, TransferMode tmode) {
  require(x.F == e.dst, "FieldMismatch", "transfer from the wrong field");
  KmwCanon r = canon_zero(e.src, x.degree, x.mode);
  if (x.degree >= 2) return r;
  if (x.degree == 1) {
    // Both conventions agree in degree 1: the transfer is the field norm.
    r.unit = rel_norm(e, x.unit);
    return r;
  }
  if (x.degree == 0) {
    if (x.mode == Mode::Milnor) {
      // K^M_0 = Z transfers by the degree of the extension.
      int m = e.dst->f / e.src->f;
      r.gw = GwFin{e.src, static_cast<long long>(m) * x.gw.rank, 0};
      return r;
    }
    r.gw = gw_transfer(e, x.gw, tmode);
    return r;
  }
  if (x.mode == Mode::Milnor) return r;
  GwFin lift{x.F, x.w_rank, x.w_disc};
  auto w = witt_class(gw_transfer(e, lift, tmode));
  r.w_rank = w.first;
  r.w_disc = w.second;
  return r;
}

KmwCanon canon_pullback(const FqEmbedding& e, const KmwCanon& x) {
  require(x.F == e.src, "FieldMismatch", "pullback from the wrong field");
  KmwCanon r = canon_zero(e.dst, x.degree, x.mode);
  if (x.degree >= 2) return r;
  if (x.degree == 1) {
    r.unit = e.apply(x.unit);
    return r;
  }
  if (x.degree == 0) {
    if (x.mode == Mode::Milnor) {
      r.gw = GwFin{e.dst, x.gw.rank, 0};
      return r;
    }
    r.gw = gw_pullback(e, x.gw);
    return r;
  }
  if (x.mode == Mode::Milnor) return r;
  auto w = witt_class(gw_pullback(e, GwFin{x.F, x.w_rank, x.w_disc}));
  r.w_rank = w.first;
  r.w_disc = w.second;
  return r;
}

KmwFF canon_to_kmw(const KmwCanon& x) {
  FFCtx ctx{x.F};
  KmwFF r = kmw_zero(ctx, x.degree);
  if (x.degree >= 2 || x.is_zero()) return r;
  if (x.degree == 1) {
    return kmw_symbol(ctx, {x.unit});
  }
  if (x.degree == 0) {
    // rank * 1 + disc * (<s> - 1) with s the smallest nonsquare
    r = kmw_const(ctx, x.gw.rank);
    if (x.gw.disc != 0) {
      FFElem s = x.F->smallest_nonsquare();
      r = r + eta_mul(kmw_symbol(ctx, {s}), 1);
    }
    return r;
  }
  // negative degree: eta^{-deg} * lift of the Witt coordinates
  KmwFF lift = kmw_const(ctx, x.w_rank);
  if (x.w_disc != 0) {
    FFElem s = x.F->smallest_nonsquare();
    lift = lift + eta_mul(kmw_symbol(ctx, {s}), 1);
  }
  return eta_mul(lift, -x.degree);
}

}  // namespace mw
