#include "mwcycles/cycle/model.hpp"

#include <algorithm>
#include <set>

namespace mw {

KmwCanon residue_canonical_k(const QuadPlace& pl, const KmwQuad& x, Mode mode) {
  return kmw_canonical(residue_at(pl, x), mode);
}

// ----- CurveModel -----

CurveModel CurveModel::spec_field(const FqPtr& F) { return CurveModel{ModelKind::SpecField, F, nullptr}; }
CurveModel CurveModel::affine_line(const FqPtr& F) { return CurveModel{ModelKind::AffineLine, F, nullptr}; }
CurveModel CurveModel::proj_line(const FqPtr& F) { return CurveModel{ModelKind::ProjLine, F, nullptr}; }
CurveModel CurveModel::spec_ok(const Int& d) {
  return CurveModel{ModelKind::SpecOK, nullptr, QuadField::make(d)};
}
CurveModel CurveModel::spec_z() { return CurveModel{ModelKind::SpecZ, nullptr, nullptr}; }

std::string CurveModel::name() const {
  switch (kind) {
    case ModelKind::SpecField: return "SpecField(" + F->name() + ")";
    case ModelKind::AffineLine: return "AffineLine(" + F->name() + ")";
    case ModelKind::ProjLine: return "ProjLine(" + F->name() + ")";
    case ModelKind::SpecOK: return "SpecOK(" + K->d.get_str() + ")";
    case ModelKind::SpecZ: return "SpecZ";
  }
  return "?";
}

bool CurveModel::operator==(const CurveModel& o) const {
  if (kind != o.kind) return false;
  if (F != o.F) return false;
  return K == o.K;
}

// ----- PointId -----

PointId PointId::finite(const FqPoly& g) {
  require(g.is_monic() && is_irreducible(g), "NoSuchPoint",
          "finite line points are monic irreducible polynomials; got " + poly_to_string(g));
  PointId id;
  id.kind = Kind::Finite;
  id.poly = g;
  return id;
}

PointId PointId::infinity() {
  PointId id;
  id.kind = Kind::Infinity;
  return id;
}

PointId PointId::prime(const QuadPrime& pr) {
  PointId id;
  id.kind = Kind::Prime;
  id.p = pr.p;
  id.index = pr.index;
  id.res_deg = pr.f;
  return id;
}

PointId PointId::rational_prime(const Int& p) {
  PointId id;
  id.kind = Kind::Prime;
  id.p = p;
  id.index = 0;
  id.res_deg = 1;
  return id;
}

bool PointId::operator<(const PointId& o) const {
  if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
  switch (kind) {
    case Kind::Generic:
    case Kind::Infinity: return false;
    case Kind::Finite: return poly < o.poly;
    case Kind::Prime: {
      Int na = norm(), nb = o.norm();
      if (na != nb) return na < nb;
      if (p != o.p) return p < o.p;
      return index < o.index;
    }
  }
  return false;
}

bool PointId::operator==(const PointId& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Generic:
    case Kind::Infinity: return true;
    case Kind::Finite: return poly == o.poly;
    case Kind::Prime: return p == o.p && index == o.index && res_deg == o.res_deg;
  }
  return false;
}

std::string PointId::to_string() const {
  switch (kind) {
    case Kind::Generic: return "generic";
    case Kind::Finite: return poly_to_string(poly);
    case Kind::Infinity: return "inf";
    case Kind::Prime:
      if (res_deg == 1 && index == 0 && p == norm()) {
        // still print index for quadratic primes; rational primes use the bare p
      }
      return p.get_str() + "," + std::to_string(index);
  }
  return "?";
}

// ----- closed points -----

namespace {

ClosedPoint line_point(const CurveModel& m, const FqPoly& g) {
  ClosedPoint cp;
  cp.id = PointId::finite(g);
  cp.degree = g.deg();
  auto pl = std::make_shared<FuncPlace>(FuncPlace::finite(g));
  cp.kappa = pl->kappa;
  cp.place = pl;
  return cp;
}

ClosedPoint infinity_point(const CurveModel& m) {
  ClosedPoint cp;
  cp.id = PointId::infinity();
  cp.degree = 1;
  auto pl = std::make_shared<FuncPlace>(FuncPlace::infinity(m.F));
  cp.kappa = pl->kappa;
  cp.place = pl;
  return cp;
}

ClosedPoint quad_point(const QuadPrime& pr) {
  ClosedPoint cp;
  cp.id = PointId::prime(pr);
  cp.degree = pr.f;
  auto pl = std::make_shared<QuadPlace>(QuadPlace::of(pr));
  cp.kappa = pl->kappa;
  cp.qplace = pl;
  return cp;
}

ClosedPoint rat_point(const Int& p) {
  ClosedPoint cp;
  cp.id = PointId::rational_prime(p);
  cp.degree = 1;
  auto pl = std::make_shared<RatPlace>(RatPlace::at(p));
  cp.kappa = pl->kappa;
  cp.rplace = pl;
  return cp;
}

std::vector<Int> primes_up_to(const Int& bound) {
  std::vector<Int> ps;
  for (Int p = 2; p <= bound; ++p)
    if (is_probable_prime(p)) ps.push_back(p);
  return ps;
}

}  // namespace

std::vector<ClosedPoint> closed_points(const CurveModel& m, long bound) {
  require(bound >= 1, "InvalidArgument", "closed_points needs bound >= 1");
  std::vector<ClosedPoint> out;
  switch (m.kind) {
    case ModelKind::SpecField: {
      ClosedPoint cp;
      cp.id = PointId::generic();
      cp.degree = 1;
      cp.kappa = m.F;
      out.push_back(cp);
      break;
    }
    case ModelKind::AffineLine:
    case ModelKind::ProjLine: {
      for (int d = 1; d <= bound; ++d)
        for (const auto& g : monic_irreducibles(m.F, d)) out.push_back(line_point(m, g));
      if (m.kind == ModelKind::ProjLine) out.push_back(infinity_point(m));
      break;
    }
    case ModelKind::SpecOK: {
      for (const Int& p : primes_up_to(Int(bound))) {
        for (const auto& pr : split_prime(m.K, p)) {
          Int nrm = powz(p, static_cast<unsigned long>(pr.f));
          if (nrm <= bound) out.push_back(quad_point(pr));
        }
      }
      std::sort(out.begin(), out.end(),
                [](const ClosedPoint& a, const ClosedPoint& b) { return a.id < b.id; });
      break;
    }
    case ModelKind::SpecZ: {
      for (const Int& p : primes_up_to(Int(bound))) out.push_back(rat_point(p));
      break;
    }
  }
  return out;
}

ClosedPoint resolve_point(const CurveModel& m, const PointId& id) {
  switch (id.kind) {
    case PointId::Kind::Generic: {
      require(m.kind == ModelKind::SpecField, "NoSuchPoint",
              "the generic point is a closed point only on SpecField");
      ClosedPoint cp;
      cp.id = id;
      cp.degree = 1;
      cp.kappa = m.F;
      return cp;
    }
    case PointId::Kind::Finite: {
      require(m.is_line(), "NoSuchPoint", "finite polynomial points live on line models");
      require(id.poly.F == m.F, "FieldMismatch", "point polynomial over the wrong base field");
      return line_point(m, id.poly);
    }
    case PointId::Kind::Infinity: {
      require(m.kind == ModelKind::ProjLine, "NoSuchPoint",
              "the infinite place belongs to ProjLine only");
      return infinity_point(m);
    }
    case PointId::Kind::Prime: {
      if (m.kind == ModelKind::SpecZ) {
        require(id.index == 0 && is_probable_prime(id.p), "NoSuchPoint",
                "rational primes have index 0");
        return rat_point(id.p);
      }
      require(m.kind == ModelKind::SpecOK, "NoSuchPoint", "prime-ideal points live on SpecOK");
      auto prs = split_prime(m.K, id.p);
      for (const auto& pr : prs)
        if (pr.index == id.index) return quad_point(pr);
      throw MwError("NoSuchPoint", "no prime with index " + std::to_string(id.index) +
                                       " above " + id.p.get_str());
    }
  }
  throw MwError("NoSuchPoint", "unrecognized point kind");
}

// ----- support certification -----

std::vector<FqPoly> support_polys(const KmwRf& x) {
  std::set<FqPoly> seen;
  std::vector<FqPoly> out;
  for (const auto& t : x.terms)
    for (const auto& u : t.sym) {
      require(!u.is_zero(), "ZeroSymbolEntry", "symbol slot is zero");
      for (const FqPoly* part : {&u.num, &u.den}) {
        if (part->deg() < 1) continue;
        for (const auto& [g, e] : factor(*part).factors)
          if (seen.insert(g).second) out.push_back(g);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool supports_infinity(const KmwRf& x) {
  for (const auto& t : x.terms)
    for (const auto& u : t.sym)
      if (u.num.deg() != u.den.deg()) return true;
  return false;
}

namespace {

std::vector<Int> prime_divisors(Int n) {
  std::vector<Int> out;
  n = abs(n);
  require(n != 0, "ZeroSymbolEntry", "zero has no prime support");
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      remove_factor(n, p);
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

std::vector<QuadPrime> support_primes(const QfPtr& K, const KmwQuad& x) {
  std::set<Int> rational;
  for (const auto& t : x.terms)
    for (const auto& u : t.sym) {
      require(!u.is_zero(), "ZeroSymbolEntry", "symbol slot is zero");
      Int m = lcmz(u.a.get_den(), u.b.get_den());
      QElem z = q_make(K, u.a * Rat(m), u.b * Rat(m));
      Rat nz = q_norm(z);
      require(nz.get_den() == 1, "InternalError", "cleared element is not integral");
      for (const auto& p : prime_divisors(m)) rational.insert(p);
      for (const auto& p : prime_divisors(nz.get_num())) rational.insert(p);
    }
  std::vector<QuadPrime> out;
  for (const auto& p : rational) {
    for (const auto& pr : split_prime(K, p)) {
      bool hit = false;
      for (const auto& t : x.terms) {
        for (const auto& u : t.sym)
          if (q_valuation(pr, u) != 0) {
            hit = true;
            break;
          }
        if (hit) break;
      }
      if (hit) out.push_back(pr);
    }
  }
  std::sort(out.begin(), out.end(), [](const QuadPrime& a, const QuadPrime& b) {
    return PointId::prime(a) < PointId::prime(b);
  });
  return out;
}

std::vector<Int> support_primes_q(const KmwQ& x) {
  std::set<Int> seen;
  for (const auto& t : x.terms)
    for (const auto& u : t.sym) {
      require(u != 0, "ZeroSymbolEntry", "symbol slot is zero");
      for (const auto& p : prime_divisors(u.get_num())) seen.insert(p);
      for (const auto& p : prime_divisors(u.get_den())) seen.insert(p);
    }
  return std::vector<Int>(seen.begin(), seen.end());
}

// ----- residue-field transport -----

FFElem FqHom::apply(const FFElem& x) const {
  require(x.F == from, "FieldMismatch", "transporting an element of the wrong field");
  const i64 p = from->p;
  const int fa = from->f;
  FFElem acc = to->zero();
  for (int r = 0; r < fa; ++r) {
    i64 c = 0;
    for (int i = 0; i < fa; ++i) {
      i64 digit = i < static_cast<int>(x.c.size()) ? x.c[i] : 0;
      c = (c + coord_mat[r][i] * (digit % p)) % p;
    }
    c = ((c % p) + p) % p;
    if (c != 0) acc = to->add(acc, to->mul(to->from_int(c), basis_img[r]));
  }
  return acc;
}

FqHom theta_compatible_hom(const FqPtr& F, const FqPtr& kappa_from, const FFElem& base_gen_from,
                           const FFElem& theta_from, const FqPtr& kappa_to,
                           const FFElem& base_gen_to, const FFElem& theta_to) {
  const i64 p = F->p;
  require(kappa_from->p == p && kappa_to->p == p, "FieldMismatch",
          "theta transport needs equal characteristic");
  const int fa = kappa_from->f;
  require(fa % F->f == 0, "FieldMismatch", "base does not divide the source");
  const int rel = fa / F->f;

  // The basis {base^k theta^j} of the source and its images in the target.
  std::vector<std::vector<i64>> cols;
  std::vector<FFElem> imgs;
  FFElem theta_pow = kappa_from->one();
  FFElem theta_pow_to = kappa_to->one();
  for (int j = 0; j < rel; ++j) {
    FFElem v = theta_pow;
    FFElem w = theta_pow_to;
    for (int k = 0; k < F->f; ++k) {
      std::vector<i64> col(static_cast<size_t>(fa), 0);
      for (size_t i = 0; i < v.c.size(); ++i) col[i] = ((v.c[i] % p) + p) % p;
      cols.push_back(col);
      imgs.push_back(w);
      v = kappa_from->mul(v, base_gen_from);
      w = kappa_to->mul(w, base_gen_to);
    }
    theta_pow = kappa_from->mul(theta_pow, theta_from);
    theta_pow_to = kappa_to->mul(theta_pow_to, theta_to);
  }

  // Invert the basis matrix mod p (Gauss-Jordan on [M | I]).
  std::vector<std::vector<i64>> mat(static_cast<size_t>(fa),
                                    std::vector<i64>(2 * static_cast<size_t>(fa), 0));
  for (int i = 0; i < fa; ++i) {
    for (int c = 0; c < fa; ++c) mat[i][c] = cols[c][i];
    mat[i][fa + i] = 1;
  }
  for (int col = 0; col < fa; ++col) {
    int sel = -1;
    for (int i = col; i < fa; ++i)
      if (mat[i][col] % p != 0) {
        sel = i;
        break;
      }
    require(sel >= 0, "InternalError", "theta does not generate the source over the base");
    std::swap(mat[sel], mat[col]);
    i64 inv = mod_inv_i64(mat[col][col], p);
    for (int c = 0; c < 2 * fa; ++c) mat[col][c] = (mat[col][c] * inv) % p;
    for (int i = 0; i < fa; ++i) {
      if (i == col) continue;
      i64 fct = ((mat[i][col] % p) + p) % p;
      if (fct == 0) continue;
      for (int c = 0; c < 2 * fa; ++c)
        mat[i][c] = (((mat[i][c] - fct * mat[col][c]) % p) + p) % p;
    }
  }
  std::vector<std::vector<i64>> inv_mat(static_cast<size_t>(fa),
                                        std::vector<i64>(static_cast<size_t>(fa), 0));
  for (int i = 0; i < fa; ++i)
    for (int c = 0; c < fa; ++c) inv_mat[i][c] = mat[i][fa + c];

  FqHom h{kappa_from, kappa_to, std::move(inv_mat), std::move(imgs)};

  // Linearity is built in; verify multiplicativity on the canonical
  // generator, which pins the unique field homomorphism.
  FFElem g = kappa_from->gen();
  require(h.apply(kappa_from->one()) == kappa_to->one(), "InternalError",
          "theta transport does not fix 1");
  require(h.apply(kappa_from->mul(g, g)) == kappa_to->mul(h.apply(g), h.apply(g)),
          "InternalError", "theta transport is not multiplicative");
  require(h.apply(theta_from) == theta_to, "InternalError",
          "theta transport misses the presentation root");
  return h;
}

KmwCanon canon_map(const KmwCanon& x, const FqPtr& to,
                   const std::function<FFElem(const FFElem&)>& iota) {
  KmwFF f = canon_to_kmw(x);
  FFCtx out{to};
  Kmw<FFCtx> g = kmw_zero(out, f.degree);
  for (const auto& t : f.terms) {
    KmwTerm<FFCtx> nt{t.coeff, t.eta, {}};
    for (const auto& u : t.sym) nt.sym.push_back(iota(u));
    g.terms.push_back(std::move(nt));
  }
  kmw_compress(g);
  return kmw_canonical(g, x.mode);
}

}  // namespace mw
