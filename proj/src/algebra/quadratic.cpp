#include "mwcycles/algebra/quadratic.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mw {

namespace {

/// Squarefree core of a nonzero integer: Q(sqrt(s^2 d0)) = Q(sqrt(d0)).
Int squarefree_core(const Int& d) {
  Int rest = abs(d);
  Int core = d < 0 ? -1 : 1;
  for (Int f = 2; f * f <= rest; ++f) {
    long v = remove_factor(rest, f);
    if (v % 2 == 1) core *= f;
  }
  return core * rest;
}

Int mod_positive(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

std::shared_ptr<const QuadField> QuadField::make(const Int& d) {
  require(abs(d) <= 1000000, "TooLarge", "|d| is capped at 10^6");
  // Fields are indexed by the squarefree core (so -8 names the same field
  // as -2), matching the usual convention for Q(sqrt d).
  Int core = d == 0 ? Int(0) : squarefree_core(d);
  require(core != 0 && core != 1, "NotPrime",
          "d must reduce to a squarefree integer other than 0, 1");
  require(abs(core) <= 10000, "TooLarge", "|d| is capped at 10^4");
  // One object per field so that contexts can be compared by identity.
  static std::map<long, std::shared_ptr<const QuadField>> cache;
  if (auto it = cache.find(core.get_si()); it != cache.end()) return it->second;
  auto k = std::make_shared<QuadField>();
  k->d = core;
  k->half = mod_positive(core, Int(4)) == 1;
  k->disc = k->half ? core : 4 * core;
  if (k->half) {
    k->tr_om = 1;
    k->nm_om = (1 - core) / 4;
  } else {
    k->tr_om = 0;
    k->nm_om = -core;
  }
  cache[core.get_si()] = k;
  return k;
}

bool QElem::is_integral() const { return a.get_den() == 1 && b.get_den() == 1; }

bool QElem::operator==(const QElem& o) const {
  require(K == o.K, "FieldMismatch", "comparing elements of different quadratic fields");
  return a == o.a && b == o.b;
}

QElem q_make(const QfPtr& K, const Rat& a, const Rat& b) {
  QElem x{K, a, b};
  x.a.canonicalize();
  x.b.canonicalize();
  return x;
}

QElem q_from_int(const QfPtr& K, const Int& n) { return q_make(K, Rat(n), Rat(0)); }
QElem q_omega(const QfPtr& K) { return q_make(K, Rat(0), Rat(1)); }

QElem operator+(const QElem& x, const QElem& y) {
  require(x.K == y.K, "FieldMismatch", "quadratic add");
  return q_make(x.K, x.a + y.a, x.b + y.b);
}
QElem operator-(const QElem& x, const QElem& y) { return x + (-y); }
QElem operator-(const QElem& x) { return q_make(x.K, -x.a, -x.b); }

QElem operator*(const QElem& x, const QElem& y) {
  require(x.K == y.K, "FieldMismatch", "quadratic mul");
  // (a1 + b1 w)(a2 + b2 w) with w^2 = tr*w - nm
  Rat w2b = x.b * y.b;
  Rat a = x.a * y.a - w2b * Rat(x.K->nm_om);
  Rat b = x.a * y.b + x.b * y.a + w2b * Rat(x.K->tr_om);
  return q_make(x.K, a, b);
}

QElem q_conj(const QElem& x) {
  // conj(w) = tr - w
  return q_make(x.K, x.a + x.b * Rat(x.K->tr_om), -x.b);
}

Rat q_norm(const QElem& x) {
  Rat r = x.a * x.a + x.a * x.b * Rat(x.K->tr_om) + x.b * x.b * Rat(x.K->nm_om);
  r.canonicalize();
  return r;
}

Rat q_trace(const QElem& x) { return 2 * x.a + x.b * Rat(x.K->tr_om); }

QElem q_inv(const QElem& x) {
  require(!x.is_zero(), "ZeroElement", "inverse of zero");
  Rat n = q_norm(x);
  QElem c = q_conj(x);
  return q_make(x.K, c.a / n, c.b / n);
}

QElem operator/(const QElem& x, const QElem& y) { return x * q_inv(y); }

std::string q_to_string(const QElem& x) {
  std::ostringstream os;
  if (x.b == 0) return x.a.get_str();
  if (x.a != 0) os << x.a.get_str();
  if (x.b > 0 && x.a != 0) os << "+";
  if (x.b == -1)
    os << "-";
  else if (x.b != 1)
    os << x.b.get_str() << "*";
  os << "w";
  return os.str();
}

// ----- ideals -----

bool QIdeal::contains(const QElem& x) const {
  require(x.is_integral(), "NotGlobalUnit", "membership is for integral elements");
  // x = u + v w in Z*(a, 0) + Z*(b, c): need v = 0 mod c and u - (v/c) b = 0 mod a
  Int u = x.a.get_num(), v = x.b.get_num();
  if (c == 0) return v == 0 && mod_positive(u, a) == 0;
  if (v % c != 0) return false;
  Int t = v / c;
  return mod_positive(u - t * b, a) == 0;
}

namespace {

// Hermite form of the 2 x n matrix whose columns are (coordinates of)
// generators: returns (a, b, c) with lattice Z(a,0) + Z(b,c).
QIdeal hnf_from_columns(const QfPtr& K, std::vector<std::pair<Int, Int>> cols) {
  // second row first: gcd of all second coordinates
  Int c = 0;
  // Use the extended gcd accumulation: keep one vector with second coord g,
  // reduce others to second coord 0.
  std::pair<Int, Int> carrier{0, 0};
  std::vector<Int> firsts;
  for (auto& col : cols) {
    if (col.second == 0) {
      if (col.first != 0) firsts.push_back(col.first);
      continue;
    }
    if (carrier.second == 0) {
      carrier = col;
      continue;
    }
    // gcd step on (carrier.second, col.second)
    while (col.second != 0) {
      Int q = carrier.second / col.second;
      carrier.first -= q * col.first;
      carrier.second -= q * col.second;
      std::swap(carrier, col);
    }
    if (col.first != 0) firsts.push_back(col.first);
  }
  c = abs(carrier.second);
  if (carrier.second < 0) {
    carrier.first = -carrier.first;
    carrier.second = -carrier.second;
  }
  Int a = 0;
  for (const auto& f : firsts) a = gcdz(a, f);
  require(a != 0 || c != 0, "ZeroElement", "zero ideal");
  require(a != 0 && c != 0, "ZeroElement", "ideal of rank < 2 (not a nonzero ideal)");
  Int b = mod_positive(carrier.first, a);
  QIdeal r{K, a, b, c};
  return r;
}

std::pair<Int, Int> coords(const QElem& x) {
  require(x.is_integral(), "NotGlobalUnit", "ideal generators must be integral");
  return {x.a.get_num(), x.b.get_num()};
}

}  // namespace

QIdeal ideal_from_gens(const QfPtr& K, const std::vector<QElem>& gens) {
  // columns: g and g*omega for each generator
  std::vector<std::pair<Int, Int>> cols;
  for (const auto& g : gens) {
    cols.push_back(coords(g));
    cols.push_back(coords(g * q_omega(K)));
  }
  return hnf_from_columns(K, std::move(cols));
}

QIdeal ideal_mul(const QIdeal& x, const QIdeal& y) {
  require(x.K == y.K, "FieldMismatch", "ideal product");
  const QfPtr& K = x.K;
  QElem xa = q_from_int(K, x.a), xb = q_make(K, Rat(x.b), Rat(x.c));
  QElem ya = q_from_int(K, y.a), yb = q_make(K, Rat(y.b), Rat(y.c));
  std::vector<QElem> gens{xa * ya, xa * yb, xb * ya, xb * yb};
  return ideal_from_gens(K, gens);
}

QIdeal ideal_pow(const QIdeal& x, int e) {
  QIdeal acc = unit_ideal(x.K);
  for (int i = 0; i < e; ++i) acc = ideal_mul(acc, x);
  return acc;
}

QIdeal principal_ideal(const QElem& x) {
  require(!x.is_zero(), "ZeroElement", "principal ideal of zero");
  return ideal_from_gens(x.K, {x});
}

QIdeal unit_ideal(const QfPtr& K) { return QIdeal{K, 1, 0, 1}; }

// ----- primes -----

namespace {

std::map<std::pair<Int, Int>, std::vector<QuadPrime>>& prime_cache() {
  static std::map<std::pair<Int, Int>, std::vector<QuadPrime>> cache;
  return cache;
}

// Scan order: radius ascending; within a radius by (|y|, y<0, |x|, x<0).
std::vector<std::pair<long, long>> box_layer(long r) {
  std::vector<std::pair<long, long>> out;
  std::vector<long> ys, xs;
  auto order = [](long r_) {
    std::vector<long> v;
    for (long t = 0; t <= r_; ++t) {
      v.push_back(t);
      if (t != 0) v.push_back(-t);
    }
    return v;
  };
  ys = order(r);
  xs = order(r);
  for (long y : ys)
    for (long x : xs) {
      if (std::max(std::labs(x), std::labs(y)) != r) continue;
      if (x == 0 && y == 0) continue;
      out.emplace_back(x, y);
    }
  return out;
}

QElem uniformizer_for(const QfPtr& K, const QIdeal& P, const Int& p) {
  // Smallest two-element generator: first z in scan order with (p, z) = P
  // and z not in P^2.
  QIdeal P2 = ideal_mul(P, P);
  for (long r = 1; r <= 64; ++r) {
    for (auto [x, y] : box_layer(r)) {
      QElem z = q_make(K, Rat(x), Rat(y));
      if (!P.contains(z)) continue;
      if (P2.contains(z)) continue;
      QIdeal test = ideal_from_gens(K, {q_from_int(K, p), z});
      if (test == P) return z;
    }
  }
  throw MwError("RelationSearchExhausted", "no small uniformizer found (internal)");
}

}  // namespace

QBoxScan::QBoxScan(const QfPtr& k) : K(k) {}

QElem QBoxScan::next() {
  while (pos >= current.size()) {
    ++radius;
    current = box_layer(radius);
    pos = 0;
  }
  auto [x, y] = current[pos++];
  return q_make(K, Rat(x), Rat(y));
}

std::vector<QuadPrime> split_prime(const QfPtr& K, const Int& p) {
  require(p >= 2 && is_probable_prime(p), "NotPrime", "p must be a rational prime");
  auto key = std::make_pair(K->d, p);
  auto& cache = prime_cache();
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  // Factor the minimal polynomial of omega mod p: x^2 - tr x + nm.
  require(p.fits_slong_p(), "TooLarge", "prime too large");
  i64 pp = p.get_si();
  std::vector<i64> roots;
  for (i64 r = 0; r < pp; ++r) {
    Int v = mod_positive(Int(r) * Int(r) - K->tr_om * Int(r) + K->nm_om, p);
    if (v == 0) roots.push_back(r);
  }
  std::vector<QuadPrime> out;
  bool ramified = (mod_positive(K->disc, p) == 0);
  auto make_prime = [&](SplitKind kind, int index, i64 root) {
    QuadPrime P;
    P.K = K;
    P.p = p;
    P.kind = kind;
    P.index = index;
    if (kind == SplitKind::Inert) {
      P.e = 1;
      P.f = 2;
      P.ideal = ideal_from_gens(K, {q_from_int(K, p)});
      P.pi = q_from_int(K, p);
      P.kappa = make_finite_field(pp, 2);
      // omega_bar = root of x^2 - tr x + nm in F_{p^2}, first in scan order
      bool found = false;
      for (i64 idx = 0; idx < P.kappa->q && !found; ++idx) {
        FFElem cand = P.kappa->from_index(idx);
        FFElem val = P.kappa->add(
            P.kappa->sub(P.kappa->mul(cand, cand),
                         P.kappa->mul(P.kappa->from_int(K->tr_om.get_si()), cand)),
            P.kappa->from_int(K->nm_om.get_si()));
        if (val.is_zero()) {
          P.omega_bar = cand;
          found = true;
        }
      }
      require(found, "NotPrime", "no residue image of omega (internal)");
    } else {
      P.e = (kind == SplitKind::Ramified) ? 2 : 1;
      P.f = 1;
      P.ideal = ideal_from_gens(K, {q_from_int(K, p), q_omega(K) - q_from_int(K, Int(root))});
      P.kappa = make_finite_field(pp, 1);
      P.omega_bar = P.kappa->from_int(root);
      P.pi = uniformizer_for(K, P.ideal, p);
    }
    out.push_back(std::move(P));
  };

  if (ramified) {
    require(roots.size() >= 1, "NotPrime", "ramified prime with no root (internal)");
    make_prime(SplitKind::Ramified, 0, roots[0]);
  } else if (roots.empty()) {
    make_prime(SplitKind::Inert, 0, 0);
  } else {
    require(roots.size() == 2, "NotPrime", "split prime root count (internal)");
    std::sort(roots.begin(), roots.end());
    make_prime(SplitKind::Split, 0, roots[0]);
    make_prime(SplitKind::Split, 1, roots[1]);
  }
  cache.emplace(key, out);
  return out;
}

long q_valuation(const QuadPrime& P, const QElem& x) {
  require(!x.is_zero(), "ZeroElement", "valuation of zero");
  // Clear denominators: x = z / m with z integral.
  Int m = lcmz(x.a.get_den(), x.b.get_den());
  QElem z = q_make(x.K, x.a * Rat(m), x.b * Rat(m));
  long vm;
  {
    Int mm = m;
    vm = (mm == 1) ? 0 : remove_factor(mm, P.p);
  }
  // v(z): membership chain against powers of the prime ideal.
  long v = 0;
  QIdeal pw = unit_ideal(P.K);
  for (;;) {
    QIdeal nxt = ideal_mul(pw, P.ideal);
    if (!nxt.contains(z)) break;
    pw = nxt;
    ++v;
    require(v <= 4096, "TooLarge", "valuation overflow (internal)");
  }
  return v - static_cast<long>(P.e) * vm;
}

std::pair<long, QElem> q_split_val(const QuadPrime& P, const QElem& x) {
  long n = q_valuation(P, x);
  QElem piw = q_from_int(P.K, Int(1));
  long k = n >= 0 ? n : -n;
  for (long i = 0; i < k; ++i) piw = piw * P.pi;
  QElem w = n >= 0 ? x / piw : x * piw;
  return {n, w};
}

FFElem q_reduce_unit(const QuadPrime& P, const QElem& w) {
  require(q_valuation(P, w) == 0, "NotAUnit", "reduction of a non-unit");
  const FqPtr& F = P.kappa;
  // w = gamma / m with gamma integral, m a positive integer.
  Int m = lcmz(w.a.get_den(), w.b.get_den());
  QElem gamma = q_make(w.K, w.a * Rat(m), w.b * Rat(m));
  // Split off the p-part of m.
  Int mm = m;
  long s = (mm == 1) ? 0 : remove_factor(mm, P.p);
  // mm is now prime to p: reduces by modular inverse.
  auto reduce_integral = [&](const QElem& z) {
    // image of an integral element: a + b*omega_bar
    i64 pp = P.p.get_si();
    Int ar = mod_positive(z.a.get_num(), P.p);
    Int br = mod_positive(z.b.get_num(), P.p);
    FFElem res = F->add(F->from_int(ar.get_si()), F->mul(F->from_int(br.get_si()), P.omega_bar));
    (void)pp;
    return res;
  };
  FFElem minv;
  {
    Int mr = mod_positive(mm, P.p);
    minv = F->inv(F->from_int(mr.get_si()));
  }
  if (s == 0) {
    return F->mul(reduce_integral(gamma), minv);
  }
  // gamma / p^s with v_P(gamma) = e*s.
  Int ps = powz(P.p, static_cast<unsigned long>(s));
  if (P.kind != SplitKind::Split) {
    // Coordinates of gamma are divisible by p^s (inert: valuations are
    // coordinate-wise; ramified: integrality of gamma / p^s forces it).
    require(gamma.a.get_num() % ps == 0 && gamma.b.get_num() % ps == 0, "NotAUnit",
            "unexpected coordinate indivisibility (internal)");
    QElem y = q_make(w.K, gamma.a / Rat(ps), gamma.b / Rat(ps));
    return F->mul(reduce_integral(y), minv);
  }
  // Split prime: multiply by z in conj(P)^s, prime to P, to clear the pole of
  // 1/p^s without leaving the ring.
  QuadPrime conj = P;
  {
    auto both = split_prime(P.K, P.p);
    conj = both[static_cast<size_t>(1 - P.index)];
  }
  QIdeal cs = ideal_pow(conj.ideal, static_cast<int>(s));
  // The HNF basis vector (b, c) of conj(P)^s is never in P: membership in
  // both would force the two roots of the minimal polynomial to agree mod p.
  QElem z = q_make(P.K, Rat(cs.b), Rat(cs.c));
  require(!P.ideal.contains(z), "NotAUnit", "split-prime basis vector in P (internal)");
  QElem zg = z * gamma;  // now v_p-coordinates divisible by p^s
  require(zg.a.get_den() == 1 && zg.b.get_den() == 1, "NotAUnit", "internal");
  require(zg.a.get_num() % ps == 0 && zg.b.get_num() % ps == 0, "NotAUnit",
          "split-prime clearing failed (internal)");
  QElem y = q_make(P.K, zg.a / Rat(ps), zg.b / Rat(ps));
  FFElem zy = reduce_integral(y);
  FFElem zr = reduce_integral(z);
  return F->mul(F->mul(zy, F->inv(zr)), minv);
}

// ----- class group -----

Int minkowski_bound(const QfPtr& K) {
  // (4/pi)^{r2} * (n!/n^n) * sqrt|disc|, n = 2: imaginary: (2/pi) sqrt|d|,
  // real: (1/2) sqrt(d). Rounded down; a floor of 1 keeps S sensible.
  Int adisc = abs(K->disc);
  Int s;
  mpz_sqrt(s.get_mpz_t(), adisc.get_mpz_t());
  // ceil-ish: use s+1 to be safe on the boundary, then scale
  if (K->d < 0) {
    // floor(2*sqrt|disc| / pi) <= floor(2*(s+1)/3): use rational 2/3 > 2/pi... no:
    // 2/pi = 0.6366; be conservative and use (2*(s+1)*7)/22 + 1.
    return (2 * (s + 1) * 7) / 22 + 1;
  }
  return (s + 1) / 2 + 1;
}

ClassGroupResult class_group(const QfPtr& K) {
  ClassGroupResult out;
  Int bound = minkowski_bound(K);
  // Generators: primes with norm <= bound.
  for (Int p = 2; p <= bound; p += 1) {
    if (!is_probable_prime(p)) continue;
    for (const auto& P : split_prime(K, p)) {
      if (Int(P.ideal.norm()) <= bound) out.gens.push_back(P);
    }
  }
  if (out.gens.empty()) {
    out.group = AbGroup{0, {}};
    out.stable = true;
    return out;
  }

  auto factor_over_s = [&](const QElem& z) -> std::optional<std::vector<long>> {
    // exponents of (z) over the generator primes; nullopt if support leaks.
    Rat nr = q_norm(z);
    Int n = abs(nr.get_num());
    std::vector<long> exps(out.gens.size(), 0);
    for (size_t i = 0; i < out.gens.size(); ++i) {
      const auto& P = out.gens[i];
      long v = q_valuation(P, z);
      exps[i] = v;
      if (v > 0) {
        Int pf = powz(P.p, static_cast<unsigned long>(P.f * v));
        require(n % pf == 0, "NotPrime", "norm bookkeeping (internal)");
        n /= pf;
      }
    }
    if (n != 1) return std::nullopt;  // support outside S
    return exps;
  };

  AbGroup prev;
  bool have_prev = false;
  long height = 8;
  for (int stage = 0; stage < 10; ++stage, height *= 2) {
    out.relations.clear();
    QBoxScan scan(K);
    for (;;) {
      QElem z = scan.next();
      if (std::max(abs(z.a.get_num()), abs(z.b.get_num())) > height) break;
      auto exps = factor_over_s(z);
      if (!exps) continue;
      out.relations.emplace_back(z, *exps);
    }
    IntMatrix m(static_cast<int>(out.gens.size()), static_cast<int>(out.relations.size()));
    for (size_t j = 0; j < out.relations.size(); ++j)
      for (size_t i = 0; i < out.gens.size(); ++i)
        m.at(static_cast<int>(i), static_cast<int>(j)) = out.relations[j].second[i];
    AbGroup g = cokernel(m);
    out.group = g;
    out.height_reached = height;
    if (g.free_rank == 0 && have_prev && g == prev) {
      out.stable = true;
      return out;
    }
    prev = g;
    have_prev = true;
  }
  throw MwError("RelationSearchExhausted",
                "class group relations did not stabilize within the height cap");
}

QElem parse_quad(const QfPtr& K, const std::string& s) {
  // Grammar: term (('+'|'-') term)*, term = rational ['*' 'w'] | 'w'.
  size_t i = 0;
  auto ws = [&] {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  };
  auto rational = [&]() -> Rat {
    ws();
    size_t start = i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i < s.size() && s[i] == '/') {
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    }
    require(i > start, "ZeroSymbolEntry", "malformed rational in: " + s);
    Rat r(s.substr(start, i - start));
    r.canonicalize();
    return r;
  };
  QElem acc = q_from_int(K, Int(0));
  bool first = true;
  ws();
  while (i < s.size()) {
    int sign = 1;
    ws();
    if (s[i] == '+') {
      ++i;
    } else if (s[i] == '-') {
      sign = -1;
      ++i;
    } else {
      require(first, "ZeroSymbolEntry", "malformed quadratic literal: " + s);
    }
    first = false;
    ws();
    Rat coef(1);
    bool have_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = rational();
      have_coef = true;
      ws();
      if (i < s.size() && s[i] == '*') {
        ++i;
        ws();
      }
    }
    if (i < s.size() && s[i] == 'w') {
      ++i;
      acc = acc + q_make(K, Rat(0), sign * coef);
    } else {
      require(have_coef, "ZeroSymbolEntry", "malformed quadratic literal: " + s);
      acc = acc + q_make(K, sign * coef, Rat(0));
    }
    ws();
  }
  return acc;
}

}  // namespace mw
