#include "mwcycles/algebra/finite_field.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

namespace mw {

namespace {

// ----- raw F_p[t] helpers on coefficient vectors (little-endian) -----

using Poly = std::vector<i64>;

int pdeg(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

void ptrim(Poly& a) { a.resize(static_cast<size_t>(pdeg(a) + 1)); }

Poly pmul(const Poly& a, const Poly& b, i64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  ptrim(r);
  return r;
}

// a mod m, m monic
Poly pmod(Poly a, const Poly& m, i64 p) {
  int dm = pdeg(m);
  for (int da = pdeg(a); da >= dm; da = pdeg(a)) {
    i64 lead = a[static_cast<size_t>(da)];
    int shift = da - dm;
    for (int i = 0; i <= dm; ++i) {
      size_t k = static_cast<size_t>(i + shift);
      a[k] = ((a[k] - lead * m[static_cast<size_t>(i)]) % p + p) % p;
    }
  }
  ptrim(a);
  return a;
}

Poly pgcd(Poly a, Poly b, i64 p) {
  while (pdeg(b) >= 0) {
    Poly r = pmod(a, b, p);
    // make b monic before using as divisor next round
    a = b;
    b = r;
    if (pdeg(a) >= 0) {
      i64 lc = a[static_cast<size_t>(pdeg(a))];
      i64 li = mod_inv_i64(lc, p);
      for (auto& x : a) x = (x * li) % p;
    }
  }
  return a;
}

// Extended Euclid in F_p[t]: returns g = gcd and s with s*a = g (mod m); used
// for inverses, where g must be a nonzero constant.
Poly pinv_mod(const Poly& a, const Poly& m, i64 p) {
  Poly r0 = m, r1 = pmod(a, m, p);
  Poly s0 = {}, s1 = {1};
  while (pdeg(r1) >= 0) {
    // quotient of r0 by r1
    Poly q;
    Poly rem = r0;
    int d1 = pdeg(r1);
    i64 li = mod_inv_i64(r1[static_cast<size_t>(d1)], p);
    q.assign(static_cast<size_t>(std::max(0, pdeg(r0) - d1 + 1)), 0);
    for (int dr = pdeg(rem); dr >= d1; dr = pdeg(rem)) {
      i64 coef = (rem[static_cast<size_t>(dr)] * li) % p;
      q[static_cast<size_t>(dr - d1)] = coef;
      for (int i = 0; i <= d1; ++i) {
        size_t k = static_cast<size_t>(i + dr - d1);
        rem[k] = ((rem[k] - coef * r1[static_cast<size_t>(i)]) % p + p) % p;
      }
    }
    ptrim(rem);
    // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q s1)
    Poly qs = pmul(q, s1, p);
    Poly s2(std::max(s0.size(), qs.size()), 0);
    for (size_t i = 0; i < s2.size(); ++i) {
      i64 x = (i < s0.size() ? s0[i] : 0) - (i < qs.size() ? qs[i] : 0);
      s2[i] = ((x % p) + p) % p;
    }
    ptrim(s2);
    r0 = r1;
    r1 = rem;
    s0 = s1;
    s1 = s2;
  }
  require(pdeg(r0) == 0, "NotAUnit", "element has no inverse (shares a factor with the modulus)");
  i64 gi = mod_inv_i64(r0[0], p);
  Poly s = s0;
  for (auto& x : s) x = (x * gi) % p;
  return pmod(s, m, p);
}

bool poly_irreducible(const Poly& g, i64 p) {
  int d = pdeg(g);
  if (d <= 0) return false;
  if (d == 1) return true;
  // x^(p^k) mod g via repeated Frobenius on the class of x would also work;
  // at this scale trial division by all monic polynomials of degree <= d/2
  // is simplest and exhaustive.
  for (int dd = 1; dd * 2 <= d; ++dd) {
    i64 count = 1;
    for (int i = 0; i < dd; ++i) count *= p;
    for (i64 idx = 0; idx < count; ++idx) {
      Poly h(static_cast<size_t>(dd) + 1, 0);
      i64 n = idx;
      for (int i = 0; i < dd; ++i) {
        h[static_cast<size_t>(i)] = n % p;
        n /= p;
      }
      h[static_cast<size_t>(dd)] = 1;
      if (pdeg(pmod(g, h, p)) < 0) return false;
    }
  }
  return true;
}

std::map<std::pair<i64, int>, FqPtr>& field_cache() {
  static std::map<std::pair<i64, int>, FqPtr> cache;
  return cache;
}

std::map<std::tuple<i64, int, int>, std::shared_ptr<const FqEmbedding>>& embed_cache() {
  static std::map<std::tuple<i64, int, int>, std::shared_ptr<const FqEmbedding>> cache;
  return cache;
}

}  // namespace

i64 max_q_cap() {
  static i64 cap = [] {
    i64 c = 1000000;
    if (const char* s = std::getenv("MWCYCLES_MAX_Q")) {
      i64 v = std::atoll(s);
      if (v > 1 && v < c) c = v;  // may only lower the cap
    }
    return c;
  }();
  return cap;
}

FqPtr make_finite_field(i64 p, int f) {
  require(p >= 2, "NotPrime", "characteristic must be a prime");
  require(f >= 1, "NotPrimePower", "extension degree must be positive");
  auto key = std::make_pair(p, f);
  auto& cache = field_cache();
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  require(is_prime_i64(p), "NotPrime", std::to_string(p) + " is not prime");
  i64 q = 1;
  for (int i = 0; i < f; ++i) {
    require(q <= max_q_cap() / p, "TooLarge",
            "field size exceeds the configured cap " + std::to_string(max_q_cap()));
    q *= p;
  }
  require(q <= max_q_cap(), "TooLarge", "field size exceeds the configured cap");

  auto ctx = std::make_shared<FqCtx>();
  ctx->p = p;
  ctx->f = f;
  ctx->q = q;
  // Lexicographically smallest monic irreducible, coefficient tuples compared
  // high degree first: scan N = 0.. with big-endian base-p digits.
  if (f == 1) {
    ctx->modulus = {0, 1};  // t; the field is F_p itself
  } else {
    bool found = false;
    for (i64 n = 0; n < q && !found; ++n) {
      // Base-p digits of n: low digit = constant coefficient, so increasing n
      // walks the tuples (a_{f-1}, ..., a_0) in lexicographic order.
      Poly g(static_cast<size_t>(f) + 1, 0);
      g[static_cast<size_t>(f)] = 1;
      i64 v = n;
      for (int i = 0; i < f; ++i) {
        g[static_cast<size_t>(i)] = v % p;
        v /= p;
      }
      if (poly_irreducible(g, p)) {
        ctx->modulus = g;
        found = true;
      }
    }
    require(found, "NotPrimePower", "no irreducible polynomial found (internal)");
  }
  FqPtr out = ctx;
  cache.emplace(key, out);
  return out;
}

// ----- FFElem basics -----

bool FFElem::is_zero() const {
  for (i64 x : c)
    if (x != 0) return false;
  return true;
}

bool FFElem::operator==(const FFElem& o) const {
  require(F == o.F, "FieldMismatch", "comparing elements of different fields");
  return c == o.c;
}

bool FFElem::operator<(const FFElem& o) const {
  require(F == o.F, "FieldMismatch", "ordering elements of different fields");
  return F->index_of(*this) < F->index_of(o);
}

std::string FqCtx::name() const { return "F_" + std::to_string(q); }

FFElem FqCtx::zero() const {
  return FFElem{shared_from_this(), std::vector<i64>(static_cast<size_t>(f), 0)};
}

FFElem FqCtx::one() const { return from_int(1); }

FFElem FqCtx::from_int(i64 n) const {
  FFElem x = zero();
  x.c[0] = ((n % p) + p) % p;
  return x;
}

FFElem FqCtx::gen() const {
  FFElem x = zero();
  if (f == 1)
    x.c[0] = 1;  // the prime field's generator degenerates to 1
  else
    x.c[1] = 1;
  return x;
}

FFElem FqCtx::from_index(i64 idx) const {
  require(idx >= 0 && idx < q, "TooLarge", "element index out of range");
  FFElem x = zero();
  for (int i = 0; i < f; ++i) {
    x.c[static_cast<size_t>(i)] = idx % p;
    idx /= p;
  }
  return x;
}

i64 FqCtx::index_of(const FFElem& x) const {
  i64 idx = 0;
  for (int i = f - 1; i >= 0; --i) idx = idx * p + x.c[static_cast<size_t>(i)];
  return idx;
}

FFElem FqCtx::add(const FFElem& a, const FFElem& b) const {
  require(a.F.get() == this && b.F.get() == this, "FieldMismatch", "add");
  FFElem r = a;
  for (int i = 0; i < f; ++i) r.c[static_cast<size_t>(i)] = (r.c[static_cast<size_t>(i)] + b.c[static_cast<size_t>(i)]) % p;
  return r;
}

FFElem FqCtx::sub(const FFElem& a, const FFElem& b) const {
  require(a.F.get() == this && b.F.get() == this, "FieldMismatch", "sub");
  FFElem r = a;
  for (int i = 0; i < f; ++i)
    r.c[static_cast<size_t>(i)] = ((r.c[static_cast<size_t>(i)] - b.c[static_cast<size_t>(i)]) % p + p) % p;
  return r;
}

FFElem FqCtx::neg(const FFElem& a) const { return sub(zero(), a); }

FFElem FqCtx::mul(const FFElem& a, const FFElem& b) const {
  require(a.F.get() == this && b.F.get() == this, "FieldMismatch", "mul");
  Poly prod = pmul(a.c, b.c, p);
  Poly red = pmod(prod, modulus, p);
  FFElem r = zero();
  for (size_t i = 0; i < red.size(); ++i) r.c[i] = red[i];
  return r;
}

FFElem FqCtx::inv(const FFElem& a) const {
  require(!a.is_zero(), "ZeroElement", "inverse of zero");
  Poly ai = a.c;
  ptrim(ai);
  Poly s = pinv_mod(ai, modulus, p);
  FFElem r = zero();
  for (size_t i = 0; i < s.size(); ++i) r.c[i] = s[i];
  return r;
}

FFElem FqCtx::pow(const FFElem& a, const Int& e_in) const {
  Int e = e_in;
  FFElem base = a;
  if (e < 0) {
    base = inv(a);
    e = -e;
  }
  FFElem r = one();
  FFElem b = base;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

FFElem FqCtx::frobenius(const FFElem& a) const { return pow(a, Int(p)); }

bool FqCtx::is_square(const FFElem& a) const {
  require(!a.is_zero(), "ZeroElement", "square class of zero");
  if (p == 2) return true;
  FFElem s = pow(a, Int((q - 1) / 2));
  return s == one();
}

int FqCtx::chi(const FFElem& a) const { return is_square(a) ? 0 : 1; }

FFElem FqCtx::smallest_nonsquare() const {
  require(p != 2, "ZeroElement", "no nonsquares in characteristic 2");
  for (i64 idx = 1; idx < q; ++idx) {
    FFElem x = from_index(idx);
    if (!is_square(x)) return x;
  }
  throw MwError("ZeroElement", "no nonsquare found (internal)");
}

std::string FqCtx::to_string(const FFElem& x) const {
  if (f == 1) return std::to_string(x.c[0]);
  std::ostringstream os;
  bool first = true;
  for (int i = f - 1; i >= 0; --i) {
    i64 a = x.c[static_cast<size_t>(i)];
    if (a == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << "g";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

// ----- embeddings -----

namespace {

// Gaussian elimination mod p solving M a = y for each query; M is dst.f x src.f.
struct LinSolver {
  i64 p;
  int rows, cols;
  std::vector<std::vector<i64>> m;  // reduced [M | I] augmented
  std::vector<int> pivots;          // pivot row of each pivot col, col order

  LinSolver(i64 p_, const std::vector<std::vector<i64>>& cols_in, int rows_)
      : p(p_), rows(rows_), cols(static_cast<int>(cols_in.size())) {
    // build augmented [M | I_rows]
    m.assign(static_cast<size_t>(rows), std::vector<i64>(static_cast<size_t>(cols + rows), 0));
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = cols_in[static_cast<size_t>(j)][static_cast<size_t>(i)];
    for (int i = 0; i < rows; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(cols + i)] = 1;
    int r = 0;
    for (int j = 0; j < cols && r < rows; ++j) {
      int piv = -1;
      for (int i = r; i < rows; ++i)
        if (m[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(m[static_cast<size_t>(piv)], m[static_cast<size_t>(r)]);
      i64 li = mod_inv_i64(m[static_cast<size_t>(r)][static_cast<size_t>(j)], p);
      for (auto& x : m[static_cast<size_t>(r)]) x = (x * li) % p;
      for (int i = 0; i < rows; ++i) {
        if (i == r) continue;
        i64 c = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (c == 0) continue;
        for (int k = 0; k < cols + rows; ++k) {
          auto& x = m[static_cast<size_t>(i)][static_cast<size_t>(k)];
          x = ((x - c * m[static_cast<size_t>(r)][static_cast<size_t>(k)]) % p + p) % p;
        }
      }
      pivots.push_back(j);
      ++r;
    }
  }

  // Solve M a = y; returns false if inconsistent. M has full column rank
  // here (columns are powers of a degree-cols generator), so every column is
  // a pivot column and the pivot rows read the solution off directly.
  bool solve(const std::vector<i64>& y, std::vector<i64>& a) const {
    a.assign(static_cast<size_t>(cols), 0);
    for (int r = 0; r < static_cast<int>(pivots.size()); ++r) {
      i64 v = 0;
      for (int k = 0; k < rows; ++k)
        v = (v + m[static_cast<size_t>(r)][static_cast<size_t>(cols + k)] * (y[static_cast<size_t>(k)] % p)) % p;
      a[static_cast<size_t>(pivots[static_cast<size_t>(r)])] = ((v % p) + p) % p;
    }
    // consistency rows: rows beyond the pivot count must transform y to 0
    for (int r = static_cast<int>(pivots.size()); r < rows; ++r) {
      i64 v = 0;
      for (int k = 0; k < rows; ++k)
        v = (v + m[static_cast<size_t>(r)][static_cast<size_t>(cols + k)] * (y[static_cast<size_t>(k)] % p)) % p;
      if (((v % p) + p) % p != 0) return false;
    }
    return true;
  }
};

std::map<const FqEmbedding*, std::shared_ptr<LinSolver>>& solver_cache() {
  static std::map<const FqEmbedding*, std::shared_ptr<LinSolver>> cache;
  return cache;
}

const LinSolver& solver_for(const FqEmbedding& e) {
  auto& cache = solver_cache();
  auto it = cache.find(&e);
  if (it != cache.end()) return *it->second;
  std::vector<std::vector<i64>> cols;
  FFElem power = e.dst->one();
  for (int i = 0; i < e.src->f; ++i) {
    cols.push_back(power.c);
    power = e.dst->mul(power, e.gen_image);
  }
  auto s = std::make_shared<LinSolver>(e.dst->p, cols, e.dst->f);
  cache.emplace(&e, s);
  return *s;
}

}  // namespace

FFElem FqEmbedding::apply(const FFElem& x) const {
  require(x.F == src, "FieldMismatch", "embedding applied to foreign element");
  FFElem acc = dst->zero();
  FFElem power = dst->one();
  for (int i = 0; i < src->f; ++i) {
    FFElem term = dst->mul(dst->from_int(x.c[static_cast<size_t>(i)]), power);
    acc = dst->add(acc, term);
    power = dst->mul(power, gen_image);
  }
  return acc;
}

FFElem FqEmbedding::preimage(const FFElem& y) const {
  require(y.F == dst, "FieldMismatch", "preimage of foreign element");
  std::vector<i64> a;
  bool ok = solver_for(*this).solve(y.c, a);
  require(ok, "FieldMismatch", "element is not in the subfield");
  FFElem x = src->zero();
  for (int i = 0; i < src->f; ++i) x.c[static_cast<size_t>(i)] = a[static_cast<size_t>(i)];
  return x;
}

bool FqEmbedding::in_image(const FFElem& y) const {
  std::vector<i64> a;
  return solver_for(*this).solve(y.c, a);
}

std::shared_ptr<const FqEmbedding> embed(const FqPtr& src, const FqPtr& dst) {
  require(src->p == dst->p, "FieldMismatch", "embeddings require equal characteristic");
  require(dst->f % src->f == 0, "FieldMismatch",
          src->name() + " does not embed into " + dst->name());
  auto key = std::make_tuple(src->p, src->f, dst->f);
  auto& cache = embed_cache();
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto e = std::make_shared<FqEmbedding>();
  e->src = src;
  e->dst = dst;
  if (src->f == 1) {
    e->gen_image = dst->one();
  } else {
    // First root of the source modulus in the destination, enumeration order.
    bool found = false;
    for (i64 idx = 0; idx < dst->q && !found; ++idx) {
      FFElem cand = dst->from_index(idx);
      // evaluate source modulus at cand
      FFElem acc = dst->zero();
      FFElem power = dst->one();
      for (int i = 0; i <= src->f; ++i) {
        acc = dst->add(acc, dst->mul(dst->from_int(src->modulus[static_cast<size_t>(i)]), power));
        power = dst->mul(power, cand);
      }
      if (acc.is_zero()) {
        e->gen_image = cand;
        found = true;
      }
    }
    require(found, "FieldMismatch", "no root of subfield modulus found (internal)");
  }
  std::shared_ptr<const FqEmbedding> out = e;
  cache.emplace(key, out);
  return out;
}

FFElem rel_trace(const FqEmbedding& e, const FFElem& z) {
  require(z.F == e.dst, "FieldMismatch", "relative trace");
  int m = e.dst->f / e.src->f;
  FFElem acc = e.dst->zero();
  FFElem cur = z;
  for (int i = 0; i < m; ++i) {
    acc = e.dst->add(acc, cur);
    cur = e.dst->pow(cur, Int(e.src->q));
  }
  return e.preimage(acc);
}

FFElem rel_norm(const FqEmbedding& e, const FFElem& z) {
  require(z.F == e.dst, "FieldMismatch", "relative norm");
  int m = e.dst->f / e.src->f;
  FFElem acc = e.dst->one();
  FFElem cur = z;
  for (int i = 0; i < m; ++i) {
    acc = e.dst->mul(acc, cur);
    cur = e.dst->pow(cur, Int(e.src->q));
  }
  return e.preimage(acc);
}

FFElem parse_ff(const FqPtr& F, const std::string& s) {
  // Grammar: sum of terms; term = INT | [INT '*'] 'g' ['^' INT].
  FFElem acc = F->zero();
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  };
  skip_ws();
  bool first = true;
  while (i < s.size()) {
    i64 sign = 1;
    skip_ws();
    if (s[i] == '+') {
      ++i;
    } else if (s[i] == '-') {
      sign = -1;
      ++i;
    } else if (!first) {
      throw MwError("ZeroSymbolEntry", "malformed field element literal: " + s);
    }
    first = false;
    skip_ws();
    i64 coef = 1;
    bool saw_num = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) coef = coef * 10 + (s[i++] - '0');
      saw_num = true;
      skip_ws();
      if (i < s.size() && s[i] == '*') {
        ++i;
        skip_ws();
      }
    }
    int expo = 0;
    if (i < s.size() && s[i] == 'g') {
      ++i;
      expo = 1;
      skip_ws();
      if (i < s.size() && s[i] == '^') {
        ++i;
        skip_ws();
        expo = 0;
        require(i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])), "ZeroSymbolEntry",
                "malformed exponent in field element literal: " + s);
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) expo = expo * 10 + (s[i++] - '0');
      }
    } else if (!saw_num) {
      throw MwError("ZeroSymbolEntry", "malformed field element literal: " + s);
    }
    FFElem term = F->from_int(sign * coef);
    if (expo > 0) term = F->mul(term, F->pow(F->gen(), Int(expo)));
    acc = F->add(acc, term);
    skip_ws();
  }
  return acc;
}

}  // namespace mw
