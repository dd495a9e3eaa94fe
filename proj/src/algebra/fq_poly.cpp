#include "mwcycles/algebra/fq_poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mw {

FqPoly FqPoly::constant(const FFElem& a) {
  FqPoly r{a.F, {}};
  if (!a.is_zero()) r.c.push_back(a);
  return r;
}

FqPoly FqPoly::t(const FqPtr& F) { return FqPoly{F, {F->zero(), F->one()}}; }

FqPoly FqPoly::from_coeffs(const FqPtr& F, std::vector<FFElem> cs) {
  FqPoly r{F, std::move(cs)};
  r.trim();
  return r;
}

bool FqPoly::is_monic() const { return !is_zero() && lead() == F->one(); }

void FqPoly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

bool FqPoly::operator==(const FqPoly& o) const {
  require(F == o.F, "FieldMismatch", "comparing polynomials over different fields");
  if (c.size() != o.c.size()) return false;
  for (size_t i = 0; i < c.size(); ++i)
    if (!(c[i] == o.c[i])) return false;
  return true;
}

bool FqPoly::operator<(const FqPoly& o) const {
  if (deg() != o.deg()) return deg() < o.deg();
  for (int i = deg(); i >= 0; --i) {
    i64 a = F->index_of(c[static_cast<size_t>(i)]);
    i64 b = F->index_of(o.c[static_cast<size_t>(i)]);
    if (a != b) return a < b;
  }
  return false;
}

FqPoly operator+(const FqPoly& a, const FqPoly& b) {
  require(a.F == b.F, "FieldMismatch", "polynomial add");
  FqPoly r{a.F, {}};
  size_t n = std::max(a.c.size(), b.c.size());
  r.c.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    FFElem x = i < a.c.size() ? a.c[i] : a.F->zero();
    FFElem y = i < b.c.size() ? b.c[i] : a.F->zero();
    r.c.push_back(a.F->add(x, y));
  }
  r.trim();
  return r;
}

FqPoly operator-(const FqPoly& a) {
  FqPoly r = a;
  for (auto& x : r.c) x = a.F->neg(x);
  return r;
}

FqPoly operator-(const FqPoly& a, const FqPoly& b) { return a + (-b); }

FqPoly operator*(const FqPoly& a, const FqPoly& b) {
  require(a.F == b.F, "FieldMismatch", "polynomial mul");
  if (a.is_zero() || b.is_zero()) return FqPoly::zero(a.F);
  FqPoly r{a.F, std::vector<FFElem>(a.c.size() + b.c.size() - 1, a.F->zero())};
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = a.F->add(r.c[i + j], a.F->mul(a.c[i], b.c[j]));
  }
  r.trim();
  return r;
}

FqPoly scale(const FqPoly& a, const FFElem& s) {
  FqPoly r = a;
  for (auto& x : r.c) x = a.F->mul(x, s);
  r.trim();
  return r;
}

std::pair<FqPoly, FqPoly> divmod(const FqPoly& a, const FqPoly& b) {
  require(!b.is_zero(), "ZeroElement", "polynomial division by zero");
  const FqPtr& F = a.F;
  FqPoly q{F, {}}, r = a;
  if (a.deg() < b.deg()) return {q, r};
  q.c.assign(static_cast<size_t>(a.deg() - b.deg() + 1), F->zero());
  FFElem li = F->inv(b.lead());
  while (r.deg() >= b.deg()) {
    int shift = r.deg() - b.deg();
    FFElem coef = F->mul(r.lead(), li);
    q.c[static_cast<size_t>(shift)] = coef;
    for (int i = 0; i <= b.deg(); ++i) {
      size_t k = static_cast<size_t>(i + shift);
      r.c[k] = F->sub(r.c[k], F->mul(coef, b.c[static_cast<size_t>(i)]));
    }
    r.trim();
  }
  q.trim();
  return {q, r};
}

FqPoly monic(const FqPoly& a) {
  if (a.is_zero()) return a;
  return scale(a, a.F->inv(a.lead()));
}

FqPoly gcd_monic(FqPoly a, FqPoly b) {
  while (!b.is_zero()) {
    FqPoly r = divmod(a, b).second;
    a = b;
    b = r;
  }
  return monic(a);
}

FqPoly derivative(const FqPoly& a) {
  FqPoly r{a.F, {}};
  for (int i = 1; i <= a.deg(); ++i)
    r.c.push_back(a.F->mul(a.F->from_int(i), a.c[static_cast<size_t>(i)]));
  r.trim();
  return r;
}

FFElem eval(const FqPoly& a, const FFElem& x) {
  FFElem acc = a.F->zero();
  for (int i = a.deg(); i >= 0; --i) acc = a.F->add(a.F->mul(acc, x), a.c[static_cast<size_t>(i)]);
  return acc;
}

FFElem eval_mapped(const FqPoly& a, const FqEmbedding& e, const FFElem& x) {
  const FqPtr& E = e.dst;
  FFElem acc = E->zero();
  for (int i = a.deg(); i >= 0; --i)
    acc = E->add(E->mul(acc, x), e.apply(a.c[static_cast<size_t>(i)]));
  return acc;
}

FqPoly map_poly(const FqPoly& a, const FqEmbedding& e) {
  FqPoly r{e.dst, {}};
  for (const auto& x : a.c) r.c.push_back(e.apply(x));
  r.trim();
  return r;
}

namespace {

std::map<std::pair<const FqCtx*, int>, std::vector<FqPoly>>& irr_cache() {
  static std::map<std::pair<const FqCtx*, int>, std::vector<FqPoly>> cache;
  return cache;
}

FqPoly poly_from_index(const FqPtr& F, int d, i64 idx) {
  // monic of degree d; base-q digits, low digit = constant term
  std::vector<FFElem> cs(static_cast<size_t>(d) + 1, F->zero());
  for (int i = 0; i < d; ++i) {
    cs[static_cast<size_t>(i)] = F->from_index(idx % F->q);
    idx /= F->q;
  }
  cs[static_cast<size_t>(d)] = F->one();
  return FqPoly::from_coeffs(F, std::move(cs));
}

}  // namespace

std::vector<FqPoly> monic_irreducibles(const FqPtr& F, int d) {
  auto key = std::make_pair(F.get(), d);
  auto& cache = irr_cache();
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<FqPoly> out;
  i64 count = 1;
  for (int i = 0; i < d; ++i) count *= F->q;
  for (i64 idx = 0; idx < count; ++idx) {
    FqPoly g = poly_from_index(F, d, idx);
    if (is_irreducible(g)) out.push_back(g);
  }
  cache.emplace(key, out);
  return out;
}

bool is_irreducible(const FqPoly& g) {
  int d = g.deg();
  if (d <= 0) return false;
  if (d == 1) return true;
  for (int dd = 1; dd * 2 <= d; ++dd) {
    i64 count = 1;
    for (int i = 0; i < dd; ++i) count *= g.F->q;
    for (i64 idx = 0; idx < count; ++idx) {
      FqPoly h = poly_from_index(g.F, dd, idx);
      if (divmod(g, h).second.is_zero()) return false;
    }
  }
  return true;
}

FqFactorization factor(const FqPoly& a) {
  require(!a.is_zero(), "ZeroElement", "factoring the zero polynomial");
  FqFactorization out{a.lead(), {}};
  FqPoly rem = monic(a);
  // After scanning all degrees up to deg/2, whatever is left is irreducible.
  for (int d = 1; rem.deg() > 0 && 2 * d <= rem.deg(); ++d) {
    // candidates of degree d, ascending; re-enumerate since rem shrinks
    i64 count = 1;
    for (int i = 0; i < d; ++i) count *= a.F->q;
    for (i64 idx = 0; idx < count && rem.deg() >= d; ++idx) {
      FqPoly g = poly_from_index(a.F, d, idx);
      if (d > 1 && !is_irreducible(g)) continue;
      int e = 0;
      for (;;) {
        auto [q, r] = divmod(rem, g);
        if (!r.is_zero()) break;
        rem = q;
        ++e;
      }
      if (e > 0) out.factors.emplace_back(g, e);
    }
  }
  if (rem.deg() > 0) out.factors.emplace_back(rem, 1);  // leftover is irreducible
  return out;
}

std::string poly_to_string(const FqPoly& a) {
  if (a.is_zero()) return "0";
  const FqPtr& F = a.F;
  std::ostringstream os;
  bool first = true;
  for (int i = a.deg(); i >= 0; --i) {
    const FFElem& x = a.c[static_cast<size_t>(i)];
    if (x.is_zero()) continue;
    if (!first) os << "+";
    first = false;
    std::string cs = F->to_string(x);
    bool unit_coef = (x == F->one());
    if (i == 0) {
      os << cs;
    } else {
      if (!unit_coef) {
        bool simple = cs.find('+') == std::string::npos && cs.find('-') == std::string::npos;
        if (simple)
          os << cs << "*";
        else
          os << "(" << cs << ")*";
      }
      os << "t";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

namespace {

// Minimal recursive-descent parser over F_q for +, -, *, /, ^, parentheses,
// 't', 'g', and integers. Returns a RatFunc; parse_poly checks the result is
// polynomial.
struct RfParser {
  FqPtr F;
  const std::string& s;
  size_t i = 0;

  explicit RfParser(const FqPtr& f, const std::string& str) : F(f), s(str) {}

  void ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  RatFunc parse() {
    RatFunc r = expr();
    ws();
    require(i == s.size(), "ZeroSymbolEntry", "trailing input in literal: " + s);
    return r;
  }

  RatFunc expr() {
    RatFunc acc = eat('-') ? -term() : term();
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  RatFunc term() {
    RatFunc acc = power();
    for (;;) {
      if (eat('*'))
        acc = acc * power();
      else if (eat('/'))
        acc = acc / power();
      else
        return acc;
    }
  }

  RatFunc power() {
    RatFunc base = atom();
    if (eat('^')) {
      ws();
      bool neg = eat('-');
      i64 e = integer();
      RatFunc acc = RatFunc::one(F);
      for (i64 k = 0; k < e; ++k) acc = acc * base;
      return neg ? rf_inv(acc) : acc;
    }
    return base;
  }

  i64 integer() {
    ws();
    require(i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])), "ZeroSymbolEntry",
            "expected integer in literal: " + s);
    i64 v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
    return v;
  }

  RatFunc atom() {
    ws();
    require(i < s.size(), "ZeroSymbolEntry", "unexpected end of literal: " + s);
    if (s[i] == '(') {
      ++i;
      RatFunc r = expr();
      require(eat(')'), "ZeroSymbolEntry", "missing ')' in literal: " + s);
      return r;
    }
    if (s[i] == 't') {
      ++i;
      return RatFunc::t(F);
    }
    if (s[i] == 'g') {
      ++i;
      return RatFunc::of_poly(FqPoly::constant(F->gen()));
    }
    return RatFunc::of_poly(FqPoly::constant(F->from_int(integer())));
  }
};

}  // namespace

FqPoly parse_poly(const FqPtr& F, const std::string& s) {
  RatFunc r = RfParser(F, s).parse();
  require(r.den.deg() == 0, "ZeroSymbolEntry", "expected a polynomial, got " + s);
  return r.num;  // den is monic degree 0, i.e. exactly 1
}

RatFunc RatFunc::of(const FqPoly& n, const FqPoly& d) {
  require(n.F == d.F, "FieldMismatch", "rational function");
  require(!d.is_zero(), "ZeroElement", "zero denominator");
  FqPoly g = gcd_monic(n, d);
  FqPoly nn = n, dd = d;
  if (g.deg() > 0) {
    nn = divmod(n, g).first;
    dd = divmod(d, g).first;
  }
  FFElem lc = dd.lead();
  if (!(lc == n.F->one())) {
    FFElem li = n.F->inv(lc);
    nn = scale(nn, li);
    dd = scale(dd, li);
  }
  if (nn.is_zero()) dd = FqPoly::constant(n.F->one());
  return RatFunc{nn, dd};
}

RatFunc RatFunc::one(const FqPtr& F) { return of_poly(FqPoly::constant(F->one())); }

bool RatFunc::is_one() const { return den.deg() == 0 && num.deg() == 0 && !num.is_zero() && num.c[0] == num.F->one(); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc::of(a.num * b.den + b.num * a.den, a.den * b.den);
}
RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
RatFunc operator-(const RatFunc& a) { return RatFunc{-a.num, a.den}; }
RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc::of(a.num * b.num, a.den * b.den);
}
RatFunc rf_inv(const RatFunc& a) {
  require(!a.is_zero(), "ZeroElement", "inverse of the zero function");
  return RatFunc::of(a.den, a.num);
}
RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * rf_inv(b); }

std::string ratfunc_to_string(const RatFunc& a) {
  if (a.den.deg() == 0) return poly_to_string(a.num);
  std::string n = poly_to_string(a.num);
  std::string d = poly_to_string(a.den);
  std::string np = a.num.deg() > 0 ? "(" + n + ")" : n;
  return np + "/(" + d + ")";
}

RatFunc parse_ratfunc(const FqPtr& F, const std::string& s) { return RfParser(F, s).parse(); }

}  // namespace mw
