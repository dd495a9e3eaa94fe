#include "mwcycles/gw/gw.hpp"

#include <numeric>
#include <sstream>

namespace mw {

namespace {
void check_same(const GwFin& a, const GwFin& b) {
  require(a.F == b.F, "FieldMismatch", "GW arithmetic across different fields");
}
bool odd_char(const FqPtr& F) { return F->p != 2; }
}  // namespace

bool GwFin::operator==(const GwFin& o) const {
  require(F == o.F, "FieldMismatch", "comparing GW classes over different fields");
  return rank == o.rank && disc == o.disc;
}

GwFin gw_zero(const FqPtr& F) { return GwFin{F, 0, 0}; }
GwFin gw_one(const FqPtr& F) { return GwFin{F, 1, 0}; }

GwFin gw_diag(const FFElem& a) {
  require(!a.is_zero(), "ZeroElement", "<0> is not a GW class");
  if (!odd_char(a.F)) return GwFin{a.F, 1, 0};
  return GwFin{a.F, 1, a.F->chi(a)};
}

GwFin gw_hyperbolic(const FqPtr& F) { return gw_one(F) + gw_diag(F->from_int(-1)); }

GwFin operator+(const GwFin& a, const GwFin& b) {
  check_same(a, b);
  return GwFin{a.F, a.rank + b.rank, (a.disc + b.disc) & 1};
}

GwFin operator-(const GwFin& a) { return GwFin{a.F, -a.rank, a.disc}; }

GwFin operator-(const GwFin& a, const GwFin& b) { return a + (-b); }

GwFin operator*(const GwFin& a, const GwFin& b) {
  check_same(a, b);
  // <u><v> = <uv> extends bilinearly: disc is rank-weighted.
  long long d = a.rank * b.disc + b.rank * a.disc;
  return GwFin{a.F, a.rank * b.rank, static_cast<int>(((d % 2) + 2) % 2)};
}

GwFin gw_scale(long long n, const GwFin& a) {
  long long d = n * a.disc;
  return GwFin{a.F, n * a.rank, static_cast<int>(((d % 2) + 2) % 2)};
}

GwFin n_epsilon(const FqPtr& F, long long n) {
  if (n < 0) return -(gw_diag(F->from_int(-1)) * n_epsilon(F, -n));
  long long fl = n / 2;
  // ceil(n/2) copies of <1> plus floor(n/2) copies of <-1>
  GwFin m1 = gw_diag(F->from_int(-1));
  return GwFin{F, n - fl, 0} + gw_scale(fl, m1);
}

AbGroup gw_group_structure(const FqPtr& F) {
  if (!odd_char(F)) return AbGroup{1, {}};
  return AbGroup{1, {Int(2)}};
}

AbGroup witt_group(const FqPtr& F) {
  // Cokernel of multiplication by h on the canonical coordinates.
  if (!odd_char(F)) {
    // GW = Z, h = 2.
    IntMatrix m(1, 1);
    m.at(0, 0) = 2;
    return cokernel(m);
  }
  GwFin h = gw_hyperbolic(F);
  IntMatrix m(2, 1);
  m.at(0, 0) = Int(static_cast<long>(h.rank));
  m.at(1, 0) = h.disc;
  return cokernel(m, {Int(2)});
}

std::pair<int, int> witt_class(const GwFin& x) {
  if (!odd_char(x.F)) return {static_cast<int>(((x.rank % 2) + 2) % 2), 0};
  int c = x.F->chi(x.F->from_int(-1));
  // Subtract (rank - rank mod 2)/2 copies of h = (2, c).
  long long k = (x.rank - (((x.rank % 2) + 2) % 2)) / 2;
  long long d = x.disc - k * c;
  return {static_cast<int>(((x.rank % 2) + 2) % 2), static_cast<int>(((d % 2) + 2) % 2)};
}

std::string gw_to_string(const GwFin& x) {
  if (x.F->p == 2 || x.disc == 0) {
    std::ostringstream os;
    os << x.rank << "*<1>";
    return os.str();
  }
  std::ostringstream os;
  std::string s = x.F->to_string(x.F->smallest_nonsquare());
  if (x.rank - 1 != 0) os << (x.rank - 1) << "*<1> + ";
  os << "<" << s << ">";
  return os.str();
}

std::vector<std::vector<FFElem>> transfer_gram(const FqEmbedding& e, const FFElem& c) {
  require(c.F == e.dst, "FieldMismatch", "transfer scale must live in the extension");
  require(!c.is_zero(), "ZeroElement", "transfer of <0>");
  const FqPtr& E = e.dst;
  int m = E->f / e.src->f;
  FFElem g = E->gen();
  std::vector<std::vector<FFElem>> gram(static_cast<size_t>(m),
                                        std::vector<FFElem>(static_cast<size_t>(m), e.src->zero()));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      FFElem z = E->mul(c, E->mul(E->pow(g, Int(i)), E->pow(g, Int(j))));
      gram[static_cast<size_t>(i)][static_cast<size_t>(j)] = rel_trace(e, z);
    }
  return gram;
}

std::vector<FFElem> diagonalize_symmetric(const FqPtr& F, std::vector<std::vector<FFElem>> g) {
  require(F->p != 2, "ZeroElement", "symmetric diagonalization needs odd characteristic");
  int n = static_cast<int>(g.size());
  auto add_row_col = [&](int dst, int src, const FFElem& coef) {
    for (int j = 0; j < n; ++j)
      g[static_cast<size_t>(dst)][static_cast<size_t>(j)] =
          F->add(g[static_cast<size_t>(dst)][static_cast<size_t>(j)],
                 F->mul(coef, g[static_cast<size_t>(src)][static_cast<size_t>(j)]));
    for (int i = 0; i < n; ++i)
      g[static_cast<size_t>(i)][static_cast<size_t>(dst)] =
          F->add(g[static_cast<size_t>(i)][static_cast<size_t>(dst)],
                 F->mul(coef, g[static_cast<size_t>(i)][static_cast<size_t>(src)]));
  };
  auto swap_row_col = [&](int a, int b) {
    std::swap(g[static_cast<size_t>(a)], g[static_cast<size_t>(b)]);
    for (int i = 0; i < n; ++i)
      std::swap(g[static_cast<size_t>(i)][static_cast<size_t>(a)],
                g[static_cast<size_t>(i)][static_cast<size_t>(b)]);
  };
  std::vector<FFElem> diag;
  for (int k = 0; k < n; ++k) {
    if (g[static_cast<size_t>(k)][static_cast<size_t>(k)].is_zero()) {
      int pick = -1;
      for (int l = k + 1; l < n && pick < 0; ++l)
        if (!g[static_cast<size_t>(l)][static_cast<size_t>(l)].is_zero()) pick = l;
      if (pick >= 0) {
        swap_row_col(k, pick);
      } else {
        int off = -1;
        for (int l = k + 1; l < n && off < 0; ++l)
          if (!g[static_cast<size_t>(k)][static_cast<size_t>(l)].is_zero()) off = l;
        require(off >= 0, "ZeroElement", "degenerate symmetric form (internal)");
        add_row_col(k, off, F->one());  // diagonal entry becomes 2*g[k][off] != 0
      }
    }
    FFElem piv = g[static_cast<size_t>(k)][static_cast<size_t>(k)];
    FFElem pinv = F->inv(piv);
    for (int l = k + 1; l < n; ++l) {
      FFElem coef = F->mul(g[static_cast<size_t>(k)][static_cast<size_t>(l)], pinv);
      if (!coef.is_zero()) add_row_col(l, k, F->neg(coef));
    }
    diag.push_back(piv);
  }
  return diag;
}

std::vector<FFElem> transfer_gram_diagonal(const FqEmbedding& e, const FFElem& c) {
  if (e.src->p == 2) return {};
  return diagonalize_symmetric(e.src, transfer_gram(e, c));
}

FFElem minpoly_derivative_at_gen(const FqEmbedding& e) {
  // minpoly of the destination generator g over the source is
  // prod_{i<m} (X - g^{q^i}); its derivative at g is prod_{i>=1} (g - g^{q^i}).
  const FqPtr& E = e.dst;
  int m = E->f / e.src->f;
  FFElem g = E->gen();
  FFElem acc = E->one();
  FFElem conj = g;
  for (int i = 1; i < m; ++i) {
    conj = E->pow(conj, Int(e.src->q));
    acc = E->mul(acc, E->sub(g, conj));
  }
  return acc;
}

GwFin gw_transfer(const FqEmbedding& e, const GwFin& x, TransferMode mode) {
  require(x.F == e.dst, "FieldMismatch", "transfer source mismatch");
  const FqPtr& E = e.dst;
  const FqPtr& F = e.src;
  int m = E->f / F->f;
  GwFin y = x;
  if (mode == TransferMode::Geometric) {
    FFElem fp = minpoly_derivative_at_gen(e);
    y = gw_diag(fp) * y;
  }
  if (F->p == 2) return GwFin{F, static_cast<long long>(m) * y.rank, 0};
  // Decompose y as a*<1> + b*<s> with s a fixed nonsquare, transfer each line.
  long long b = y.disc;  // 0 or 1
  long long a = y.rank - b;
  FFElem s = E->smallest_nonsquare();
  GwFin t1 = gw_zero(F), ts = gw_zero(F);
  {
    auto d1 = transfer_gram_diagonal(e, E->one());
    for (const auto& d : d1) t1 = t1 + gw_diag(d);
    auto ds = transfer_gram_diagonal(e, s);
    for (const auto& d : ds) ts = ts + gw_diag(d);
  }
  return gw_scale(a, t1) + gw_scale(b, ts);
}

GwFin gw_pullback(const FqEmbedding& e, const GwFin& x) {
  require(x.F == e.src, "FieldMismatch", "pullback source mismatch");
  if (e.dst->p == 2) return GwFin{e.dst, x.rank, 0};
  // <1> -> <1>; <s> -> <image of s>, whose class depends on whether the
  // source nonsquare stays a nonsquare (it does iff the degree is odd).
  long long b = x.disc;
  long long a = x.rank - b;
  FFElem s_img = e.apply(e.src->smallest_nonsquare());
  GwFin r = gw_scale(a, gw_one(e.dst)) + gw_scale(b, gw_diag(s_img));
  return r;
}

TensorDecomposition tensor_decompose(int m, int n) {
  int g = std::gcd(m, n);
  return TensorDecomposition{g, m / g * n};
}

}  // namespace mw
