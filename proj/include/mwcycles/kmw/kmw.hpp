#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "mwcycles/core/ints.hpp"

namespace mw {

/// Formal Milnor-Witt symbol expression over a field described by a context
/// type Ctx. A term is coeff * eta^k * [u_1, ..., u_m]; the degree of a term
/// is m - k and all terms of one element share it. Ctx supplies the element
/// type and field operations:
///   struct SomeCtx {
///     using Elem = ...;
///     bool eq(a, b); bool is_one(a); bool less(a, b);   // canonical order
///     Elem mul(a, b); Elem minus_one(); Elem inv(a);
///     std::string str(a);
///   };
template <class Ctx>
struct KmwTerm {
  long long coeff = 0;
  int eta = 0;
  std::vector<typename Ctx::Elem> sym;

  int degree() const { return static_cast<int>(sym.size()) - eta; }
};

template <class Ctx>
struct Kmw {
  Ctx ctx;
  int degree = 0;
  std::vector<KmwTerm<Ctx>> terms;

  bool is_formally_zero() const { return terms.empty(); }
};

// ----- construction -----

template <class Ctx>
Kmw<Ctx> kmw_zero(const Ctx& c, int degree) {
  return Kmw<Ctx>{c, degree, {}};
}

/// The unit 1 (empty symbol, degree 0).
template <class Ctx>
Kmw<Ctx> kmw_const(const Ctx& c, long long n) {
  Kmw<Ctx> r{c, 0, {}};
  if (n != 0) r.terms.push_back(KmwTerm<Ctx>{n, 0, {}});
  return r;
}

/// [u_1, ..., u_m]; entries must be nonzero (checked by the caller's ctx use).
template <class Ctx>
Kmw<Ctx> kmw_symbol(const Ctx& c, std::vector<typename Ctx::Elem> us) {
  Kmw<Ctx> r{c, static_cast<int>(us.size()), {}};
  r.terms.push_back(KmwTerm<Ctx>{1, 0, std::move(us)});
  return r;
}

/// <a> = 1 + eta [a], a degree-0 element.
template <class Ctx>
Kmw<Ctx> kmw_diag(const Ctx& c, const typename Ctx::Elem& a) {
  Kmw<Ctx> r{c, 0, {}};
  r.terms.push_back(KmwTerm<Ctx>{1, 0, {}});
  r.terms.push_back(KmwTerm<Ctx>{1, 1, {a}});
  return r;
}

// ----- normalization -----

namespace detail {

template <class Ctx>
bool term_key_less(const Ctx& c, const KmwTerm<Ctx>& a, const KmwTerm<Ctx>& b) {
  if (a.eta != b.eta) return a.eta < b.eta;
  if (a.sym.size() != b.sym.size()) return a.sym.size() < b.sym.size();
  for (size_t i = 0; i < a.sym.size(); ++i) {
    if (c.eq(a.sym[i], b.sym[i])) continue;
    return c.less(a.sym[i], b.sym[i]);
  }
  return false;
}

template <class Ctx>
bool term_key_eq(const Ctx& c, const KmwTerm<Ctx>& a, const KmwTerm<Ctx>& b) {
  if (a.eta != b.eta || a.sym.size() != b.sym.size()) return false;
  for (size_t i = 0; i < a.sym.size(); ++i)
    if (!c.eq(a.sym[i], b.sym[i])) return false;
  return true;
}

}  // namespace detail

/// Drop terms containing a slot equal to 1 ([1] = 0), sort, and merge equal
/// (eta, symbol) keys. This is formal cleanup only; it does not decide
/// equality in the Milnor-Witt ring.
template <class Ctx>
void kmw_compress(Kmw<Ctx>& x) {
  std::vector<KmwTerm<Ctx>> keep;
  for (auto& t : x.terms) {
    if (t.coeff == 0) continue;
    bool dead = false;
    for (const auto& u : t.sym)
      if (x.ctx.is_one(u)) {
        dead = true;
        break;
      }
    if (!dead) keep.push_back(std::move(t));
  }
  std::sort(keep.begin(), keep.end(), [&](const KmwTerm<Ctx>& a, const KmwTerm<Ctx>& b) {
    return detail::term_key_less(x.ctx, a, b);
  });
  std::vector<KmwTerm<Ctx>> merged;
  for (auto& t : keep) {
    if (!merged.empty() && detail::term_key_eq(x.ctx, merged.back(), t))
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const KmwTerm<Ctx>& t) { return t.coeff == 0; }),
               merged.end());
  x.terms = std::move(merged);
}

// ----- arithmetic (formal) -----

template <class Ctx>
Kmw<Ctx> operator+(const Kmw<Ctx>& a, const Kmw<Ctx>& b) {
  require(a.degree == b.degree, "DimensionMismatch", "adding symbols of different degrees");
  Kmw<Ctx> r = a;
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  kmw_compress(r);
  return r;
}

template <class Ctx>
Kmw<Ctx> operator-(const Kmw<Ctx>& a) {
  Kmw<Ctx> r = a;
  for (auto& t : r.terms) t.coeff = -t.coeff;
  return r;
}

template <class Ctx>
Kmw<Ctx> operator-(const Kmw<Ctx>& a, const Kmw<Ctx>& b) {
  return a + (-b);
}

template <class Ctx>
Kmw<Ctx> kmw_scale(long long n, const Kmw<Ctx>& a) {
  Kmw<Ctx> r = a;
  for (auto& t : r.terms) t.coeff *= n;
  kmw_compress(r);
  return r;
}

/// Product: concatenates symbols and adds eta exponents (eta is central).
template <class Ctx>
Kmw<Ctx> operator*(const Kmw<Ctx>& a, const Kmw<Ctx>& b) {
  Kmw<Ctx> r{a.ctx, a.degree + b.degree, {}};
  for (const auto& s : a.terms)
    for (const auto& t : b.terms) {
      KmwTerm<Ctx> u{s.coeff * t.coeff, s.eta + t.eta, s.sym};
      u.sym.insert(u.sym.end(), t.sym.begin(), t.sym.end());
      r.terms.push_back(std::move(u));
    }
  kmw_compress(r);
  return r;
}

template <class Ctx>
Kmw<Ctx> eta_mul(const Kmw<Ctx>& a, int k = 1) {
  Kmw<Ctx> r = a;
  r.degree -= k;
  for (auto& t : r.terms) t.eta += k;
  return r;
}

/// Multiplication by eps = -<-1> = -1 - eta[-1].
template <class Ctx>
Kmw<Ctx> eps_mul(const Kmw<Ctx>& a) {
  Kmw<Ctx> r{a.ctx, a.degree, {}};
  for (const auto& t : a.terms) {
    KmwTerm<Ctx> t1 = t;
    t1.coeff = -t1.coeff;
    KmwTerm<Ctx> t2 = t1;
    t2.eta += 1;
    t2.sym.insert(t2.sym.begin(), a.ctx.minus_one());
    r.terms.push_back(std::move(t1));
    r.terms.push_back(std::move(t2));
  }
  kmw_compress(r);
  return r;
}

template <class Ctx>
Kmw<Ctx> eps_pow_mul(const Kmw<Ctx>& a, int k) {
  return (k % 2 == 0) ? a : eps_mul(a);
}

/// n_eps * <w> as a degree-0 symbol expression:
/// ceil(n/2) <w> + floor(n/2) <-w> for n >= 0, and -<-1> times the mirror
/// for n < 0. Pass w = 1 for plain n_eps.
template <class Ctx>
Kmw<Ctx> kmw_n_eps_diag(const Ctx& c, long long n, const typename Ctx::Elem& w) {
  if (n < 0) return eps_mul(kmw_n_eps_diag(c, -n, w));
  Kmw<Ctx> r{c, 0, {}};
  long long fl = n / 2, ce = n - fl;
  if (n != 0) r.terms.push_back(KmwTerm<Ctx>{n, 0, {}});
  if (ce != 0) r.terms.push_back(KmwTerm<Ctx>{ce, 1, {w}});
  if (fl != 0) r.terms.push_back(KmwTerm<Ctx>{fl, 1, {c.mul(c.minus_one(), w)}});
  kmw_compress(r);
  return r;
}

template <class Ctx>
std::string kmw_to_string(const Kmw<Ctx>& x) {
  if (x.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : x.terms) {
    long long c = t.coeff;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    first = false;
    long long a = c < 0 ? -c : c;
    bool unit_body = (t.eta == 0 && t.sym.empty());
    if (a != 1 || unit_body) {
      out += std::to_string(a);
      if (!unit_body) out += "*";
    }
    if (t.eta > 0) {
      out += "eta";
      if (t.eta > 1) out += "^" + std::to_string(t.eta);
      if (!t.sym.empty()) out += "*";
    }
    if (!t.sym.empty()) {
      out += "[";
      for (size_t i = 0; i < t.sym.size(); ++i) {
        if (i) out += ",";
        out += x.ctx.str(t.sym[i]);
      }
      out += "]";
    }
  }
  return out;
}

}  // namespace mw
