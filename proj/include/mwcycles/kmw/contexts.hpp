#pragma once

#include "mwcycles/algebra/finite_field.hpp"
#include "mwcycles/algebra/fq_poly.hpp"
#include "mwcycles/kmw/kmw.hpp"

namespace mw {

/// Symbol slots valued in a finite field.
struct FFCtx {
  FqPtr F;
  using Elem = FFElem;

  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool is_one(const Elem& a) const { return a == F->one(); }
  bool less(const Elem& a, const Elem& b) const { return a < b; }
  Elem mul(const Elem& a, const Elem& b) const { return F->mul(a, b); }
  Elem inv(const Elem& a) const { return F->inv(a); }
  Elem minus_one() const { return F->from_int(-1); }
  std::string str(const Elem& a) const { return F->to_string(a); }
};

/// Symbol slots valued in Q.
struct RatCtx {
  using Elem = Rat;

  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool less(const Elem& a, const Elem& b) const { return a < b; }
  Elem mul(const Elem& a, const Elem& b) const {
    Rat r = a * b;
    r.canonicalize();
    return r;
  }
  Elem inv(const Elem& a) const {
    require(a != 0, "ZeroElement", "inverse of zero");
    return Elem(1) / a;
  }
  Elem minus_one() const { return Elem(-1); }
  std::string str(const Elem& a) const { return a.get_str(); }
};

/// Symbol slots valued in F_q(t).
struct RfCtx {
  FqPtr F;
  using Elem = RatFunc;

  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool is_one(const Elem& a) const { return a.is_one(); }
  bool less(const Elem& a, const Elem& b) const {
    if (a.num == b.num) return a.den < b.den;
    return a.num < b.num;
  }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return rf_inv(a); }
  Elem minus_one() const { return RatFunc::of_poly(FqPoly::constant(F->from_int(-1))); }
  std::string str(const Elem& a) const { return ratfunc_to_string(a); }
};

using KmwFF = Kmw<FFCtx>;
using KmwQ = Kmw<RatCtx>;
using KmwRf = Kmw<RfCtx>;

}  // namespace mw
