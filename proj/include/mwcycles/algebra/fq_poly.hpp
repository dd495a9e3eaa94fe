#pragma once

#include <string>
#include <vector>

#include "mwcycles/algebra/finite_field.hpp"

namespace mw {

/// Polynomial in t over a finite field; c[i] = coefficient of t^i, trimmed.
struct FqPoly {
  FqPtr F;
  std::vector<FFElem> c;

  static FqPoly zero(const FqPtr& F) { return FqPoly{F, {}}; }
  static FqPoly constant(const FFElem& a);
  static FqPoly t(const FqPtr& F);
  static FqPoly from_coeffs(const FqPtr& F, std::vector<FFElem> cs);

  int deg() const { return static_cast<int>(c.size()) - 1; }  // deg(0) = -1
  bool is_zero() const { return c.empty(); }
  const FFElem& lead() const { return c.back(); }
  bool is_monic() const;
  void trim();

  bool operator==(const FqPoly& o) const;
  bool operator<(const FqPoly& o) const;  // by (deg, coefficient indices); map key order
};

FqPoly operator+(const FqPoly& a, const FqPoly& b);
FqPoly operator-(const FqPoly& a, const FqPoly& b);
FqPoly operator*(const FqPoly& a, const FqPoly& b);
FqPoly operator-(const FqPoly& a);
FqPoly scale(const FqPoly& a, const FFElem& s);

/// Quotient and remainder; b nonzero.
std::pair<FqPoly, FqPoly> divmod(const FqPoly& a, const FqPoly& b);
FqPoly gcd_monic(FqPoly a, FqPoly b);
FqPoly monic(const FqPoly& a);
FqPoly derivative(const FqPoly& a);
FFElem eval(const FqPoly& a, const FFElem& x);  // x in the coefficient field
/// Evaluate with coefficients pushed through an embedding, at a point of the
/// larger field.
FFElem eval_mapped(const FqPoly& a, const FqEmbedding& e, const FFElem& x);
FqPoly map_poly(const FqPoly& a, const FqEmbedding& e);

bool is_irreducible(const FqPoly& g);
/// All monic irreducibles of degree exactly d, in enumeration order.
std::vector<FqPoly> monic_irreducibles(const FqPtr& F, int d);
/// Complete factorization lead * prod g_i^{e_i} by deterministic trial
/// division; factors sorted by (degree, enumeration index).
struct FqFactorization {
  FFElem lead;
  std::vector<std::pair<FqPoly, int>> factors;
};
FqFactorization factor(const FqPoly& a);

std::string poly_to_string(const FqPoly& a);
FqPoly parse_poly(const FqPtr& F, const std::string& s);

/// Rational function num/den, den monic, gcd(num, den) = 1; zero = 0/1.
struct RatFunc {
  FqPoly num, den;

  static RatFunc of(const FqPoly& n, const FqPoly& d);
  static RatFunc of_poly(const FqPoly& n) { return of(n, FqPoly::constant(n.F->one())); }
  static RatFunc zero(const FqPtr& F) { return of_poly(FqPoly::zero(F)); }
  static RatFunc one(const FqPtr& F);
  static RatFunc t(const FqPtr& F) { return of_poly(FqPoly::t(F)); }

  const FqPtr& field() const { return num.F; }
  bool is_zero() const { return num.is_zero(); }
  bool is_one() const;
  bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
};

RatFunc operator+(const RatFunc& a, const RatFunc& b);
RatFunc operator-(const RatFunc& a, const RatFunc& b);
RatFunc operator*(const RatFunc& a, const RatFunc& b);
RatFunc operator/(const RatFunc& a, const RatFunc& b);
RatFunc operator-(const RatFunc& a);
RatFunc rf_inv(const RatFunc& a);

std::string ratfunc_to_string(const RatFunc& a);
RatFunc parse_ratfunc(const FqPtr& F, const std::string& s);

}  // namespace mw
