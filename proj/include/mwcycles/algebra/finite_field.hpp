#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mwcycles/core/ints.hpp"

namespace mw {

struct FqCtx;
using FqPtr = std::shared_ptr<const FqCtx>;

/// Element of a finite field, stored as coefficients of the residue class of
/// t modulo the field's defining polynomial (index i = coefficient of t^i).
struct FFElem {
  FqPtr F;
  std::vector<i64> c;

  bool is_zero() const;
  bool operator==(const FFElem& o) const;
  bool operator!=(const FFElem& o) const { return !(*this == o); }
  bool operator<(const FFElem& o) const;  // by enumeration index; for map keys
};

/// F_q with q = p^f, presented as F_p[t] modulo the lexicographically smallest
/// monic irreducible of degree f (coefficient tuples ordered high degree
/// first). Construct through make_finite_field, which caches contexts so a
/// given (p, f) is always the same object.
struct FqCtx : std::enable_shared_from_this<FqCtx> {
  i64 p;
  int f;
  i64 q;                     // p^f
  std::vector<i64> modulus;  // monic degree f; modulus[i] = coeff of t^i, modulus[f] = 1

  std::string name() const;  // "F_q"

  FFElem zero() const;
  FFElem one() const;
  FFElem from_int(i64 n) const;      // image of the integer n
  FFElem gen() const;                // class of t (== from_int for f = 1? no: t itself)
  FFElem from_index(i64 idx) const;  // base-p digits, c[0] least significant
  i64 index_of(const FFElem& x) const;

  FFElem add(const FFElem& a, const FFElem& b) const;
  FFElem sub(const FFElem& a, const FFElem& b) const;
  FFElem neg(const FFElem& a) const;
  FFElem mul(const FFElem& a, const FFElem& b) const;
  FFElem inv(const FFElem& a) const;
  FFElem pow(const FFElem& a, const Int& e) const;
  FFElem frobenius(const FFElem& a) const;  // x -> x^p

  bool is_square(const FFElem& a) const;  // a != 0 required
  /// 0 if square, 1 if not (always 0 in characteristic 2).
  int chi(const FFElem& a) const;
  FFElem smallest_nonsquare() const;  // odd q only

  std::string to_string(const FFElem& x) const;  // integer, or polynomial in g
};

/// Build (or fetch from cache) the canonical F_{p^f}. Throws NotPrime /
/// TooLarge per the documented limits.
FqPtr make_finite_field(i64 p, int f);

/// Global cap on field size (default 10^6; MWCYCLES_MAX_Q may lower it).
i64 max_q_cap();

/// Embedding of one canonical field into another (same p, f_src | f_dst),
/// sending the source generator to the first root of the source modulus in
/// the destination, in enumeration order. Cached per (p, f_src, f_dst).
struct FqEmbedding {
  FqPtr src, dst;
  FFElem gen_image;
  // Row-reduced data for preimages: solves the F_p-linear system expressing a
  // destination element in the basis gen_image^0..gen_image^{f_src-1}.
  std::vector<std::vector<i64>> solve_mat;  // f_src x f_dst, precomputed pseudo-inverse rows
  std::vector<int> pivot_cols;

  FFElem apply(const FFElem& x) const;
  /// Preimage of y under the embedding; y must lie in the image subfield.
  FFElem preimage(const FFElem& y) const;
  bool in_image(const FFElem& y) const;
};

std::shared_ptr<const FqEmbedding> embed(const FqPtr& src, const FqPtr& dst);

/// Relative trace and norm for dst/src along the canonical embedding.
FFElem rel_trace(const FqEmbedding& e, const FFElem& z);  // value in src
FFElem rel_norm(const FqEmbedding& e, const FFElem& z);   // value in src

/// Parse "3", "g", "g+2", "2*g^3+g+1" in the field's generator g.
FFElem parse_ff(const FqPtr& F, const std::string& s);

}  // namespace mw
