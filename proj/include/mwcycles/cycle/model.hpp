#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mwcycles/algebra/quadratic.hpp"
#include "mwcycles/kmw/canonical.hpp"
#include "mwcycles/kmw/places.hpp"

namespace mw {

/// Symbol slots valued in a quadratic number field.
struct QuadCtx {
  QfPtr K;
  using Elem = QElem;

  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool is_one(const Elem& a) const { return a.a == 1 && a.b == 0; }
  bool less(const Elem& a, const Elem& b) const {
    if (a.a != b.a) return a.a < b.a;
    return a.b < b.b;
  }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return q_inv(a); }
  Elem minus_one() const { return q_from_int(K, -1); }
  std::string str(const Elem& a) const { return q_to_string(a); }
};

using KmwQuad = Kmw<QuadCtx>;

/// Place of a quadratic number field: a prime ideal with the uniformizer and
/// residue data carried by QuadPrime, adapted to the residue-engine contract.
struct QuadPlace {
  QuadPrime pr;
  FqPtr kappa;

  static QuadPlace of(const QuadPrime& pr) { return QuadPlace{pr, pr.kappa}; }

  long val(const QElem& x) const { return q_valuation(pr, x); }
  std::pair<long, QElem> split(const QElem& x) const { return q_split_val(pr, x); }
  FFElem reduce_unit(const QElem& w) const { return q_reduce_unit(pr, w); }
  QElem pi_elem() const { return pr.pi; }
};

KmwCanon residue_canonical_k(const QuadPlace& pl, const KmwQuad& x, Mode mode = Mode::MW);

// ----- one-dimensional scheme models -----

enum class ModelKind { SpecField, AffineLine, ProjLine, SpecOK, SpecZ };

/// A supported base scheme: a point, the affine or projective line over a
/// finite field, the ring of integers of a quadratic number field, or Z
/// (the degenerate d = 1 case of the number-ring computation).
struct CurveModel {
  ModelKind kind = ModelKind::SpecField;
  FqPtr F;  // lines and SpecField
  QfPtr K;  // SpecOK

  static CurveModel spec_field(const FqPtr& F);
  static CurveModel affine_line(const FqPtr& F);
  static CurveModel proj_line(const FqPtr& F);
  static CurveModel spec_ok(const Int& d);
  static CurveModel spec_z();

  bool is_line() const { return kind == ModelKind::AffineLine || kind == ModelKind::ProjLine; }
  std::string name() const;
  bool operator==(const CurveModel& o) const;
  bool operator!=(const CurveModel& o) const { return !(*this == o); }
};

/// Identifier of a closed point (or the generic point) of a model, with a
/// deterministic total order: Generic first, then finite line points by
/// (degree, coefficients), then the infinite place, then number-ring primes
/// by (norm, index).
struct PointId {
  enum class Kind { Generic = 0, Finite = 1, Infinity = 2, Prime = 3 };
  Kind kind = Kind::Generic;
  FqPoly poly;  // Finite: the monic irreducible
  Int p = 0;    // Prime
  int index = 0;
  int res_deg = 1;  // Prime: residue degree f (norm = p^f)

  static PointId generic() { return PointId{}; }
  static PointId finite(const FqPoly& g);
  static PointId infinity();
  static PointId prime(const QuadPrime& pr);
  static PointId rational_prime(const Int& p);

  Int norm() const { return powz(p, static_cast<unsigned long>(res_deg)); }
  bool operator<(const PointId& o) const;
  bool operator==(const PointId& o) const;
  bool operator!=(const PointId& o) const { return !(*this == o); }
  std::string to_string() const;
};

/// A closed point resolved against its model: residue field, degree, and the
/// place implementing valuations and residues there.
struct ClosedPoint {
  PointId id;
  long degree = 1;  // [kappa : base residue data]; for SpecOK/SpecZ the residue degree f
  FqPtr kappa;
  std::shared_ptr<const FuncPlace> place;  // lines
  std::shared_ptr<const QuadPlace> qplace;  // SpecOK
  std::shared_ptr<const RatPlace> rplace;  // SpecZ
};

/// All closed points of degree (lines) or norm (SpecOK, SpecZ) at most
/// `bound`, in the model's deterministic order; ProjLine appends the infinite
/// place last. SpecField has a single closed point (the base itself), listed
/// for any bound.
std::vector<ClosedPoint> closed_points(const CurveModel& m, long bound);

/// Resolve a single point id against the model.
ClosedPoint resolve_point(const CurveModel& m, const PointId& id);

// ----- support certification -----

/// Finite places of F_q(t) where some slot of x has nonzero valuation
/// (the certified support of FD'); infinity is reported separately.
std::vector<FqPoly> support_polys(const KmwRf& x);
bool supports_infinity(const KmwRf& x);

/// Primes of O_K in the joint support of the divisors of the slots of x.
std::vector<QuadPrime> support_primes(const QfPtr& K, const KmwQuad& x);

/// Rational primes in the joint support of the slots of x.
std::vector<Int> support_primes_q(const KmwQ& x);

// ----- residue-field transport -----

/// Field homomorphism F_{p^a} -> F_{p^b} pinned on a chosen basis: apply()
/// rewrites an element in the basis {base^k theta^j} of the source and
/// reassembles the image from the stored basis images. Used where the map
/// must match a presentation root (theta-compatible transport) rather than
/// the cached canonical embedding.
struct FqHom {
  FqPtr from, to;
  std::vector<std::vector<i64>> coord_mat;  // inverse basis matrix mod p
  std::vector<FFElem> basis_img;            // images of the basis in `to`

  FFElem apply(const FFElem& x) const;
};

/// The homomorphism kappa_from -> kappa_to with theta_from -> theta_to and
/// gen(F) |-> base_gen_from -> base_gen_to on the base copies. theta_from
/// must generate kappa_from over the base image; the result is verified to
/// be multiplicative.
FqHom theta_compatible_hom(const FqPtr& F, const FqPtr& kappa_from, const FFElem& base_gen_from,
                           const FFElem& theta_from, const FqPtr& kappa_to,
                           const FFElem& base_gen_to, const FFElem& theta_to);

/// Map a canonical class through an arbitrary field homomorphism given slot
/// transport; implemented by rebuilding the formal expression slot by slot.
KmwCanon canon_map(const KmwCanon& x, const FqPtr& to,
                   const std::function<FFElem(const FFElem&)>& iota);

}  // namespace mw
