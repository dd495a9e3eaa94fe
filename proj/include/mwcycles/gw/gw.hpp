#pragma once

#include <string>
#include <vector>

#include "mwcycles/abelian/matrix.hpp"
#include "mwcycles/algebra/finite_field.hpp"

namespace mw {

/// Element of the Grothendieck-Witt ring of a finite field in canonical
/// coordinates. For odd q: (rank, disc) with disc in Z/2 tracking the
/// discriminant square class (0 = square); <a> = (1, chi(a)) where chi(a) = 1
/// iff a is a nonsquare. For even q the ring is just Z and disc is held at 0.
struct GwFin {
  FqPtr F;
  long long rank = 0;
  int disc = 0;  // mod 2; always 0 in characteristic 2

  bool is_zero() const { return rank == 0 && disc == 0; }
  bool operator==(const GwFin& o) const;
  bool operator!=(const GwFin& o) const { return !(*this == o); }
};

GwFin gw_zero(const FqPtr& F);
GwFin gw_one(const FqPtr& F);
/// Class of the rank-1 form <a>; a must be nonzero.
GwFin gw_diag(const FFElem& a);
/// The hyperbolic form h = <1> + <-1>.
GwFin gw_hyperbolic(const FqPtr& F);

GwFin operator+(const GwFin& a, const GwFin& b);
GwFin operator-(const GwFin& a, const GwFin& b);
GwFin operator-(const GwFin& a);
GwFin operator*(const GwFin& a, const GwFin& b);
GwFin gw_scale(long long n, const GwFin& a);

/// n_eps = sum of n copies of <1>/<-1> alternating; satisfies
/// (nm)_eps = n_eps * m_eps and [u^n] = n_eps [u].
GwFin n_epsilon(const FqPtr& F, long long n);

/// Additive structure of GW(F_q) as an abstract group.
AbGroup gw_group_structure(const FqPtr& F);

/// The Witt group W(F_q) = GW/(h), computed as a cokernel through the
/// presentation machinery rather than read off a table.
AbGroup witt_group(const FqPtr& F);

/// Image of x in W(F_q) in canonical coordinates (rank mod 2, adjusted disc).
std::pair<int, int> witt_class(const GwFin& x);

/// Pretty form "a*<1> + b*<s>" with s the smallest nonsquare.
std::string gw_to_string(const GwFin& x);

// ----- transfers along the canonical embedding F_q -> F_{q^m} -----

enum class TransferMode { Trace, Geometric };

/// Scharlau transfer of the rank-1 form <c> for the extension described by e,
/// using the basis 1, g, ..., g^{m-1} of the destination over the source
/// (g = destination generator). Returns the diagonal entries of the Gram
/// matrix of (x, y) -> Tr(c x y) for odd q; for even q the list is empty and
/// only the rank (= m) matters.
std::vector<FFElem> transfer_gram_diagonal(const FqEmbedding& e, const FFElem& c);

/// Full Gram matrix of the Scharlau form (for oracle checks).
std::vector<std::vector<FFElem>> transfer_gram(const FqEmbedding& e, const FFElem& c);

/// Transfer of a GW class from the destination field of e to its source.
/// Trace mode uses the trace form itself; Geometric mode rescales by the
/// derivative of the minimal polynomial of the destination generator, which is
/// the convention matching residues along closed points of the line.
GwFin gw_transfer(const FqEmbedding& e, const GwFin& x, TransferMode mode);

/// Minimal polynomial over the source of the destination generator, and its
/// derivative evaluated at the generator (an element of the destination).
FFElem minpoly_derivative_at_gen(const FqEmbedding& e);

/// Pullback (restriction of scalars is the wrong word: scalar extension)
/// GW(F_q) -> GW(F_{q^m}); <a> -> <a> viewed in the bigger field.
GwFin gw_pullback(const FqEmbedding& e, const GwFin& x);

/// Diagonalize a symmetric matrix over an odd-characteristic finite field by
/// congruence; returns the diagonal. Zero rows/columns are not expected here
/// (the forms in play are nondegenerate) and trigger an error.
std::vector<FFElem> diagonalize_symmetric(const FqPtr& F, std::vector<std::vector<FFElem>> g);

/// F_{q^m} (x)_{F_q} F_{q^n} decomposes into gcd(m, n) copies of F_{q^lcm}.
struct TensorDecomposition {
  int copies;
  int lcm_degree;
};
TensorDecomposition tensor_decompose(int m, int n);

}  // namespace mw
