#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mwcycles/abelian/matrix.hpp"
#include "mwcycles/algebra/finite_field.hpp"

namespace mw {

/// Q(sqrt(d)) with d squarefree, together with its ring of integers
/// Z[omega], omega = (1+sqrt d)/2 when d = 1 mod 4 and sqrt d otherwise.
/// omega satisfies x^2 - tr_om x + nm_om = 0.
struct QuadField {
  Int d;
  bool half = false;  // omega = (1 + sqrt d)/2
  Int disc;           // d or 4d
  Int tr_om, nm_om;   // trace and norm of omega

  static std::shared_ptr<const QuadField> make(const Int& d);
};
using QfPtr = std::shared_ptr<const QuadField>;

/// a + b*omega with rational coordinates.
struct QElem {
  QfPtr K;
  Rat a, b;

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_integral() const;
  bool operator==(const QElem& o) const;
};

QElem q_make(const QfPtr& K, const Rat& a, const Rat& b);
QElem q_from_int(const QfPtr& K, const Int& n);
QElem q_omega(const QfPtr& K);
QElem operator+(const QElem& x, const QElem& y);
QElem operator-(const QElem& x, const QElem& y);
QElem operator-(const QElem& x);
QElem operator*(const QElem& x, const QElem& y);
QElem q_conj(const QElem& x);
Rat q_norm(const QElem& x);
Rat q_trace(const QElem& x);
QElem q_inv(const QElem& x);
QElem operator/(const QElem& x, const QElem& y);
std::string q_to_string(const QElem& x);
QElem parse_quad(const QfPtr& K, const std::string& s);

/// Nonzero ideal of the ring of integers in two-column Hermite form:
/// Z*(a) + Z*(b + c*omega) with c | a, c | b, 0 <= b < a.
struct QIdeal {
  QfPtr K;
  Int a, b, c;

  Int norm() const { return a * c; }
  bool operator==(const QIdeal& o) const { return a == o.a && b == o.b && c == o.c; }
  bool contains(const QElem& x) const;  // x integral
};

QIdeal ideal_from_gens(const QfPtr& K, const std::vector<QElem>& gens);
QIdeal ideal_mul(const QIdeal& x, const QIdeal& y);
QIdeal ideal_pow(const QIdeal& x, int e);
QIdeal principal_ideal(const QElem& x);  // x integral nonzero
QIdeal unit_ideal(const QfPtr& K);

enum class SplitKind { Split, Inert, Ramified };

/// Prime of the ring of integers above p. For split p the two primes are
/// indexed 0, 1 by the ascending residue of omega. kappa is the canonical
/// residue field F_p (f = 1) or F_{p^2} (inert), with omega_bar the image of
/// omega in it.
struct QuadPrime {
  QfPtr K;
  Int p;
  SplitKind kind;
  int index = 0;  // 0 or 1 for split; 0 otherwise
  int e = 1, f = 1;
  QIdeal ideal;
  QElem pi;  // uniformizer: smallest two-element generator in scan order
  FqPtr kappa;
  FFElem omega_bar;
};

std::vector<QuadPrime> split_prime(const QfPtr& K, const Int& p);

long q_valuation(const QuadPrime& P, const QElem& x);
/// x = pi^n w; returns (n, w).
std::pair<long, QElem> q_split_val(const QuadPrime& P, const QElem& x);
/// Reduce a unit at P into the residue field.
FFElem q_reduce_unit(const QuadPrime& P, const QElem& w);

/// Deterministic box scan order on integral elements x + y*omega:
/// radius r = max(|x|, |y|) ascending; within a radius by (|y|, y<0, |x|, x<0).
/// Element 0 is skipped. next() never ends.
struct QBoxScan {
  QfPtr K;
  long radius = 0;
  size_t pos = 0;
  std::vector<std::pair<long, long>> current;

  explicit QBoxScan(const QfPtr& K);
  QElem next();
};

/// Class group via S = primes below the Minkowski bound and relations from
/// principal ideals harvested in box order, with stabilization across
/// doubling height stages. Witnesses retained for certification.
struct ClassGroupResult {
  AbGroup group;
  std::vector<QuadPrime> gens;
  std::vector<std::pair<QElem, std::vector<long>>> relations;  // witness, exponents
  bool stable = false;
  long height_reached = 0;
};

Int minkowski_bound(const QfPtr& K);
ClassGroupResult class_group(const QfPtr& K);

}  // namespace mw
