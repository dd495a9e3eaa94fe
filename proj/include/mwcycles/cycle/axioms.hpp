#pragma once

#include <cstdint>

#include "mwcycles/cycle/hpreimage.hpp"

namespace mw {

/// Outcome of one named identity exercised over a batch of inputs.
struct CheckResult {
  std::string name;
  long trials = 0;
  long failures = 0;
  std::string counterexample;  // first failing input, empty when clean
};

/// A bundle of identity checks; ok() iff nothing failed.
struct Report {
  std::vector<CheckResult> checks;
  bool ok() const;
  long total_trials() const;
  long total_failures() const;
  void merge(const Report& other);
};

/// Transfer coherence (double coset rule): restriction of a trace transfer
/// decomposes through the tensor-product factors,
///   res_{F_{q^n}} (tau_{F_{q^m}/F_q} x) = copies * tau_{lcm/n}(res_{lcm/m} x).
Report axiom_suite_r1(std::uint64_t seed, long trials);

/// Pullback and projection rules on Grothendieck-Witt classes:
/// multiplicativity of pullback, tau(res(a) x) = a tau(x), and
/// tau(b res(x)) = tau(b) x, with trace transfers.
Report axiom_suite_r2(std::uint64_t seed, long trials);

/// Residue rules on the function field: properness over the projective
/// line, base substitution t -> t^e with multiplicity e_eps, vanishing on
/// constants, compatibility with unramified scalar extension, the unit and
/// eta commutation rules, and uniformizer rescaling.
Report axiom_suite_r3(std::uint64_t seed, long trials);

/// Exhaustive boundary-triple identities on V(t) in the affine line:
/// residue of [t] times a constant class returns the class, constants have
/// no residue, and eta anticommutes; all <a>, q in {3, 5, 7, 9}.
Report axiom_suite_rost45();

/// Compatibilities of the five basic maps on cycles: transfer towers and
/// base-change squares, the projection formula, pullback versus unit
/// action, the differential sign rules, and finite-support sampling.
Report axiom_suite_cycle_compat(std::uint64_t seed, long trials);

/// Reciprocity over the projective line for one base field: deterministic
/// pinned inputs plus seeded random symbols; every sum must vanish.
Report reciprocity_suite(std::uint64_t seed, long trials, i64 q);

/// Every suite above, sharing one seed.
Report axiom_suite_all(std::uint64_t seed, long trials);

}  // namespace mw
