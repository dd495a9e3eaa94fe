#pragma once

#include <map>
#include <optional>

#include "mwcycles/cycle/model.hpp"

namespace mw {

/// An element of one term of the Rost-Schmid complex of a one-dimensional
/// model. dim 0: finitely many closed-point entries, each a canonical class
/// over the point's residue field, all of the same degree (coeff_degree).
/// dim 1: a single symbolic entry at the generic point, stored in the field
/// matching the model.
struct Cycle {
  CurveModel model;
  int dim = 0;
  int coeff_degree = 0;
  Mode mode = Mode::MW;
  bool twist_omega = false;
  std::map<PointId, KmwCanon> entries;  // dim 0; zero entries are dropped
  std::optional<KmwRf> generic_rf;      // dim 1, lines
  std::optional<KmwQuad> generic_k;     // dim 1, SpecOK
  std::optional<KmwQ> generic_q;        // dim 1, SpecZ

  bool is_zero() const;
  bool operator==(const Cycle& o) const;
  bool operator!=(const Cycle& o) const { return !(*this == o); }
  std::string to_string() const;
};

/// Empty dim-0 cycle of the given coefficient degree.
Cycle cycle_zero(const CurveModel& m, int coeff_degree, Mode mode = Mode::MW);

/// dim-0 cycle with one entry; the value's field must match the point.
Cycle cycle_point(const CurveModel& m, const PointId& x, const KmwCanon& v);

/// dim-1 cycle holding a generic symbol (lines).
Cycle cycle_generic(const CurveModel& m, const KmwRf& a, Mode mode = Mode::MW);

/// Add an entry into a dim-0 cycle in place (entries at the same point add).
void cycle_add_entry(Cycle& c, const PointId& x, const KmwCanon& v);

Cycle operator+(const Cycle& a, const Cycle& b);
Cycle operator-(const Cycle& a);
Cycle operator-(const Cycle& a, const Cycle& b);

}  // namespace mw
