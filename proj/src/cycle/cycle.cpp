#include "mwcycles/cycle/cycle.hpp"

namespace mw {

bool Cycle::is_zero() const {
  if (dim == 0) {
    for (const auto& [x, v] : entries)
      if (!v.is_zero()) return false;
    return true;
  }
  if (generic_rf) return kmw_to_string(*generic_rf) == "0";
  if (generic_k) return kmw_to_string(*generic_k) == "0";
  if (generic_q) return kmw_to_string(*generic_q) == "0";
  return true;
}

bool Cycle::operator==(const Cycle& o) const {
  if (model != o.model || dim != o.dim || coeff_degree != o.coeff_degree || mode != o.mode)
    return false;
  if (dim == 0) {
    // Compare supports up to zero entries.
    auto nonzero = [](const std::map<PointId, KmwCanon>& m) {
      std::map<PointId, KmwCanon> r;
      for (const auto& [x, v] : m)
        if (!v.is_zero()) r.emplace(x, v);
      return r;
    };
    auto a = nonzero(entries), b = nonzero(o.entries);
    if (a.size() != b.size()) return false;
    auto it = a.begin();
    auto jt = b.begin();
    for (; it != a.end(); ++it, ++jt) {
      if (it->first != jt->first) return false;
      if (it->second != jt->second) return false;
    }
    return true;
  }
  // Generic entries compare formally (after compression); pipelines that need
  // semantic equality land in residue fields first.
  auto str = [](const Cycle& c) {
    if (c.generic_rf) return kmw_to_string(*c.generic_rf);
    if (c.generic_k) return kmw_to_string(*c.generic_k);
    if (c.generic_q) return kmw_to_string(*c.generic_q);
    return std::string("0");
  };
  return str(*this) == str(o);
}

std::string Cycle::to_string() const {
  if (dim == 1) {
    std::string body = generic_rf   ? kmw_to_string(*generic_rf)
                       : generic_k  ? kmw_to_string(*generic_k)
                       : generic_q  ? kmw_to_string(*generic_q)
                                    : "0";
    return "(" + model.name() + ", generic: " + body + ")";
  }
  std::string out = "(" + model.name() + ",";
  bool any = false;
  for (const auto& [x, v] : entries) {
    if (v.is_zero()) continue;
    out += " [" + x.to_string() + "] " + v.to_string() + ";";
    any = true;
  }
  if (!any) out += " 0";
  return out + ")";
}

Cycle cycle_zero(const CurveModel& m, int coeff_degree, Mode mode) {
  Cycle c;
  c.model = m;
  c.dim = 0;
  c.coeff_degree = coeff_degree;
  c.mode = mode;
  return c;
}

Cycle cycle_point(const CurveModel& m, const PointId& x, const KmwCanon& v) {
  ClosedPoint cp = resolve_point(m, x);
  require(cp.kappa == v.F, "FieldMismatch", "entry value is not over the point's residue field");
  Cycle c = cycle_zero(m, v.degree, v.mode);
  if (!v.is_zero()) c.entries.emplace(x, v);
  return c;
}

Cycle cycle_generic(const CurveModel& m, const KmwRf& a, Mode mode) {
  require(m.is_line(), "UnsupportedMorphism", "generic F(t)-entries live on line models");
  require(a.ctx.F == m.F, "FieldMismatch", "generic entry over the wrong base field");
  Cycle c;
  c.model = m;
  c.dim = 1;
  c.coeff_degree = a.degree;
  c.mode = mode;
  c.generic_rf = a;
  return c;
}

void cycle_add_entry(Cycle& c, const PointId& x, const KmwCanon& v) {
  require(c.dim == 0, "DimensionMismatch", "entries can be added to dim-0 cycles only");
  require(v.degree == c.coeff_degree, "DimensionMismatch",
          "entry degree does not match the cycle's coefficient degree");
  auto it = c.entries.find(x);
  if (it == c.entries.end()) {
    if (!v.is_zero()) c.entries.emplace(x, v);
    return;
  }
  KmwCanon sum = canon_add(it->second, v);
  if (sum.is_zero())
    c.entries.erase(it);
  else
    it->second = sum;
}

Cycle operator+(const Cycle& a, const Cycle& b) {
  require(a.model == b.model && a.dim == 0 && b.dim == 0, "DimensionMismatch",
          "cycle addition needs two dim-0 cycles over one model");
  require(a.coeff_degree == b.coeff_degree && a.mode == b.mode, "DimensionMismatch",
          "cycle addition needs matching degree and mode");
  Cycle r = a;
  for (const auto& [x, v] : b.entries) cycle_add_entry(r, x, v);
  return r;
}

Cycle operator-(const Cycle& a) {
  Cycle r = a;
  for (auto& [x, v] : r.entries) v = canon_neg(v);
  if (r.generic_rf) r.generic_rf = -*r.generic_rf;
  if (r.generic_k) r.generic_k = -*r.generic_k;
  if (r.generic_q) r.generic_q = -*r.generic_q;
  return r;
}

Cycle operator-(const Cycle& a, const Cycle& b) { return a + (-b); }

}  // namespace mw
