#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mwcycles/cycle/model.hpp"
#include "mwcycles/kmw/contexts.hpp"

namespace mw {

/// Symbol literals.
///
/// A literal is a sum of terms, each an optional integer coefficient, an
/// optional eta power, and an optional slot body:
///
///   3*[u] - eta*[a,b]      2*<1> + <g>      5      eta^2*[t]      -[t,t+1]
///
/// Square brackets are multiplicative symbol slots [a][b]...; angle brackets
/// are diagonal forms, <a,b> = <a><b>. Slot contents are parsed by the
/// field's own literal syntax (rationals "p/q", quadratic "a+b*w",
/// polynomials and their ratios "t^2+1", "(t^2+1)/t"). Whitespace is
/// ignored everywhere. All terms of a literal must have one degree.

namespace iodetail {

/// Top-level split of a stripped literal into signed term bodies. Signs are
/// folded: "a - -b" is rejected, "-a" yields (-1, "a").
std::vector<std::pair<int, std::string>> split_terms(const std::string& s);

/// Split "a,b,c" on commas outside any nesting.
std::vector<std::string> split_slots(const std::string& s);

/// Piece of one parsed term before slot interpretation.
struct TermShape {
  long long coeff = 1;
  int eta = 0;
  char body = 0;  // 0 none, '[' symbol slots, '<' diagonal slots
  std::vector<std::string> slots;
};

TermShape parse_term_shape(const std::string& term);

}  // namespace iodetail

/// Parse a literal over an arbitrary symbol context; `slot` maps one slot
/// string to a context element. Throws ParseError on malformed input (a
/// degree mismatch between terms surfaces from the symbol arithmetic).
template <class Ctx, class SlotFn>
Kmw<Ctx> parse_kmw(const Ctx& ctx, const std::string& text, SlotFn&& slot) {
  auto terms = iodetail::split_terms(text);
  bool first = true;
  Kmw<Ctx> acc = kmw_zero(ctx, 0);
  for (const auto& [sign, body] : terms) {
    iodetail::TermShape shape = iodetail::parse_term_shape(body);
    Kmw<Ctx> val = kmw_const(ctx, 1);
    if (shape.body == '[') {
      std::vector<typename Ctx::Elem> us;
      for (const auto& s : shape.slots) us.push_back(slot(s));
      val = kmw_symbol(ctx, std::move(us));
    } else if (shape.body == '<') {
      for (const auto& s : shape.slots) val = val * kmw_diag(ctx, slot(s));
    }
    val = kmw_scale(sign * shape.coeff, eta_mul(val, shape.eta));
    acc = first ? val : acc + val;
    first = false;
  }
  return acc;
}

/// Rational number "p/q" or "p".
Rat parse_rat(const std::string& s);

KmwQ parse_kmw_q(const std::string& text);
KmwRf parse_kmw_rf(const FqPtr& F, const std::string& text);
KmwFF parse_kmw_ff(const FqPtr& F, const std::string& text);
KmwQuad parse_kmw_quad(const QfPtr& K, const std::string& text);

}  // namespace mw
