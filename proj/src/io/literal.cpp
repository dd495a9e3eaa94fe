#include "mwcycles/io/literal.hpp"

#include <cctype>
#include <stdexcept>

namespace mw {
namespace iodetail {

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

int depth_delta(char c) {
  if (c == '[' || c == '(' || c == '<') return 1;
  if (c == ']' || c == ')' || c == '>') return -1;
  return 0;
}

long long read_int(const std::string& s, size_t& pos) {
  size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  require(pos > start, "ParseError", "expected an integer in \"" + s + "\"");
  try {
    return std::stoll(s.substr(start, pos - start));
  } catch (const std::out_of_range&) {
    throw MwError("ParseError", "integer out of range in \"" + s + "\"");
  }
}

}  // namespace

std::vector<std::pair<int, std::string>> split_terms(const std::string& raw) {
  std::string s = strip(raw);
  require(!s.empty(), "ParseError", "empty symbol literal");
  std::vector<std::pair<int, std::string>> out;
  int sign = 1;
  bool sign_taken = false;  // this term already has its sign
  std::string cur;
  int depth = 0;
  for (char c : s) {
    depth += depth_delta(c);
    require(depth >= 0, "ParseError", "unbalanced brackets in \"" + raw + "\"");
    if (depth == 0 && (c == '+' || c == '-')) {
      if (cur.empty()) {
        require(!sign_taken, "ParseError", "repeated sign in \"" + raw + "\"");
        sign = c == '-' ? -1 : 1;
        sign_taken = true;
        continue;
      }
      out.emplace_back(sign, cur);
      cur.clear();
      sign = c == '-' ? -1 : 1;
      sign_taken = true;
      continue;
    }
    cur += c;
  }
  require(depth == 0, "ParseError", "unbalanced brackets in \"" + raw + "\"");
  require(!cur.empty(), "ParseError", "trailing operator in \"" + raw + "\"");
  out.emplace_back(sign, cur);
  return out;
}

std::vector<std::string> split_slots(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    depth += depth_delta(c);
    if (depth == 0 && c == ',') {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  out.push_back(cur);
  for (const auto& piece : out)
    require(!piece.empty(), "ParseError", "empty slot in \"" + s + "\"");
  return out;
}

TermShape parse_term_shape(const std::string& term) {
  TermShape shape;
  size_t pos = 0;
  bool have_any = false;

  if (pos < term.size() && std::isdigit(static_cast<unsigned char>(term[pos]))) {
    shape.coeff = read_int(term, pos);
    have_any = true;
    if (pos == term.size()) return shape;  // bare integer
    require(term[pos] == '*', "ParseError",
            "expected '*' after the coefficient in \"" + term + "\"");
    ++pos;
  }

  if (term.compare(pos, 3, "eta") == 0) {
    pos += 3;
    shape.eta = 1;
    have_any = true;
    if (pos < term.size() && term[pos] == '^') {
      ++pos;
      long long k = read_int(term, pos);
      require(k >= 1, "ParseError", "eta power must be positive in \"" + term + "\"");
      require(k <= 64, "ParseError", "eta power too large in \"" + term + "\"");
      shape.eta = static_cast<int>(k);
    }
    if (pos == term.size()) return shape;  // pure eta power
    require(term[pos] == '*', "ParseError", "expected '*' after eta in \"" + term + "\"");
    ++pos;
  }

  require(pos < term.size(), "ParseError", "truncated term \"" + term + "\"");
  char open = term[pos];
  require(open == '[' || open == '<', "ParseError",
          "expected '[' or '<' at \"" + term.substr(pos) + "\"");
  char close = open == '[' ? ']' : '>';
  require(term.back() == close && term.size() - pos >= 2, "ParseError",
          "unterminated slot body in \"" + term + "\"");
  shape.body = open;
  shape.slots = split_slots(term.substr(pos + 1, term.size() - pos - 2));
  (void)have_any;
  return shape;
}

}  // namespace iodetail

Rat parse_rat(const std::string& s) {
  try {
    Rat r(s, 10);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw MwError("ParseError", "malformed rational \"" + s + "\"");
  }
}

KmwQ parse_kmw_q(const std::string& text) {
  RatCtx ctx;
  return parse_kmw(ctx, text, [](const std::string& s) { return parse_rat(s); });
}

KmwRf parse_kmw_rf(const FqPtr& F, const std::string& text) {
  RfCtx ctx{F};
  return parse_kmw(ctx, text, [&](const std::string& s) { return parse_ratfunc(F, s); });
}

KmwFF parse_kmw_ff(const FqPtr& F, const std::string& text) {
  FFCtx ctx{F};
  return parse_kmw(ctx, text, [&](const std::string& s) { return parse_ff(F, s); });
}

KmwQuad parse_kmw_quad(const QfPtr& K, const std::string& text) {
  QuadCtx ctx{K};
  return parse_kmw(ctx, text, [&](const std::string& s) { return parse_quad(K, s); });
}

}  // namespace mw
