#include <cctype>

#include "algfun/poly.hpp"

namespace algfun {

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Fail::parse,
                "parse error at position " + std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  ExactPoly expr() {
    ExactPoly acc = term();
    while (true) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  ExactPoly term() {
    ExactPoly acc = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos;
        acc = acc * factor();
      } else if (c == '/') {
        ++pos;
        ExactPoly d = factor();
        if (d.terms.size() != 1 || d.terms.begin()->first != std::make_pair(0, 0))
          fail("division is only defined by constants");
        acc = acc.scaled(GaussianRational::integer(1) / d.terms.begin()->second);
      } else if (c == '(' || c == 'z' || c == 'w' || c == 'i' ||
                 std::isdigit((unsigned char)c)) {
        // juxtaposition, e.g. "3z" or "2(1+w)"
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  ExactPoly factor() {
    skip_ws();
    if (eat('-')) {
      return factor().scaled(GaussianRational::integer(-1));
    }
    if (eat('+')) return factor();
    ExactPoly base = atom();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      if (start == pos) fail("expected a non-negative integer exponent");
      long e = std::stol(s.substr(start, pos - start));
      ExactPoly acc;
      acc.add_term(0, 0, GaussianRational::integer(1));
      ExactPoly b = base;
      while (e) {
        if (e & 1) acc = acc * b;
        e >>= 1;
        if (e) b = b * b;
      }
      return acc;
    }
    return base;
  }

  ExactPoly atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    ExactPoly p;
    if (c == '(') {
      ++pos;
      p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == 'z') {
      ++pos;
      p.add_term(1, 0, GaussianRational::integer(1));
      return p;
    }
    if (c == 'w') {
      ++pos;
      p.add_term(0, 1, GaussianRational::integer(1));
      return p;
    }
    if (c == 'i' || c == 'I') {
      ++pos;
      p.add_term(0, 0, GaussianRational::imag_unit());
      return p;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      mpz_class num(s.substr(start, pos - start));
      p.add_term(0, 0, GaussianRational{mpq_class(num), mpq_class(0)});
      return p;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

ExactPoly parse_poly(const std::string& text) {
  Parser parser(text);
  ExactPoly p = parser.expr();
  parser.skip_ws();
  if (parser.pos != text.size()) parser.fail("trailing input");
  if (p.is_zero()) throw Error(Fail::parse, "zero polynomial");
  if (p.w_degree() < 1) throw Error(Fail::parse, "input has w-degree 0");
  return p;
}

}  // namespace algfun
