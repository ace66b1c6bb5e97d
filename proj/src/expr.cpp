#include "nevlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace nevlab {

namespace {

[[noreturn]] void fail(const std::string& code, const std::string& text,
                       std::size_t pos, const std::string& what) {
  throw Error(code, what + " at position " + std::to_string(pos) + " in \"" +
                        text + "\"");
}

// One grammar, two value types. Value must provide add/sub/mul/pow_int and
// factories for numbers and variables.
template <typename Value, typename Atoms>
class Parser {
 public:
  Parser(const std::string& text, Atoms atoms)
      : text_(text), atoms_(std::move(atoms)) {}

  Value parse() {
    Value v = expression();
    skip_space();
    if (pos_ != text_.size())
      fail("PARSE_ERROR", text_, pos_, "unexpected trailing input");
    return v;
  }

 private:
  Value expression() {
    skip_space();
    bool negate = false;
    while (peek() == '+' || peek() == '-') {
      if (take() == '-') negate = !negate;
      skip_space();
    }
    Value acc = term();
    if (negate) acc = atoms_.negate(acc);
    for (;;) {
      skip_space();
      const char c = peek();
      if (c == '+' || c == '-') {
        take();
        Value t = term();
        acc = (c == '+') ? atoms_.add(acc, t) : atoms_.sub(acc, t);
      } else {
        return acc;
      }
    }
  }

  Value term() {
    Value acc = factor();
    for (;;) {
      skip_space();
      if (peek() == '*') {
        take();
        acc = atoms_.mul(acc, factor());
      } else {
        return acc;
      }
    }
  }

  Value factor() {
    Value base = atom();
    skip_space();
    if (peek() == '^') {
      take();
      skip_space();
      const std::size_t start = pos_;
      while (std::isdigit(peek())) take();
      if (start == pos_)
        fail("PARSE_ERROR", text_, pos_, "expected integer exponent");
      const int e = std::atoi(text_.substr(start, pos_ - start).c_str());
      return atoms_.pow_int(base, e, text_, start);
    }
    return base;
  }

  Value atom() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      take();
      Value v = expression();
      skip_space();
      if (peek() != ')') fail("PARSE_ERROR", text_, pos_, "expected ')'");
      take();
      return v;
    }
    if (c == '-') {
      take();
      return atoms_.negate(atom());
    }
    if (c == '+') {
      take();
      return atom();
    }
    if (std::isdigit(c) || c == '.') return number();
    if (std::isalpha(c)) return atoms_.named(*this, text_, pos_);
    fail("PARSE_ERROR", text_, pos_, "expected a value");
  }

  Value number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("PARSE_ERROR", text_, pos_, "malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    if (peek() == 'i') {
      take();
      return atoms_.number(Complex(0.0, v));
    }
    return atoms_.number(Complex(v, 0.0));
  }

 public:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char take() { return text_[pos_++]; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(
                                      text_[pos_])))
      ++pos_;
  }
  std::size_t pos_ = 0;
  Value expression_public() { return expression(); }

 private:
  const std::string& text_;
  Atoms atoms_;
};

struct CurveAtoms {
  ExpPoly add(const ExpPoly& a, const ExpPoly& b) const { return a + b; }
  ExpPoly sub(const ExpPoly& a, const ExpPoly& b) const { return a - b; }
  ExpPoly mul(const ExpPoly& a, const ExpPoly& b) const { return a * b; }
  ExpPoly negate(const ExpPoly& a) const { return a.scaled(Complex(-1.0)); }
  ExpPoly number(Complex c) const { return ExpPoly::constant(c); }
  ExpPoly pow_int(const ExpPoly& a, int e, const std::string& text,
                  std::size_t pos) const {
    if (e < 0) fail("PARSE_ERROR", text, pos, "negative exponent");
    ExpPoly acc = ExpPoly::constant(Complex(1.0));
    for (int i = 0; i < e; ++i) acc = acc * a;
    return acc;
  }
  ExpPoly named(Parser<ExpPoly, CurveAtoms>& p, const std::string& text,
                std::size_t pos) const {
    std::string name;
    while (std::isalnum(p.peek()) || p.peek() == '_') name += p.take();
    if (name == "z") return ExpPoly::variable();
    if (name == "i") return ExpPoly::constant(Complex(0.0, 1.0));
    if (name == "exp") {
      p.skip_space();
      if (p.peek() != '(')
        fail("PARSE_ERROR", text, p.pos_, "expected '(' after exp");
      p.take();
      ExpPoly arg = p.expression_public();
      p.skip_space();
      if (p.peek() != ')')
        fail("PARSE_ERROR", text, p.pos_, "expected ')' after exp argument");
      p.take();
      if (!arg.is_polynomial() || arg.polynomial_part().degree() > 1)
        fail("EXP_ARGUMENT", text, pos,
             "exp argument must be at most linear in z");
      const UnivariatePoly lin = arg.polynomial_part();
      const Complex shift = lin.coeff(0);
      const Complex lambda = lin.coeff(1);
      return ExpPoly::exponential(lambda, std::exp(shift));
    }
    fail("PARSE_ERROR", text, pos, "unknown name '" + name + "'");
  }
};

struct FormAtoms {
  int num_vars;
  MultiPoly add(const MultiPoly& a, const MultiPoly& b) const { return a + b; }
  MultiPoly sub(const MultiPoly& a, const MultiPoly& b) const { return a - b; }
  MultiPoly mul(const MultiPoly& a, const MultiPoly& b) const { return a * b; }
  MultiPoly negate(const MultiPoly& a) const {
    return a.scaled(Complex(-1.0));
  }
  MultiPoly number(Complex c) const {
    return MultiPoly::constant(num_vars, c);
  }
  MultiPoly pow_int(const MultiPoly& a, int e, const std::string& text,
                    std::size_t pos) const {
    if (e < 0) fail("PARSE_ERROR", text, pos, "negative exponent");
    return a.pow(e);
  }
  MultiPoly named(Parser<MultiPoly, FormAtoms>& p, const std::string& text,
                  std::size_t pos) const {
    std::string name;
    while (std::isalnum(p.peek()) || p.peek() == '_') name += p.take();
    if (name == "i") return MultiPoly::constant(num_vars, Complex(0.0, 1.0));
    if (name.size() >= 2 && name[0] == 'w') {
      bool digits = true;
      for (std::size_t k = 1; k < name.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(name[k]))) digits = false;
      if (digits) {
        const int idx = std::atoi(name.c_str() + 1);
        if (idx >= num_vars)
          fail("DIMENSION_MISMATCH", text, pos,
               "variable w" + std::to_string(idx) + " exceeds the ambient "
               "dimension");
        return MultiPoly::variable(num_vars, idx);
      }
    }
    fail("PARSE_ERROR", text, pos, "unknown name '" + name + "'");
  }
};

}  // namespace

ExpPoly parse_curve_expression(const std::string& text) {
  Parser<ExpPoly, CurveAtoms> p(text, CurveAtoms{});
  return p.parse();
}

MultiPoly parse_form_expression(const std::string& text, int num_vars) {
  Parser<MultiPoly, FormAtoms> p(text, FormAtoms{num_vars});
  return p.parse();
}

}  // namespace nevlab
