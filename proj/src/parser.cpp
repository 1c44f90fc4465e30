#include "kstab/parser.hpp"

#include <cctype>

namespace kstab {

ParseError::ParseError(const std::string& message, long line, long column)
    : InputError(message + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial run() {
    skip_space();
    if (at_end()) fail("empty input");
    Polynomial p = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }

  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    long line = 1, column = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(what, line, column);
  }

  bool accept(char c) {
    skip_space();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    const bool negate = accept('-');
    Polynomial acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_space();
      const std::size_t at = pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("malformed exponent");
      const Integer e = natural();
      if (e > kMaxTotalDegree) fail_at("exponent exceeds " + std::to_string(kMaxTotalDegree), at);
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Integer natural() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial atom() {
    skip_space();
    if (at_end()) fail("expected a term");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value(natural());
      if (accept('/')) {
        skip_space();
        const std::size_t at = pos_;
        if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("malformed denominator");
        const Integer den = natural();
        if (den == 0) fail_at("division by zero", at);
        value /= Rational(den);
      }
      return Polynomial::constant(ring_, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      auto index = ring_->index_of(name);
      if (!index) fail_at("unknown variable '" + name + "'", start);
      return Polynomial::variable(ring_, *index);
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) { return Parser(text, ring).run(); }

}  // namespace kstab
