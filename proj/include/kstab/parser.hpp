#pragma once

#include <string>
#include <string_view>

#include "kstab/errors.hpp"
#include "kstab/polynomial.hpp"

namespace kstab {

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, long line, long column);
  long line() const { return line_; }
  long column() const { return column_; }

 private:
  long line_;
  long column_;
};

/// expr   := ["-"] term (("+" | "-") term)*
/// term   := factor ("*" factor)*
/// factor := atom ("^" natural)?
/// atom   := natural ("/" natural)? | variable | "(" expr ")"
/// Whitespace is insignificant; juxtaposition is not multiplication.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

}  // namespace kstab
