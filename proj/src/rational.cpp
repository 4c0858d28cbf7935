#include "decomp/rational.hpp"

#include <cctype>

#include "decomp/errors.hpp"

namespace decomp {

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational rational_from_string(const std::string& text) {
  const std::size_t slash = text.find('/');
  std::string num = (slash == std::string::npos) ? text : text.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "1" : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw ParseError("bad rational literal: '" + text + "'");
  }
  Rational value;
  if (value.set_str(num + "/" + den, 10) != 0) {
    throw ParseError("bad rational literal: '" + text + "'");
  }
  if (sgn(value.get_den()) == 0) {
    throw ParseError("zero denominator in rational literal: '" + text + "'");
  }
  value.canonicalize();
  return value;
}

std::string rational_to_string(const Rational& value) {
  return value.get_str();
}

}  // namespace decomp
