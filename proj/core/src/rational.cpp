#include "aoi/rational.hpp"

#include <cctype>

#include "aoi/error.hpp"

namespace aoi {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string s, const std::string& whole) {
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  if (!all_digits(s)) throw ValidationError("not a rational number: '" + whole + "'");
  BigInt v(s);
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (auto slash = text.find('/'); slash != std::string::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ValidationError("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string frac = text.substr(dot + 1);
    if (!frac.empty() && !all_digits(frac)) {
      throw ValidationError("not a rational number: '" + text + "'");
    }
    std::string intPart = text.substr(0, dot);
    if (intPart.empty() || intPart == "-" || intPart == "+") intPart += "0";
    BigInt whole = parse_integer(intPart, text);
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt fracValue = frac.empty() ? BigInt(0) : BigInt(frac);
    if (text[0] == '-') fracValue = -fracValue;
    return Rational(whole * scale + fracValue, scale);
  }
  return Rational(parse_integer(text, text));
}

}  // namespace aoi
