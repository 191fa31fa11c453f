#include "condtree/rational.hpp"

#include <cctype>

#include "condtree/error.hpp"

namespace condtree {

namespace {

BigInt pow10(unsigned long e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, e);
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Rational { throw Error(ErrorCode::ParseError, "not a rational: '" + s + "'"); };
  if (s.empty()) return fail();
  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) return fail();
    q.canonicalize();
    return q;
  }
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c == 'e' || c == 'E') {
      try {
        std::size_t used = 0;
        exponent += std::stol(s.substr(i + 1), &used);
        if (used != s.size() - i - 1) return fail();
      } catch (const std::exception&) {
        return fail();
      }
      break;
    } else {
      return fail();
    }
  }
  if (!seen_digit) return fail();
  Rational q{BigInt(digits, 10)};
  if (exponent > 0) q *= Rational(pow10(static_cast<unsigned long>(exponent)));
  if (exponent < 0) q /= Rational(pow10(static_cast<unsigned long>(-exponent)));
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace condtree
