#include "prodauction/scalar.hpp"

#include <charconv>
#include <stdexcept>

namespace prodauction {

namespace {

constexpr unsigned kQuantumBits = 60;

Rational pow10(int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num(s.substr(0, slash));
    Rational den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return num / den;
  }
  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '-' || s[pos] == '+') {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string mantissa;
  int exponent = 0;
  bool seen_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c >= '0' && c <= '9') {
      mantissa.push_back(c);
      seen_digit = true;
    } else if (c == '.') {
      for (++pos; pos < s.size() && s[pos] >= '0' && s[pos] <= '9'; ++pos) {
        mantissa.push_back(s[pos]);
        --exponent;
        seen_digit = true;
      }
      --pos;
    } else if (c == 'e' || c == 'E') {
      exponent += std::stoi(s.substr(pos + 1));
      break;
    } else {
      throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed rational literal '" + s + "'");
  Rational value(mantissa.empty() ? std::string("0") : mantissa);
  if (exponent > 0) value *= pow10(exponent);
  if (exponent < 0) value /= pow10(-exponent);
  return negative ? Rational(-value) : value;
}

Rational decimal_rational(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value has no rational form");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

std::string to_string(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_string(const Rational& v) { return v.str(); }

Rational quantize(const Rational& v) {
  using Int = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
  Int den(boost::multiprecision::denominator(v));
  const Int one(1);
  const Int quantum = one << kQuantumBits;
  if ((den & (den - one)) == 0 && den <= quantum) return v;
  Int scaled = Int(boost::multiprecision::numerator(v)) * quantum / den;
  return Rational(scaled) / Rational(quantum);
}

}  // namespace prodauction
