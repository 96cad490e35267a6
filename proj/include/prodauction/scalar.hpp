#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

namespace prodauction {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

enum class ArithmeticMode { floating, rational };

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

// Shortest decimal that round-trips to `v`, as an exact fraction (0.1 -> 1/10).
Rational decimal_rational(double v);

// Parses "a/b", "a" or a decimal literal into an exact fraction.
Rational parse_rational(std::string_view text);

std::string to_string(double v);
std::string to_string(const Rational& v);

template <class S>
S lift(double v);

template <>
inline double lift<double>(double v) {
  return v;
}

template <>
inline Rational lift<Rational>(double v) {
  return decimal_rational(v);
}

// Rounds toward zero onto a dyadic grid so that derived amounts keep small
// denominators. Identity for doubles.
inline double quantize(double v) { return v; }
Rational quantize(const Rational& v);

template <class S>
inline S min_of(const S& a, const S& b) {
  return b < a ? b : a;
}

template <class S>
inline S max_of(const S& a, const S& b) {
  return a < b ? b : a;
}

template <class S>
inline S abs_of(const S& a) {
  return a < S(0) ? S(-a) : a;
}

template <class S>
constexpr const char* scalar_name();
template <>
constexpr const char* scalar_name<double>() {
  return "float";
}
template <>
constexpr const char* scalar_name<Rational>() {
  return "rational";
}

}  // namespace prodauction
