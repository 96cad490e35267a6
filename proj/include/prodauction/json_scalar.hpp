#pragma once

#include "prodauction/scalar.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace prodauction {

// Doubles are written as JSON numbers (shortest round-trip form), exact
// rationals as "num/den" strings.
inline nlohmann::ordered_json scalar_to_json(double v) { return v; }
inline nlohmann::ordered_json scalar_to_json(const Rational& v) { return v.str(); }

template <class S, class J>
S scalar_from_json(const J& v) {
  if constexpr (std::is_same_v<S, double>) {
    if (v.is_string()) return to_double(parse_rational(v.template get<std::string>()));
    return v.template get<double>();
  } else {
    if (v.is_string()) return parse_rational(v.template get<std::string>());
    if (v.is_number_integer()) return Rational(v.template get<long long>());
    return decimal_rational(v.template get<double>());
  }
}

template <class S>
nlohmann::ordered_json vector_to_json(const std::vector<S>& values) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& v : values) arr.push_back(scalar_to_json(v));
  return arr;
}

template <class S>
nlohmann::ordered_json matrix_to_json(const std::vector<std::vector<S>>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) arr.push_back(vector_to_json(r));
  return arr;
}

template <class S, class J>
std::vector<S> vector_from_json(const J& arr) {
  std::vector<S> out;
  for (const auto& v : arr) out.push_back(scalar_from_json<S>(v));
  return out;
}

template <class S, class J>
std::vector<std::vector<S>> matrix_from_json(const J& arr) {
  std::vector<std::vector<S>> out;
  for (const auto& r : arr) out.push_back(vector_from_json<S>(r));
  return out;
}

}  // namespace prodauction
