#pragma once

// Shortest round-trip decimal encoding of doubles, used by every JSON schema.

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "slag/errors.hpp"

namespace slag::detail {

inline std::string format_decimal(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline double parse_decimal(std::string_view text) {
  if (text == "nan") return std::nan("");
  if (text == "inf" || text == "+inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw SchemaError("not a decimal number: '" + std::string(text) + "'");
  }
  return value;
}

/// Accepts a decimal string or a JSON number.
inline double number_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (v.is_string()) return parse_decimal(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw SchemaError(std::string("field '") + key + "' must be a decimal string");
}

inline std::vector<double> decimal_array(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw SchemaError(std::string("missing array '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_string()) throw SchemaError(std::string("entries of '") + key + "' must be decimal strings");
    out.push_back(parse_decimal(v.get<std::string>()));
  }
  return out;
}

inline nlohmann::json decimal_json(const std::vector<double>& xs) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : xs) a.push_back(format_decimal(x));
  return a;
}

}  // namespace slag::detail
