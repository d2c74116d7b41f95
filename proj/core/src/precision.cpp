#include "slag/precision.hpp"

#include <cstdlib>
#include <string>

#include "slag/errors.hpp"

namespace slag {

Precision parse_precision(std::string_view text) {
  if (text.empty() || text == "double") return Precision::Double;
  if (text == "extended" || text == "quad") return Precision::Extended;
  throw InvalidArgument("unknown precision mode '" + std::string(text) + "' (expected double or extended)");
}

Precision precision_from_env() {
  const char* v = std::getenv("SLAG_PRECISION");
  return parse_precision(v ? std::string_view(v) : std::string_view());
}

std::string_view to_string(Precision p) {
  return p == Precision::Double ? "double" : "extended";
}

}  // namespace slag
