#pragma once

#include <string_view>

#include <boost/multiprecision/float128.hpp>

namespace slag {

/// 113-bit significand float used when double rounding would swamp the
/// quantity being measured (high-order residual decay, for instance).
using Quad = boost::multiprecision::float128;

enum class Precision { Double, Extended };

/// Parses "double" / "extended" (also "quad"). Returns Double for empty input.
Precision parse_precision(std::string_view text);

/// Reads SLAG_PRECISION from the environment.
Precision precision_from_env();

std::string_view to_string(Precision p);

}  // namespace slag
