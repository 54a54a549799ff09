#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace spectrunc {

/// Exact rational used for squared radii and symbol values. Compare only
/// against other Rationals: under C++20 rewritten comparisons, boost 1.74
/// recurses forever on `rational == int`.
using Rational = boost::rational<std::int64_t>;

/// Parses "a/b" or "a". Throws std::invalid_argument on malformed input or a
/// zero denominator.
Rational parse_rational(std::string_view text);

/// Renders as "a/b" (always with a denominator, e.g. "3/1").
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) {
  return boost::rational_cast<double>(value);
}

/// Largest integer s with s*s <= n, for n >= 0.
std::int64_t isqrt_floor(std::int64_t n);

}  // namespace spectrunc
