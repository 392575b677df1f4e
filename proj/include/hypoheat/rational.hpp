#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace hypoheat {

/// Exact rational scalar used throughout the symbolic layer.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p", "p/q" or a plain decimal such as "2.5" / "-0.125".
/// Returns std::nullopt on malformed input or zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical fraction form: "p/q", or just "p" when the denominator is 1.
std::string to_fraction_string(const Rational& r);

double to_double(const Rational& r);

inline double to_double(double x) { return x; }

/// Shortest-field formatting used for report floats: 17 significant digits
/// round-trips any IEEE double.
std::string format_double(double x);

}  // namespace hypoheat
