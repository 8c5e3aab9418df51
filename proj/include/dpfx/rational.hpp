#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace dpfx {

using Rational = boost::rational<std::int64_t>;

// Accepts "12", "0.05", "3/4". Throws ParseError.
Rational parse_rational(std::string_view text);

// Exact decimal when the denominator allows it, "p/q" otherwise.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

std::int64_t floor_of(const Rational& value);
std::int64_t ceil_of(const Rational& value);

}  // namespace dpfx
