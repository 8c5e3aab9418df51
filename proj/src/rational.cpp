#include "dpfx/rational.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "dpfx/error.hpp"

namespace dpfx {
namespace {

constexpr std::int64_t kMaxDigitsValue = std::numeric_limits<std::int64_t>::max() / 10;

std::int64_t read_digits(std::string_view text, std::size_t& pos, int* count) {
  std::int64_t value = 0;
  *count = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    if (value > kMaxDigitsValue) throw ParseError(pos, "number too large");
    value = value * 10 + (text[pos] - '0');
    ++pos;
    ++*count;
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  int digits = 0;
  std::int64_t num = read_digits(text, pos, &digits);
  std::int64_t den = 1;
  int frac_digits = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::size_t start = pos;
    std::int64_t frac = read_digits(text, pos, &frac_digits);
    if (frac_digits > 18) throw ParseError(start, "too many decimal places");
    for (int k = 0; k < frac_digits; ++k) {
      if (num > kMaxDigitsValue) throw ParseError(start, "number too large");
      num *= 10;
      den *= 10;
    }
    num += frac;
  } else if (digits > 0 && pos < text.size() && text[pos] == '/') {
    ++pos;
    int den_digits = 0;
    std::size_t start = pos;
    den = read_digits(text, pos, &den_digits);
    if (den_digits == 0) throw ParseError(start, "expected denominator");
    if (den == 0) throw ParseError(start, "zero denominator");
  }
  if (digits + frac_digits == 0) throw ParseError(pos, "expected a number");
  if (pos != text.size()) throw ParseError(pos, "unexpected character");
  Rational value(num, den);
  return negative ? -value : value;
}

std::string to_string(const Rational& value) {
  std::int64_t den = value.denominator();
  std::int64_t d = den;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) {
    return std::to_string(value.numerator()) + "/" + std::to_string(den);
  }
  if (den == 1) return std::to_string(value.numerator());
  int places = std::max(twos, fives);
  std::int64_t scale = 1;
  for (int k = 0; k < places; ++k) scale *= 10;
  std::int64_t scaled = value.numerator() * (scale / den);
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string whole = std::to_string(scaled / scale);
  std::string frac = std::to_string(scaled % scale);
  frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
  return (negative ? "-" : "") + whole + "." + frac;
}

double to_double(const Rational& value) {
  return boost::rational_cast<double>(value);
}

std::int64_t floor_of(const Rational& value) {
  std::int64_t q = value.numerator() / value.denominator();
  if (value.numerator() < 0 && q * value.denominator() != value.numerator()) --q;
  return q;
}

std::int64_t ceil_of(const Rational& value) { return -floor_of(-value); }

}  // namespace dpfx
