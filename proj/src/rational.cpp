#include "hypoheat/rational.hpp"

#include <cctype>
#include <cstdio>

namespace hypoheat {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  auto slash = text.find('/');
  auto dot = text.find('.');
  if (slash != std::string_view::npos && dot != std::string_view::npos) return std::nullopt;

  Rational value;
  if (slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    BigInt p{std::string(num)};
    BigInt q{std::string(den)};
    if (q == 0) return std::nullopt;
    value = Rational(p, q);
  } else if (dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (!whole.empty() && !all_digits(whole)) return std::nullopt;
    if (!frac.empty() && !all_digits(frac)) return std::nullopt;
    BigInt p = whole.empty() ? BigInt(0) : BigInt{std::string(whole)};
    BigInt q(1);
    for (char c : frac) {
      p = p * 10 + (c - '0');
      q *= 10;
    }
    value = Rational(p, q);
  } else {
    if (!all_digits(text)) return std::nullopt;
    value = Rational(BigInt{std::string(text)});
  }
  if (negative) value = -value;
  return value;
}

std::string to_fraction_string(const Rational& r) {
  std::string num = numerator(r).str();
  if (denominator(r) == 1) return num;
  return num + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace hypoheat
