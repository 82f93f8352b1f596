#include "qlogic/probability.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "qlogic/error.hpp"

namespace qlogic {

namespace {

[[noreturn]] void invalid(std::string_view text) {
  throw InputError("InvalidProbability", "cannot parse probability '" + std::string(text) + "'",
                   {{"value", std::string(text)}});
}

bool all_digits(std::string_view s) {
  return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
}

// cpp_int reads a leading 0 as octal.
boost::multiprecision::cpp_int decimal(std::string digits) {
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
  return boost::multiprecision::cpp_int(digits.empty() ? "0" : digits);
}

}  // namespace

Probability Probability::parse(std::string_view text) {
  Rational r;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) invalid(text);
    const Rational d{decimal(std::string(den))};
    if (d == 0) invalid(text);
    r = Rational{decimal(std::string(num))} / d;
  } else {
    const auto dot = text.find('.');
    const auto whole = text.substr(0, dot);
    const auto frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (dot != std::string_view::npos && !all_digits(frac)))
      invalid(text);
    boost::multiprecision::cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    r = Rational(decimal(std::string(whole) + std::string(frac)), scale);
  }
  if (r > 1) invalid(text);
  return Probability(r);
}

double Probability::to_double() const {
  if (is_exact()) return rational().convert_to<double>();
  return std::get<double>(value_);
}

std::string Probability::str() const {
  if (is_exact()) return rational().str();
  char buf[32];
  const auto d = std::get<double>(value_);
  const auto res = std::to_chars(buf, buf + sizeof buf, d);
  return {buf, res.ptr};
}

#define QLOGIC_PROBABILITY_OP(op)                                                     \
  Probability operator op(const Probability& a, const Probability& b) {               \
    if (a.is_exact() && b.is_exact()) return Probability(Rational(a.rational() op b.rational())); \
    return Probability(a.to_double() op b.to_double());                               \
  }
QLOGIC_PROBABILITY_OP(+)
QLOGIC_PROBABILITY_OP(-)
QLOGIC_PROBABILITY_OP(*)
QLOGIC_PROBABILITY_OP(/)
#undef QLOGIC_PROBABILITY_OP

bool operator==(const Probability& a, const Probability& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
  return a.to_double() == b.to_double();
}

bool operator<(const Probability& a, const Probability& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() < b.rational();
  return a.to_double() < b.to_double();
}

Probability abs(const Probability& p) {
  if (p.is_exact()) return Probability(p.rational() < 0 ? Rational(-p.rational()) : p.rational());
  return Probability(std::abs(p.to_double()));
}

bool approx_equal(const Probability& a, const Probability& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return std::abs(a.to_double() - b.to_double()) <= tol;
}

}  // namespace qlogic
