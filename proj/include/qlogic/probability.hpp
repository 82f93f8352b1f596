#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace qlogic {

using Rational = boost::multiprecision::cpp_rational;

/// A probability weight held either exactly (rational) or as a double.
/// Arithmetic stays exact while both operands are exact.
class Probability {
 public:
  Probability() : value_(Rational(0)) {}
  Probability(Rational r) : value_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  explicit Probability(double d) : value_(d) {}
  static Probability exact(long num, long den = 1) { return Probability(Rational(num, den)); }

  /// Parses "p/q", an integer or a decimal literal ("0.25" → 1/4), exactly.
  /// Throws InputError("InvalidProbability").
  static Probability parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const { return std::get<Rational>(value_); }
  double to_double() const;

  /// "1/2" for exact values, shortest round-trip decimal otherwise.
  std::string str() const;

  Probability& operator+=(const Probability& o) { return *this = *this + o; }
  friend Probability operator+(const Probability& a, const Probability& b);
  friend Probability operator-(const Probability& a, const Probability& b);
  friend Probability operator*(const Probability& a, const Probability& b);
  friend Probability operator/(const Probability& a, const Probability& b);
  /// Exact comparison when both are exact, else compares doubles.
  friend bool operator==(const Probability& a, const Probability& b);
  friend bool operator<(const Probability& a, const Probability& b);

 private:
  std::variant<Rational, double> value_;
};

Probability abs(const Probability& p);

/// a == b when both are exact, |a − b| ≤ tol otherwise.
bool approx_equal(const Probability& a, const Probability& b, double tol);

}  // namespace qlogic
