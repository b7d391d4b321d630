#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace stable_market {

/// Integer amount of money transferred from a buyer to a seller.
using Money = std::int64_t;

/// Arbitrary-precision rational used by the linear and piecewise-linear
/// valuation families.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "n", "-n" or "n/d" into a normalized rational.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "n" for integers, "n/d" otherwise (d > 0).
std::string format_rational(const Rational& r);

/// Largest integer not greater than r.
Rational floor(const Rational& r);
/// Smallest integer not less than r.
Rational ceil(const Rational& r);

/// Tolerance used whenever a float-valued quantity takes part in a
/// comparison. Defaults to 1e-9; the environment variable
/// STABLE_MARKET_EPS overrides it (read once per process).
double float_epsilon();

/// A valuation or payoff. Exact when every input came from a rational
/// family, a double otherwise. Mixed arithmetic degrades to double.
class Value {
 public:
  Value() = default;
  Value(Rational r) : rep_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  explicit Value(double d) : rep_(d) {}

  /// Zero in the requested arithmetic mode.
  static Value zero(bool exact) { return exact ? Value() : Value(0.0); }

  bool exact() const { return std::holds_alternative<Rational>(rep_); }
  const Rational& rational() const;
  double to_double() const;
  std::string to_string() const;

  friend Value operator+(const Value& a, const Value& b);
  friend Value operator-(const Value& a, const Value& b);
  friend Value operator-(const Value& a);
  Value& operator+=(const Value& other) { return *this = *this + other; }

  /// Structural identity: same representation and same stored value.
  friend bool operator==(const Value& a, const Value& b) = default;

 private:
  std::variant<Rational, double> rep_{Rational(0)};
};

/// Three-way comparison. Two exact operands compare exactly; otherwise
/// both are taken as doubles and differences within `eps` count as equal.
int compare(const Value& a, const Value& b, double eps);
inline int compare(const Value& a, const Value& b) { return compare(a, b, float_epsilon()); }

inline bool ge(const Value& a, const Value& b) { return compare(a, b) >= 0; }
inline bool gt(const Value& a, const Value& b) { return compare(a, b) > 0; }
inline bool le(const Value& a, const Value& b) { return compare(a, b) <= 0; }
inline bool lt(const Value& a, const Value& b) { return compare(a, b) < 0; }
inline bool eq(const Value& a, const Value& b) { return compare(a, b) == 0; }

}  // namespace stable_market
