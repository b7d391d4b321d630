#include "stable_market/value.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace stable_market {

namespace {

boost::multiprecision::cpp_int parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) pos = 1;
  if (pos == text.size()) throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  for (std::size_t k = pos; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
  }
  boost::multiprecision::cpp_int value(std::string(text.substr(pos)));
  return text[0] == '-' ? boost::multiprecision::cpp_int(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const auto num = parse_integer(text.substr(0, slash), text);
  const auto den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string format_rational(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational floor(const Rational& r) {
  using boost::multiprecision::cpp_int;
  const cpp_int num = boost::multiprecision::numerator(r);
  const cpp_int den = boost::multiprecision::denominator(r);
  cpp_int q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return Rational(q);
}

Rational ceil(const Rational& r) { return -floor(-r); }

double float_epsilon() {
  static const double eps = [] {
    if (const char* env = std::getenv("STABLE_MARKET_EPS")) {
      char* end = nullptr;
      const double parsed = std::strtod(env, &end);
      if (end != env && parsed >= 0.0) return parsed;
    }
    return 1e-9;
  }();
  return eps;
}

const Rational& Value::rational() const {
  if (const auto* r = std::get_if<Rational>(&rep_)) return *r;
  throw std::logic_error("float value has no exact rational form");
}

double Value::to_double() const {
  if (const auto* r = std::get_if<Rational>(&rep_)) return r->convert_to<double>();
  return std::get<double>(rep_);
}

std::string Value::to_string() const {
  if (const auto* r = std::get_if<Rational>(&rep_)) return format_rational(*r);
  return std::to_string(std::get<double>(rep_));
}

Value operator+(const Value& a, const Value& b) {
  if (a.exact() && b.exact()) return Value(a.rational() + b.rational());
  return Value(a.to_double() + b.to_double());
}

Value operator-(const Value& a, const Value& b) {
  if (a.exact() && b.exact()) return Value(a.rational() - b.rational());
  return Value(a.to_double() - b.to_double());
}

Value operator-(const Value& a) {
  if (a.exact()) return Value(Rational(-a.rational()));
  return Value(-a.to_double());
}

int compare(const Value& a, const Value& b, double eps) {
  if (a.exact() && b.exact()) {
    const auto& x = a.rational();
    const auto& y = b.rational();
    return x < y ? -1 : (y < x ? 1 : 0);
  }
  const double diff = a.to_double() - b.to_double();
  if (diff > eps) return 1;
  if (-diff > eps) return -1;
  return 0;
}

}  // namespace stable_market
