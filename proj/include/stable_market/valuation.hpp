#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "stable_market/value.hpp"

namespace stable_market {

/// f(x) = a*x + b.
struct LinearForm {
  Rational a;
  Rational b;
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Interpolates between breakpoints and extends the first and last
/// segments linearly beyond the extreme breakpoints.
struct PiecewiseLinearForm {
  std::vector<std::pair<Rational, Rational>> points;
  friend bool operator==(const PiecewiseLinearForm&, const PiecewiseLinearForm&) = default;
};

/// f(x) = a*exp(c*x) + b, evaluated in double precision.
struct ExponentialForm {
  Rational a;
  Rational b;
  Rational c;
  friend bool operator==(const ExponentialForm&, const ExponentialForm&) = default;
};

enum class ValuationKind { kLinear, kPiecewiseLinear, kExponential };

std::string to_string(ValuationKind kind);

/// A strictly increasing function of money, given declaratively.
class Valuation {
 public:
  using Form = std::variant<LinearForm, PiecewiseLinearForm, ExponentialForm>;

  Valuation() : form_(LinearForm{Rational(1), Rational(0)}) {}
  explicit Valuation(Form form) : form_(std::move(form)) {}

  static Valuation linear(Rational a, Rational b) { return Valuation(LinearForm{std::move(a), std::move(b)}); }
  static Valuation piecewise_linear(std::vector<std::pair<Rational, Rational>> points) {
    return Valuation(PiecewiseLinearForm{std::move(points)});
  }
  static Valuation exponential(Rational a, Rational b, Rational c) {
    return Valuation(ExponentialForm{std::move(a), std::move(b), std::move(c)});
  }

  ValuationKind kind() const { return static_cast<ValuationKind>(form_.index()); }
  const Form& form() const { return form_; }

  /// True for the linear and piecewise-linear families.
  bool exact() const { return kind() != ValuationKind::kExponential; }

  /// Evaluates at an arbitrary rational point. Exact families return an
  /// exact value; the exponential family returns a double.
  Value operator()(const Rational& x) const;
  Value operator()(Money x) const { return (*this)(Rational(x)); }

  /// Analytic strict-increase check. Returns a description of the defect,
  /// or nothing when the function is strictly increasing everywhere.
  std::optional<std::string> monotonicity_defect() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  Form form_;
};

}  // namespace stable_market
