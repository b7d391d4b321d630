#include "stable_market/valuation.hpp"

#include <cmath>

namespace stable_market {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Rational interpolate(const std::pair<Rational, Rational>& lo, const std::pair<Rational, Rational>& hi,
                     const Rational& x) {
  const Rational slope = (hi.second - lo.second) / (hi.first - lo.first);
  return lo.second + slope * (x - lo.first);
}

}  // namespace

std::string to_string(ValuationKind kind) {
  switch (kind) {
    case ValuationKind::kLinear:
      return "linear";
    case ValuationKind::kPiecewiseLinear:
      return "piecewise_linear";
    case ValuationKind::kExponential:
      return "exponential";
  }
  return "unknown";
}

Value Valuation::operator()(const Rational& x) const {
  return std::visit(
      Overloaded{
          [&](const LinearForm& f) { return Value(Rational(f.a * x + f.b)); },
          [&](const PiecewiseLinearForm& f) {
            const auto& pts = f.points;
            if (pts.size() < 2) throw std::logic_error("piecewise-linear valuation needs two breakpoints");
            std::size_t seg = 0;
            // Segment whose right end is the first breakpoint at or past x,
            // clamped to the extreme segments for extrapolation.
            while (seg + 2 < pts.size() && pts[seg + 1].first < x) ++seg;
            return Value(interpolate(pts[seg], pts[seg + 1], x));
          },
          [&](const ExponentialForm& f) {
            const double a = f.a.convert_to<double>();
            const double b = f.b.convert_to<double>();
            const double c = f.c.convert_to<double>();
            return Value(a * std::exp(c * x.convert_to<double>()) + b);
          },
      },
      form_);
}

std::optional<std::string> Valuation::monotonicity_defect() const {
  return std::visit(
      Overloaded{
          [](const LinearForm& f) -> std::optional<std::string> {
            if (f.a > 0) return std::nullopt;
            return "not strictly increasing: linear slope " + format_rational(f.a) + " <= 0";
          },
          [](const PiecewiseLinearForm& f) -> std::optional<std::string> {
            if (f.points.size() < 2) return "not strictly increasing: piecewise-linear needs at least two breakpoints";
            for (std::size_t k = 0; k + 1 < f.points.size(); ++k) {
              if (!(f.points[k].first < f.points[k + 1].first) || !(f.points[k].second < f.points[k + 1].second)) {
                return "not strictly increasing: breakpoints " + std::to_string(k) + " and " + std::to_string(k + 1) +
                       " are not increasing in both coordinates";
              }
            }
            return std::nullopt;
          },
          [](const ExponentialForm& f) -> std::optional<std::string> {
            if (f.a * f.c > 0) return std::nullopt;
            return "not strictly increasing: exponential requires a*c > 0";
          },
      },
      form_);
}

}  // namespace stable_market
