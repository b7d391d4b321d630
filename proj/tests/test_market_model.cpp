#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "stable_market/errors.hpp"
#include "stable_market/generator.hpp"
#include "stable_market/market.hpp"

namespace sm = stable_market;
using fixtures::linear;
using sm::Rational;
using sm::Value;

namespace {

const sm::Pair kP11{0, 0};

Rational exact(const Value& v) { return v.rational(); }

}  // namespace

TEST_CASE("seller valuation evaluates by substitution") {
  CHECK(exact(sm::evaluate_seller(fixtures::one_by_one(), kP11, 7)) == 4);
  CHECK(exact(sm::evaluate_seller(fixtures::one_by_one(linear(1, 0)), kP11, 0)) == 0);
}

TEST_CASE("piecewise-linear interpolation agrees with the dense grid") {
  const std::vector<std::pair<Rational, Rational>> pts{{0, 0}, {5, 10}};
  const auto inst = fixtures::one_by_one(sm::Valuation::piecewise_linear(pts));
  CHECK(exact(sm::evaluate_seller(inst, kP11, 3)) == 6);
  CHECK(oracle::dense_grid_value(pts, Rational(3)) == 6);

  const std::vector<std::pair<Rational, Rational>> bent{{-2, -5}, {1, 1}, {4, 2}, {9, 12}};
  const auto f = sm::Valuation::piecewise_linear(bent);
  for (int k = -8; k <= 36; ++k) {
    const Rational x(k, 4);
    CHECK(f(x).rational() == oracle::dense_grid_value(bent, x));
  }
}

TEST_CASE("piecewise-linear extends its end segments") {
  const auto f = sm::Valuation::piecewise_linear({{0, 0}, {5, 10}, {6, 11}});
  CHECK(f(Rational(-1)).rational() == -2);
  CHECK(f(Rational(8)).rational() == 13);
}

TEST_CASE("buyer valuation is taken at minus the price") {
  const auto inst = fixtures::one_by_one();
  CHECK(exact(sm::evaluate_buyer(inst, kP11, 7)) == 0);
  CHECK(exact(sm::evaluate_buyer(inst, kP11, 10)) == -3);
  const auto expo = fixtures::one_by_one(linear(1, 0), sm::Valuation::exponential(Rational(1), Rational(-1), Rational(1)));
  CHECK(sm::evaluate_buyer(expo, kP11, 0).to_double() == doctest::Approx(0.0));
  CHECK_FALSE(expo.exact());
}

TEST_CASE("evaluation outside the price interval or instance fails") {
  const auto inst = fixtures::one_by_one();
  CHECK_THROWS_AS(sm::evaluate_seller(inst, kP11, 11), sm::DomainError);
  CHECK_THROWS_AS(sm::evaluate_buyer(inst, kP11, -1), sm::DomainError);
  CHECK_THROWS_AS(sm::evaluate_seller(inst, sm::Pair{1, 0}, 3), sm::KeyError);
}

TEST_CASE("max_acceptable_price") {
  CHECK(sm::max_acceptable_price(fixtures::one_by_one(), kP11) == 7);
  CHECK(oracle::scan_max_acceptable_price(fixtures::one_by_one(), kP11) == 7);
  CHECK(sm::max_acceptable_price(fixtures::one_by_one(linear(1, 0), linear(1, 20)), kP11) == 10);
  CHECK_FALSE(sm::max_acceptable_price(fixtures::one_by_one(linear(1, 0), linear(1, -1)), kP11).has_value());
}

TEST_CASE("min_decrement") {
  const auto inst = fixtures::one_by_one();
  CHECK(sm::min_decrement(inst, kP11, 7, Value(Rational(0))) == 1);
  CHECK(sm::min_decrement(inst, kP11, 7, Value(Rational(3))) == 3);
  CHECK(oracle::bisect_exact_decrement(inst.terms(kP11).buyer_valuation, 0, 7, Rational(3)) == 3);
  CHECK(oracle::scan_min_decrement(inst, kP11, 7, Value(Rational(3))) == 3);
  CHECK_FALSE(sm::min_decrement(inst, kP11, 0, Value(Rational(8))).has_value());
  CHECK_FALSE(sm::min_decrement(inst, kP11, 0, Value(Rational(100))).has_value());
  CHECK_THROWS_AS(sm::min_decrement(inst, kP11, 11, Value(Rational(0))), sm::DomainError);
}

TEST_CASE("validate_instance lists every defect") {
  CHECK(sm::validate_instance(sm::generate(sm::GeneratorConfig{})).ok());

  const auto reversed = fixtures::one_by_one(linear(1, 0), linear(1, 7), 5, 3);
  const auto report = sm::validate_instance(reversed);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0] == "bounds reversed at (1,1)");

  const auto flat = sm::validate_instance(fixtures::one_by_one(linear(0, 1)));
  REQUIRE(flat.violations.size() == 1);
  CHECK(flat.violations[0].find("not strictly increasing") != std::string::npos);

  const sm::MarketInstance empty({"s"}, {}, {});
  CHECK_FALSE(sm::validate_instance(empty).ok());
  CHECK(sm::validate_terms(empty).ok());
}

TEST_CASE("monotonicity defects per family") {
  CHECK_FALSE(linear(1, 0).monotonicity_defect().has_value());
  CHECK(linear(-1, 0).monotonicity_defect().has_value());
  CHECK(sm::Valuation::piecewise_linear({{0, 0}}).monotonicity_defect().has_value());
  CHECK(sm::Valuation::piecewise_linear({{0, 0}, {1, 0}}).monotonicity_defect().has_value());
  CHECK(sm::Valuation::piecewise_linear({{1, 0}, {0, 1}}).monotonicity_defect().has_value());
  CHECK_FALSE(sm::Valuation::exponential(Rational(-1), Rational(0), Rational(-1)).monotonicity_defect().has_value());
  CHECK(sm::Valuation::exponential(Rational(-1), Rational(0), Rational(1)).monotonicity_defect().has_value());
  CHECK(sm::Valuation::exponential(Rational(1), Rational(0), Rational(0)).monotonicity_defect().has_value());
}

TEST_CASE("properties on generated instances") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto inst = sm::generate(oracle::sweep_config(seed, 3, 12));
    for (const auto pair : inst.pairs()) {
      const auto& t = inst.terms(pair);
      // Strict increase on the integer domain, for both sides.
      for (sm::Money x = t.lower; x < t.upper; ++x) {
        CHECK(sm::compare(sm::evaluate_seller(inst, pair, x), sm::evaluate_seller(inst, pair, x + 1), 0.0) < 0);
        CHECK(sm::compare(sm::evaluate_buyer(inst, pair, x), sm::evaluate_buyer(inst, pair, x + 1), 0.0) > 0);
      }
      const auto best = sm::max_acceptable_price(inst, pair);
      CHECK(best == oracle::scan_max_acceptable_price(inst, pair));
      if (best) {
        CHECK(sm::ge(sm::evaluate_buyer(inst, pair, *best), inst.zero()));
        if (*best < t.upper) CHECK(sm::lt(sm::evaluate_buyer(inst, pair, *best + 1), inst.zero()));
      }
      for (sm::Money p = t.lower; p <= t.upper; ++p) {
        const Value target = sm::evaluate_buyer(inst, pair, (p + t.lower) / 2);
        const auto m = sm::min_decrement(inst, pair, p, target);
        CHECK(m == oracle::scan_min_decrement(inst, pair, p, target));
        if (m) {
          CHECK(sm::ge(sm::evaluate_buyer(inst, pair, p - *m), target));
          if (*m > 1) CHECK(sm::lt(sm::evaluate_buyer(inst, pair, p - *m + 1), target));
        }
      }
    }
  }
}

TEST_CASE("exact evaluation survives scaling by the denominator") {
  const auto f = sm::Valuation::linear(Rational(3, 7), Rational(-5, 11));
  for (int x = -20; x <= 20; ++x) {
    const Rational v = f(Rational(x)).rational();
    const Rational scaled = v * 77;
    CHECK(sm::floor(scaled) == scaled);
    CHECK(scaled == Rational(33 * x - 35));
  }
}
