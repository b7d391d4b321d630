#include "stable_market/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "stable_market/errors.hpp"

namespace stable_market {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::int64_t SplitMix64::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("empty uniform range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == UINT64_MAX) return static_cast<std::int64_t>(next());
  const std::uint64_t n = span + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % n);
}

std::size_t SplitMix64::weighted(const std::vector<std::uint32_t>& weights) {
  const std::uint64_t total = std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
  if (total == 0) throw std::invalid_argument("all weights are zero");
  auto pick = static_cast<std::uint64_t>(uniform(0, static_cast<std::int64_t>(total) - 1));
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (pick < weights[k]) return k;
    pick -= weights[k];
  }
  return weights.size() - 1;
}

namespace {

/// Numerator range [k_lo, k_hi] of k/den inside [lo, hi] and strictly > 0.
std::pair<std::int64_t, std::int64_t> numerator_range(const Rational& lo, const Rational& hi, std::int64_t den) {
  const Rational k_lo = std::max(Rational(1), ceil(lo * den));
  const Rational k_hi = floor(hi * den);
  return {k_lo.convert_to<std::int64_t>(), k_hi.convert_to<std::int64_t>()};
}

class ValuationDrawer {
 public:
  ValuationDrawer(const GeneratorConfig& config, SplitMix64& rng) : config_(config), rng_(rng) {
    for (std::int64_t d = 1; d <= config.max_denominator; ++d) {
      if (auto [lo, hi] = numerator_range(config.slope_min, config.slope_max, d); lo <= hi) {
        denominators_.push_back(d);
      }
    }
  }

  bool has_slopes() const { return !denominators_.empty(); }

  Rational slope() {
    const auto d = denominators_[static_cast<std::size_t>(rng_.uniform(0, static_cast<std::int64_t>(denominators_.size()) - 1))];
    const auto [lo, hi] = numerator_range(config_.slope_min, config_.slope_max, d);
    return Rational(rng_.uniform(lo, hi), d);
  }

  /// A valuation that is strictly increasing on [dom_lo, dom_hi] and
  /// crosses zero at (or, for exponential, within rounding of) `zero_at`.
  Valuation draw(std::int64_t zero_at, std::int64_t dom_lo, std::int64_t dom_hi) {
    const std::vector<std::uint32_t> weights{config_.families.linear, config_.families.piecewise_linear,
                                             config_.families.exponential};
    switch (rng_.weighted(weights)) {
      case 0: {
        const Rational a = slope();
        return Valuation::linear(a, Rational(-a * zero_at));
      }
      case 1:
        return piecewise(zero_at, dom_lo, dom_hi);
      default:
        return exponential(zero_at, dom_lo, dom_hi);
    }
  }

 private:
  Valuation piecewise(std::int64_t zero_at, std::int64_t dom_lo, std::int64_t dom_hi) {
    const auto window = static_cast<std::size_t>(dom_hi - dom_lo + 1);
    const auto max_points = static_cast<std::int64_t>(std::min(config_.max_breakpoints, window));
    const auto count = static_cast<std::size_t>(rng_.uniform(2, std::max<std::int64_t>(2, max_points)));
    std::vector<std::int64_t> xs;
    while (xs.size() < count) {
      const auto x = rng_.uniform(dom_lo, dom_hi);
      if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    std::vector<std::pair<Rational, Rational>> points;
    Rational y(0);
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (k > 0) y += slope() * (xs[k] - xs[k - 1]);
      points.emplace_back(Rational(xs[k]), y);
    }
    const Valuation unshifted = Valuation::piecewise_linear(points);
    const Rational offset = unshifted(zero_at).rational();
    for (auto& p : points) p.second -= offset;
    return Valuation::piecewise_linear(std::move(points));
  }

  Valuation exponential(std::int64_t zero_at, std::int64_t dom_lo, std::int64_t dom_hi) {
    const std::int64_t reach = std::max<std::int64_t>({1, std::abs(dom_lo), std::abs(dom_hi)});
    const Rational cap = std::min(config_.exp_rate_max, Rational(40, reach));
    // c = k/64 when that grid fits under the cap, otherwise the cap itself.
    const auto k_hi = floor(cap * 64).convert_to<std::int64_t>();
    Rational rate = k_hi >= 1 ? Rational(rng_.uniform(1, k_hi), 64) : cap;
    Rational scale = slope();
    if (rng_.uniform(0, 1) == 1) {
      rate = -rate;
      scale = -scale;
    }
    const double level = scale.convert_to<double>() * std::exp(rate.convert_to<double>() * static_cast<double>(zero_at));
    const Rational b = std::abs(level) < 1e15 ? Rational(static_cast<std::int64_t>(std::llround(level * 1024)), 1024)
                                              : Rational(level);
    return Valuation::exponential(scale, Rational(-b), rate);
  }

  const GeneratorConfig& config_;
  SplitMix64& rng_;
  std::vector<std::int64_t> denominators_;
};

}  // namespace

void validate_config(const GeneratorConfig& config) {
  if (config.num_sellers == 0 || config.num_buyers == 0) throw ConfigError("seller and buyer counts must be positive");
  if (config.price_lo > config.price_hi) throw ConfigError("price range lower end exceeds upper end");
  const auto& w = config.families;
  if (w.linear == 0 && w.piecewise_linear == 0 && w.exponential == 0) {
    throw ConfigError("family weights are all zero");
  }
  if (config.max_denominator < 1) throw ConfigError("max_denominator must be at least 1");
  if (config.max_breakpoints < 2) throw ConfigError("max_breakpoints must be at least 2");
  if (config.slope_max <= 0) throw ConfigError("slope range contains no positive value");
  if (config.slope_min > config.slope_max) throw ConfigError("slope range is empty");
  if (w.exponential > 0 && config.exp_rate_max <= 0) throw ConfigError("exponential rate bound must be positive");
  SplitMix64 probe(0);
  if (!ValuationDrawer(config, probe).has_slopes()) {
    throw ConfigError("no slope k/d with d <= " + std::to_string(config.max_denominator) + " lies in [" +
                      format_rational(config.slope_min) + ", " + format_rational(config.slope_max) + "]");
  }
}

MarketInstance generate(const GeneratorConfig& config) {
  validate_config(config);
  SplitMix64 rng(config.seed);
  ValuationDrawer drawer(config, rng);

  std::vector<std::string> sellers, buyers;
  for (std::size_t i = 0; i < config.num_sellers; ++i) sellers.push_back("s" + std::to_string(i + 1));
  for (std::size_t j = 0; j < config.num_buyers; ++j) buyers.push_back("b" + std::to_string(j + 1));

  const Money lo = config.price_lo;
  const Money hi = config.price_hi;
  std::vector<PairTerms> terms;
  for (std::size_t i = 0; i < config.num_sellers; ++i) {
    for (std::size_t j = 0; j < config.num_buyers; ++j) {
      PairTerms t;
      const Money x = rng.uniform(lo, hi);
      const Money y = rng.uniform(lo, hi);
      t.lower = std::min(x, y);
      t.upper = std::max(x, y);
      // Seller accepts prices at or above its threshold; buyer accepts
      // prices at or below its own. The buyer valuation takes -price.
      const Money seller_threshold = rng.uniform(lo, hi);
      const Money buyer_threshold = rng.uniform(lo, hi);
      t.seller_valuation = drawer.draw(seller_threshold, lo - 2, hi + 2);
      t.buyer_valuation = drawer.draw(-buyer_threshold, -hi - 2, -lo + 2);
      terms.push_back(std::move(t));
    }
  }
  return MarketInstance(std::move(sellers), std::move(buyers), std::move(terms));
}

}  // namespace stable_market
