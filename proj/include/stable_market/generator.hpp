#pragma once

#include <cstdint>

#include "stable_market/market.hpp"

namespace stable_market {

/// SplitMix64 (Steele, Lea and Flood). The output sequence is fixed by the
/// algorithm, so other implementations can reproduce generated instances:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform integer in [lo, hi] by rejection sampling (no modulo bias).
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  /// Index in [0, weights.size()) with probability proportional to weight.
  std::size_t weighted(const std::vector<std::uint32_t>& weights);

 private:
  std::uint64_t state_;
};

struct FamilyWeights {
  std::uint32_t linear = 1;
  std::uint32_t piecewise_linear = 1;
  std::uint32_t exponential = 1;
};

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::size_t num_sellers = 2;
  std::size_t num_buyers = 2;
  Money price_lo = 0;
  Money price_hi = 10;
  FamilyWeights families;
  /// Slopes (and exponential scales) are drawn as k/d with d in
  /// [1, max_denominator], restricted to [slope_min, slope_max] and > 0.
  Rational slope_min{1, 4};
  Rational slope_max{4};
  std::int64_t max_denominator = 4;
  /// Upper bound on |c| for exponential valuations; it is further capped so
  /// that |c*x| <= 40 over the price range.
  Rational exp_rate_max{1, 4};
  std::size_t max_breakpoints = 4;
};

/// Throws ConfigError describing the first problem found.
void validate_config(const GeneratorConfig& config);

/// Deterministic in `config`: equal configs give equal instances. Every
/// generated instance passes validate_instance.
MarketInstance generate(const GeneratorConfig& config);

}  // namespace stable_market
