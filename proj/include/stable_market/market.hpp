#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stable_market/valuation.hpp"
#include "stable_market/value.hpp"

namespace stable_market {

/// A seller-buyer pair, by position in the instance's seller and buyer lists.
struct Pair {
  std::size_t seller = 0;
  std::size_t buyer = 0;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// Trade terms of one pair: the feasible price interval and both sides'
/// valuations. The buyer valuation is evaluated at -x when the price is x.
struct PairTerms {
  Money lower = 0;
  Money upper = 0;
  Valuation seller_valuation;
  Valuation buyer_valuation;
  friend bool operator==(const PairTerms&, const PairTerms&) = default;
};

/// Sellers, buyers and complete pair terms over every seller x buyer pair.
/// Immutable after construction; use validate_instance for semantic checks.
class MarketInstance {
 public:
  MarketInstance() = default;
  /// `terms` is row-major: the pair (i, j) is at i * buyers.size() + j.
  MarketInstance(std::vector<std::string> sellers, std::vector<std::string> buyers, std::vector<PairTerms> terms);

  std::size_t num_sellers() const { return sellers_.size(); }
  std::size_t num_buyers() const { return buyers_.size(); }
  std::size_t num_pairs() const { return terms_.size(); }
  const std::vector<std::string>& sellers() const { return sellers_; }
  const std::vector<std::string>& buyers() const { return buyers_; }

  /// Throws KeyError for a pair outside the instance.
  const PairTerms& terms(Pair pair) const;
  std::size_t index(Pair pair) const;
  Pair pair_at(std::size_t index) const { return {index / buyers_.size(), index % buyers_.size()}; }

  /// All pairs in (seller, buyer) order.
  std::vector<Pair> pairs() const;

  /// True when every valuation belongs to an exact (rational) family.
  bool exact() const { return exact_; }
  Value zero() const { return Value::zero(exact_); }

  /// Largest upper - lower over all pairs (0 when there are no pairs).
  Money max_price_range() const;

  std::optional<std::size_t> find_seller(const std::string& id) const;
  std::optional<std::size_t> find_buyer(const std::string& id) const;

  friend bool operator==(const MarketInstance& a, const MarketInstance& b) {
    return a.sellers_ == b.sellers_ && a.buyers_ == b.buyers_ && a.terms_ == b.terms_;
  }

 private:
  std::vector<std::string> sellers_;
  std::vector<std::string> buyers_;
  std::vector<PairTerms> terms_;
  bool exact_ = true;
};

/// Integer price per pair, row-major like MarketInstance.
class PriceVector {
 public:
  PriceVector() = default;
  PriceVector(std::size_t num_buyers, std::vector<Money> prices)
      : num_buyers_(num_buyers), prices_(std::move(prices)) {}

  /// Every pair at its lower bound.
  static PriceVector lower_bounds(const MarketInstance& inst);

  Money operator[](Pair p) const { return prices_.at(p.seller * num_buyers_ + p.buyer); }
  Money& operator[](Pair p) { return prices_.at(p.seller * num_buyers_ + p.buyer); }
  std::size_t size() const { return prices_.size(); }
  const std::vector<Money>& values() const { return prices_; }

  friend bool operator==(const PriceVector&, const PriceVector&) = default;

 private:
  std::size_t num_buyers_ = 0;
  std::vector<Money> prices_;
};

/// Seller valuation f_ij(x). Throws DomainError outside [lower, upper].
Value evaluate_seller(const MarketInstance& inst, Pair pair, Money x);

/// Buyer valuation when paying x, i.e. g_ji(-x). Throws DomainError
/// outside [lower, upper].
Value evaluate_buyer(const MarketInstance& inst, Pair pair, Money x);

/// The largest price in [lower, upper] that the buyer still accepts
/// (valuation >= 0), or nothing when the buyer rejects even the lower bound.
std::optional<Money> max_acceptable_price(const MarketInstance& inst, Pair pair);

/// Smallest m in [1, p - lower] with g(-(p - m)) >= target. Nothing when no
/// such m exists inside the feasible range.
std::optional<Money> min_decrement(const MarketInstance& inst, Pair pair, Money price, const Value& target);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks bound order and strict monotonicity of every valuation, and that
/// both sides of the market are non-empty.
ValidationReport validate_instance(const MarketInstance& inst);

/// validate_instance without the non-empty-sides requirement; an empty side
/// is a degenerate but solvable market.
ValidationReport validate_terms(const MarketInstance& inst);

}  // namespace stable_market
