#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "stable_market/errors.hpp"
#include "stable_market/market.hpp"
#include "stable_market/matching.hpp"

namespace stable_market {

/// A matching with prices and the payoffs they induce.
struct Outcome {
  Matching matching;
  PriceVector prices;
  std::vector<Value> seller_payoffs;  // q
  std::vector<Value> buyer_payoffs;   // r
  std::size_t iterations = 0;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Snapshot of the price-adjustment loop after one pass.
///
/// `decrements`, `exhausted` and `newly_seller_rejected` describe the price
/// update that produced this pass and are empty for the initial pass. All
/// other sets describe the pass itself.
struct IterationState {
  std::size_t pass = 0;
  PairSet buyer_rejected;    // K0: buyer valuation negative at the price
  PairSet seller_rejected;   // T0: seller valuation negative at the price
  PairSet acceptable;        // E~: not yet ruled out by either side
  std::vector<Value> best_seller_value;  // q~ per seller, zero when none acceptable
  PairSet seller_optimal;    // E~P: acceptable pairs at the seller's best value
  PairSet eligible;          // E^P: seller-optimal and weakly improving the buyer
  BuyerSet required_buyers;  // V~: buyers matched in this pass
  PairSet unmatched_optimal; // K: seller-optimal pairs with an unmatched seller
  std::map<Pair, Money> decrements;  // m per price-updated pair that stayed feasible
  PairSet exhausted;              // L: decrement would leave the price interval
  PairSet newly_seller_rejected;  // T~0: seller valuation turned negative
  PriceVector prices;
  Matching matching;
  std::vector<Value> buyer_payoffs;  // r

  friend bool operator==(const IterationState&, const IterationState&) = default;
};

struct IterationTrace {
  std::vector<IterationState> passes;
  Outcome outcome;
};

/// Seller and buyer payoffs of a matching at the given prices: matched agents
/// receive their valuation of the trade, unmatched agents zero.
std::pair<std::vector<Value>, std::vector<Value>> payoffs(const MarketInstance& inst, const Matching& matching,
                                                          const PriceVector& prices);

/// First pass: buyer-maximal prices, acceptability sets and an initial
/// matching with no required buyers. Throws InvalidInstanceError.
IterationState initialize(const MarketInstance& inst);

/// Lowers the price on every pair in `state.unmatched_optimal`, retires
/// pairs that left the feasible or acceptable range, and rematches while
/// keeping every currently matched buyer matched.
/// Throws InvariantError when called with no pairs to update or when the
/// rematch is infeasible.
IterationState price_update_step(const IterationState& state, const MarketInstance& inst);

/// Upper bound on price updates: every update either retires a pair or
/// lowers some bounded integer price.
std::size_t update_bound(const MarketInstance& inst);

/// Internal invariant failure during run(), carrying the passes so far.
class SolverAbort : public InvariantError {
 public:
  SolverAbort(const std::string& what, std::vector<IterationState> partial)
      : InvariantError(what), partial_(std::move(partial)) {}
  const std::vector<IterationState>& partial_trace() const { return partial_; }

 private:
  std::vector<IterationState> partial_;
};

/// Runs the price-adjustment loop until no seller-optimal pair has an
/// unmatched seller. Throws InvalidInstanceError for a malformed instance and
/// SolverAbort when an internal invariant breaks.
IterationTrace run(const MarketInstance& inst);

/// Outcome described by a pass: its matching, prices and buyer payoffs, with
/// seller payoffs derived from them.
Outcome outcome_of(const MarketInstance& inst, const IterationState& state, std::size_t iterations);

}  // namespace stable_market
