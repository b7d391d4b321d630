#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stable_market/market.hpp"
#include "stable_market/solver.hpp"

namespace stable_market {

/// A pair that would both strictly gain by trading at price `price`.
struct BlockingWitness {
  Pair pair;
  Money price = 0;
  friend bool operator==(const BlockingWitness&, const BlockingWitness&) = default;
};

struct StabilityReport {
  bool p1_ok = true;           // every payoff non-negative
  bool feasibility_ok = true;  // every price inside its interval
  bool matching_ok = true;     // no agent matched twice
  bool payoffs_ok = true;      // q and r agree with the matching and prices
  std::vector<BlockingWitness> blocking_witnesses;  // ordered by (seller, buyer, price)

  bool stable() const {
    return p1_ok && feasibility_ok && matching_ok && payoffs_ok && blocking_witnesses.empty();
  }
};

/// An outcome whose shape does not fit the instance.
class MalformedOutcomeError : public std::invalid_argument {
 public:
  explicit MalformedOutcomeError(std::vector<std::string> defects);
  const std::vector<std::string>& defects() const { return defects_; }

 private:
  std::vector<std::string> defects_;
};

/// Exhaustive pairwise-stability check: individual rationality, price
/// feasibility, payoff consistency, and no (pair, integer price) at which
/// both sides strictly improve. Float-valued comparisons are lenient by
/// float_epsilon(); exact instances are checked exactly.
StabilityReport verify(const MarketInstance& inst, const Outcome& outcome);

/// Trace invariants checked by audit_trace.
enum class TraceInvariant {
  kSetNesting,               // E~ disjoint from K0, T0; E^P in E~P in E~; K in E~P with sellers unmatched
  kUpdateWithinPriorK,       // L and T~0 drawn from the previous K
  kPriorMatchingEligible,    // previous matching is contained in the next E^P
  kRequiredBuyersCovered,    // previously matched buyers stay matched
  kAcceptableNonExpanding,   // E~ never grows, and shrinks whenever L or T~0 is non-empty
  kPricesNonIncreasing,      // no price rises; K pairs outside L and T~0 strictly fall
  kBuyerPayoffsNonDecreasing,
  kPricesFeasible,
  kDecrementMinimal,         // recorded m is the least step reaching the buyer's payoff
  kTerminalStable,           // the last pass has empty K and a stable outcome
};

std::string to_string(TraceInvariant invariant);

struct AuditViolation {
  TraceInvariant invariant;
  std::size_t pass = 0;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditViolation> violations;  // in pass order
  bool clean() const { return violations.empty(); }
};

AuditReport audit_trace(const MarketInstance& inst, const std::vector<IterationState>& passes);

/// Guards for enumerate_stable_outcomes.
inline constexpr std::size_t kOracleMaxPairs = 4;
inline constexpr Money kOracleMaxRange = 12;

/// Every stable outcome over all matchings and all integer prices of the
/// matched pairs. Unmatched pairs are reported at their lower bound.
/// Throws GuardError beyond kOracleMaxPairs pairs or kOracleMaxRange.
std::vector<Outcome> enumerate_stable_outcomes(const MarketInstance& inst);

/// Same matching, same prices on matched pairs, same payoffs.
bool same_trades(const Outcome& a, const Outcome& b);

}  // namespace stable_market
