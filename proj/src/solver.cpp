#include "stable_market/solver.hpp"

#include <string>

namespace stable_market {

std::pair<std::vector<Value>, std::vector<Value>> payoffs(const MarketInstance& inst, const Matching& matching,
                                                          const PriceVector& prices) {
  std::vector<Value> q(inst.num_sellers(), inst.zero());
  std::vector<Value> r(inst.num_buyers(), inst.zero());
  for (const Pair& pair : matching.pairs()) {
    q[pair.seller] = evaluate_seller(inst, pair, prices[pair]);
    r[pair.buyer] = evaluate_buyer(inst, pair, prices[pair]);
  }
  return {std::move(q), std::move(r)};
}

namespace {

/// Recomputes everything downstream of (prices, acceptable set, r, V~):
/// seller-optimal and eligible pairs, the matching, r, V~ and K.
void settle(IterationState& state, const MarketInstance& inst) {
  const Value zero = inst.zero();
  state.best_seller_value.assign(inst.num_sellers(), zero);
  std::vector<bool> has_acceptable(inst.num_sellers(), false);
  for (const Pair& pair : state.acceptable) {
    const Value v = evaluate_seller(inst, pair, state.prices[pair]);
    auto& best = state.best_seller_value[pair.seller];
    if (!has_acceptable[pair.seller] || compare(v, best, 0.0) > 0) best = v;
    has_acceptable[pair.seller] = true;
  }

  state.seller_optimal.clear();
  state.eligible.clear();
  WeightedBipartiteGraph graph{inst.num_sellers(), inst.num_buyers(), {}};
  for (const Pair& pair : state.acceptable) {
    const Money price = state.prices[pair];
    if (!eq(evaluate_seller(inst, pair, price), state.best_seller_value[pair.seller])) continue;
    state.seller_optimal.insert(pair);
    Value buyer_value = evaluate_buyer(inst, pair, price);
    if (ge(buyer_value, state.buyer_payoffs[pair.buyer])) {
      state.eligible.insert(pair);
      graph.edges.push_back({pair, std::move(buyer_value)});
    }
  }

  state.matching = solve_constrained_matching(graph, state.required_buyers);
  state.buyer_payoffs = payoffs(inst, state.matching, state.prices).second;
  state.required_buyers = state.matching.matched_buyers();
  state.unmatched_optimal.clear();
  for (const Pair& pair : state.seller_optimal) {
    if (!state.matching.seller_matched(pair.seller)) state.unmatched_optimal.insert(pair);
  }
}

}  // namespace

IterationState initialize(const MarketInstance& inst) {
  if (auto report = validate_terms(inst); !report.ok()) throw InvalidInstanceError(std::move(report.violations));

  IterationState state;
  state.pass = 0;
  state.prices = PriceVector::lower_bounds(inst);
  state.buyer_payoffs.assign(inst.num_buyers(), inst.zero());
  state.matching = Matching(inst.num_sellers(), inst.num_buyers());
  const Value zero = inst.zero();
  for (const Pair& pair : inst.pairs()) {
    if (auto price = max_acceptable_price(inst, pair)) state.prices[pair] = *price;
    const Money price = state.prices[pair];
    const bool buyer_rejects = lt(evaluate_buyer(inst, pair, price), zero);
    const bool seller_rejects = lt(evaluate_seller(inst, pair, price), zero);
    if (buyer_rejects) state.buyer_rejected.insert(pair);
    if (seller_rejects) state.seller_rejected.insert(pair);
    if (!buyer_rejects && !seller_rejects) state.acceptable.insert(pair);
  }
  settle(state, inst);
  return state;
}

IterationState price_update_step(const IterationState& state, const MarketInstance& inst) {
  if (state.unmatched_optimal.empty()) throw InvariantError("price update requested with no unmatched seller-optimal pair");

  IterationState next = state;
  next.pass = state.pass + 1;
  next.decrements.clear();
  next.exhausted.clear();
  next.newly_seller_rejected.clear();
  const Value zero = inst.zero();
  for (const Pair& pair : state.unmatched_optimal) {
    const Money price = state.prices[pair];
    if (auto step = min_decrement(inst, pair, price, state.buyer_payoffs[pair.buyer])) {
      next.decrements[pair] = *step;
      next.prices[pair] = price - *step;
    } else {
      next.exhausted.insert(pair);
      next.prices[pair] = inst.terms(pair).lower;
    }
    if (lt(evaluate_seller(inst, pair, next.prices[pair]), zero)) next.newly_seller_rejected.insert(pair);
  }
  next.buyer_rejected.insert(next.exhausted.begin(), next.exhausted.end());
  next.seller_rejected.insert(next.newly_seller_rejected.begin(), next.newly_seller_rejected.end());
  for (const Pair& pair : next.buyer_rejected) next.acceptable.erase(pair);
  for (const Pair& pair : next.seller_rejected) next.acceptable.erase(pair);
  settle(next, inst);
  return next;
}

std::size_t update_bound(const MarketInstance& inst) {
  const auto pairs = inst.num_pairs();
  return pairs * (1 + static_cast<std::size_t>(inst.max_price_range())) + pairs;
}

Outcome outcome_of(const MarketInstance& inst, const IterationState& state, std::size_t iterations) {
  Outcome out;
  out.matching = state.matching;
  out.prices = state.prices;
  auto [q, r] = payoffs(inst, state.matching, state.prices);
  out.seller_payoffs = std::move(q);
  out.buyer_payoffs = std::move(r);
  out.iterations = iterations;
  return out;
}

IterationTrace run(const MarketInstance& inst) {
  IterationTrace trace;
  try {
    trace.passes.push_back(initialize(inst));
    const std::size_t bound = update_bound(inst);
    while (!trace.passes.back().unmatched_optimal.empty()) {
      if (trace.passes.size() > bound) {
        throw InvariantError("price updates exceeded the bound of " + std::to_string(bound));
      }
      trace.passes.push_back(price_update_step(trace.passes.back(), inst));
    }
  } catch (const InvariantError& e) {
    throw SolverAbort(std::string(e.what()) + " (after " + std::to_string(trace.passes.size()) + " passes)",
                      std::move(trace.passes));
  }
  trace.outcome = outcome_of(inst, trace.passes.back(), trace.passes.size());
  return trace;
}

}  // namespace stable_market
