#include "stable_market/verifier.hpp"

#include <algorithm>

namespace stable_market {

namespace {

std::string join_defects(const std::vector<std::string>& defects) {
  std::string out = "malformed outcome";
  for (std::size_t k = 0; k < defects.size(); ++k) out += (k == 0 ? ": " : "; ") + defects[k];
  return out;
}

std::string label(const MarketInstance& inst, Pair pair) {
  return "(" + inst.sellers()[pair.seller] + "," + inst.buyers()[pair.buyer] + ")";
}

}  // namespace

MalformedOutcomeError::MalformedOutcomeError(std::vector<std::string> defects)
    : std::invalid_argument(join_defects(defects)), defects_(std::move(defects)) {}

StabilityReport verify(const MarketInstance& inst, const Outcome& outcome) {
  std::vector<std::string> defects;
  if (outcome.prices.size() != inst.num_pairs()) defects.emplace_back("price vector does not cover every pair");
  if (outcome.seller_payoffs.size() != inst.num_sellers()) defects.emplace_back("seller payoff count mismatch");
  if (outcome.buyer_payoffs.size() != inst.num_buyers()) defects.emplace_back("buyer payoff count mismatch");
  if (outcome.matching.num_sellers() != inst.num_sellers() || outcome.matching.num_buyers() != inst.num_buyers()) {
    defects.emplace_back("matching dimensions do not fit the instance");
  }
  if (!defects.empty()) throw MalformedOutcomeError(std::move(defects));

  StabilityReport report;
  const Value zero = inst.zero();
  const auto& q = outcome.seller_payoffs;
  const auto& r = outcome.buyer_payoffs;

  for (std::size_t i = 0; i < inst.num_sellers(); ++i) {
    if (auto j = outcome.matching.buyer_of(i); j && outcome.matching.seller_of(*j) != i) report.matching_ok = false;
  }
  for (std::size_t j = 0; j < inst.num_buyers(); ++j) {
    if (auto i = outcome.matching.seller_of(j); i && outcome.matching.buyer_of(*i) != j) report.matching_ok = false;
  }

  for (const Pair& pair : inst.pairs()) {
    const auto& t = inst.terms(pair);
    if (outcome.prices[pair] < t.lower || outcome.prices[pair] > t.upper) report.feasibility_ok = false;
  }

  std::vector<Value> expected_q(inst.num_sellers(), zero);
  std::vector<Value> expected_r(inst.num_buyers(), zero);
  for (const Pair& pair : outcome.matching.pairs()) {
    const auto& t = inst.terms(pair);
    const Money price = outcome.prices[pair];
    expected_q[pair.seller] = t.seller_valuation(price);
    expected_r[pair.buyer] = t.buyer_valuation(-price);
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!eq(q[i], expected_q[i])) report.payoffs_ok = false;
    if (lt(q[i], zero)) report.p1_ok = false;
  }
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (!eq(r[j], expected_r[j])) report.payoffs_ok = false;
    if (lt(r[j], zero)) report.p1_ok = false;
  }

  for (const Pair& pair : inst.pairs()) {
    const auto& t = inst.terms(pair);
    for (Money c = t.lower; c <= t.upper; ++c) {
      if (gt(t.seller_valuation(c), q[pair.seller]) && gt(t.buyer_valuation(-c), r[pair.buyer])) {
        report.blocking_witnesses.push_back({pair, c});
      }
    }
  }
  return report;
}

std::string to_string(TraceInvariant invariant) {
  switch (invariant) {
    case TraceInvariant::kSetNesting:
      return "set-nesting";
    case TraceInvariant::kUpdateWithinPriorK:
      return "update-within-prior-K";
    case TraceInvariant::kPriorMatchingEligible:
      return "prior-matching-eligible";
    case TraceInvariant::kRequiredBuyersCovered:
      return "required-buyers-covered";
    case TraceInvariant::kAcceptableNonExpanding:
      return "acceptable-set-non-expanding";
    case TraceInvariant::kPricesNonIncreasing:
      return "prices-non-increasing";
    case TraceInvariant::kBuyerPayoffsNonDecreasing:
      return "buyer-payoffs-non-decreasing";
    case TraceInvariant::kPricesFeasible:
      return "prices-feasible";
    case TraceInvariant::kDecrementMinimal:
      return "decrement-minimal";
    case TraceInvariant::kTerminalStable:
      return "terminal-stable";
  }
  return "unknown";
}

namespace {

class Auditor {
 public:
  Auditor(const MarketInstance& inst, AuditReport& report) : inst_(inst), report_(report) {}

  void fail(TraceInvariant inv, std::size_t pass, std::string detail) {
    report_.violations.push_back({inv, pass, std::move(detail)});
  }

  void check_pass(const IterationState& s, std::size_t pass) {
    for (const Pair& pair : inst_.pairs()) {
      const auto& t = inst_.terms(pair);
      if (s.prices[pair] < t.lower || s.prices[pair] > t.upper) {
        fail(TraceInvariant::kPricesFeasible, pass, "price of " + label(inst_, pair) + " outside its interval");
      }
    }
    for (const Pair& pair : s.acceptable) {
      if (s.buyer_rejected.count(pair) || s.seller_rejected.count(pair)) {
        fail(TraceInvariant::kSetNesting, pass, label(inst_, pair) + " is acceptable and rejected");
      }
    }
    for (const Pair& pair : s.seller_optimal) {
      if (!s.acceptable.count(pair)) fail(TraceInvariant::kSetNesting, pass, label(inst_, pair) + " in E~P but not E~");
    }
    for (const Pair& pair : s.eligible) {
      if (!s.seller_optimal.count(pair)) fail(TraceInvariant::kSetNesting, pass, label(inst_, pair) + " in E^P but not E~P");
    }
    for (const Pair& pair : s.unmatched_optimal) {
      if (!s.seller_optimal.count(pair) || s.matching.seller_matched(pair.seller)) {
        fail(TraceInvariant::kSetNesting, pass, label(inst_, pair) + " in K without an unmatched seller-optimal seller");
      }
    }
    for (const Pair& pair : s.matching.pairs()) {
      if (!s.eligible.count(pair)) fail(TraceInvariant::kSetNesting, pass, label(inst_, pair) + " matched outside E^P");
    }
  }

  void check_step(const IterationState& prev, const IterationState& cur, std::size_t pass) {
    for (const Pair& pair : cur.exhausted) {
      if (!prev.unmatched_optimal.count(pair)) fail(TraceInvariant::kUpdateWithinPriorK, pass, label(inst_, pair) + " in L");
    }
    for (const Pair& pair : cur.newly_seller_rejected) {
      if (!prev.unmatched_optimal.count(pair)) fail(TraceInvariant::kUpdateWithinPriorK, pass, label(inst_, pair) + " in T~0");
    }
    for (const auto& [pair, m] : cur.decrements) {
      if (!prev.unmatched_optimal.count(pair)) fail(TraceInvariant::kUpdateWithinPriorK, pass, label(inst_, pair) + " has m");
    }

    for (const Pair& pair : prev.matching.pairs()) {
      if (!cur.eligible.count(pair)) {
        fail(TraceInvariant::kPriorMatchingEligible, pass, label(inst_, pair) + " matched before but not in E^P");
      }
    }
    for (std::size_t buyer : prev.required_buyers) {
      if (!cur.matching.buyer_matched(buyer)) {
        fail(TraceInvariant::kRequiredBuyersCovered, pass, "buyer " + inst_.buyers()[buyer] + " lost its match");
      }
    }

    bool grew = false;
    for (const Pair& pair : cur.acceptable) grew = grew || !prev.acceptable.count(pair);
    if (grew) fail(TraceInvariant::kAcceptableNonExpanding, pass, "E~ gained a pair");
    const bool retired = !cur.exhausted.empty() || !cur.newly_seller_rejected.empty();
    if (retired && cur.acceptable.size() >= prev.acceptable.size()) {
      fail(TraceInvariant::kAcceptableNonExpanding, pass, "E~ did not shrink although L or T~0 is non-empty");
    }

    for (const Pair& pair : inst_.pairs()) {
      if (cur.prices[pair] > prev.prices[pair]) {
        fail(TraceInvariant::kPricesNonIncreasing, pass, "price of " + label(inst_, pair) + " rose");
      }
    }
    for (const Pair& pair : prev.unmatched_optimal) {
      if (cur.exhausted.count(pair) || cur.newly_seller_rejected.count(pair)) continue;
      if (!(cur.prices[pair] < prev.prices[pair])) {
        fail(TraceInvariant::kPricesNonIncreasing, pass, "price of " + label(inst_, pair) + " did not fall");
      }
    }

    for (std::size_t j = 0; j < inst_.num_buyers(); ++j) {
      if (lt(cur.buyer_payoffs[j], prev.buyer_payoffs[j])) {
        fail(TraceInvariant::kBuyerPayoffsNonDecreasing, pass, "payoff of buyer " + inst_.buyers()[j] + " fell");
      }
    }

    for (const auto& [pair, m] : cur.decrements) {
      const auto& g = inst_.terms(pair).buyer_valuation;
      const Money p = prev.prices[pair];
      const Value& target = prev.buyer_payoffs[pair.buyer];
      const bool reaches = ge(g(-(p - m)), target);
      const bool least = m == 1 || lt(g(-(p - m + 1)), target);
      if (m < 1 || !reaches || !least || cur.prices[pair] != p - m) {
        fail(TraceInvariant::kDecrementMinimal, pass, "decrement of " + label(inst_, pair) + " is not the least sufficient step");
      }
    }
    for (const Pair& pair : cur.exhausted) {
      const auto& t = inst_.terms(pair);
      const Money p = prev.prices[pair];
      const bool reachable = p > t.lower && ge(t.buyer_valuation(-t.lower), prev.buyer_payoffs[pair.buyer]);
      if (reachable || cur.prices[pair] != t.lower) {
        fail(TraceInvariant::kDecrementMinimal, pass, label(inst_, pair) + " marked exhausted but a feasible step exists");
      }
    }
    for (const Pair& pair : prev.unmatched_optimal) {
      if (!cur.decrements.count(pair) && !cur.exhausted.count(pair)) {
        fail(TraceInvariant::kUpdateWithinPriorK, pass, label(inst_, pair) + " in K but neither decremented nor exhausted");
      }
    }
  }

  void check_terminal(const IterationState& last, std::size_t pass) {
    if (!last.unmatched_optimal.empty()) fail(TraceInvariant::kTerminalStable, pass, "final pass has non-empty K");
    const auto report = verify(inst_, outcome_of(inst_, last, pass + 1));
    if (!report.stable()) fail(TraceInvariant::kTerminalStable, pass, "final outcome is not pairwise stable");
  }

 private:
  const MarketInstance& inst_;
  AuditReport& report_;
};

}  // namespace

AuditReport audit_trace(const MarketInstance& inst, const std::vector<IterationState>& passes) {
  AuditReport report;
  if (passes.empty()) return report;
  Auditor auditor(inst, report);
  for (std::size_t t = 0; t < passes.size(); ++t) {
    auditor.check_pass(passes[t], t);
    if (t > 0) auditor.check_step(passes[t - 1], passes[t], t);
  }
  auditor.check_terminal(passes.back(), passes.size() - 1);
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const AuditViolation& a, const AuditViolation& b) { return a.pass < b.pass; });
  return report;
}

std::vector<Outcome> enumerate_stable_outcomes(const MarketInstance& inst) {
  if (inst.num_pairs() > kOracleMaxPairs) {
    throw GuardError("oracle refuses instances with more than " + std::to_string(kOracleMaxPairs) + " pairs");
  }
  if (inst.max_price_range() > kOracleMaxRange) {
    throw GuardError("oracle refuses price ranges wider than " + std::to_string(kOracleMaxRange));
  }
  WeightedBipartiteGraph complete{inst.num_sellers(), inst.num_buyers(), {}};
  for (const Pair& pair : inst.pairs()) complete.edges.push_back({pair, inst.zero()});

  std::vector<Outcome> stable;
  for (const Matching& matching : enumerate_matchings(complete)) {
    const auto matched = matching.pairs();
    PriceVector prices = PriceVector::lower_bounds(inst);
    // Odometer over the prices of the matched pairs.
    while (true) {
      auto [q, r] = payoffs(inst, matching, prices);
      Outcome candidate{matching, prices, std::move(q), std::move(r), 0};
      if (verify(inst, candidate).stable()) stable.push_back(std::move(candidate));
      std::size_t k = 0;
      for (; k < matched.size(); ++k) {
        Money& price = prices[matched[k]];
        if (price < inst.terms(matched[k]).upper) {
          ++price;
          break;
        }
        price = inst.terms(matched[k]).lower;
      }
      if (k == matched.size()) break;
    }
  }
  return stable;
}

bool same_trades(const Outcome& a, const Outcome& b) {
  if (!(a.matching == b.matching)) return false;
  for (const Pair& pair : a.matching.pairs()) {
    if (a.prices[pair] != b.prices[pair]) return false;
  }
  if (a.seller_payoffs.size() != b.seller_payoffs.size() || a.buyer_payoffs.size() != b.buyer_payoffs.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.seller_payoffs.size(); ++i) {
    if (!eq(a.seller_payoffs[i], b.seller_payoffs[i])) return false;
  }
  for (std::size_t j = 0; j < a.buyer_payoffs.size(); ++j) {
    if (!eq(a.buyer_payoffs[j], b.buyer_payoffs[j])) return false;
  }
  return true;
}

}  // namespace stable_market
