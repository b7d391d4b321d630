#include "stable_market/market.hpp"

#include <algorithm>

#include "stable_market/errors.hpp"

namespace stable_market {

MarketInstance::MarketInstance(std::vector<std::string> sellers, std::vector<std::string> buyers,
                               std::vector<PairTerms> terms)
    : sellers_(std::move(sellers)), buyers_(std::move(buyers)), terms_(std::move(terms)) {
  if (terms_.size() != sellers_.size() * buyers_.size()) {
    throw std::invalid_argument("pair terms must cover every seller x buyer pair");
  }
  exact_ = std::all_of(terms_.begin(), terms_.end(), [](const PairTerms& t) {
    return t.seller_valuation.exact() && t.buyer_valuation.exact();
  });
}

std::size_t MarketInstance::index(Pair pair) const {
  if (pair.seller >= sellers_.size() || pair.buyer >= buyers_.size()) {
    throw KeyError("unknown pair (" + std::to_string(pair.seller) + "," + std::to_string(pair.buyer) + ")");
  }
  return pair.seller * buyers_.size() + pair.buyer;
}

const PairTerms& MarketInstance::terms(Pair pair) const { return terms_[index(pair)]; }

std::vector<Pair> MarketInstance::pairs() const {
  std::vector<Pair> out;
  out.reserve(terms_.size());
  for (std::size_t i = 0; i < sellers_.size(); ++i) {
    for (std::size_t j = 0; j < buyers_.size(); ++j) out.push_back({i, j});
  }
  return out;
}

Money MarketInstance::max_price_range() const {
  Money range = 0;
  for (const auto& t : terms_) range = std::max(range, t.upper - t.lower);
  return range;
}

std::optional<std::size_t> MarketInstance::find_seller(const std::string& id) const {
  const auto it = std::find(sellers_.begin(), sellers_.end(), id);
  if (it == sellers_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - sellers_.begin());
}

std::optional<std::size_t> MarketInstance::find_buyer(const std::string& id) const {
  const auto it = std::find(buyers_.begin(), buyers_.end(), id);
  if (it == buyers_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - buyers_.begin());
}

PriceVector PriceVector::lower_bounds(const MarketInstance& inst) {
  std::vector<Money> prices;
  prices.reserve(inst.num_pairs());
  for (const auto& pair : inst.pairs()) prices.push_back(inst.terms(pair).lower);
  return PriceVector(inst.num_buyers(), std::move(prices));
}

namespace {

const PairTerms& checked_terms(const MarketInstance& inst, Pair pair, Money x) {
  const auto& t = inst.terms(pair);
  if (x < t.lower || x > t.upper) {
    throw DomainError("price " + std::to_string(x) + " outside [" + std::to_string(t.lower) + ", " +
                      std::to_string(t.upper) + "]");
  }
  return t;
}

std::string pair_label(const MarketInstance& inst, Pair pair) {
  return "(" + inst.sellers()[pair.seller] + "," + inst.buyers()[pair.buyer] + ")";
}

}  // namespace

Value evaluate_seller(const MarketInstance& inst, Pair pair, Money x) {
  return checked_terms(inst, pair, x).seller_valuation(x);
}

Value evaluate_buyer(const MarketInstance& inst, Pair pair, Money x) {
  return checked_terms(inst, pair, x).buyer_valuation(-x);
}

std::optional<Money> max_acceptable_price(const MarketInstance& inst, Pair pair) {
  const auto& t = inst.terms(pair);
  const Value zero = Value::zero(true);
  auto accepts = [&](Money x) { return ge(t.buyer_valuation(-x), zero); };
  if (!accepts(t.lower)) return std::nullopt;
  // accepts(lo) holds, accepts(hi + 1) fails or hi == upper.
  Money lo = t.lower;
  Money hi = t.upper;
  while (lo < hi) {
    const Money mid = lo + (hi - lo + 1) / 2;
    if (accepts(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::optional<Money> min_decrement(const MarketInstance& inst, Pair pair, Money price, const Value& target) {
  const auto& t = checked_terms(inst, pair, price);
  auto enough = [&](Money m) { return ge(t.buyer_valuation(-(price - m)), target); };
  const Money span = price - t.lower;
  if (span < 1 || !enough(span)) return std::nullopt;
  Money lo = 1;
  Money hi = span;
  while (lo < hi) {
    const Money mid = lo + (hi - lo) / 2;
    if (enough(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

ValidationReport validate_terms(const MarketInstance& inst) {
  ValidationReport report;
  for (const auto& pair : inst.pairs()) {
    const auto& t = inst.terms(pair);
    const auto label = pair_label(inst, pair);
    if (t.lower > t.upper) report.violations.push_back("bounds reversed at " + label);
    if (auto defect = t.seller_valuation.monotonicity_defect()) {
      report.violations.push_back("seller valuation at " + label + " " + *defect);
    }
    if (auto defect = t.buyer_valuation.monotonicity_defect()) {
      report.violations.push_back("buyer valuation at " + label + " " + *defect);
    }
  }
  return report;
}

ValidationReport validate_instance(const MarketInstance& inst) {
  ValidationReport report;
  if (inst.num_sellers() == 0) report.violations.emplace_back("no sellers");
  if (inst.num_buyers() == 0) report.violations.emplace_back("no buyers");
  auto terms = validate_terms(inst);
  report.violations.insert(report.violations.end(), terms.violations.begin(), terms.violations.end());
  return report;
}

}  // namespace stable_market
