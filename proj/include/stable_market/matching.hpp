#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "stable_market/errors.hpp"
#include "stable_market/market.hpp"
#include "stable_market/value.hpp"

namespace stable_market {

using BuyerSet = std::set<std::size_t>;
using PairSet = std::set<Pair>;

/// A set of pairs in which every seller and every buyer appears at most once.
class Matching {
 public:
  Matching() = default;
  Matching(std::size_t num_sellers, std::size_t num_buyers)
      : partner_of_seller_(num_sellers), partner_of_buyer_(num_buyers) {}

  /// Throws std::invalid_argument when either endpoint is already matched.
  void add(Pair pair);

  bool contains(Pair pair) const;
  std::optional<std::size_t> buyer_of(std::size_t seller) const { return partner_of_seller_.at(seller); }
  std::optional<std::size_t> seller_of(std::size_t buyer) const { return partner_of_buyer_.at(buyer); }
  bool seller_matched(std::size_t seller) const { return buyer_of(seller).has_value(); }
  bool buyer_matched(std::size_t buyer) const { return seller_of(buyer).has_value(); }

  std::size_t num_sellers() const { return partner_of_seller_.size(); }
  std::size_t num_buyers() const { return partner_of_buyer_.size(); }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  /// Matched pairs in (seller, buyer) order.
  std::vector<Pair> pairs() const;
  BuyerSet matched_buyers() const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<std::optional<std::size_t>> partner_of_seller_;
  std::vector<std::optional<std::size_t>> partner_of_buyer_;
};

struct WeightedEdge {
  Pair pair;
  Value weight;
};

struct WeightedBipartiteGraph {
  std::size_t num_sellers = 0;
  std::size_t num_buyers = 0;
  std::vector<WeightedEdge> edges;
};

/// No matching of the graph covers every required buyer. `deficient_buyers`
/// is a Hall witness: a required set whose neighbourhood is smaller than it.
class InfeasibleMatchingError : public InvariantError {
 public:
  InfeasibleMatchingError(BuyerSet deficient_buyers, std::set<std::size_t> neighbours);
  const BuyerSet& deficient_buyers() const { return deficient_buyers_; }
  const std::set<std::size_t>& neighbours() const { return neighbours_; }

 private:
  BuyerSet deficient_buyers_;
  std::set<std::size_t> neighbours_;
};

/// Among matchings that cover every required buyer, returns the one with the
/// largest total weight; ties go to larger cardinality, then to the
/// lexicographically smallest sorted edge list. Weights compare exactly when
/// all are exact and within float_epsilon() otherwise.
Matching solve_constrained_matching(const WeightedBipartiteGraph& graph, const BuyerSet& required_buyers);

/// Every matching of the graph, the empty one included, each exactly once.
/// Refuses graphs with more than kMaxEnumeratedEdges edges.
inline constexpr std::size_t kMaxEnumeratedEdges = 25;
std::vector<Matching> enumerate_matchings(const WeightedBipartiteGraph& graph);

}  // namespace stable_market
