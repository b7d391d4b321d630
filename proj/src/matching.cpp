#include "stable_market/matching.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace stable_market {

void Matching::add(Pair pair) {
  if (pair.seller >= partner_of_seller_.size() || pair.buyer >= partner_of_buyer_.size()) {
    throw KeyError("pair outside matching dimensions");
  }
  if (partner_of_seller_[pair.seller] || partner_of_buyer_[pair.buyer]) {
    throw std::invalid_argument("seller " + std::to_string(pair.seller) + " or buyer " + std::to_string(pair.buyer) +
                                " already matched");
  }
  partner_of_seller_[pair.seller] = pair.buyer;
  partner_of_buyer_[pair.buyer] = pair.seller;
}

bool Matching::contains(Pair pair) const {
  return pair.seller < partner_of_seller_.size() && partner_of_seller_[pair.seller] == pair.buyer;
}

std::size_t Matching::size() const {
  return static_cast<std::size_t>(
      std::count_if(partner_of_seller_.begin(), partner_of_seller_.end(), [](const auto& b) { return b.has_value(); }));
}

std::vector<Pair> Matching::pairs() const {
  std::vector<Pair> out;
  for (std::size_t i = 0; i < partner_of_seller_.size(); ++i) {
    if (partner_of_seller_[i]) out.push_back({i, *partner_of_seller_[i]});
  }
  return out;
}

BuyerSet Matching::matched_buyers() const {
  BuyerSet out;
  for (std::size_t j = 0; j < partner_of_buyer_.size(); ++j) {
    if (partner_of_buyer_[j]) out.insert(j);
  }
  return out;
}

namespace {

std::string describe(const std::set<std::size_t>& s) {
  std::string out = "{";
  for (auto it = s.begin(); it != s.end(); ++it) {
    if (it != s.begin()) out += ",";
    out += std::to_string(*it);
  }
  return out + "}";
}

}  // namespace

InfeasibleMatchingError::InfeasibleMatchingError(BuyerSet deficient_buyers, std::set<std::size_t> neighbours)
    : InvariantError("no matching covers required buyers: buyers " + describe(deficient_buyers) +
                     " have only sellers " + describe(neighbours) + " as neighbours"),
      deficient_buyers_(std::move(deficient_buyers)),
      neighbours_(std::move(neighbours)) {}

namespace {

/// Lexicographic objective: required buyers covered, then total weight,
/// then number of matched pairs. Forms an ordered group, so the Hungarian
/// method runs on it unchanged.
struct Score {
  long required = 0;
  Value weight;
  long count = 0;

  Score& operator+=(const Score& o) {
    required += o.required;
    weight += o.weight;
    count += o.count;
    return *this;
  }
  Score& operator-=(const Score& o) {
    required -= o.required;
    weight = weight - o.weight;
    count -= o.count;
    return *this;
  }
  friend Score operator+(Score a, const Score& b) { return a += b; }
  friend Score operator-(Score a, const Score& b) { return a -= b; }
  friend Score operator-(const Score& a) { return Score{-a.required, -a.weight, -a.count}; }
};

int compare(const Score& a, const Score& b, double eps) {
  if (a.required != b.required) return a.required < b.required ? -1 : 1;
  if (int c = stable_market::compare(a.weight, b.weight, eps); c != 0) return c;
  if (a.count != b.count) return a.count < b.count ? -1 : 1;
  return 0;
}

/// Minimum-cost perfect assignment on a square matrix (potentials form of
/// the Hungarian method). Returns the column assigned to each row. Weights
/// within `eps` compare equal, so float rounding in the potentials cannot
/// outrank the cardinality component.
std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<Score>>& cost, double eps) {
  auto less = [eps](const Score& a, const Score& b) { return compare(a, b, eps) < 0; };
  const std::size_t n = cost.size();
  std::vector<Score> u(n + 1), v(n + 1);
  std::vector<std::size_t> row_of_col(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    std::size_t j0 = 0;
    std::vector<std::optional<Score>> minv(n + 1);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of_col[j0];
      std::optional<Score> delta;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Score cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (!minv[j] || less(cur, *minv[j])) {
          minv[j] = std::move(cur);
          way[j] = j0;
        }
        if (!delta || less(*minv[j], *delta)) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += *delta;
          v[j] -= *delta;
        } else {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> col_of_row(n, 0);
  for (std::size_t j = 1; j <= n; ++j) col_of_row[row_of_col[j] - 1] = j - 1;
  return col_of_row;
}

struct Solution {
  Score score;
  std::vector<Pair> pairs;
};

class ConstrainedMatcher {
 public:
  ConstrainedMatcher(const WeightedBipartiteGraph& graph, const BuyerSet& required) : graph_(graph) {
    for (const auto& e : graph.edges) {
      if (e.pair.seller >= graph.num_sellers || e.pair.buyer >= graph.num_buyers) {
        throw KeyError("edge endpoint outside graph");
      }
      if (!e.weight.exact()) exact_ = false;
      Score s{required.count(e.pair.buyer) ? 1L : 0L, e.weight, 1};
      if (!scores_.emplace(e.pair, std::move(s)).second) throw std::invalid_argument("duplicate edge in graph");
    }
  }

  const Score& score(Pair p) const { return scores_.at(p); }
  Score zero() const { return Score{0, Value::zero(exact_), 0}; }
  double eps() const { return exact_ ? 0.0 : float_epsilon(); }

  /// Best matching avoiding the blocked sellers and buyers.
  Solution solve(const std::vector<char>& seller_blocked, const std::vector<char>& buyer_blocked) const {
    std::vector<std::size_t> sellers, buyers;
    for (std::size_t i = 0; i < graph_.num_sellers; ++i) {
      if (!seller_blocked[i]) sellers.push_back(i);
    }
    for (std::size_t j = 0; j < graph_.num_buyers; ++j) {
      if (!buyer_blocked[j]) buyers.push_back(j);
    }
    const std::size_t n = std::max(sellers.size(), buyers.size());
    Solution out{zero(), {}};
    if (n == 0) return out;
    const Score none = zero();
    std::vector<std::vector<Score>> cost(n, std::vector<Score>(n, none));
    for (std::size_t r = 0; r < sellers.size(); ++r) {
      for (std::size_t c = 0; c < buyers.size(); ++c) {
        const auto it = scores_.find(Pair{sellers[r], buyers[c]});
        // A pair only helps when it raises the objective; otherwise leaving
        // both endpoints free is at least as good.
        if (it != scores_.end() && compare(none, it->second, eps()) < 0) cost[r][c] = -it->second;
      }
    }
    const auto assignment = min_cost_assignment(cost, eps());
    for (std::size_t r = 0; r < sellers.size(); ++r) {
      const std::size_t c = assignment[r];
      if (c >= buyers.size()) continue;
      const Pair p{sellers[r], buyers[c]};
      const auto it = scores_.find(p);
      if (it == scores_.end() || compare(none, it->second, eps()) >= 0) continue;
      out.score += it->second;
      out.pairs.push_back(p);
    }
    return out;
  }

  std::vector<Pair> sorted_edges() const {
    std::vector<Pair> out;
    for (const auto& [p, s] : scores_) out.push_back(p);
    return out;
  }

 private:
  const WeightedBipartiteGraph& graph_;
  std::map<Pair, Score> scores_;
  bool exact_ = true;
};

/// Hall witness for an uncoverable required set, found by maximum matching
/// of the required buyers and an alternating search from a free one.
[[noreturn]] void throw_hall_witness(const WeightedBipartiteGraph& graph, const BuyerSet& required) {
  std::vector<std::vector<std::size_t>> adj(graph.num_buyers);
  for (const auto& e : graph.edges) {
    if (required.count(e.pair.buyer)) adj[e.pair.buyer].push_back(e.pair.seller);
  }
  std::vector<std::optional<std::size_t>> buyer_of_seller(graph.num_sellers);
  std::vector<char> visited;
  auto augment = [&](auto&& self, std::size_t buyer) -> bool {
    for (std::size_t s : adj[buyer]) {
      if (visited[s]) continue;
      visited[s] = 1;
      if (!buyer_of_seller[s] || self(self, *buyer_of_seller[s])) {
        buyer_of_seller[s] = buyer;
        return true;
      }
    }
    return false;
  };
  std::optional<std::size_t> free_buyer;
  for (std::size_t b : required) {
    visited.assign(graph.num_sellers, 0);
    if (!augment(augment, b) && !free_buyer) free_buyer = b;
  }
  if (!free_buyer) throw std::logic_error("required buyers are coverable");
  BuyerSet deficient{*free_buyer};
  std::set<std::size_t> neighbours;
  std::vector<std::size_t> frontier{*free_buyer};
  while (!frontier.empty()) {
    const std::size_t b = frontier.back();
    frontier.pop_back();
    for (std::size_t s : adj[b]) {
      if (!neighbours.insert(s).second) continue;
      if (buyer_of_seller[s] && deficient.insert(*buyer_of_seller[s]).second) frontier.push_back(*buyer_of_seller[s]);
    }
  }
  throw InfeasibleMatchingError(std::move(deficient), std::move(neighbours));
}

}  // namespace

Matching solve_constrained_matching(const WeightedBipartiteGraph& graph, const BuyerSet& required_buyers) {
  for (std::size_t b : required_buyers) {
    if (b >= graph.num_buyers) throw KeyError("required buyer outside graph");
  }
  const ConstrainedMatcher matcher(graph, required_buyers);
  std::vector<char> seller_used(graph.num_sellers, 0), buyer_used(graph.num_buyers, 0);
  const Solution best = matcher.solve(seller_used, buyer_used);
  if (best.score.required < static_cast<long>(required_buyers.size())) throw_hall_witness(graph, required_buyers);

  // Fix edges in ascending order whenever an optimal matching still
  // contains everything fixed so far; the result is the lexicographically
  // smallest optimal edge list.
  Matching chosen(graph.num_sellers, graph.num_buyers);
  Score fixed = matcher.zero();
  for (const Pair& e : matcher.sorted_edges()) {
    if (fixed.count == best.score.count) break;
    if (seller_used[e.seller] || buyer_used[e.buyer]) continue;
    seller_used[e.seller] = buyer_used[e.buyer] = 1;
    const Score total = fixed + matcher.score(e) + matcher.solve(seller_used, buyer_used).score;
    if (compare(total, best.score, matcher.eps()) == 0) {
      chosen.add(e);
      fixed += matcher.score(e);
    } else {
      seller_used[e.seller] = buyer_used[e.buyer] = 0;
    }
  }
  return chosen;
}

std::vector<Matching> enumerate_matchings(const WeightedBipartiteGraph& graph) {
  if (graph.edges.size() > kMaxEnumeratedEdges) {
    throw GuardError("refusing to enumerate matchings of a graph with " + std::to_string(graph.edges.size()) +
                     " edges (limit " + std::to_string(kMaxEnumeratedEdges) + ")");
  }
  std::vector<Pair> edges;
  for (const auto& e : graph.edges) edges.push_back(e.pair);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<Matching> out;
  Matching current(graph.num_sellers, graph.num_buyers);
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == edges.size()) {
      out.push_back(current);
      return;
    }
    self(self, k + 1);
    const Pair e = edges[k];
    if (!current.seller_matched(e.seller) && !current.buyer_matched(e.buyer)) {
      const Matching saved = current;
      current.add(e);
      self(self, k + 1);
      current = saved;
    }
  };
  recurse(recurse, 0);
  return out;
}

}  // namespace stable_market
