#include "doctest.h"
#include "oracles.hpp"
#include "stable_market/generator.hpp"
#include "stable_market/matching.hpp"

namespace sm = stable_market;
using sm::Pair;
using sm::Rational;
using sm::Value;

namespace {

sm::WeightedBipartiteGraph graph(std::size_t ns, std::size_t nb, std::vector<std::tuple<std::size_t, std::size_t, int>> es) {
  sm::WeightedBipartiteGraph g{ns, nb, {}};
  for (auto [s, b, w] : es) g.edges.push_back({Pair{s, b}, Value(Rational(w))});
  return g;
}

std::vector<Pair> pairs_of(const sm::Matching& m) { return m.pairs(); }

}  // namespace

TEST_CASE("matching rejects a second partner") {
  sm::Matching m(2, 2);
  m.add({0, 0});
  CHECK_THROWS_AS(m.add({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(m.add({1, 0}), std::invalid_argument);
  m.add({1, 1});
  CHECK(m.size() == 2);
  CHECK(m.buyer_of(1) == 1u);
  CHECK(m.matched_buyers() == sm::BuyerSet{0, 1});
}

TEST_CASE("a zero-weight edge is still taken") {
  const auto x = sm::solve_constrained_matching(graph(1, 1, {{0, 0, 0}}), {});
  CHECK(pairs_of(x) == std::vector<Pair>{{0, 0}});
}

TEST_CASE("heavier edge wins for a required buyer") {
  const auto x = sm::solve_constrained_matching(graph(2, 1, {{0, 0, 0}, {1, 0, 1}}), {0});
  CHECK(pairs_of(x) == std::vector<Pair>{{1, 0}});
}

TEST_CASE("equal weights break ties toward the smaller seller") {
  const auto x = sm::solve_constrained_matching(graph(2, 1, {{0, 0, 1}, {1, 0, 1}}), {0});
  CHECK(pairs_of(x) == std::vector<Pair>{{0, 0}});
}

TEST_CASE("required buyers override weight") {
  // Buyer 1 can only use seller 0, so the heavy (0,0) edge must give way.
  const auto x = sm::solve_constrained_matching(graph(1, 2, {{0, 0, 9}, {0, 1, 1}}), {1});
  CHECK(pairs_of(x) == std::vector<Pair>{{0, 1}});
}

TEST_CASE("infeasible required set yields a Hall witness") {
  try {
    sm::solve_constrained_matching(graph(1, 3, {{0, 0, 1}, {0, 1, 1}}), {0, 1});
    FAIL("expected infeasibility");
  } catch (const sm::InfeasibleMatchingError& e) {
    CHECK(e.deficient_buyers().size() > e.neighbours().size());
    for (auto b : e.deficient_buyers()) CHECK((b == 0 || b == 1));
  }
  CHECK_THROWS_AS(sm::solve_constrained_matching(graph(1, 3, {{0, 0, 1}}), {2}), sm::InfeasibleMatchingError);
}

TEST_CASE("enumerate_matchings counts") {
  CHECK(sm::enumerate_matchings(graph(1, 1, {{0, 0, 1}})).size() == 2);
  CHECK(sm::enumerate_matchings(graph(2, 1, {{0, 0, 1}, {1, 0, 1}})).size() == 3);
  CHECK(sm::enumerate_matchings(graph(2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}})).size() == 7);
  CHECK(sm::enumerate_matchings(graph(0, 0, {})).size() == 1);
}

TEST_CASE("enumerate_matchings refuses large graphs") {
  sm::WeightedBipartiteGraph g{6, 6, {}};
  for (std::size_t s = 0; s < 6; ++s)
    for (std::size_t b = 0; b < 6; ++b) g.edges.push_back({Pair{s, b}, Value(Rational(1))});
  CHECK_THROWS_AS(sm::enumerate_matchings(g), sm::GuardError);
}

TEST_CASE("constrained matching agrees with enumeration on random graphs") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    sm::SplitMix64 rng(seed);
    const auto ns = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto nb = static_cast<std::size_t>(rng.uniform(1, 4));
    const bool floats = rng.uniform(0, 3) == 0;
    sm::WeightedBipartiteGraph g{ns, nb, {}};
    for (std::size_t s = 0; s < ns; ++s) {
      for (std::size_t b = 0; b < nb; ++b) {
        if (rng.uniform(0, 2) == 0) continue;
        const auto w = rng.uniform(0, 4);
        g.edges.push_back({Pair{s, b}, floats ? Value(static_cast<double>(w) / 3.0) : Value(Rational(w, 2))});
      }
    }
    sm::BuyerSet required;
    for (std::size_t b = 0; b < nb; ++b)
      if (rng.uniform(0, 2) == 0) required.insert(b);
    const auto expected = oracle::best_by_enumeration(g, required);
    if (!expected) {
      CHECK_THROWS_AS(sm::solve_constrained_matching(g, required), sm::InfeasibleMatchingError);
      continue;
    }
    const auto got = sm::solve_constrained_matching(g, required);
    CHECK(got.pairs() == expected->pairs());
    CHECK(sm::solve_constrained_matching(g, required) == got);
  }
}
