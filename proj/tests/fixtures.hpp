#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "stable_market/market.hpp"

namespace fixtures {

namespace sm = stable_market;

inline sm::Valuation linear(long a, long b) { return sm::Valuation::linear(sm::Rational(a), sm::Rational(b)); }

/// One seller, one buyer, bounds [0, 10], seller f(x) = x - 3, buyer g(y) = y + 7.
inline sm::MarketInstance one_by_one(sm::Valuation seller = linear(1, -3), sm::Valuation buyer = linear(1, 7),
                                     sm::Money lower = 0, sm::Money upper = 10) {
  return sm::MarketInstance({"1"}, {"1"}, {sm::PairTerms{lower, upper, std::move(seller), std::move(buyer)}});
}

/// Two sellers competing for one buyer: f_i(x) = x, g_1(y) = y + 10,
/// g_2(y) = y + 8, bounds [0, 10].
inline sm::MarketInstance competition() {
  return sm::MarketInstance({"1", "2"}, {"1"},
                            {sm::PairTerms{0, 10, linear(1, 0), linear(1, 10)},
                             sm::PairTerms{0, 10, linear(1, 0), linear(1, 8)}});
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace fixtures
