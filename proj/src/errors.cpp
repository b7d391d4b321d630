#include "stable_market/errors.hpp"

namespace stable_market {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out = "invalid instance";
  for (std::size_t k = 0; k < items.size(); ++k) out += (k == 0 ? ": " : "; ") + items[k];
  return out;
}

}  // namespace

InvalidInstanceError::InvalidInstanceError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

}  // namespace stable_market
