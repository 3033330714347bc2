#pragma once

#include <stdexcept>
#include <string>

namespace rrtcut {

// Raised when a request exceeds an enforced size or resource cap
// (enumeration limits, exact-oracle limits, simulation time budgets).
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rrtcut
