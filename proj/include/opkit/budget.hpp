#pragma once

namespace opkit {

// Step budget for exhaustive searches. A search that runs out reports
// "budget exhausted" instead of a definite answer.
struct SearchBudget {
  long remaining = 1'000'000;
  bool exhausted = false;

  bool spend(long n = 1) {
    if (remaining < n) {
      exhausted = true;
      return false;
    }
    remaining -= n;
    return true;
  }
};

}  // namespace opkit
