#pragma once

#include <string>
#include <vector>

#include "opkit/cli/catalog.hpp"

namespace opkit::suites {

struct Options {
  unsigned seed = 0;
  int tree_bound = 4;
  long lift_budget = 1'000'000;
};

struct Result {
  std::string id;
  std::string title;
  long instances = 0;
  long failures = 0;
  bool budget_exhausted = false;
  std::vector<std::string> counterexamples;  // first few
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
  double seconds = 0;
  bool pass() const { return failures == 0 && !budget_exhausted; }
};

struct Suite {
  std::string id;
  std::string title;
  double limit_seconds;
};

// The acceptance suites in a fixed order, then "mutation".
const std::vector<Suite>& all();
Result run(const std::string& id, const Options& o = {});

// Validation of arbitrary multicategories; a vacuous pass warns.
Result validate_all(const catalog::Named<MultiData>& inputs);

}  // namespace opkit::suites
