#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opkit/cli/json_io.hpp"

namespace opkit::cli {

enum ExitCode { kPass = 0, kFail = 1, kInputError = 2, kBudget = 3 };

struct Overrides {
  std::optional<Backend> backend;
  std::optional<int> arity, dim, tree;
  std::optional<long> lift_budget;
  std::string out_dir;  // empty: report to stdout, artifacts dropped
  unsigned seed = 0;
  int jobs = 0;  // 0: one thread per task
};

struct Manifest {
  Backend backend = Backend::FinSet;
  io::Bounds bounds;
  std::vector<std::pair<std::string, std::string>> inputs;  // name, path; in order
  std::vector<io::json> tasks;
  bool has_tasks = false;
};

// One manifest file, or plain JSON inputs each named by its file stem.
// Relative input paths resolve against the manifest's directory. Flags
// override manifest bounds.
Manifest load_manifest(const std::vector<std::string>& paths, const Overrides& o);

struct Outcome {
  int exit_code = kPass;
  io::json report;
  std::string summary;  // human-readable, one line per task
};

// check, factorize, pushout, free, circle, hom, suite
Outcome run(const std::string& command, const Manifest& m, const Overrides& o);

const std::vector<std::string>& commands();

}  // namespace opkit::cli
