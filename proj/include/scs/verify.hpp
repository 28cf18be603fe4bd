#pragma once

#include <string>
#include <vector>

#include "scs/numeric.hpp"

namespace scs {

inline constexpr const char* kVersion = "0.1.0";

// One invariant check: pass iff residual <= tolerance.
struct CheckResult {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass = true;
};

struct VerifyOptions {
  int quad_nodes = 400;   // node count handed to quadrature-driven checks
  unsigned seed = 0;      // jitters sweep grids; fixed seed, fixed grid
};

// Valid suite names, "all" last.
const std::vector<std::string>& suite_names();

// Runs one suite ("all" concatenates the rest).  Unknown names throw
// std::invalid_argument.  Pure function of the options: identical options
// give identical reports.
SuiteReport run_suite(const std::string& suite, const VerifyOptions& opts = {});

}  // namespace scs
