#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "scs/numeric.hpp"

namespace scs::cli {

// Fully resolved run parameters.  Resolution order: built-in defaults, then
// the --config file, then command-line flags; the resolved values are echoed
// into every report.
struct RunConfig {
  std::string command;

  std::string suite = "all";

  std::string pi1 = "delta";  // delta | eis:<t> | maass:<path>
  std::string pi2 = "delta";
  std::int64_t h = 1;
  std::string h_range;  // "a:b" switches sum into growth-fit mode
  double Y = 64;
  std::string Y_geom;  // "a:b:r" geometric ladder for growth-fit mode
  std::string sign = "plus";
  std::string weight;  // bump | bump:<c>,<w> | expfam:<k>,<z>
  std::string s = "2+0i";
  int k = 0;
  int q = 21;
  int c = 0;
  std::int64_t N = 1000;
  bool double_N = false;

  std::string out;  // empty: write the report to the provided stream
  std::string format = "csv";
  int threads = 0;  // 0: hardware default
  int quad_nodes = 400;
  unsigned seed = 0;
};

// "a+bi" (also plain "a" or "bi").
cplx parse_complex(const std::string& text);
std::string format_complex(cplx v);

// RFC-4180 field quoting.
std::string csv_field(const std::string& raw);

// Entry point shared by the binary and the in-process tests.  Reports go to
// `out` (or the --out path), diagnostics to `err`.  Exit codes: 0 pass,
// 1 check/audit failure, 2 usage error, 3 data/ingest error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace scs::cli
