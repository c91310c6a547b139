#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace optidep::cli {

enum Exit : int {
  ok = 0,
  unsat = 2,  // also: check found violations
  timeout = 3,
  bad_input = 4,
  internal = 5,
  capacity = 6,
};

/// Runs one command line (args exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace optidep::cli
