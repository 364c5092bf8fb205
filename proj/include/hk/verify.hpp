#pragma once

// Self-check suites shared by `hkcount verify` and the test programs.

#include <string>
#include <vector>

namespace hk {

struct Check {
  std::string name;
  bool pass = false;
  double observed = 0.0;   // error or mismatch measure
  double tolerance = 0.0;  // pass iff observed <= tolerance
  std::string detail;
};

// Suites: arakelov, integral, residue, partition, oracle. Throws
// std::invalid_argument for an unknown name.
std::vector<Check> run_suite(const std::string& suite, int threads = 1);
const std::vector<std::string>& suite_names();

}  // namespace hk
