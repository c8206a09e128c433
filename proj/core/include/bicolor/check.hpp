#pragma once

#include <string>
#include <vector>

namespace bicolor {

// One named postcondition, re-established on the final object.
struct Check {
  std::string name;
  bool pass = false;
  std::vector<std::string> witness;  // ids, when a failure has one
  std::string detail;
};

inline bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

}  // namespace bicolor
