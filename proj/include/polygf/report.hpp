#ifndef POLYGF_REPORT_HPP
#define POLYGF_REPORT_HPP

#include <string>
#include <vector>

namespace polygf {

// Outcome of one named identity or axiom check.
struct CheckEntry {
  std::string name;
  bool pass = false;
  std::string detail;  // witness / discrepancy description on failure
};

struct CheckReport {
  std::vector<CheckEntry> entries;

  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

}  // namespace polygf

#endif
