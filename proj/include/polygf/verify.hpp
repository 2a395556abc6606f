#ifndef POLYGF_VERIFY_HPP
#define POLYGF_VERIFY_HPP

#include <string>
#include <vector>

namespace polygf {

struct VerifyResult {
  std::string id;      // e.g. "species.fixpoint_linear"
  bool pass = false;
  std::string detail;  // discrepancy / witness on failure
};

/// Runs the module invariant suites at the given series orders. `modules`
/// filters by id prefix ("series", "species", "equilibrium", "ensemble",
/// "bondsys", "permcycles", "parallel"); empty means all. Deterministic
/// order and content for fixed inputs.
std::vector<VerifyResult> run_verification(unsigned order_x, unsigned order_y,
                                           const std::vector<std::string>& modules = {});

}  // namespace polygf

#endif
