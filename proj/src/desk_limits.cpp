#include "polygf/desk_limits.hpp"

#include <cstdlib>

namespace polygf::limits {

namespace {

// -1 when unset or unparsable.
long override_value() {
  static const long value = [] {
    const char* env = std::getenv("POLYGF_DESK_LIMIT");
    if (!env) return -1L;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    return (end && *end == '\0' && v > 0) ? v : -1L;
  }();
  return value;
}

unsigned with_override(unsigned fallback) {
  const long v = override_value();
  return v > 0 ? static_cast<unsigned>(v) : fallback;
}

}  // namespace

unsigned faa_di_bruno_max() { return with_override(10); }
unsigned state_enumeration_max() { return with_override(14); }
unsigned labeled_enumeration_max() { return with_override(8); }
unsigned structure_count_max() { return with_override(12); }
unsigned cycle_census_max() { return with_override(8); }

}  // namespace polygf::limits
