#ifndef POLYGF_DESK_LIMITS_HPP
#define POLYGF_DESK_LIMITS_HPP

namespace polygf::limits {

// Guard rails for the combinatorial-explosion operations. Each returns its
// built-in desk value unless the POLYGF_DESK_LIMIT environment variable is
// set, which overrides all of them for long runs.
unsigned faa_di_bruno_max();       // default 10 (Bell-number growth)
unsigned state_enumeration_max();  // default 14
unsigned labeled_enumeration_max();  // default 8
unsigned structure_count_max();    // default 12
unsigned cycle_census_max();       // default 8

}  // namespace polygf::limits

#endif
