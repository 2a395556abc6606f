#ifndef POLYGF_SETPART_HPP
#define POLYGF_SETPART_HPP

#include <functional>
#include <vector>

#include "polygf/rational.hpp"

namespace polygf {

/// Enumerates every set partition of {0, ..., n-1} as a restricted growth
/// string: rgs[k] is the block index of element k, rgs[0] = 0 and
/// rgs[k] <= 1 + max(rgs[0..k-1]). Lexicographic RGS order, so reports are
/// reproducible. n = 0 yields the single empty partition.
void for_each_set_partition(
    unsigned n,
    const std::function<void(const std::vector<unsigned>& rgs,
                             unsigned num_blocks)>& fn);

/// Bell number by direct enumeration; oracle-grade, not a formula.
BigInt count_set_partitions(unsigned n);

/// Enumerates integer partitions of n into parts >= 1, parts descending.
/// n = 0 yields the single empty partition.
void for_each_integer_partition(
    unsigned n, const std::function<void(const std::vector<unsigned>& parts)>& fn);

}  // namespace polygf

#endif
