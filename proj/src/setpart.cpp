#include "polygf/setpart.hpp"

#include <algorithm>

namespace polygf {

void for_each_set_partition(
    unsigned n,
    const std::function<void(const std::vector<unsigned>&, unsigned)>& fn) {
  std::vector<unsigned> rgs(n, 0);
  if (n == 0) {
    fn(rgs, 0);
    return;
  }
  while (true) {
    fn(rgs, *std::max_element(rgs.begin(), rgs.end()) + 1);
    // Rightmost position that can still grow: rgs[k] may rise to one past
    // the maximum of the prefix.
    unsigned k = n - 1;
    for (; k >= 1; --k) {
      const unsigned prefix_max =
          *std::max_element(rgs.begin(), rgs.begin() + k);
      if (rgs[k] <= prefix_max) {
        ++rgs[k];
        std::fill(rgs.begin() + k + 1, rgs.end(), 0);
        break;
      }
    }
    if (k == 0) return;
  }
}

BigInt count_set_partitions(unsigned n) {
  BigInt total = 0;
  for_each_set_partition(
      n, [&](const std::vector<unsigned>&, unsigned) { ++total; });
  return total;
}

void for_each_integer_partition(
    unsigned n,
    const std::function<void(const std::vector<unsigned>&)>& fn) {
  std::vector<unsigned> parts;
  const std::function<void(unsigned, unsigned)> rec = [&](unsigned remaining,
                                                          unsigned max_part) {
    if (remaining == 0) {
      fn(parts);
      return;
    }
    for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      rec(remaining - p, p);
      parts.pop_back();
    }
  };
  rec(n, n == 0 ? 1 : n);
}

}  // namespace polygf
