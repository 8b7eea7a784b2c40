#pragma once

#include "kpart/instance.hpp"
#include "kpart/partition.hpp"

namespace kpart::baselines {

/// Greedy number partitioning (LPT): values in descending absolute value
/// (ties by ascending index) each go to the currently smallest-sum set
/// (ties toward the smallest id). O(N log N).
template <class Num>
Partition greedy_lpt(const Instance<Num>& inst, int k);

/// Largest differencing method generalized to K sets: every element starts as
/// a K-tuple of set sums; the two tuples of largest spread (max slot - min
/// slot, FIFO on ties) merge by pairing largest slots against smallest until
/// one tuple remains. Element bookkeeping rides along, and the surviving
/// tuple's slots, in descending sum order, become sets 1..K.
///
/// Defined for nonnegative inputs only; throws Errc::NegativeInput otherwise.
template <class Num>
Partition karmarkar_karp_multiway(const Instance<Num>& inst, int k);

}  // namespace kpart::baselines
