#pragma once

#include <vector>

#include "kpart/instance.hpp"
#include "kpart/numeric.hpp"
#include "kpart/partition.hpp"

namespace kpart {

/// A single-element transfer that strictly shrinks the absolute difference
/// between its source and destination set sums.
template <class Num>
struct Violation {
  int element;  // original index
  int from;     // 1-based set ids
  int to;
  SumOf<Num> old_abs_diff;  // |S_from - S_to|
  SumOf<Num> new_abs_diff;  // |(S_from - x) - (S_to + x)|, strictly smaller

  bool operator==(const Violation&) const = default;
};

/// Local-optimality check in O(N + K): a partition is locally optimal iff no
/// single transfer strictly decreases |S_i - S_j| for its two sets. A
/// positive x in set i improves only toward a minimum-sum set and only if
/// x < S_i - min S; a negative x only toward a maximum-sum set and only if
/// |x| < max S - S_i. Both conditions are monotone in |x|, so testing each
/// set's smallest positive element and its negative element closest to zero
/// decides the whole set. Returns those witness violations (empty iff locally
/// optimal); every reported violation also appears in the exhaustive oracle.
template <class Num>
std::vector<Violation<Num>> is_locally_optimal(const Instance<Num>& inst, const Partition& part);

}  // namespace kpart
