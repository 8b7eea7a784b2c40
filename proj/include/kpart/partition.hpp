#pragma once

#include <cstdint>
#include <vector>

#include "kpart/instance.hpp"
#include "kpart/numeric.hpp"

namespace kpart {

/// Element-index -> set-index map for K sets. Set ids are 1-based; every
/// element belongs to exactly one set, so disjointness and coverage hold by
/// construction.
struct Partition {
  int k = 1;
  std::vector<int32_t> assign;  // assign[n] in {1..k}

  bool operator==(const Partition&) const = default;
};

enum class Objective { MinimizeMax, MaximizeMin, MinimizeRange };

/// Throws Errc::InvalidAssignment unless assign has one in-range set id per
/// element of the instance.
template <class Num>
void validate_partition(const Instance<Num>& inst, const Partition& part);

/// Per-set sums, indexed by set id - 1. Elements are accumulated in original
/// index order; empty sets contribute 0.
template <class Num>
std::vector<SumOf<Num>> set_sums(const Instance<Num>& inst, const Partition& part);

template <class Num>
SumOf<Num> objective_value(const Instance<Num>& inst, const Partition& part, Objective obj);

template <class Sum>
struct ObjectiveValues {
  Sum min_max{};  // max_k S_k
  Sum max_min{};  // min_k S_k
  Sum range{};    // max_k S_k - min_k S_k
};

template <class Sum>
ObjectiveValues<Sum> objectives_from_sums(const std::vector<Sum>& sums) {
  ObjectiveValues<Sum> out;
  if (sums.empty()) return out;
  Sum mx = sums[0], mn = sums[0];
  for (Sum s : sums) {
    if (s > mx) mx = s;
    if (s < mn) mn = s;
  }
  out.min_max = mx;
  out.max_min = mn;
  out.range = mx - mn;
  return out;
}

}  // namespace kpart
