#pragma once

#include <vector>

#include "kpart/error.hpp"
#include "kpart/instance.hpp"
#include "kpart/numeric.hpp"

namespace kpart {

/// Instance after input preparation: values sorted ascending (ties broken by
/// original index) with the permutation retained, sign counts, and wide sums.
template <class Num>
struct Prepared {
  using Sum = SumOf<Num>;

  std::vector<Num> sorted_values;  // nondecreasing
  std::vector<int> orig_index;     // orig_index[p] = original position of sorted_values[p]
  int n_negative = 0;
  int n_zero = 0;
  int n_positive = 0;
  Sum total{};
  Sum positive_sum{};
  Sum negative_sum{};

  int size() const { return (int)sorted_values.size(); }
};

/// Sorts and summarizes an instance.
/// Throws Errc::NonFiniteInput on NaN or infinity, Errc::OverflowRisk when the
/// positive or negative partial sum is not representable in the accumulation
/// width (never for int64 inputs with 128-bit sums; reachable in float mode
/// when a partial sum overflows to infinity).
template <class Num>
Prepared<Num> prepare(const Instance<Num>& inst);

}  // namespace kpart
