#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "kpart/numeric.hpp"

namespace kpart {

/// One element transfer. Diffs are |S_from - S_to| immediately before and
/// after the move, computed on the solver's incrementally maintained sums.
template <class Num>
struct MoveEvent {
  int element;  // original index
  Num value;
  int from;  // 1-based set ids
  int to;
  SumOf<Num> old_abs_diff;
  SumOf<Num> new_abs_diff;

  bool operator==(const MoveEvent&) const = default;
};

/// A set leaving the active index (positive variant).
struct DiscardEvent {
  int set;

  bool operator==(const DiscardEvent&) const = default;
};

/// A jointly discarded argmax/argmin pair (signed variant). i == j when all
/// active sums are equal; one set leaves in that case.
struct DiscardPairEvent {
  int i;
  int j;

  bool operator==(const DiscardPairEvent&) const = default;
};

template <class Num>
using TraceEvent = std::variant<MoveEvent<Num>, DiscardEvent, DiscardPairEvent>;

/// Ordered record of solver events. Counts are always maintained; the event
/// list is populated only when SolverConfig::record_trace is set.
template <class Num>
struct Trace {
  std::vector<TraceEvent<Num>> events;
  int64_t move_count = 0;
  int64_t discard_count = 0;

  int64_t iterations() const { return move_count + discard_count; }

  bool operator==(const Trace&) const = default;
};

}  // namespace kpart
