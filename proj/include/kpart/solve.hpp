#pragma once

#include <optional>
#include <vector>

#include "kpart/error.hpp"
#include "kpart/instance.hpp"
#include "kpart/partition.hpp"
#include "kpart/prepare.hpp"
#include "kpart/trace.hpp"

namespace kpart {

struct SolverConfig {
  bool record_trace = true;  // keep the event list (counts are always kept)
  bool run_checker = false;  // fill Report::locally_optimal via is_locally_optimal
};

template <class Num>
struct SolveOutcome {
  Partition partition;
  Trace<Num> trace;

  bool operator==(const SolveOutcome&) const = default;
};

/// Assignment plus everything reported about a solve.
template <class Num>
struct Report {
  using Sum = SumOf<Num>;

  Partition partition;
  std::vector<Sum> sums;  // per set, index = id - 1
  ObjectiveValues<Sum> objectives;
  Trace<Num> trace;
  double wall_time_ms = 0.0;
  std::optional<bool> locally_optimal;  // set when config.run_checker
};

/// Core loop for strictly positive inputs: repeatedly pick the active sets
/// with the largest and smallest sums and move the largest element whose
/// transfer strictly shrinks their absolute difference; when no element
/// qualifies, retire the largest set. Ties select the smallest set id and,
/// among equal element values, the largest original index.
///
/// Requires prepared values strictly positive (throws std::invalid_argument
/// otherwise); throws Errc::NonTermination if the move/discard budget N + K
/// is ever exceeded, which is unreachable in integer mode.
template <class Num>
SolveOutcome<Num> solve_positive(const Prepared<Num>& prep, int k, const SolverConfig& config = {});

/// Signed-input variant: positives start in set 1, negatives in set K. Each
/// step considers positive elements of the argmax set and negative elements
/// of the argmin set and moves the candidate of largest magnitude (positive
/// preferred on magnitude ties, then largest original index). When neither
/// pool has a candidate, every active set is scanned for a positive that
/// still improves the argmin or a negative that still improves the argmax
/// (any improving transfer between active sets implies one of those forms);
/// only if that scan also comes up empty is the {argmax, argmin} pair
/// retired.
///
/// Requires at least one negative and no zero values.
template <class Num>
SolveOutcome<Num> solve_signed(const Prepared<Num>& prep, int k, const SolverConfig& config = {});

/// Full solve: prepares the instance, strips zeros, dispatches to the
/// positive or signed variant, reattaches zeros round-robin over sets 1..k
/// in original-index order, and aggregates the report. k = 1 and all-zero
/// inputs return the trivial partition with an empty trace.
template <class Num>
Report<Num> solve(const Instance<Num>& inst, int k, const SolverConfig& config = {});

}  // namespace kpart
